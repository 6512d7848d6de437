#pragma once

// Straightforward reference implementations used to check the library.
// Nothing here shares code with the library beyond the Partition type.

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "partmodes/partition.hpp"

namespace oracle {

inline double lg(double x) { return std::log(x) / std::log(2.0); }

inline double log2_fact(std::int64_t n) {
  double s = 0.0;
  for (std::int64_t i = 2; i <= n; ++i) s += std::log(static_cast<double>(i));
  return s / std::log(2.0);
}

inline double log2_choose(std::int64_t n, std::int64_t k) {
  return log2_fact(n) - log2_fact(k) - log2_fact(n - k);
}

// Counts every non-negative integer matrix with the given margins by filling
// cells one at a time.
inline std::uint64_t count_tables(std::vector<std::int64_t> rows, std::vector<std::int64_t> cols) {
  const std::size_t m = rows.size(), n = cols.size();
  if (m == 0 || n == 0) return 1;
  std::uint64_t total = 0;
  auto fill = [&](auto&& self, std::size_t cell) -> void {
    const std::size_t r = cell / n, c = cell % n;
    if (r == m) {
      for (auto v : cols) if (v != 0) return;
      ++total;
      return;
    }
    if (c == n - 1) {
      const std::int64_t v = rows[r];
      if (v > cols[c]) return;
      rows[r] -= v;
      cols[c] -= v;
      self(self, cell + 1);
      rows[r] += v;
      cols[c] += v;
      return;
    }
    for (std::int64_t v = 0; v <= std::min(rows[r], cols[c]); ++v) {
      rows[r] -= v;
      cols[c] -= v;
      self(self, cell + 1);
      rows[r] += v;
      cols[c] += v;
    }
  };
  fill(fill, 0);
  return total;
}

inline std::map<std::int64_t, std::int64_t> sizes(const std::vector<std::int64_t>& labels) {
  std::map<std::int64_t, std::int64_t> out;
  for (auto l : labels) ++out[l];
  return out;
}

inline std::vector<std::int64_t> labels_of(const partmodes::Partition& p) {
  return {p.labels().begin(), p.labels().end()};
}

inline double entropy(const std::vector<std::int64_t>& labels) {
  const double n = static_cast<double>(labels.size());
  double h = 0.0;
  for (auto [label, count] : sizes(labels)) h -= (count / n) * lg(count / n);
  return h;
}

inline double conditional_entropy(const std::vector<std::int64_t>& p, const std::vector<std::int64_t>& mode) {
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> joint;
  for (std::size_t i = 0; i < p.size(); ++i) ++joint[{mode[i], p[i]}];
  const auto a = sizes(mode);
  const double n = static_cast<double>(p.size());
  double h = 0.0;
  for (auto [key, t] : joint) h -= (t / n) * lg(static_cast<double>(t) / static_cast<double>(a.at(key.first)));
  return h;
}

inline std::vector<std::int64_t> margin(const std::vector<std::int64_t>& labels) {
  std::vector<std::int64_t> out;
  for (auto [label, count] : sizes(labels)) out.push_back(count);
  return out;
}

// log2 of the multinomial count of labelings consistent with the table of
// mode x p, i.e. sum over mode communities of log2(a_r! / prod_s t_rs!).
inline double log2_labelings(const std::vector<std::int64_t>& p, const std::vector<std::int64_t>& mode) {
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> joint;
  for (std::size_t i = 0; i < p.size(); ++i) ++joint[{mode[i], p[i]}];
  double bits = 0.0;
  for (auto [label, count] : sizes(mode)) bits += log2_fact(count);
  for (auto [key, t] : joint) bits -= log2_fact(t);
  return bits;
}

inline std::vector<std::int64_t> random_labels(std::mt19937_64& rng, std::size_t n, std::int64_t groups) {
  std::uniform_int_distribution<std::int64_t> d(0, groups - 1);
  std::vector<std::int64_t> out(n);
  for (auto& v : out) v = d(rng);
  return out;
}

// Random composition of `total` into exactly `parts` positive pieces.
inline std::vector<std::int64_t> random_margin(std::mt19937_64& rng, std::int64_t total, std::size_t parts) {
  std::vector<std::int64_t> out(parts, 1);
  std::uniform_int_distribution<std::size_t> pick(0, parts - 1);
  for (std::int64_t left = total - static_cast<std::int64_t>(parts); left > 0; --left) ++out[pick(rng)];
  return out;
}

}  // namespace oracle
