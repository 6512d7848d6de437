#include "partmodes/table_count.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>
#include <random>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace partmodes {

namespace {

using Margin = std::vector<Count>;

// Sorted descending, zeros removed.
Margin normalize(std::span<const Count> margin) {
  Margin out;
  out.reserve(margin.size());
  for (Count v : margin) {
    if (v < 0) throw std::invalid_argument("negative margin entry");
    if (v > 0) out.push_back(v);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

void check_totals(const Margin& rows, const Margin& cols) {
  if (std::accumulate(rows.begin(), rows.end(), Count{0}) !=
      std::accumulate(cols.begin(), cols.end(), Count{0})) {
    throw std::invalid_argument("margin sums differ");
  }
}

double box_size(const Margin& m) {
  double size = 1.0;
  for (Count v : m) size *= static_cast<double>(v + 1);
  return size;
}

// Canonical orientation: the margin with the smaller DP box goes first;
// ties broken lexicographically so that (a, b) and (b, a) agree.
void orient(Margin& rows, Margin& cols) {
  const double br = box_size(rows), bc = box_size(cols);
  if (bc < br || (bc == br && cols < rows)) std::swap(rows, cols);
}

constexpr int kRescaleExponent = 512;
const double kRescaleLimit = std::ldexp(1.0, kRescaleExponent);

// Dense sweep over the columns. The state is the vector d of partially filled
// row totals, held in a box of extent (r_i + 1) per row, and only the
// hyperplane |d| = (sum of processed columns) is populated. Adding a column of
// total c maps F to the sum of F(d - a) over a >= 0 with |a| = c, which is the
// full prefix sum along every axis restricted to the next hyperplane.
double count_dense(const Margin& rows, const Margin& cols) {
  const std::size_t m = rows.size();
  std::vector<std::size_t> extent(m), stride(m);
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    extent[i] = static_cast<std::size_t>(rows[i]) + 1;
    stride[i] = total;
    total *= extent[i];
  }

  std::vector<double> box(total, 0.0);
  std::vector<Count> coord(m, 0);

  // Visit every cell with the running coordinate sum.
  auto for_each_level = [&](auto&& fn) {
    std::fill(coord.begin(), coord.end(), 0);
    Count sum = 0;
    for (std::size_t idx = 0; idx < total; ++idx) {
      fn(idx, sum);
      for (std::size_t i = 0; i < m; ++i) {
        if (++coord[i] <= rows[i]) {
          ++sum;
          break;
        }
        sum -= coord[i] - 1;
        coord[i] = 0;
      }
    }
  };

  Count level = cols.front();
  for_each_level([&](std::size_t idx, Count sum) { box[idx] = sum == level ? 1.0 : 0.0; });

  int scale = 0;
  for (std::size_t j = 1; j + 1 < cols.size(); ++j) {
    for (std::size_t axis = 0; axis < m; ++axis) {
      const std::size_t s = stride[axis], e = extent[axis], block = s * e;
      for (std::size_t base = 0; base < total; base += block) {
        for (std::size_t k = 1; k < e; ++k) {
          double* cur = box.data() + base + k * s;
          const double* prev = cur - s;
          for (std::size_t t = 0; t < s; ++t) cur[t] += prev[t];
        }
      }
    }
    level += cols[j];
    double peak = 0.0;
    for_each_level([&](std::size_t idx, Count sum) {
      if (sum != level) box[idx] = 0.0;
      else peak = std::max(peak, box[idx]);
    });
    if (peak > kRescaleLimit) {
      for (double& v : box) v = std::ldexp(v, -kRescaleExponent);
      scale += kRescaleExponent;
    }
  }

  // The last column is forced: every surviving state completes uniquely.
  const double sum = std::accumulate(box.begin(), box.end(), 0.0);
  return std::log2(sum) + scale;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_margins(const Margin& rows, const Margin& cols) {
  std::uint64_t h = splitmix64(rows.size() * 0x100000001b3ULL + cols.size());
  for (Count v : rows) h = splitmix64(h ^ static_cast<std::uint64_t>(v));
  h = splitmix64(h ^ 0xa5a5a5a5ULL);
  for (Count v : cols) h = splitmix64(h ^ static_cast<std::uint64_t>(v));
  return h;
}

struct MarginKeyHash {
  std::size_t operator()(const Margin& key) const noexcept {
    std::uint64_t h = key.size();
    for (Count v : key) h = splitmix64(h ^ static_cast<std::uint64_t>(v));
    return static_cast<std::size_t>(h);
  }
};

class OmegaMemo {
 public:
  bool find(const Margin& key, double& value) const {
    std::shared_lock lock(mutex_);
    auto it = table_.find(key);
    if (it == table_.end()) return false;
    value = it->second;
    return true;
  }
  void insert(Margin key, double value) {
    std::unique_lock lock(mutex_);
    if (table_.size() >= kCapacity) table_.clear();
    table_.emplace(std::move(key), value);
  }

 private:
  static constexpr std::size_t kCapacity = 1 << 20;
  mutable std::shared_mutex mutex_;
  std::unordered_map<Margin, double, MarginKeyHash> table_;
};

OmegaMemo& memo() {
  static OmegaMemo instance;
  return instance;
}

}  // namespace

double exact_count_cost(std::span<const Count> row_sums, std::span<const Count> col_sums) {
  const Margin rows = normalize(row_sums), cols = normalize(col_sums);
  return std::min(box_size(rows), box_size(cols));
}

double count_tables_exact(std::span<const Count> row_sums, std::span<const Count> col_sums,
                          double max_states) {
  Margin rows = normalize(row_sums), cols = normalize(col_sums);
  check_totals(rows, cols);
  if (rows.size() <= 1 || cols.size() <= 1) return 0.0;
  orient(rows, cols);
  if (box_size(rows) > max_states) throw TableTooLarge();
  return count_dense(rows, cols);
}

double count_tables_estimate(std::span<const Count> row_sums, std::span<const Count> col_sums,
                             std::size_t samples, std::uint64_t seed) {
  Margin rows = normalize(row_sums), cols = normalize(col_sums);
  check_totals(rows, cols);
  if (rows.size() <= 1 || cols.size() <= 1) return 0.0;
  if (samples == 0) throw std::invalid_argument("estimator needs at least one sample");
  orient(rows, cols);

  std::mt19937_64 rng(splitmix64(seed ^ hash_margins(rows, cols)));
  const std::size_t m = rows.size(), n = cols.size();
  std::vector<Count> remaining(n);
  std::vector<double> log_weights(samples);

  // Fill row by row, cell by cell, drawing each entry uniformly from its
  // feasible range; the weight is the product of the range sizes.
  for (std::size_t s = 0; s < samples; ++s) {
    std::copy(cols.begin(), cols.end(), remaining.begin());
    double log_w = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      Count left = rows[i];
      Count suffix = std::accumulate(remaining.begin(), remaining.end(), Count{0});
      for (std::size_t j = 0; j + 1 < n; ++j) {
        suffix -= remaining[j];
        const Count lo = std::max<Count>(0, left - suffix);
        const Count hi = std::min(left, remaining[j]);
        Count cell = lo;
        if (hi > lo) {
          cell = std::uniform_int_distribution<Count>(lo, hi)(rng);
          log_w += std::log(static_cast<double>(hi - lo + 1));
        }
        left -= cell;
        remaining[j] -= cell;
      }
      remaining[n - 1] -= left;
    }
    log_weights[s] = log_w;
  }

  const double peak = *std::max_element(log_weights.begin(), log_weights.end());
  double acc = 0.0;
  for (double lw : log_weights) acc += std::exp(lw - peak);
  const double ln_mean = peak + std::log(acc / static_cast<double>(samples));
  return std::max(0.0, ln_mean / std::numbers::ln2);
}

double log2_table_count(std::span<const Count> row_sums, std::span<const Count> col_sums,
                        const OmegaOptions& options) {
  Margin rows = normalize(row_sums), cols = normalize(col_sums);
  check_totals(rows, cols);
  if (rows.size() <= 1 || cols.size() <= 1) return 0.0;
  orient(rows, cols);

  const bool exact = box_size(rows) <= options.exact_threshold;
  Margin key;
  key.reserve(rows.size() + cols.size() + 4);
  key.insert(key.end(), rows.begin(), rows.end());
  key.push_back(-1);
  key.insert(key.end(), cols.begin(), cols.end());
  if (!exact) {
    key.push_back(-2);
    key.push_back(static_cast<Count>(options.estimator_samples));
    key.push_back(static_cast<Count>(options.estimator_seed));
  }

  double value = 0.0;
  if (memo().find(key, value)) return value;
  value = exact ? count_dense(rows, cols)
                : count_tables_estimate(rows, cols, options.estimator_samples, options.estimator_seed);
  memo().insert(std::move(key), value);
  return value;
}

}  // namespace partmodes
