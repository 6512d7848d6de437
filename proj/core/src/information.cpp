#include "partmodes/information.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "partmodes/log_math.hpp"

namespace partmodes {

Count ContingencyTable::total() const { return std::accumulate(cells.begin(), cells.end(), Count{0}); }

ContingencyTable contingency_table(const Partition& m, const Partition& p) {
  if (m.num_nodes() != p.num_nodes()) throw std::invalid_argument("incompatible partitions");
  ContingencyTable t;
  t.rows = m.num_communities();
  t.cols = p.num_communities();
  t.cells.assign(t.rows * t.cols, 0);
  t.row_sums.assign(t.rows, 0);
  t.col_sums.assign(t.cols, 0);
  for (std::size_t i = 0; i < m.num_nodes(); ++i) {
    const auto r = static_cast<std::size_t>(m[i]);
    const auto s = static_cast<std::size_t>(p[i]);
    ++t.cells[r * t.cols + s];
    ++t.row_sums[r];
    ++t.col_sums[s];
  }
  if (t.row_sums != m.counts() || t.col_sums != p.counts()) {
    throw std::logic_error("contingency table margins disagree with community counts");
  }
  return t;
}

double entropy(const Partition& p) {
  const double n = static_cast<double>(p.num_nodes());
  double h = 0.0;
  for (Count a : p.counts()) h -= xlog2x(static_cast<double>(a) / n);
  return h;
}

double conditional_entropy(const ContingencyTable& t) {
  const double n = static_cast<double>(t.total());
  if (n == 0.0) return 0.0;
  double h = 0.0;
  for (std::size_t r = 0; r < t.rows; ++r) {
    const double a = static_cast<double>(t.row_sums[r]);
    for (std::size_t s = 0; s < t.cols; ++s) {
      const Count c = t(r, s);
      if (c == 0) continue;
      h -= static_cast<double>(c) * std::log2(static_cast<double>(c) / a);
    }
  }
  // -0.0 and tiny negative rounding both collapse to zero.
  return h > 0.0 ? h / n : 0.0;
}

double conditional_entropy(const Partition& p, const Partition& mode) {
  return conditional_entropy(contingency_table(mode, p));
}

double modified_conditional_entropy(const Partition& p, const Partition& mode,
                                    const OmegaOptions& options) {
  const ContingencyTable t = contingency_table(mode, p);
  const double n = static_cast<double>(p.num_nodes());
  return conditional_entropy(t) + log2_table_count(t.row_sums, t.col_sums, options) / n;
}

}  // namespace partmodes
