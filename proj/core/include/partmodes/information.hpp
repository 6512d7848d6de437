#pragma once

#include <vector>

#include "partmodes/partition.hpp"
#include "partmodes/table_count.hpp"

namespace partmodes {

/// Joint label counts of two partitions over the same nodes. Rows index the
/// first partition's communities, columns the second's.
struct ContingencyTable {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Count> cells;  // row-major, rows * cols
  std::vector<Count> row_sums;
  std::vector<Count> col_sums;

  Count operator()(std::size_t r, std::size_t s) const { return cells[r * cols + s]; }
  Count total() const;
};

/// Throws std::invalid_argument("incompatible partitions") if node counts differ.
ContingencyTable contingency_table(const Partition& m, const Partition& p);

/// Shannon entropy of the community sizes, in bits per node.
double entropy(const Partition& p);

/// H(p | mode) in bits per node: the table rows are the mode's communities.
double conditional_entropy(const Partition& p, const Partition& mode);
double conditional_entropy(const ContingencyTable& mode_by_p);

/// H(p | mode) + log2(Omega) / N, where Omega counts the tables sharing the
/// margins of contingency_table(mode, p).
double modified_conditional_entropy(const Partition& p, const Partition& mode,
                                    const OmegaOptions& options = {});

}  // namespace partmodes
