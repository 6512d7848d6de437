#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include "partmodes/partition.hpp"

namespace partmodes {

inline constexpr double kDefaultExactThreshold = 1e7;
inline constexpr std::size_t kDefaultEstimatorSamples = 4000;
inline constexpr std::uint64_t kDefaultEstimatorSeed = 0x2545f4914f6cdd1dULL;

/// How log2 Omega is obtained for a pair of margins.
struct OmegaOptions {
  /// Exact counting is used when exact_count_cost() is at most this.
  double exact_threshold = kDefaultExactThreshold;
  std::size_t estimator_samples = kDefaultEstimatorSamples;
  std::uint64_t estimator_seed = kDefaultEstimatorSeed;
};

class TableTooLarge : public std::runtime_error {
 public:
  TableTooLarge() : std::runtime_error("table too large for exact count") {}
};

/// Number of dynamic-programming states the exact counter would allocate:
/// the product of (b + 1) over the cheaper margin, zeros dropped.
double exact_count_cost(std::span<const Count> row_sums, std::span<const Count> col_sums);

/// log2 of the number of non-negative integer matrices with the given row and
/// column sums. Throws std::invalid_argument when the sums differ and
/// TableTooLarge when exact_count_cost() exceeds max_states.
double count_tables_exact(std::span<const Count> row_sums, std::span<const Count> col_sums,
                          double max_states = kDefaultExactThreshold);

/// Sequential importance sampling estimate of log2 Omega. Deterministic for a
/// given seed, and invariant under permuting or transposing the margins.
double count_tables_estimate(std::span<const Count> row_sums, std::span<const Count> col_sums,
                             std::size_t samples = kDefaultEstimatorSamples,
                             std::uint64_t seed = kDefaultEstimatorSeed);

/// Exact count when affordable, estimate otherwise. Results are memoized
/// process-wide on the sorted margins; safe to call from multiple threads.
double log2_table_count(std::span<const Count> row_sums, std::span<const Count> col_sums,
                        const OmegaOptions& options = {});

}  // namespace partmodes
