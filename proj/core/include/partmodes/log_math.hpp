#pragma once

#include <cstdint>

namespace partmodes {

/// log2(n!) for n >= 0. Exact-summed table for small n, lgamma beyond.
double log2_factorial(std::int64_t n);

/// log2 of the binomial coefficient C(n, k); -inf when k is outside [0, n].
double log2_binomial(std::int64_t n, std::int64_t k);

/// x * log2(x) with the convention 0 log 0 = 0.
double xlog2x(double x);

}  // namespace partmodes
