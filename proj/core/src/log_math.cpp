#include "partmodes/log_math.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace partmodes {

namespace {

constexpr std::int64_t kTableSize = 1 << 16;

const std::array<double, kTableSize>& factorial_table() {
  static const auto table = [] {
    std::array<double, kTableSize> t{};
    t[0] = 0.0;
    for (std::int64_t i = 1; i < kTableSize; ++i) {
      t[i] = t[i - 1] + std::log2(static_cast<double>(i));
    }
    return t;
  }();
  return table;
}

}  // namespace

double log2_factorial(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("log2_factorial of negative value");
  if (n < kTableSize) return factorial_table()[static_cast<std::size_t>(n)];
  return std::lgamma(static_cast<double>(n) + 1.0) / std::numbers::ln2;
}

double log2_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return log2_factorial(n) - log2_factorial(k) - log2_factorial(n - k);
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace partmodes
