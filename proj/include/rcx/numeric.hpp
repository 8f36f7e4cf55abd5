#ifndef RCX_NUMERIC_HPP
#define RCX_NUMERIC_HPP

#include <cmath>
#include <cstdint>

namespace rcx::num {

/// Binomial coefficient as a double. Any negative or out-of-range argument
/// yields 0.
inline double binom(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  long double r = 1.0L;
  for (long long i = 1; i <= k; ++i) {
    r *= static_cast<long double>(n - k + i);
    r /= static_cast<long double>(i);
  }
  // Small results are integers; remove the accumulated division error.
  if (r < 1e18L) r = std::nearbyintl(r);
  return static_cast<double>(r);
}

/// C(m, 2) for the number of edges spanned by m vertices.
constexpr long long pairs(long long m) { return m < 2 ? 0 : m * (m - 1) / 2; }

/// Exponent above which integer powers are evaluated through logarithms.
inline constexpr double kLogPowThreshold = 1000.0;

/// (1 - x)^e for x in [0, 1]; 0^0 = 1. Large exponents go through log1p so
/// that long geometric products do not accumulate rounding bias.
inline double pow1m(double x, double e) {
  if (e == 0.0) return 1.0;
  if (e > kLogPowThreshold) {
    if (x >= 1.0) return 0.0;
    return std::exp(e * std::log1p(-x));
  }
  return std::pow(1.0 - x, e);
}

/// b^e with 0^0 = 1, log-space for large exponents.
inline double powi(double b, double e) {
  if (e == 0.0) return 1.0;
  if (e > kLogPowThreshold && b > 0.0) return std::exp(e * std::log(b));
  return std::pow(b, e);
}

inline double factorial(int k) { return std::tgamma(static_cast<double>(k) + 1.0); }

/// |a - b| <= rel * max(|a|, |b|) + abs_floor.
inline bool close_rel(double a, double b, double rel, double abs_floor = 1e-14) {
  return std::fabs(a - b) <= rel * std::fmax(std::fabs(a), std::fabs(b)) + abs_floor;
}

}  // namespace rcx::num

#endif  // RCX_NUMERIC_HPP
