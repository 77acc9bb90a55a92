#pragma once

// Counter-based deterministic random numbers. Every draw is a pure function
// of (seed, counter), so values are reproducible across runs, platforms and
// evaluation order, and independent of how work is partitioned.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>

namespace imrestore {

namespace detail {

// murmur3 fmix64 finalizer; full avalanche on 64 bits.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 33;
  z *= 0xff51afd7ed558ccdULL;
  z ^= z >> 33;
  z *= 0xc4ceb9fe1a85ec53ULL;
  z ^= z >> 33;
  return z;
}

}  // namespace detail

// Stateless keyed hash: one 64-bit word per (seed, counter) pair.
constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t h = detail::mix64(seed ^ 0x9e3779b97f4a7c15ULL);
  h = detail::mix64(h ^ (counter + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
  return h;
}

// Derives an independent child seed, e.g. one noise seed per image index.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
  return counter_hash(base_seed, index ^ 0xa5a5a5a5a5a5a5a5ULL);
}

// Uniform deviate strictly inside (0, 1): 53 high bits, centered on the grid.
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
  return (static_cast<double>(counter_hash(seed, counter) >> 11) + 0.5) * 0x1.0p-53;
}

// Inverse of the standard normal CDF. Acklam's rational approximation
// followed by one Halley step against std::erfc, accurate to ~1e-15.
inline double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("inverse_normal_cdf: p must lie in (0,1)");
  }
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // Halley refinement: e = Phi(x) - p, u = e / phi(x).
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  x = x - u / (1.0 + x * u / 2.0);
  return x;
}

// Standard normal deviate at a counter position.
inline double normal(std::uint64_t seed, std::uint64_t counter) {
  return inverse_normal_cdf(uniform01(seed, counter));
}

// Deterministic Fisher-Yates permutation of indices [0, n).
// `values` must have size n and is shuffled in place.
template <typename T>
void counter_shuffle(std::span<T> values, std::uint64_t seed) {
  const std::size_t n = values.size();
  for (std::size_t i = n; i > 1; --i) {
    // Top-down: swap position i-1 with a uniform index in [0, i).
    const std::uint64_t r = counter_hash(seed, i - 1) % i;
    std::swap(values[i - 1], values[r]);
  }
}

}  // namespace imrestore
