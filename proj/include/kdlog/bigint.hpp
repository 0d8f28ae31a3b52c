#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>

namespace kdlog {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Every randomized routine takes one of these by reference; nothing in the
/// library owns hidden RNG state.
using Rng = std::mt19937_64;

inline BigInt big_pow(BigInt base, std::uint64_t exp) {
  BigInt result = 1;
  while (exp != 0) {
    if (exp & 1U) result *= base;
    exp >>= 1U;
    if (exp != 0) base *= base;
  }
  return result;
}

/// Uniform integer in [0, bound) by rejection on 64-bit limbs.
inline BigInt random_below(const BigInt& bound, Rng& rng) {
  if (bound <= 1) return 0;
  const std::size_t bits = boost::multiprecision::msb(bound) + 1;
  const std::size_t limbs = (bits + 63) / 64;
  const std::size_t top_bits = bits - 64 * (limbs - 1);
  for (;;) {
    BigInt candidate = 0;
    for (std::size_t i = 0; i < limbs; ++i) {
      std::uint64_t limb = rng();
      if (i == 0 && top_bits < 64) limb &= (std::uint64_t{1} << top_bits) - 1;
      candidate = (candidate << 64) | limb;
    }
    if (candidate < bound) return candidate;
  }
}

/// Smallest r with r*r >= x.
inline BigInt ceil_sqrt(const BigInt& x) {
  if (x <= 0) return 0;
  BigInt r = boost::multiprecision::sqrt(x);
  if (r * r < x) ++r;
  return r;
}

inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

}  // namespace kdlog
