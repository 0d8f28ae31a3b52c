#pragma once

#include "kdlog/bigint.hpp"
#include "kdlog/error.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace kdlog {

/// An exponent e = e_0 + e_1 q + ... + e_{n-1} q^{n-1} kept as its base-q
/// digits, low-to-high. This is the exponent representation used everywhere;
/// to_integer() exists for oracles and tests.
struct ExponentDigits {
  std::uint64_t base = 2;
  std::vector<std::uint64_t> digits;

  ExponentDigits() = default;
  ExponentDigits(std::uint64_t q, std::vector<std::uint64_t> ds) : base(q), digits(std::move(ds)) {
    validate();
  }

  static ExponentDigits zero(std::uint64_t q, std::size_t n) { return {q, std::vector<std::uint64_t>(n, 0)}; }

  static ExponentDigits unit(std::uint64_t q, std::size_t n, std::size_t position) {
    auto e = zero(q, n);
    e.digits.at(position) = 1;
    return e;
  }

  static ExponentDigits from_integer(BigInt e, std::uint64_t q, std::size_t n) {
    if (e < 0) throw Error(ErrorCode::DigitOutOfRange, "negative exponent");
    ExponentDigits out = zero(q, n);
    for (std::size_t i = 0; i < n; ++i) {
      out.digits[i] = static_cast<std::uint64_t>(e % q);
      e /= q;
    }
    if (e != 0) throw Error(ErrorCode::DigitOutOfRange, "exponent needs more than n digits");
    return out;
  }

  void validate() const {
    if (base < 2) throw Error(ErrorCode::DigitOutOfRange, "base must be at least 2");
    for (auto d : digits)
      if (d >= base) throw Error(ErrorCode::DigitOutOfRange, "digit " + std::to_string(d) + " >= base");
  }

  std::size_t length() const { return digits.size(); }

  std::uint64_t sum() const { return std::accumulate(digits.begin(), digits.end(), std::uint64_t{0}); }

  std::size_t nonzero_count() const {
    return static_cast<std::size_t>(std::count_if(digits.begin(), digits.end(), [](auto d) { return d != 0; }));
  }

  bool is_zero() const { return nonzero_count() == 0; }

  BigInt to_integer() const {
    BigInt e = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) e = e * base + *it;
    return e;
  }

  /// Schoolbook conversion to decimal on base-10^9 limbs; no big-integer type.
  std::string to_decimal() const {
    constexpr std::uint32_t kLimb = 1000000000U;
    std::vector<std::uint32_t> limbs{0};  // little-endian base 10^9
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
      unsigned __int128 carry = *it;
      for (auto& limb : limbs) {
        unsigned __int128 cur = static_cast<unsigned __int128>(limb) * base + carry;
        limb = static_cast<std::uint32_t>(cur % kLimb);
        carry = cur / kLimb;
      }
      while (carry != 0) {
        limbs.push_back(static_cast<std::uint32_t>(carry % kLimb));
        carry /= kLimb;
      }
    }
    std::string out = std::to_string(limbs.back());
    for (auto it = limbs.rbegin() + 1; it != limbs.rend(); ++it) {
      std::string chunk = std::to_string(*it);
      out += std::string(9 - chunk.size(), '0') + chunk;
    }
    return out;
  }

  friend bool operator==(const ExponentDigits&, const ExponentDigits&) = default;
  friend auto operator<=>(const ExponentDigits&, const ExponentDigits&) = default;
};

}  // namespace kdlog
