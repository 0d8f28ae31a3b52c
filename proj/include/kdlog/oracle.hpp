#pragma once

// Ground-truth engines for checking the structured solvers: generic
// baby-step giant-step, exact element order, exhaustive search over bounded
// digit vectors, and a meet-in-the-middle search for 0/1 digit vectors.

#include "kdlog/bigint.hpp"
#include "kdlog/digits.hpp"
#include "kdlog/error.hpp"
#include "kdlog/exponent.hpp"
#include "kdlog/extfield.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace kdlog {

struct GroupBudget {
  std::uint64_t max_baby_steps = std::uint64_t{1} << 20;
  /// Orders up to this bound are searched exhaustively.
  BigInt max_order = BigInt(std::uint64_t{1} << 20) * (std::uint64_t{1} << 20);
};

/// Least x >= 0 with g^x = y. Uses ceil(sqrt(order_bound)) baby steps, capped
/// by the budget; a capped search that misses reports BudgetExceeded rather
/// than NotInSubgroup.
template <FieldLike F>
BigInt bsgs_dlp(const F& k, const typename F::Element& g, const typename F::Element& y, const BigInt& order_bound,
                const GroupBudget& budget = {}) {
  using E = typename F::Element;
  if (g.is_zero() || y.is_zero()) throw Error(ErrorCode::NotInSubgroup, "zero is in no multiplicative subgroup");
  BigInt m = ceil_sqrt(order_bound);
  if (m < 1) m = 1;
  const bool capped = order_bound > budget.max_order || m > budget.max_baby_steps;
  if (m > budget.max_baby_steps) m = budget.max_baby_steps;
  const auto steps = static_cast<std::uint64_t>(m);

  std::map<E, std::uint64_t> baby;
  E cur = k.one();
  for (std::uint64_t j = 0; j < steps; ++j) {
    baby.emplace(cur, j);
    cur = k.mul(cur, g);
  }
  const E giant = k.inv(cur);  // g^{-m}
  E gamma = y;
  for (std::uint64_t i = 0; i <= steps; ++i) {
    if (auto it = baby.find(gamma); it != baby.end()) return BigInt(i) * steps + it->second;
    gamma = k.mul(gamma, giant);
  }
  if (capped) throw Error(ErrorCode::BudgetExceeded, "group order exceeds the baby-step budget");
  throw Error(ErrorCode::NotInSubgroup, "target is not a power of g");
}

namespace detail {

inline bool probably_prime(const BigInt& n) {
  if (n < 2) return false;
  return boost::multiprecision::miller_rabin_test(n, 32);
}

/// A nontrivial factor of a composite n (Pollard rho, Brent's cycle search).
inline BigInt pollard_brent(const BigInt& n, Rng& rng) {
  if (n % 2 == 0) return 2;
  for (;;) {
    const BigInt c = 1 + random_below(n - 1, rng);
    BigInt y = random_below(n, rng), x, ys, q = 1, g = 1;
    const std::uint64_t m = 64;
    for (std::uint64_t r = 1; g == 1; r *= 2) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
      for (std::uint64_t k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = (y * y + c) % n;
          q = q * (x > y ? x - y : y - x) % n;
        }
        g = boost::multiprecision::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = (ys * ys + c) % n;
        g = boost::multiprecision::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(BigInt n, std::vector<BigInt>& out, Rng& rng) {
  if (n == 1) return;
  if (probably_prime(n)) {
    out.push_back(n);
    return;
  }
  const BigInt d = pollard_brent(n, rng);
  factor_into(d, out, rng);
  factor_into(n / d, out, rng);
}

}  // namespace detail

/// Prime factors of n with multiplicity, ascending: trial division by small
/// primes, then Pollard-Brent.
inline std::vector<BigInt> factor_integer(BigInt n) {
  if (n < 1) throw Error(ErrorCode::BadFactorization, "only positive integers are factored");
  std::vector<BigInt> out;
  for (std::uint32_t p = 2; p < 10000; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      out.emplace_back(p);
      n /= p;
    }
  }
  Rng rng(0xfac7);
  detail::factor_into(n, out, rng);
  std::sort(out.begin(), out.end());
  return out;
}

/// Multiplicative order of g given the full factorization of a multiple of it.
template <FieldLike F>
BigInt element_order(const F& k, const typename F::Element& g, const BigInt& group_order,
                     const std::vector<BigInt>& factorization) {
  if (g.is_zero()) throw Error(ErrorCode::ZeroInverse, "zero has no multiplicative order");
  BigInt product = 1;
  for (const auto& r : factorization) {
    if (!detail::probably_prime(r)) throw Error(ErrorCode::BadFactorization, "factor " + r.str() + " is not prime");
    product *= r;
  }
  if (product != group_order) throw Error(ErrorCode::BadFactorization, "factors do not multiply to the group order");
  if (k.pow(g, group_order) != k.one()) throw Error(ErrorCode::BadFactorization, "g^order != 1");
  BigInt ord = group_order;
  std::vector<BigInt> primes = factorization;
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (const auto& r : primes)
    while (ord % r == 0 && k.pow(g, ord / r) == k.one()) ord /= r;
  return ord;
}

template <FieldLike F>
BigInt element_order(const F& k, const typename F::Element& g) {
  const BigInt n = k.order() - 1;
  return element_order(k, g, n, factor_integer(n));
}

/// Every digit vector with sum <= s_max whose conjugate product equals target.
template <ConjugateFamily Ctx>
std::vector<ExponentDigits> exhaustive_dlp_bounded(const Ctx& ctx, const ExtElement& target, std::uint64_t s_max,
                                                   std::uint64_t budget = 10'000'000) {
  const std::size_t n = ctx.degree();
  const std::uint64_t q = ctx.frobenius_base();
  s_max = std::min<std::uint64_t>(s_max, n * (q - 1));
  if (DigitCountTable(n, q, s_max).cumulative(n, s_max) > budget)
    throw Error(ErrorCode::BudgetExceeded, "too many bounded digit vectors to enumerate");

  std::vector<ExponentDigits> out;
  ExponentDigits cur = ExponentDigits::zero(q, n);
  auto walk = [&](auto&& self, std::size_t i, std::uint64_t left, const ExtElement& acc) -> void {
    if (i == n) {
      if (acc == target) out.push_back(cur);
      return;
    }
    const BasePoly l = ctx.factor_poly(i);
    ExtElement a = acc;
    for (std::uint64_t d = 0; d <= std::min(left, q - 1); ++d) {
      cur.digits[i] = d;
      self(self, i + 1, left - d, a);
      a = ctx.mul_linear(a, l[1], l[0]);
    }
    cur.digits[i] = 0;
  };
  walk(walk, 0, s_max, ctx.one());
  return out;
}

/// e with exactly w digits equal to 1 and the rest 0 (base q, n digits) such
/// that g^e = y. Simplified half split: all left patterns of weight <= w are
/// tabulated, then each right pattern is matched against y g^{-right}.
inline BigInt meet_in_middle_binary(const ExtensionField& k, const ExtElement& g, const ExtElement& y, std::size_t n,
                                    std::size_t w) {
  if (n > 63) throw Error(ErrorCode::TooLarge, "at most 63 digit positions");
  const std::uint64_t q = k.base().size();
  std::vector<ExtElement> conj{g};  // g^{q^i}
  for (std::size_t i = 1; i < n; ++i) conj.push_back(k.pow(conj.back(), q));
  const std::size_t half = n / 2;

  std::multimap<ExtElement, std::uint64_t> left;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << half); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > w) continue;
    ExtElement v = k.one();
    for (std::size_t i = 0; i < half; ++i)
      if (mask >> i & 1U) v = k.mul(v, conj[i]);
    left.emplace(v, mask);
  }
  for (std::uint64_t rmask = 0; rmask < (std::uint64_t{1} << (n - half)); ++rmask) {
    const auto rw = static_cast<std::size_t>(std::popcount(rmask));
    if (rw > w) continue;
    ExtElement v = k.one();
    for (std::size_t i = 0; i < n - half; ++i)
      if (rmask >> i & 1U) v = k.mul(v, conj[half + i]);
    const ExtElement want = k.mul(y, k.inv(v));
    auto [lo, hi] = left.equal_range(want);
    for (auto it = lo; it != hi; ++it) {
      if (static_cast<std::size_t>(std::popcount(it->second)) + rw != w) continue;
      const std::uint64_t full = it->second | (rmask << half);
      BigInt e = 0;
      for (std::size_t i = n; i-- > 0;) e = e * q + (full >> i & 1U);
      return e;
    }
  }
  throw Error(ErrorCode::NotFound, "no weight-w 0/1 digit vector matches");
}

}  // namespace kdlog
