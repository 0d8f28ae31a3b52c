#pragma once

// Dense univariate polynomials over any finite field type satisfying
// FieldLike, with full factorization (squarefree, distinct-degree,
// equal-degree splitting). Everything here is generic so the same code
// factors over F_q and over the Kummer model F_q[x]/(x^n - a).

#include "kdlog/bigint.hpp"
#include "kdlog/error.hpp"
#include "kdlog/exponent.hpp"

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <utility>
#include <vector>

namespace kdlog {

template <class F>
concept FieldLike = requires(const F& f, const typename F::Element& x, Rng& rng, std::int64_t k) {
  { f.zero() } -> std::same_as<typename F::Element>;
  { f.one() } -> std::same_as<typename F::Element>;
  { f.from_int(k) } -> std::same_as<typename F::Element>;
  { f.add(x, x) } -> std::same_as<typename F::Element>;
  { f.sub(x, x) } -> std::same_as<typename F::Element>;
  { f.mul(x, x) } -> std::same_as<typename F::Element>;
  { f.neg(x) } -> std::same_as<typename F::Element>;
  { f.inv(x) } -> std::same_as<typename F::Element>;
  { f.random(rng) } -> std::same_as<typename F::Element>;
  { f.pow(x, BigInt{}) } -> std::same_as<typename F::Element>;
  { f.characteristic() } -> std::convertible_to<std::uint64_t>;
  { f.order() } -> std::convertible_to<BigInt>;
  { x.is_zero() } -> std::convertible_to<bool>;
  { x == x } -> std::convertible_to<bool>;
  { x < x } -> std::convertible_to<bool>;
};

/// Coefficients low-to-high with no trailing zeros; the zero polynomial is
/// the empty sequence and has degree -1.
template <class E>
class DensePoly {
 public:
  DensePoly() = default;
  explicit DensePoly(std::vector<E> coeffs) : c_(std::move(coeffs)) { trim(); }

  bool is_zero() const { return c_.empty(); }
  std::ptrdiff_t degree() const { return static_cast<std::ptrdiff_t>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  const std::vector<E>& coeffs() const { return c_; }
  const E& operator[](std::size_t i) const { return c_[i]; }
  const E& leading() const { return c_.back(); }

  friend bool operator==(const DensePoly&, const DensePoly&) = default;
  friend auto operator<=>(const DensePoly& a, const DensePoly& b) {
    if (auto c = a.c_.size() <=> b.c_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<E> c_;
};

/// Monic irreducible factors with multiplicities, plus the leading
/// coefficient; expanding them reproduces the input exactly.
template <class E>
struct Factorization {
  E leading;
  std::vector<std::pair<DensePoly<E>, std::size_t>> factors;
};

namespace poly {

template <FieldLike F>
using Poly = DensePoly<typename F::Element>;

template <FieldLike F>
typename F::Element coeff(const F& field, const Poly<F>& f, std::size_t i) {
  return i < f.size() ? f[i] : field.zero();
}

template <FieldLike F>
Poly<F> constant(const F&, const typename F::Element& c) {
  return Poly<F>({c});
}

template <FieldLike F>
Poly<F> monomial(const F& field, const typename F::Element& c, std::size_t deg) {
  std::vector<typename F::Element> cs(deg + 1, field.zero());
  cs[deg] = c;
  return Poly<F>(std::move(cs));
}

/// The polynomial x.
template <FieldLike F>
Poly<F> variable(const F& field) {
  return monomial(field, field.one(), 1);
}

/// c1 x + c0.
template <FieldLike F>
Poly<F> linear(const F&, const typename F::Element& c1, const typename F::Element& c0) {
  return Poly<F>({c0, c1});
}

template <FieldLike F>
Poly<F> add(const F& field, const Poly<F>& f, const Poly<F>& g) {
  std::vector<typename F::Element> out(std::max(f.size(), g.size()), field.zero());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field.add(coeff(field, f, i), coeff(field, g, i));
  return Poly<F>(std::move(out));
}

template <FieldLike F>
Poly<F> sub(const F& field, const Poly<F>& f, const Poly<F>& g) {
  std::vector<typename F::Element> out(std::max(f.size(), g.size()), field.zero());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field.sub(coeff(field, f, i), coeff(field, g, i));
  return Poly<F>(std::move(out));
}

template <FieldLike F>
Poly<F> neg(const F& field, const Poly<F>& f) {
  std::vector<typename F::Element> out = f.coeffs();
  for (auto& c : out) c = field.neg(c);
  return Poly<F>(std::move(out));
}

template <FieldLike F>
Poly<F> scale(const F& field, const Poly<F>& f, const typename F::Element& s) {
  std::vector<typename F::Element> out = f.coeffs();
  for (auto& c : out) c = field.mul(c, s);
  return Poly<F>(std::move(out));
}

template <FieldLike F>
Poly<F> mul(const F& field, const Poly<F>& f, const Poly<F>& g) {
  if (f.is_zero() || g.is_zero()) return {};
  std::vector<typename F::Element> out(f.size() + g.size() - 1, field.zero());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero()) continue;
    for (std::size_t j = 0; j < g.size(); ++j) out[i + j] = field.add(out[i + j], field.mul(f[i], g[j]));
  }
  return Poly<F>(std::move(out));
}

template <FieldLike F>
std::pair<Poly<F>, Poly<F>> divrem(const F& field, const Poly<F>& f, const Poly<F>& g) {
  if (g.is_zero()) throw Error(ErrorCode::DivisionByZeroPoly, "divrem by the zero polynomial");
  if (f.degree() < g.degree()) return {Poly<F>{}, f};
  const auto lead_inv = field.inv(g.leading());
  std::vector<typename F::Element> rem = f.coeffs();
  const std::size_t dg = g.size() - 1;
  std::vector<typename F::Element> quo(f.size() - dg, field.zero());
  for (std::size_t k = rem.size(); k-- > dg;) {
    if (rem[k].is_zero()) continue;
    const auto c = field.mul(rem[k], lead_inv);
    quo[k - dg] = c;
    for (std::size_t j = 0; j <= dg; ++j) rem[k - dg + j] = field.sub(rem[k - dg + j], field.mul(c, g[j]));
  }
  rem.resize(dg);
  return {Poly<F>(std::move(quo)), Poly<F>(std::move(rem))};
}

template <FieldLike F>
Poly<F> rem(const F& field, const Poly<F>& f, const Poly<F>& g) {
  return divrem(field, f, g).second;
}

template <FieldLike F>
Poly<F> quo(const F& field, const Poly<F>& f, const Poly<F>& g) {
  return divrem(field, f, g).first;
}

template <FieldLike F>
Poly<F> make_monic(const F& field, const Poly<F>& f) {
  if (f.is_zero()) return f;
  return scale(field, f, field.inv(f.leading()));
}

/// Monic gcd; gcd(0, 0) = 0.
template <FieldLike F>
Poly<F> gcd(const F& field, Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    auto r = rem(field, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(field, a);
}

/// s with s*a = 1 mod m, by extended Euclid. Throws ZeroInverse when
/// gcd(a, m) != 1.
template <FieldLike F>
Poly<F> inverse_mod(const F& field, const Poly<F>& a, const Poly<F>& m) {
  Poly<F> r0 = m, r1 = rem(field, a, m);
  Poly<F> s0, s1 = constant(field, field.one());
  while (!r1.is_zero()) {
    auto [q, r] = divrem(field, r0, r1);
    Poly<F> s = sub(field, s0, mul(field, q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw Error(ErrorCode::ZeroInverse, "element is not invertible modulo m");
  return scale(field, s0, field.inv(r0[0]));
}

template <FieldLike F>
typename F::Element eval(const F& field, const Poly<F>& f, const typename F::Element& x) {
  auto acc = field.zero();
  for (std::size_t i = f.size(); i-- > 0;) acc = field.add(field.mul(acc, x), f[i]);
  return acc;
}

template <FieldLike F>
Poly<F> derivative(const F& field, const Poly<F>& f) {
  if (f.size() <= 1) return {};
  std::vector<typename F::Element> out(f.size() - 1, field.zero());
  for (std::size_t i = 1; i < f.size(); ++i)
    out[i - 1] = field.mul(field.from_int(static_cast<std::int64_t>(i)), f[i]);
  return Poly<F>(std::move(out));
}

template <FieldLike F>
Poly<F> mulmod(const F& field, const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) {
  return rem(field, mul(field, a, b), m);
}

/// f^e mod m, square-and-multiply over the bits of e (high to low).
template <FieldLike F>
Poly<F> powmod(const F& field, const Poly<F>& f, const BigInt& e, const Poly<F>& m) {
  if (m.is_zero()) throw Error(ErrorCode::DivisionByZeroPoly, "powmod modulus is zero");
  if (e < 0) throw Error(ErrorCode::DigitOutOfRange, "negative exponent");
  Poly<F> result = rem(field, constant(field, field.one()), m);
  if (e == 0) return result;
  const Poly<F> base = rem(field, f, m);
  const std::size_t top = boost::multiprecision::msb(e);
  for (std::size_t i = top + 1; i-- > 0;) {
    result = mulmod(field, result, result, m);
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) result = mulmod(field, result, base, m);
  }
  return result;
}

template <FieldLike F>
Poly<F> powmod(const F& field, const Poly<F>& f, std::uint64_t e, const Poly<F>& m) {
  if (m.is_zero()) throw Error(ErrorCode::DivisionByZeroPoly, "powmod modulus is zero");
  Poly<F> result = rem(field, constant(field, field.one()), m);
  Poly<F> base = rem(field, f, m);
  while (e != 0) {
    if (e & 1U) result = mulmod(field, result, base, m);
    e >>= 1U;
    if (e != 0) base = mulmod(field, base, base, m);
  }
  return result;
}

/// f^e mod m with e given by its base-q digits; Horner over the digits so e
/// is never formed as one integer.
template <FieldLike F>
Poly<F> powmod(const F& field, const Poly<F>& f, const ExponentDigits& e, const Poly<F>& m) {
  e.validate();
  Poly<F> result = rem(field, constant(field, field.one()), m);
  const Poly<F> base = rem(field, f, m);
  for (auto it = e.digits.rbegin(); it != e.digits.rend(); ++it) {
    result = powmod(field, result, e.base, m);
    if (*it != 0) result = mulmod(field, result, powmod(field, base, *it, m), m);
  }
  return result;
}

namespace detail {

/// log_p of the field order.
template <FieldLike F>
std::size_t prime_degree(const F& field) {
  BigInt q = field.order();
  const std::uint64_t p = field.characteristic();
  std::size_t m = 0;
  while (q > 1) {
    q /= p;
    ++m;
  }
  return m;
}

/// Input has only exponents divisible by p; returns its p-th root.
template <FieldLike F>
Poly<F> pth_root(const F& field, const Poly<F>& f) {
  const std::uint64_t p = field.characteristic();
  const BigInt root_exp = field.order() / p;
  std::vector<typename F::Element> out;
  for (std::size_t i = 0; i < f.size(); i += p) {
    const auto& c = f[i];
    out.push_back(c.is_zero() ? c : field.pow(c, root_exp));
  }
  return Poly<F>(std::move(out));
}

template <FieldLike F>
void squarefree(const F& field, const Poly<F>& f, std::size_t scale_by,
                std::vector<std::pair<Poly<F>, std::size_t>>& out) {
  if (f.degree() <= 0) return;
  const std::size_t p = field.characteristic();
  const Poly<F> df = derivative(field, f);
  if (df.is_zero()) {
    squarefree(field, pth_root(field, f), scale_by * p, out);
    return;
  }
  Poly<F> c = gcd(field, f, df);
  Poly<F> w = quo(field, f, c);
  std::size_t i = 1;
  while (w.degree() > 0) {
    Poly<F> y = gcd(field, w, c);
    Poly<F> z = quo(field, w, y);
    if (z.degree() > 0) out.emplace_back(make_monic(field, z), i * scale_by);
    ++i;
    w = std::move(y);
    c = quo(field, c, w);
  }
  if (c.degree() > 0) squarefree(field, pth_root(field, make_monic(field, c)), scale_by * p, out);
}

/// Squarefree monic input; returns (product of all irreducible factors of
/// degree d, d).
template <FieldLike F>
std::vector<std::pair<Poly<F>, std::size_t>> distinct_degree(const F& field, Poly<F> f) {
  std::vector<std::pair<Poly<F>, std::size_t>> out;
  const BigInt q = field.order();
  const Poly<F> x = variable(field);
  Poly<F> h = rem(field, x, f);
  for (std::size_t d = 1; f.degree() >= static_cast<std::ptrdiff_t>(2 * d); ++d) {
    h = powmod(field, h, q, f);
    Poly<F> g = gcd(field, f, sub(field, h, x));
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = quo(field, f, g);
      h = rem(field, h, f);
    }
  }
  if (f.degree() > 0) out.emplace_back(f, static_cast<std::size_t>(f.degree()));
  return out;
}

template <FieldLike F>
Poly<F> random_poly(const F& field, std::size_t below_degree, Rng& rng) {
  std::vector<typename F::Element> cs(below_degree, field.zero());
  for (auto& c : cs) c = field.random(rng);
  return Poly<F>(std::move(cs));
}

/// Cantor-Zassenhaus splitting of a monic squarefree product of degree-d
/// irreducibles. Characteristic 2 uses the absolute trace instead of the
/// quadratic-residue map.
template <FieldLike F>
void equal_degree(const F& field, const Poly<F>& f, std::size_t d, Rng& rng, std::vector<Poly<F>>& out) {
  if (f.degree() <= static_cast<std::ptrdiff_t>(d)) {
    out.push_back(f);
    return;
  }
  const BigInt q = field.order();
  const bool even = field.characteristic() == 2;
  const BigInt half_exp = even ? BigInt(0) : (boost::multiprecision::pow(q, static_cast<unsigned>(d)) - 1) / 2;
  const std::size_t trace_len = even ? prime_degree(field) * d : 0;
  for (;;) {
    Poly<F> a = random_poly(field, static_cast<std::size_t>(f.degree()), rng);
    if (a.degree() <= 0) continue;
    Poly<F> b;
    if (even) {
      Poly<F> t = a;
      b = a;
      for (std::size_t i = 1; i < trace_len; ++i) {
        t = mulmod(field, t, t, f);
        b = add(field, b, t);
      }
    } else {
      b = sub(field, powmod(field, a, half_exp, f), constant(field, field.one()));
    }
    Poly<F> g = gcd(field, f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(field, g, d, rng, out);
      equal_degree(field, quo(field, f, g), d, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Squarefree decomposition, then distinct-degree, then equal-degree
/// splitting. Factors come out sorted (degree, then coefficients) with
/// equal factors merged.
template <FieldLike F>
Factorization<typename F::Element> factor(const F& field, const Poly<F>& f, Rng& rng) {
  if (f.is_zero()) throw Error(ErrorCode::DivisionByZeroPoly, "cannot factor the zero polynomial");
  Factorization<typename F::Element> result{f.leading(), {}};
  std::vector<std::pair<Poly<F>, std::size_t>> sqf;
  detail::squarefree(field, make_monic(field, f), 1, sqf);
  for (const auto& [part, mult] : sqf) {
    for (const auto& [block, d] : detail::distinct_degree(field, part)) {
      std::vector<Poly<F>> pieces;
      detail::equal_degree(field, block, d, rng, pieces);
      for (auto& piece : pieces) result.factors.emplace_back(std::move(piece), mult);
    }
  }
  std::sort(result.factors.begin(), result.factors.end());
  std::vector<std::pair<Poly<F>, std::size_t>> merged;
  for (auto& fm : result.factors) {
    if (!merged.empty() && merged.back().first == fm.first)
      merged.back().second += fm.second;
    else
      merged.push_back(std::move(fm));
  }
  result.factors = std::move(merged);
  return result;
}

template <FieldLike F>
Poly<F> expand(const F& field, const Factorization<typename F::Element>& fac) {
  Poly<F> acc = constant(field, fac.leading);
  for (const auto& [g, mult] : fac.factors)
    for (std::size_t i = 0; i < mult; ++i) acc = mul(field, acc, g);
  return acc;
}

/// Roots in the field with multiplicities, ascending by element order.
template <FieldLike F>
std::vector<std::pair<typename F::Element, std::size_t>> roots(const F& field, const Poly<F>& f, Rng& rng) {
  std::vector<std::pair<typename F::Element, std::size_t>> out;
  for (const auto& [g, mult] : factor(field, f, rng).factors)
    if (g.degree() == 1) out.emplace_back(field.neg(g[0]), mult);
  std::sort(out.begin(), out.end());
  return out;
}

/// Rabin's test: x^{Q^n} = x mod f and gcd(x^{Q^{n/r}} - x, f) = 1 for
/// every prime r | n.
template <FieldLike F>
bool is_irreducible(const F& field, const Poly<F>& f) {
  if (f.degree() < 1) throw Error(ErrorCode::WrongDegree, "irreducibility needs degree >= 1");
  const std::size_t n = static_cast<std::size_t>(f.degree());
  if (n == 1) return true;
  const Poly<F> g = make_monic(field, f);
  const BigInt q = field.order();
  const Poly<F> x = variable(field);
  std::vector<Poly<F>> frob{rem(field, x, g)};  // frob[i] = x^{Q^i} mod g
  for (std::size_t i = 1; i <= n; ++i) frob.push_back(powmod(field, frob.back(), q, g));
  if (frob[n] != rem(field, x, g)) return false;
  std::size_t m = n;
  for (std::size_t r = 2; r <= m; ++r) {
    if (m % r != 0) continue;
    while (m % r == 0) m /= r;
    if (gcd(field, sub(field, frob[n / r], x), g).degree() != 0) return false;
  }
  return true;
}

}  // namespace poly
}  // namespace kdlog
