#pragma once

// Kummer extensions F_q[x]/(x^n - a) with n | q - 1, and Artin-Schreier
// extensions F_p[x]/(x^p - x - a), together with the table of conjugates of
// the base g = alpha + b.
//
// Both contexts expose the same "conjugate factor family": N linear
// polynomials L_i(x) over the ground field with L_i(alpha) = g^{Q^i}
// (Q = q for Kummer, p for Artin-Schreier), their roots x_i, and the
// constant value M(x_i) of the modulus at those roots. The solver is
// written once against that interface.

#include "kdlog/bigint.hpp"
#include "kdlog/error.hpp"
#include "kdlog/exponent.hpp"
#include "kdlog/ff.hpp"
#include "kdlog/poly.hpp"

#include <atomic>
#include <compare>
#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kdlog {

using BasePoly = DensePoly<FieldElement>;

/// f(alpha) for a ground-field polynomial f of degree below the extension
/// degree. ctx_id ties the element to the context that produced it.
struct ExtElement {
  BasePoly repr;
  std::uint64_t ctx_id = 0;

  bool is_zero() const { return repr.is_zero(); }

  friend bool operator==(const ExtElement& u, const ExtElement& v) { return u.repr == v.repr; }
  friend auto operator<=>(const ExtElement& u, const ExtElement& v) { return u.repr <=> v.repr; }
};

namespace detail {
inline std::uint64_t next_context_id() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}
}  // namespace detail

/// F_q[x]/(M(x)) for a monic irreducible M; satisfies FieldLike so polynomial
/// factorization runs over it unchanged.
class ExtensionField {
 public:
  using Element = ExtElement;

  const Field& base() const { return base_; }
  std::size_t degree() const { return static_cast<std::size_t>(modulus_.degree()); }
  const BasePoly& modulus() const { return modulus_; }
  std::uint64_t id() const { return id_; }

  std::uint64_t characteristic() const { return base_.characteristic(); }
  BigInt order() const { return big_pow(base_.order(), degree()); }

  Element element(const BasePoly& f) const { return {reduce(f.coeffs()), id_}; }
  Element from_base(const FieldElement& c) const { return {BasePoly({c}), id_}; }
  Element zero() const { return {BasePoly{}, id_}; }
  Element one() const { return from_base(base_.one()); }
  Element from_int(std::int64_t k) const { return from_base(base_.from_int(k)); }
  /// alpha = x mod M.
  Element alpha() const { return element(poly::variable(base_)); }

  Element add(const Element& u, const Element& v) const {
    check(u, v);
    return {poly::add(base_, u.repr, v.repr), id_};
  }
  Element sub(const Element& u, const Element& v) const {
    check(u, v);
    return {poly::sub(base_, u.repr, v.repr), id_};
  }
  Element neg(const Element& u) const {
    check(u, u);
    return {poly::neg(base_, u.repr), id_};
  }
  Element mul(const Element& u, const Element& v) const {
    check(u, v);
    if (u.is_zero() || v.is_zero()) return zero();
    std::vector<FieldElement> prod(u.repr.size() + v.repr.size() - 1, base_.zero());
    for (std::size_t i = 0; i < u.repr.size(); ++i) {
      if (u.repr[i].is_zero()) continue;
      for (std::size_t j = 0; j < v.repr.size(); ++j)
        prod[i + j] = base_.add(prod[i + j], base_.mul(u.repr[i], v.repr[j]));
    }
    return {reduce(std::move(prod)), id_};
  }
  /// u * (c1 x + c0) in O(N).
  Element mul_linear(const Element& u, const FieldElement& c1, const FieldElement& c0) const {
    std::vector<FieldElement> prod(u.repr.size() + 1, base_.zero());
    for (std::size_t i = 0; i < u.repr.size(); ++i) {
      prod[i] = base_.add(prod[i], base_.mul(u.repr[i], c0));
      prod[i + 1] = base_.mul(u.repr[i], c1);
    }
    return {reduce(std::move(prod)), id_};
  }
  Element inv(const Element& u) const {
    check(u, u);
    if (u.is_zero()) throw Error(ErrorCode::ZeroInverse, "inverse of zero in the extension");
    return {poly::inverse_mod(base_, u.repr, modulus_), id_};
  }
  bool eq(const Element& u, const Element& v) const {
    check(u, v);
    return u == v;
  }

  Element pow(Element u, std::uint64_t e) const {
    if (e == 0 && u.is_zero()) throw Error(ErrorCode::ZeroToZero, "0^0 is undefined here");
    Element r = one();
    while (e != 0) {
      if (e & 1U) r = mul(r, u);
      e >>= 1U;
      if (e != 0) u = mul(u, u);
    }
    return r;
  }
  Element pow(const Element& u, const BigInt& e) const {
    if (e < 0) throw Error(ErrorCode::DigitOutOfRange, "negative exponent");
    if (e == 0 && u.is_zero()) throw Error(ErrorCode::ZeroToZero, "0^0 is undefined here");
    Element r = one();
    if (e == 0) return r;
    for (std::size_t i = boost::multiprecision::msb(e) + 1; i-- > 0;) {
      r = mul(r, r);
      if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) r = mul(r, u);
    }
    return r;
  }
  /// Generic square-and-multiply driven by base-q digits (Horner), never
  /// forming the exponent as one integer.
  Element pow(const Element& u, const ExponentDigits& e) const {
    e.validate();
    if (e.is_zero() && u.is_zero()) throw Error(ErrorCode::ZeroToZero, "0^0 is undefined here");
    if (u.is_zero()) return zero();
    Element r = one();
    for (auto it = e.digits.rbegin(); it != e.digits.rend(); ++it) {
      r = pow(r, e.base);
      if (*it != 0) r = mul(r, pow(u, *it));
    }
    return r;
  }

  Element random(Rng& rng) const {
    std::vector<FieldElement> cs(degree());
    for (auto& c : cs) c = base_.random(rng);
    return {BasePoly(std::move(cs)), id_};
  }

  std::string to_string(const Element& u) const {
    if (u.is_zero()) return "0";
    std::string s;
    for (std::size_t i = u.repr.size(); i-- > 0;) {
      if (u.repr[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      const bool unit = u.repr[i] == base_.one();
      if (!unit || i == 0) s += base_.to_string(u.repr[i]);
      if (i >= 1) s += std::string(unit ? "" : "*") + "a" + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
  }

 protected:
  ExtensionField(Field base, BasePoly modulus)
      : base_(std::move(base)), modulus_(std::move(modulus)), id_(detail::next_context_id()) {
    for (std::size_t j = 0; j + 1 < modulus_.size(); ++j)
      if (!modulus_[j].is_zero()) tail_.emplace_back(j, base_.neg(modulus_[j]));
  }

  void check(const Element& u, const Element& v) const {
    if (u.ctx_id != id_ || v.ctx_id != id_)
      throw Error(ErrorCode::ContextMismatch, "element belongs to a different extension context");
  }

  Field base_;

 private:
  // x^N = sum_j tail_j x^j; M is sparse for both families.
  BasePoly reduce(std::vector<FieldElement> c) const {
    const std::size_t n = degree();
    for (std::size_t k = c.size(); k-- > n;) {
      if (c[k].is_zero()) continue;
      const FieldElement top = c[k];
      for (const auto& [j, t] : tail_) c[k - n + j] = base_.add(c[k - n + j], base_.mul(top, t));
    }
    if (c.size() > n) c.resize(n);
    return BasePoly(std::move(c));
  }

  BasePoly modulus_;
  std::uint64_t id_;
  std::vector<std::pair<std::size_t, FieldElement>> tail_;
};

/// Interface the solver needs from an extension context.
template <class C>
concept ConjugateFamily = requires(const C& c, std::size_t i, const FieldElement& r, const ExponentDigits& e,
                                   const BasePoly& f) {
  { c.base() } -> std::convertible_to<const Field&>;
  { c.degree() } -> std::convertible_to<std::size_t>;
  { c.frobenius_base() } -> std::convertible_to<std::uint64_t>;
  { c.factor_poly(i) } -> std::same_as<BasePoly>;
  { c.root(i) } -> std::convertible_to<FieldElement>;
  { c.index_of_root(r) } -> std::same_as<std::optional<std::size_t>>;
  { c.denominator() } -> std::convertible_to<FieldElement>;
  { c.expected_leading(e) } -> std::same_as<FieldElement>;
  { c.boundary_lambda(f) } -> std::same_as<std::optional<FieldElement>>;
  { c.frobenius_power(i) } -> std::same_as<ExtElement>;
  { c.generator() } -> std::same_as<ExtElement>;
};

class KummerContext : public ExtensionField {
 public:
  /// F_q[x]/(x^n - a) with base g = alpha + b.
  static KummerContext build(const Field& base, std::size_t n, const FieldElement& a, const FieldElement& b) {
    base.validate(a);
    base.validate(b);
    if (n < 2) throw Error(ErrorCode::NotDividing, "extension degree must be at least 2");
    if (b.is_zero()) throw Error(ErrorCode::ZeroOffset, "b must be nonzero");
    const std::uint64_t q = base.size();
    if ((q - 1) % n != 0)
      throw Error(ErrorCode::NotDividing, std::to_string(n) + " does not divide q-1 = " + std::to_string(q - 1));
    std::vector<FieldElement> m(n + 1, base.zero());
    m[0] = base.neg(a);
    m[n] = base.one();
    BasePoly modulus(std::move(m));
    if (a.is_zero() || !poly::is_irreducible(base, modulus))
      throw Error(ErrorCode::ReducibleBinomial, "x^n - a is reducible over F_q");
    return KummerContext(base, std::move(modulus), n, a, b);
  }

  std::size_t n() const { return n_; }
  const FieldElement& a() const { return a_; }
  const FieldElement& b() const { return b_; }
  const FieldElement& h() const { return h_; }
  /// (h^0, ..., h^{n-1}).
  const std::vector<FieldElement>& conj_table() const { return conj_; }
  const std::map<FieldElement, std::size_t>& lookup() const { return lookup_; }

  std::uint64_t frobenius_base() const { return base_.size(); }
  /// L_i = h^i x + b.
  BasePoly factor_poly(std::size_t i) const { return BasePoly({b_, conj_.at(i)}); }
  /// x_i = -b / h^i.
  const FieldElement& root(std::size_t i) const { return roots_.at(i); }
  std::optional<std::size_t> index_of_root(const FieldElement& r) const {
    if (r.is_zero()) return std::nullopt;
    auto it = lookup_.find(base_.neg(base_.div(b_, r)));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }
  /// (-b)^n - a, the common value of x^n - a at every x_i.
  const FieldElement& denominator() const { return denom_; }
  /// Leading coefficient of prod L_i^{e_i}: h^{sum i e_i}.
  FieldElement expected_leading(const ExponentDigits& e) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < e.digits.size(); ++i) k = (k + (i * (e.digits[i] % n_)) % n_) % n_;
    return conj_[k];
  }
  /// When the digit sum equals n, prod L_i^{e_i} = f + lambda (x^n - a) with
  /// constant term b^n, so lambda = (f_0 - b^n) / a.
  std::optional<FieldElement> boundary_lambda(const BasePoly& f) const {
    const FieldElement f0 = f.is_zero() ? base_.zero() : f[0];
    const FieldElement lambda = base_.div(base_.sub(f0, base_.pow(b_, std::uint64_t{n_})), a_);
    if (lambda.is_zero()) return std::nullopt;
    return lambda;
  }
  /// g^{q^i} = h^i alpha + b, read from the table.
  ExtElement frobenius_power(std::size_t i) const {
    if (i >= n_) throw Error(ErrorCode::IndexOutOfRange, "conjugate index out of range");
    return element(factor_poly(i));
  }
  ExtElement generator() const { return element(factor_poly(0)); }

  /// Test hook: overwrite table entry i with h^{i+1} so the relation table is
  /// wrong at i. Only fault-injection code calls this.
  void corrupt_table_entry(std::size_t i) {
    const std::size_t j = (i + 1) % n_;
    conj_.at(i) = conj_[j];
    roots_.at(i) = roots_[j];
  }

 private:
  KummerContext(const Field& base, BasePoly modulus, std::size_t n, const FieldElement& a, const FieldElement& b)
      : ExtensionField(base, std::move(modulus)), n_(n), a_(a), b_(b) {
    h_ = base_.pow(a_, (base_.size() - 1) / n_);
    FieldElement hi = base_.one();
    for (std::size_t i = 0; i < n_; ++i) {
      conj_.push_back(hi);
      if (!lookup_.emplace(hi, i).second)
        throw Error(ErrorCode::ReducibleBinomial, "h does not have order n");
      roots_.push_back(base_.neg(base_.div(b_, hi)));
      hi = base_.mul(hi, h_);
    }
    if (hi != base_.one()) throw Error(ErrorCode::ReducibleBinomial, "h^n != 1");
    denom_ = base_.sub(base_.pow(base_.neg(b_), std::uint64_t{n_}), a_);
    if (denom_.is_zero()) throw Error(ErrorCode::ReducibleBinomial, "(-b)^n = a");
  }

  std::size_t n_;
  FieldElement a_, b_, h_, denom_;
  std::vector<FieldElement> conj_;
  std::vector<FieldElement> roots_;
  std::map<FieldElement, std::size_t> lookup_;
};

class ASContext : public ExtensionField {
 public:
  /// F_p[x]/(x^p - x - a) with base g = alpha + b; b may be zero.
  static ASContext build(std::uint64_t p, const FieldElement& a, const FieldElement& b) {
    const Field base = Field::prime(p);
    base.validate(a);
    base.validate(b);
    if (a.is_zero()) throw Error(ErrorCode::ZeroConstant, "a must be nonzero");
    std::vector<FieldElement> m(p + 1, base.zero());
    m[0] = base.neg(a);
    m[1] = base.neg(base.one());
    m[p] = base.one();
    return ASContext(base, BasePoly(std::move(m)), a, b);
  }
  static ASContext build(std::uint64_t p, std::int64_t a, std::int64_t b) {
    const Field base = Field::prime(p);
    return build(p, base.from_int(a), base.from_int(b));
  }

  std::uint64_t p() const { return base_.p(); }
  const FieldElement& a() const { return a_; }
  const FieldElement& b() const { return b_; }
  /// (b, b + a, ..., b + (p-1) a).
  const std::vector<FieldElement>& conj_offsets() const { return offsets_; }
  const std::map<FieldElement, std::size_t>& lookup() const { return lookup_; }

  std::uint64_t frobenius_base() const { return base_.p(); }
  /// L_i = x + b + i a.
  BasePoly factor_poly(std::size_t i) const { return BasePoly({offsets_.at(i), base_.one()}); }
  const FieldElement& root(std::size_t i) const { return roots_.at(i); }
  std::optional<std::size_t> index_of_root(const FieldElement& r) const {
    auto it = lookup_.find(base_.neg(r));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }
  /// x^p - x - a at any x in F_p is -a.
  const FieldElement& denominator() const { return denom_; }
  FieldElement expected_leading(const ExponentDigits&) const { return base_.one(); }
  /// The product is monic, so a digit sum of exactly p leaves t = 1.
  std::optional<FieldElement> boundary_lambda(const BasePoly&) const { return base_.one(); }
  /// g^{p^i} = alpha + b + i a.
  ExtElement frobenius_power(std::size_t i) const {
    if (i >= degree()) throw Error(ErrorCode::IndexOutOfRange, "conjugate index out of range");
    return element(factor_poly(i));
  }
  ExtElement generator() const { return element(factor_poly(0)); }

 private:
  ASContext(const Field& base, BasePoly modulus, const FieldElement& a, const FieldElement& b)
      : ExtensionField(base, std::move(modulus)), a_(a), b_(b) {
    denom_ = base_.neg(a_);
    FieldElement off = b_;
    for (std::size_t i = 0; i < base_.p(); ++i) {
      offsets_.push_back(off);
      roots_.push_back(base_.neg(off));
      lookup_.emplace(off, i);
      off = base_.add(off, a_);
    }
  }

  FieldElement a_, b_, denom_;
  std::vector<FieldElement> offsets_;
  std::vector<FieldElement> roots_;
  std::map<FieldElement, std::size_t> lookup_;
};

/// Smallest a (by code) with x^n - a irreducible over the base field.
inline std::optional<FieldElement> find_kummer_constant(const Field& base, std::size_t n) {
  if (n < 2 || (base.size() - 1) % n != 0) return std::nullopt;
  for (std::uint64_t code = 2; code < base.size(); ++code) {
    std::vector<FieldElement> m(n + 1, base.zero());
    m[0] = base.neg(base.from_code(code));
    m[n] = base.one();
    if (poly::is_irreducible(base, BasePoly(std::move(m)))) return base.from_code(code);
  }
  return std::nullopt;
}

/// g^e as the product of conjugates L_i(alpha)^{e_i}.
template <ConjugateFamily Ctx>
ExtElement encode_digits(const Ctx& ctx, const ExponentDigits& e) {
  e.validate();
  if (e.length() != ctx.degree() || e.base != ctx.frobenius_base())
    throw Error(ErrorCode::DigitOutOfRange, "digit vector does not match the extension");
  ExtElement acc = ctx.one();
  for (std::size_t i = 0; i < e.length(); ++i) {
    const std::uint64_t k = e.digits[i];
    if (k == 0) continue;
    const BasePoly l = ctx.factor_poly(i);
    if (k <= 32) {
      for (std::uint64_t j = 0; j < k; ++j) acc = ctx.mul_linear(acc, l[1], l[0]);
    } else {
      acc = ctx.mul(acc, ctx.pow(ctx.element(l), k));
    }
  }
  return acc;
}

/// Generic u^e; the independent route that encode_digits is checked against.
template <ConjugateFamily Ctx>
ExtElement ext_pow(const Ctx& ctx, const ExtElement& u, const ExponentDigits& e) {
  return ctx.pow(u, e);
}

/// x |-> root(x) embedding of F_p[y]/(u(y)) into the Kummer model, where root
/// is a zero of u found by splitting u over the model.
class PrimeModelIsomorphism {
 public:
  PrimeModelIsomorphism(KummerContext ctx, ExtElement root) : ctx_(std::move(ctx)), root_(std::move(root)) {}

  const ExtElement& root() const { return root_; }
  const KummerContext& context() const { return ctx_; }

  /// v(root) for v over F_p (residue coefficients, low-to-high).
  ExtElement operator()(const BasePoly& v) const {
    ExtElement acc = ctx_.zero();
    for (std::size_t i = v.size(); i-- > 0;)
      acc = ctx_.add(ctx_.mul(acc, root_), ctx_.from_base(ctx_.base().from_int(v[i].coeffs[0])));
    return acc;
  }

 private:
  KummerContext ctx_;
  ExtElement root_;
};

/// u is a polynomial over F_p (entries use coeffs[0] only) of degree d*n.
inline PrimeModelIsomorphism embed_from_prime_model(const KummerContext& ctx, const BasePoly& u, Rng& rng) {
  const Field& base = ctx.base();
  if (u.degree() != static_cast<std::ptrdiff_t>(base.degree() * ctx.n()))
    throw Error(ErrorCode::WrongDegree, "u must have degree d*n");
  const Field prime = Field::prime(base.p());
  for (const auto& c : u.coeffs()) prime.validate(c);
  if (!poly::is_irreducible(prime, u)) throw Error(ErrorCode::NotIrreducible, "u is reducible over F_p");
  std::vector<ExtElement> lifted;
  for (const auto& c : u.coeffs()) lifted.push_back(ctx.from_base(base.from_int(c.coeffs[0])));
  const auto rts = poly::roots(ctx, DensePoly<ExtElement>(std::move(lifted)), rng);
  if (rts.empty()) throw Error(ErrorCode::NotIrreducible, "u has no root in the extension");
  return PrimeModelIsomorphism(ctx, rts.front().first);
}

}  // namespace kdlog
