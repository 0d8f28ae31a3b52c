#pragma once

// F_q = F_p[t]/(m(t)), q = p^d, with p < 2^31 so every product of two
// residues fits in 64 bits.

#include "kdlog/bigint.hpp"
#include "kdlog/error.hpp"
#include "kdlog/exponent.hpp"
#include "kdlog/poly.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kdlog {

/// Element of F_q as d residues, low-to-high in the generator t. Slots past
/// d stay zero so equality is plain componentwise comparison.
struct FieldElement {
  static constexpr std::size_t kMaxDegree = 16;

  std::array<std::uint32_t, kMaxDegree> coeffs{};

  bool is_zero() const {
    for (auto c : coeffs)
      if (c != 0) return false;
    return true;
  }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

  // Order by the integer code sum c_i p^i: highest index most significant.
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
    for (std::size_t i = kMaxDegree; i-- > 0;)
      if (auto c = a.coeffs[i] <=> b.coeffs[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }
};

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

class Field {
 public:
  using Element = FieldElement;

  static constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 31) - 1;
  static constexpr std::uint64_t kEnumerateLimit = std::uint64_t{1} << 20;

  /// Validated F_{p^d}. Without a modulus and d > 1, samples random monic
  /// polynomials from `seed` until one is irreducible. A supplied modulus is
  /// low-to-high with d + 1 entries and a leading 1.
  static Field build(std::uint64_t p, std::size_t d, std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
                     std::uint64_t seed = 0) {
    if (p > kMaxPrime || !is_prime_u64(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not a prime below 2^31");
    if (d < 1 || d > FieldElement::kMaxDegree)
      throw Error(ErrorCode::DegreeMismatch, "extension degree must be in [1, 16]");
    Field f(static_cast<std::uint32_t>(p), d);
    if (BigInt(f.order()) >= (BigInt(1) << 62)) throw Error(ErrorCode::TooLarge, "field order must be below 2^62");
    if (d == 1) {
      if (modulus && !(modulus->size() == 2 && (*modulus)[1] == 1 && (*modulus)[0] == 0))
        throw Error(ErrorCode::DegreeMismatch, "prime field takes no modulus beyond t");
      return f;
    }
    const Field prime(static_cast<std::uint32_t>(p), 1);
    if (modulus) {
      if (modulus->size() != d + 1 || modulus->back() != 1)
        throw Error(ErrorCode::DegreeMismatch, "modulus must be monic of degree d");
      for (auto c : *modulus)
        if (c >= p) throw Error(ErrorCode::FieldMismatch, "modulus coefficient out of range");
      if (!poly::is_irreducible(prime, prime.lift(*modulus)))
        throw Error(ErrorCode::ReducibleModulus, "modulus is reducible over F_p");
      f.set_modulus(*modulus);
      return f;
    }
    Rng rng(seed);
    std::uniform_int_distribution<std::uint32_t> residue(0, static_cast<std::uint32_t>(p - 1));
    for (;;) {
      std::vector<std::uint32_t> cand(d + 1, 0);
      for (std::size_t i = 0; i < d; ++i) cand[i] = residue(rng);
      cand[d] = 1;
      if (cand[0] == 0) continue;
      if (poly::is_irreducible(prime, prime.lift(cand))) {
        f.set_modulus(cand);
        return f;
      }
    }
  }

  static Field prime(std::uint64_t p) { return build(p, 1); }

  std::uint32_t p() const { return p_; }
  std::uint64_t characteristic() const { return p_; }
  std::size_t degree() const { return d_; }
  std::uint64_t size() const { return q_; }
  BigInt order() const { return BigInt(q_); }
  /// Monic modulus low-to-high (d + 1 entries); empty for a prime field.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Element zero() const { return {}; }
  Element one() const {
    Element e;
    e.coeffs[0] = 1;
    return e;
  }
  /// The class of t in F_p[t]/(m); 1 for a prime field.
  Element generator() const {
    Element e;
    if (d_ == 1) return one();
    e.coeffs[1] = 1;
    return e;
  }
  Element from_int(std::int64_t k) const {
    std::int64_t r = k % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    Element e;
    e.coeffs[0] = static_cast<std::uint32_t>(r);
    return e;
  }
  /// Checked construction from exactly d residues.
  Element element(const std::vector<std::uint32_t>& cs) const {
    if (cs.size() != d_) throw Error(ErrorCode::FieldMismatch, "element needs exactly d coefficients");
    Element e;
    for (std::size_t i = 0; i < d_; ++i) e.coeffs[i] = cs[i];
    validate(e);
    return e;
  }
  std::vector<std::uint32_t> to_coeffs(const Element& x) const { return {x.coeffs.begin(), x.coeffs.begin() + d_}; }

  Element from_code(std::uint64_t code) const {
    Element e;
    for (std::size_t i = 0; i < d_; ++i) {
      e.coeffs[i] = static_cast<std::uint32_t>(code % p_);
      code /= p_;
    }
    return e;
  }
  std::uint64_t code(const Element& x) const {
    std::uint64_t c = 0;
    for (std::size_t i = d_; i-- > 0;) c = c * p_ + x.coeffs[i];
    return c;
  }

  void validate(const Element& x) const {
    for (std::size_t i = 0; i < FieldElement::kMaxDegree; ++i)
      if ((i < d_ && x.coeffs[i] >= p_) || (i >= d_ && x.coeffs[i] != 0))
        throw Error(ErrorCode::FieldMismatch, "element is not in canonical form for this field");
  }

  Element add(const Element& x, const Element& y) const {
    Element r;
    for (std::size_t i = 0; i < d_; ++i) {
      std::uint32_t s = x.coeffs[i] + y.coeffs[i];
      r.coeffs[i] = s >= p_ ? s - p_ : s;
    }
    return r;
  }
  Element sub(const Element& x, const Element& y) const {
    Element r;
    for (std::size_t i = 0; i < d_; ++i)
      r.coeffs[i] = x.coeffs[i] >= y.coeffs[i] ? x.coeffs[i] - y.coeffs[i] : x.coeffs[i] + p_ - y.coeffs[i];
    return r;
  }
  Element neg(const Element& x) const {
    Element r;
    for (std::size_t i = 0; i < d_; ++i) r.coeffs[i] = x.coeffs[i] == 0 ? 0 : p_ - x.coeffs[i];
    return r;
  }
  Element mul(const Element& x, const Element& y) const {
    Element r;
    if (d_ == 1) {
      r.coeffs[0] = static_cast<std::uint32_t>(std::uint64_t{x.coeffs[0]} * y.coeffs[0] % p_);
      return r;
    }
    std::array<std::uint64_t, 2 * FieldElement::kMaxDegree> prod{};
    for (std::size_t i = 0; i < d_; ++i) {
      if (x.coeffs[i] == 0) continue;
      for (std::size_t j = 0; j < d_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x.coeffs[i]} * y.coeffs[j]) % p_;
    }
    // t^d = -(m_0 + ... + m_{d-1} t^{d-1})
    for (std::size_t k = 2 * d_ - 2; k >= d_; --k) {
      const std::uint64_t c = prod[k];
      if (c == 0) continue;
      for (std::size_t j = 0; j < d_; ++j) prod[k - d_ + j] = (prod[k - d_ + j] + c * neg_modulus_[j]) % p_;
    }
    for (std::size_t i = 0; i < d_; ++i) r.coeffs[i] = static_cast<std::uint32_t>(prod[i]);
    return r;
  }
  Element inv(const Element& x) const {
    if (x.is_zero()) throw Error(ErrorCode::ZeroInverse, "inverse of zero");
    return pow(x, q_ - 2);
  }
  Element div(const Element& x, const Element& y) const { return mul(x, inv(y)); }

  Element pow(Element x, std::uint64_t e) const {
    if (e == 0 && x.is_zero()) throw Error(ErrorCode::ZeroToZero, "0^0 is undefined here");
    Element r = one();
    while (e != 0) {
      if (e & 1U) r = mul(r, x);
      e >>= 1U;
      if (e != 0) x = mul(x, x);
    }
    return r;
  }
  Element pow(const Element& x, const BigInt& e) const {
    if (e < 0) throw Error(ErrorCode::DigitOutOfRange, "negative exponent");
    if (e == 0 && x.is_zero()) throw Error(ErrorCode::ZeroToZero, "0^0 is undefined here");
    // x^(q-1) = 1 for x != 0
    if (x.is_zero()) return zero();
    return pow(x, static_cast<std::uint64_t>(e % (q_ - 1)));
  }
  Element pow(const Element& x, const ExponentDigits& e) const {
    e.validate();
    if (e.is_zero() && x.is_zero()) throw Error(ErrorCode::ZeroToZero, "0^0 is undefined here");
    if (x.is_zero()) return zero();
    Element r = one();
    for (auto it = e.digits.rbegin(); it != e.digits.rend(); ++it) r = mul(pow(r, e.base), pow(x, *it));
    return r;
  }

  Element random(Rng& rng) const {
    std::uniform_int_distribution<std::uint32_t> residue(0, p_ - 1);
    Element e;
    for (std::size_t i = 0; i < d_; ++i) e.coeffs[i] = residue(rng);
    return e;
  }

  /// All q elements in increasing code order.
  std::vector<Element> enumerate() const {
    if (q_ > kEnumerateLimit) throw Error(ErrorCode::TooLarge, "field too large to enumerate");
    std::vector<Element> out;
    out.reserve(q_);
    for (std::uint64_t c = 0; c < q_; ++c) out.push_back(from_code(c));
    return out;
  }

  std::string to_string(const Element& x) const {
    if (d_ == 1) return std::to_string(x.coeffs[0]);
    std::string s = "[";
    for (std::size_t i = 0; i < d_; ++i) s += (i ? "," : "") + std::to_string(x.coeffs[i]);
    return s + "]";
  }

  /// Residue sequence (low-to-high) as a polynomial over this field, treating
  /// each residue as a prime-field element.
  DensePoly<Element> lift(const std::vector<std::uint32_t>& residues) const {
    std::vector<Element> cs;
    cs.reserve(residues.size());
    for (auto r : residues) cs.push_back(from_int(r));
    return DensePoly<Element>(std::move(cs));
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_ && a.d_ == b.d_ && a.modulus_ == b.modulus_;
  }

 private:
  Field(std::uint32_t p, std::size_t d) : p_(p), d_(d), q_(1) {
    for (std::size_t i = 0; i < d; ++i) q_ *= p;
  }

  void set_modulus(const std::vector<std::uint32_t>& m) {
    modulus_ = m;
    for (std::size_t j = 0; j < d_; ++j) neg_modulus_[j] = m[j] == 0 ? 0 : p_ - m[j];
  }

  std::uint32_t p_;
  std::size_t d_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
  std::array<std::uint64_t, FieldElement::kMaxDegree> neg_modulus_{};
};

}  // namespace kdlog
