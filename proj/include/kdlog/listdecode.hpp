#pragma once

// Guruswami-Sudan list decoding over a ground field F_q: interpolate a
// bivariate Q(x, y) of bounded (1,k)-weighted degree vanishing to order m at
// every point, then extract all y-roots t(x) of degree <= k by
// Roth-Ruckenstein.

#include "kdlog/bigint.hpp"
#include "kdlog/error.hpp"
#include "kdlog/ff.hpp"
#include "kdlog/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace kdlog {

using UniPoly = DensePoly<FieldElement>;
using Point = std::pair<FieldElement, FieldElement>;

/// Sum of c_ij x^i y^j; only nonzero coefficients are stored.
class BivariatePoly {
 public:
  using Monomial = std::pair<std::size_t, std::size_t>;  // (x-degree, y-degree)

  BivariatePoly() = default;
  explicit BivariatePoly(std::size_t k) : k_(k) {}

  std::size_t k() const { return k_; }
  const std::map<Monomial, FieldElement>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  void set(std::size_t i, std::size_t j, const FieldElement& c) {
    if (c.is_zero())
      coeffs_.erase({i, j});
    else
      coeffs_[{i, j}] = c;
  }
  void accumulate(const Field& f, std::size_t i, std::size_t j, const FieldElement& c) {
    auto it = coeffs_.find({i, j});
    set(i, j, it == coeffs_.end() ? c : f.add(it->second, c));
  }
  FieldElement get(std::size_t i, std::size_t j) const {
    auto it = coeffs_.find({i, j});
    return it == coeffs_.end() ? FieldElement{} : it->second;
  }

  /// max(i + k j); -1 for the zero polynomial.
  std::ptrdiff_t weighted_degree() const {
    std::ptrdiff_t w = -1;
    for (const auto& [mono, c] : coeffs_)
      w = std::max(w, static_cast<std::ptrdiff_t>(mono.first + k_ * mono.second));
    return w;
  }
  std::ptrdiff_t y_degree() const {
    std::ptrdiff_t w = -1;
    for (const auto& [mono, c] : coeffs_) w = std::max(w, static_cast<std::ptrdiff_t>(mono.second));
    return w;
  }

  FieldElement eval(const Field& f, const FieldElement& x, const FieldElement& y) const {
    FieldElement acc = f.zero();
    for (const auto& [mono, c] : coeffs_) {
      const FieldElement xi = mono.first == 0 ? f.one() : f.pow(x, std::uint64_t{mono.first});
      const FieldElement yj = mono.second == 0 ? f.one() : f.pow(y, std::uint64_t{mono.second});
      acc = f.add(acc, f.mul(c, f.mul(xi, yj)));
    }
    return acc;
  }

  /// Q(x, t(x)).
  UniPoly compose(const Field& f, const UniPoly& t) const {
    std::map<std::size_t, UniPoly> by_y;
    for (const auto& [mono, c] : coeffs_) {
      std::vector<FieldElement> cs(mono.first + 1, f.zero());
      cs[mono.first] = c;
      by_y[mono.second] = poly::add(f, by_y[mono.second], UniPoly(std::move(cs)));
    }
    UniPoly acc;
    for (auto it = by_y.rbegin(); it != by_y.rend(); ++it) {
      const std::size_t j = it->first;
      const std::size_t next = std::next(it) == by_y.rend() ? 0 : std::next(it)->first;
      acc = poly::add(f, acc, it->second);
      for (std::size_t s = next; s < j; ++s) acc = poly::mul(f, acc, t);
    }
    return acc;
  }

  friend bool operator==(const BivariatePoly&, const BivariatePoly&) = default;

 private:
  std::size_t k_ = 0;
  std::map<Monomial, FieldElement> coeffs_;
};

struct DecodeParams {
  std::size_t n_points = 0;
  std::size_t k = 0;
  std::size_t agreement = 0;
  std::size_t multiplicity = 0;
  std::size_t D = 0;
  /// Largest y-degree allowed in Q: floor(D/k), or an explicit cap when k = 0.
  std::size_t y_cap = 0;

  std::size_t monomial_count() const {
    if (k == 0) return (D + 1) * (y_cap + 1);
    std::size_t count = 0;
    for (std::size_t j = 0; j <= y_cap; ++j) count += D - k * j + 1;
    return count;
  }
  std::size_t constraint_count() const { return n_points * multiplicity * (multiplicity + 1) / 2; }
};

/// Smallest m with A^2 > k n (1 + 1/m), D = mA - 1; m is raised further until
/// the monomials outnumber the constraints.
inline DecodeParams select_params(std::size_t n_points, std::size_t k, std::size_t agreement) {
  const BigInt a2 = BigInt(agreement) * agreement;
  const BigInt kn = BigInt(k) * n_points;
  if (agreement == 0 || a2 <= kn)
    throw Error(ErrorCode::AgreementTooSmall, "agreement " + std::to_string(agreement) + " is not above sqrt(kn)");
  DecodeParams p;
  p.n_points = n_points;
  p.k = k;
  p.agreement = agreement;
  p.multiplicity = 1;
  // A^2 m > k n (m + 1)
  while (a2 * p.multiplicity <= kn * (p.multiplicity + 1)) ++p.multiplicity;
  for (;;) {
    p.D = p.multiplicity * agreement - 1;
    if (k == 0) {
      p.y_cap = n_points * p.multiplicity * (p.multiplicity + 1) / 2 / (p.D + 1);
    } else {
      p.y_cap = p.D / k;
    }
    if (p.monomial_count() > p.constraint_count()) return p;
    ++p.multiplicity;
  }
}

namespace detail {

/// Binomial coefficients mod p up to a fixed row.
class PascalModP {
 public:
  PascalModP(const Field& f, std::size_t rows) : rows_(rows + 1) {
    for (std::size_t n = 0; n <= rows; ++n) {
      rows_[n].resize(n + 1);
      rows_[n][0] = rows_[n][n] = f.one();
      for (std::size_t r = 1; r < n; ++r) rows_[n][r] = f.add(rows_[n - 1][r - 1], rows_[n - 1][r]);
    }
  }
  const FieldElement& operator()(std::size_t n, std::size_t r) const { return rows_.at(n).at(r); }

 private:
  std::vector<std::vector<FieldElement>> rows_;
};

/// A nonzero solution of rows * v = 0, by reduction to row echelon form
/// (first nonzero pivot in column order).
inline std::vector<FieldElement> kernel_vector(const Field& f, std::vector<std::vector<FieldElement>> rows,
                                               std::size_t cols) {
  std::vector<std::size_t> pivot_col;
  std::vector<bool> is_pivot(cols, false);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const FieldElement inv = f.inv(rows[r][c]);
    for (auto& v : rows[r]) v = f.mul(v, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const FieldElement factor = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
    }
    pivot_col.push_back(c);
    is_pivot[c] = true;
    ++r;
  }
  const auto free = std::find(is_pivot.begin(), is_pivot.end(), false);
  if (free == is_pivot.end()) throw Error(ErrorCode::NoSolution, "constraint matrix has full column rank");
  const auto fc = static_cast<std::size_t>(free - is_pivot.begin());
  std::vector<FieldElement> v(cols, f.zero());
  v[fc] = f.one();
  for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = f.neg(rows[i][fc]);
  return v;
}

/// Q(x, x y + gamma).
inline BivariatePoly shift(const Field& f, const BivariatePoly& q, const FieldElement& gamma, const PascalModP& pascal) {
  BivariatePoly out(q.k());
  for (const auto& [mono, c] : q.coeffs()) {
    const auto [i, j] = mono;
    FieldElement gpow = f.one();  // gamma^{j-l}, l descending
    for (std::size_t l = j + 1; l-- > 0;) {
      out.accumulate(f, i + l, l, f.mul(c, f.mul(pascal(j, l), gpow)));
      gpow = f.mul(gpow, gamma);
    }
  }
  return out;
}

inline BivariatePoly strip_x(const BivariatePoly& q) {
  std::size_t s = SIZE_MAX;
  for (const auto& [mono, c] : q.coeffs()) s = std::min(s, mono.first);
  if (s == 0 || q.is_zero()) return q;
  BivariatePoly out(q.k());
  for (const auto& [mono, c] : q.coeffs()) out.set(mono.first - s, mono.second, c);
  return out;
}

inline void roth_ruckenstein(const Field& f, const BivariatePoly& q, std::size_t u, std::size_t k,
                             std::vector<FieldElement>& prefix, const PascalModP& pascal, Rng& rng,
                             std::set<UniPoly>& out) {
  if (q.is_zero()) {
    // every completion of the prefix is a root
    const std::size_t remaining = k - u + 1;
    if (big_pow(f.size(), remaining) > 256)
      throw Error(ErrorCode::Degenerate, "Q vanishes identically on a branch too wide to enumerate");
    const auto els = f.enumerate();
    std::vector<std::size_t> idx(remaining, 0);
    for (;;) {
      for (std::size_t i = 0; i < remaining; ++i) prefix[u + i] = els[idx[i]];
      out.insert(UniPoly(prefix));
      std::size_t c = 0;
      while (c < remaining && ++idx[c] == els.size()) idx[c++] = 0;
      if (c == remaining) return;
    }
  }
  const BivariatePoly s = strip_x(q);
  std::vector<FieldElement> py(static_cast<std::size_t>(s.y_degree()) + 1, f.zero());
  for (const auto& [mono, c] : s.coeffs())
    if (mono.first == 0) py[mono.second] = c;
  const UniPoly p0(std::move(py));
  if (p0.degree() < 1) return;
  for (const auto& [gamma, mult] : poly::roots(f, p0, rng)) {
    prefix[u] = gamma;
    if (u == k) {
      out.insert(UniPoly(prefix));
    } else {
      roth_ruckenstein(f, shift(f, s, gamma, pascal), u + 1, k, prefix, pascal, rng, out);
    }
  }
  prefix[u] = f.zero();
}

}  // namespace detail

/// Nonzero Q with weighted degree <= D whose Hasse derivatives of total order
/// below m all vanish at every point.
inline BivariatePoly interpolate(const Field& f, const std::vector<Point>& points, const DecodeParams& params) {
  {
    std::set<FieldElement> xs;
    for (const auto& [x, y] : points)
      if (!xs.insert(x).second) throw Error(ErrorCode::NoSolution, "x-coordinates must be distinct");
  }
  std::vector<BivariatePoly::Monomial> monos;
  for (std::size_t j = 0; j <= params.y_cap; ++j)
    for (std::size_t i = 0; i + params.k * j <= params.D; ++i) monos.emplace_back(i, j);

  const std::size_t m = params.multiplicity;
  const detail::PascalModP pascal(f, std::max(params.D, params.y_cap) + 1);
  std::vector<std::vector<FieldElement>> rows;
  for (const auto& [x0, y0] : points) {
    std::vector<FieldElement> xp(params.D + 1), yp(params.y_cap + 1);
    xp[0] = yp[0] = f.one();
    for (std::size_t i = 1; i < xp.size(); ++i) xp[i] = f.mul(xp[i - 1], x0);
    for (std::size_t j = 1; j < yp.size(); ++j) yp[j] = f.mul(yp[j - 1], y0);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t s = 0; r + s < m; ++s) {
        std::vector<FieldElement> row(monos.size(), f.zero());
        for (std::size_t c = 0; c < monos.size(); ++c) {
          const auto [i, j] = monos[c];
          if (i < r || j < s) continue;
          row[c] = f.mul(f.mul(pascal(i, r), pascal(j, s)), f.mul(xp[i - r], yp[j - s]));
        }
        rows.push_back(std::move(row));
      }
  }
  const auto v = detail::kernel_vector(f, std::move(rows), monos.size());
  BivariatePoly q(params.k);
  for (std::size_t c = 0; c < monos.size(); ++c) q.set(monos[c].first, monos[c].second, v[c]);
  return q;
}

/// Hasse derivative D^{(r,s)} Q evaluated at (x0, y0).
inline FieldElement hasse_at(const Field& f, const BivariatePoly& q, std::size_t r, std::size_t s,
                             const FieldElement& x0, const FieldElement& y0) {
  FieldElement acc = f.zero();
  for (const auto& [mono, c] : q.coeffs()) {
    const auto [i, j] = mono;
    if (i < r || j < s) continue;
    const BigInt coef = binomial(static_cast<std::int64_t>(i), static_cast<std::int64_t>(r)) *
                        binomial(static_cast<std::int64_t>(j), static_cast<std::int64_t>(s)) % f.p();
    const FieldElement xr = i == r ? f.one() : f.pow(x0, std::uint64_t{i - r});
    const FieldElement ys = j == s ? f.one() : f.pow(y0, std::uint64_t{j - s});
    const FieldElement term = f.mul(xr, ys);
    acc = f.add(acc, f.mul(c, f.mul(f.from_int(static_cast<std::int64_t>(coef)), term)));
  }
  return acc;
}

/// Every t with deg t <= k and Q(x, t(x)) = 0, sorted.
inline std::vector<UniPoly> y_roots(const Field& f, const BivariatePoly& q, std::size_t k) {
  // Root finding is randomized but its output is not; a fixed stream keeps
  // this function pure.
  Rng rng(0x5eed);
  // shifting never raises the y-degree, so one table serves every branch
  const detail::PascalModP pascal(f, static_cast<std::size_t>(std::max<std::ptrdiff_t>(q.y_degree(), 0)));
  std::vector<FieldElement> prefix(k + 1, f.zero());
  std::set<UniPoly> found;
  detail::roth_ruckenstein(f, q, 0, k, prefix, pascal, rng, found);
  std::vector<UniPoly> out;
  for (const auto& t : found)
    if (q.compose(f, t).is_zero()) out.push_back(t);
  return out;
}

inline std::size_t agreement(const Field& f, const UniPoly& t, const std::vector<Point>& points) {
  std::size_t a = 0;
  for (const auto& [x, y] : points) a += poly::eval(f, t, x) == y;
  return a;
}

/// Superset of the polynomials of degree <= k agreeing with >= A points.
inline std::vector<UniPoly> list_decode(const Field& f, const std::vector<Point>& points, std::size_t k,
                                        std::size_t agreement_bound) {
  const DecodeParams params = select_params(points.size(), k, agreement_bound);
  return y_roots(f, interpolate(f, points, params), k);
}

}  // namespace kdlog
