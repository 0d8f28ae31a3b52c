#include "kdlog/listdecode.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace kdlog {
namespace {

UniPoly make(const Field& f, std::initializer_list<std::int64_t> cs) {
  std::vector<FieldElement> v;
  for (auto c : cs) v.push_back(f.from_int(c));
  return UniPoly(std::move(v));
}

// Every polynomial of degree <= k, by enumeration.
std::vector<UniPoly> all_polys(const Field& f, std::size_t k) {
  const auto els = f.enumerate();
  std::vector<UniPoly> out;
  std::vector<std::size_t> idx(k + 1, 0);
  for (;;) {
    std::vector<FieldElement> cs;
    for (auto i : idx) cs.push_back(els[i]);
    out.emplace_back(std::move(cs));
    std::size_t c = 0;
    while (c <= k && ++idx[c] == els.size()) idx[c++] = 0;
    if (c > k) return out;
  }
}

void expect_multiplicity(const Field& f, const BivariatePoly& q, const std::vector<Point>& pts, std::size_t m) {
  ASSERT_FALSE(q.is_zero());
  for (const auto& [x, y] : pts)
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t s = 0; r + s < m; ++s) EXPECT_TRUE(hasse_at(f, q, r, s, x, y).is_zero()) << r << "," << s;
}

// Distinct x-coordinates, y random, with t planted on the first `agree` points.
std::vector<Point> planted_points(const Field& f, std::size_t n, const UniPoly& t, std::size_t agree, Rng& rng) {
  auto xs = f.enumerate();
  std::shuffle(xs.begin(), xs.end(), rng);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const FieldElement y = i < agree ? poly::eval(f, t, xs[i]) : f.random(rng);
    pts.emplace_back(xs[i], y);
  }
  return pts;
}

TEST(SelectParams, Examples) {
  const auto p = select_params(15, 4, 9);
  EXPECT_EQ(p.multiplicity, 3U);
  EXPECT_EQ(p.D, 26U);
  EXPECT_EQ(p.monomial_count(), 105U);
  EXPECT_EQ(p.constraint_count(), 90U);

  const auto small = select_params(4, 1, 3);
  EXPECT_EQ(small.multiplicity, 1U);
  EXPECT_EQ(small.D, 2U);

  try {
    select_params(15, 4, 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AgreementTooSmall);
  }
  EXPECT_THROW(select_params(16, 1, 4), Error);
}

TEST(SelectParams, InvariantsHoldAcrossGrid) {
  for (std::size_t n = 1; n <= 40; ++n)
    for (std::size_t k = 0; k <= 6; ++k) {
      const auto a = static_cast<std::size_t>(std::sqrt(static_cast<double>(k * n))) + 1;
      const auto p = select_params(n, k, a);
      EXPECT_GT(a * a * p.multiplicity, k * n * (p.multiplicity + 1));
      EXPECT_EQ(p.D, p.multiplicity * a - 1);
      EXPECT_GT(p.monomial_count(), p.constraint_count());
    }
}

TEST(Interpolate, Examples) {
  const Field f = Field::prime(7);
  std::vector<Point> diag;
  for (int x : {1, 2, 3, 4}) diag.emplace_back(f.from_int(x), f.from_int(x));
  const auto q = interpolate(f, diag, select_params(4, 1, 3));
  ASSERT_FALSE(q.is_zero());
  EXPECT_TRUE(q.compose(f, make(f, {0, 1})).is_zero());

  DecodeParams single{1, 1, 1, 1, 1, 1};
  const std::vector<Point> origin{{f.zero(), f.zero()}};
  const auto q0 = interpolate(f, origin, single);
  ASSERT_FALSE(q0.is_zero());
  EXPECT_TRUE(q0.eval(f, f.zero(), f.zero()).is_zero());
  EXPECT_LE(q0.weighted_degree(), 1);

  const std::vector<Point> dup{{f.one(), f.zero()}, {f.one(), f.one()}};
  EXPECT_THROW(interpolate(f, dup, select_params(2, 1, 2)), Error);
}

TEST(Interpolate, MultiplicityThreeAtFifteenPoints) {
  const Field f = Field::prime(31);
  Rng rng(1);
  const UniPoly t = make(f, {3, 1, 4, 1, 5});
  const auto pts = planted_points(f, 15, t, 9, rng);
  const auto params = select_params(15, 4, 9);
  const auto q = interpolate(f, pts, params);
  EXPECT_LE(q.weighted_degree(), static_cast<std::ptrdiff_t>(params.D));
  expect_multiplicity(f, q, pts, 3);
}

TEST(YRoots, Examples) {
  const Field f = Field::prime(7);
  // (y - (x+1)) (y - 2x) = y^2 - (3x+1) y + 2x^2 + 2x
  BivariatePoly q(1);
  q.set(0, 2, f.one());
  q.set(1, 1, f.from_int(-3));
  q.set(0, 1, f.from_int(-1));
  q.set(2, 0, f.from_int(2));
  q.set(1, 0, f.from_int(2));
  EXPECT_TRUE(q.compose(f, make(f, {1, 1})).is_zero());
  EXPECT_EQ(y_roots(f, q, 1), (std::vector<UniPoly>{make(f, {1, 1}), make(f, {0, 2})}));

  BivariatePoly y(1);
  y.set(0, 1, f.one());
  EXPECT_EQ(y_roots(f, y, 0), std::vector<UniPoly>{UniPoly{}});
  EXPECT_EQ(y_roots(f, y, 3), std::vector<UniPoly>{UniPoly{}});

  BivariatePoly x(1);
  x.set(1, 0, f.one());
  EXPECT_TRUE(y_roots(f, x, 2).empty());
}

TEST(YRoots, ZeroPolynomial) {
  const Field f7 = Field::prime(7);
  EXPECT_EQ(y_roots(f7, BivariatePoly(1), 1).size(), 49U);
  const Field f31 = Field::prime(31);
  try {
    y_roots(f31, BivariatePoly(1), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Degenerate);
  }
}

TEST(ListDecode, PlantedAndFullAgreement) {
  const Field f = Field::prime(31);
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto t = poly::detail::random_poly(f, 5, rng);
    const auto pts = planted_points(f, 15, t, 9, rng);
    const auto out = list_decode(f, pts, 4, 9);
    EXPECT_NE(std::find(out.begin(), out.end(), t), out.end());
    EXPECT_LE(out.size(), 26U / 4);

    const auto all = planted_points(f, 15, t, 15, rng);
    const auto out2 = list_decode(f, all, 4, 9);
    EXPECT_NE(std::find(out2.begin(), out2.end(), t), out2.end());
  }
}

TEST(ListDecode, ExhaustiveLinearOverF5) {
  const Field f = Field::prime(5);
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point> pts;
    for (const auto& x : f.enumerate()) pts.emplace_back(x, f.random(rng));
    const auto out = list_decode(f, pts, 1, 3);
    for (const auto& t : all_polys(f, 1))
      if (agreement(f, t, pts) >= 3) {
        EXPECT_NE(std::find(out.begin(), out.end(), t), out.end());
      }
  }
}

TEST(ListDecode, CompletenessAgainstEnumeration) {
  const std::vector<std::pair<std::uint64_t, std::size_t>> fields{{2, 1}, {3, 1}, {2, 2}, {5, 1},
                                                                    {7, 1}, {2, 3}, {3, 2}, {11, 1}};
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const auto [p, d] = fields[trial % fields.size()];
    const Field f = Field::build(p, d, std::nullopt, 1);
    const std::size_t q = f.size();
    const std::size_t n = 1 + rng() % q;
    const std::size_t k = rng() % 3;
    const auto a = static_cast<std::size_t>(std::sqrt(static_cast<double>(k * n))) + 1;
    if (a > n) continue;
    const auto t = poly::detail::random_poly(f, k + 1, rng);
    const auto pts = planted_points(f, n, t, trial % 2 == 0 ? a : 0, rng);

    const auto params = select_params(n, k, a);
    const auto qq = interpolate(f, pts, params);
    expect_multiplicity(f, qq, pts, params.multiplicity);

    const auto out = list_decode(f, pts, k, a);
    for (const auto& cand : all_polys(f, k))
      if (agreement(f, cand, pts) >= a) {
        EXPECT_NE(std::find(out.begin(), out.end(), cand), out.end()) << "q=" << q << " n=" << n << " k=" << k;
      }
    if (k >= 1) {
      EXPECT_LE(out.size(), params.D / k);
    }
  }
}

}  // namespace
}  // namespace kdlog
