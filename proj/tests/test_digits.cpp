#include "kdlog/digits.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

namespace kdlog {
namespace {

// Calls fn on every length-n base-q digit vector.
template <class Fn>
void for_each_vector(std::size_t n, std::uint64_t q, Fn fn) {
  std::vector<std::uint64_t> v(n, 0);
  for (;;) {
    fn(v);
    std::size_t k = 0;
    while (k < n && ++v[k] == q) v[k++] = 0;
    if (k == n) return;
  }
}

BigInt enumerate_N(std::uint64_t w, std::size_t n, std::uint64_t q) {
  BigInt count = 0;
  for_each_vector(n, q, [&](const auto& v) {
    std::uint64_t s = 0;
    for (auto d : v) s += d;
    if (s == w) ++count;
  });
  return count;
}

TEST(SumOfDigits, Examples) {
  EXPECT_EQ(sum_of_digits(ExponentDigits(5, {1, 0, 2, 0})), 3U);
  EXPECT_EQ(sum_of_digits(ExponentDigits::zero(7, 6)), 0U);
  EXPECT_EQ(sum_of_digits(ExponentDigits(2, {1, 1, 1, 1})), 4U);
}

TEST(ExponentDigits, ConversionsAndValidation) {
  const ExponentDigits e(5, {1, 0, 2, 0});
  EXPECT_EQ(e.to_integer(), 51);
  EXPECT_EQ(e.to_decimal(), "51");
  EXPECT_EQ(ExponentDigits::from_integer(51, 5, 4), e);
  EXPECT_THROW(ExponentDigits(5, {5, 0}), Error);
  EXPECT_THROW(ExponentDigits::from_integer(625, 5, 4), Error);
  EXPECT_EQ(ExponentDigits::zero(31, 15).to_decimal(), "0");

  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t q = 2 + rng() % (std::uint64_t{1} << 40);
    std::vector<std::uint64_t> ds(1 + rng() % 20);
    for (auto& d : ds) d = rng() % q;
    const ExponentDigits x(q, ds);
    EXPECT_EQ(x.to_decimal(), x.to_integer().str());
    EXPECT_EQ(ExponentDigits::from_integer(x.to_integer(), q, ds.size()), x);
  }
}

TEST(CountN, Examples) {
  EXPECT_EQ(count_N(0, 7, 3), 1);
  EXPECT_EQ(enumerate_N(2, 4, 2), 6);
  EXPECT_EQ(count_N(2, 4, 2), 6);
  EXPECT_EQ(enumerate_N(5, 4, 5), 52);
  EXPECT_EQ(count_N(5, 4, 5), 52);
  EXPECT_EQ(count_N(5, 4, 5), binomial(8, 3) - 4 * binomial(3, 3));
}

TEST(CountN, AgreesWithEnumeration) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::uint64_t q = 2; q <= 5; ++q) {
      const DigitCountTable table(n, q, n * (q - 1));
      for (std::uint64_t w = 0; w <= n * (q - 1); ++w) EXPECT_EQ(table.count(n, w), enumerate_N(w, n, q));
    }
}

TEST(CountN, TotalsAndClosedForms) {
  for (std::size_t n = 1; n <= 12; ++n)
    for (std::uint64_t q = 2; q <= 13; ++q) {
      const DigitCountTable table(n, q, n * (q - 1));
      BigInt total = 0;
      for (std::uint64_t w = 0; w <= n * (q - 1); ++w) {
        EXPECT_GE(table.count(n, w), 0);
        total += table.count(n, w);
        if (w < 2 * q) {
          EXPECT_EQ(table.count(n, w), *count_N_closed_form(w, n, q)) << n << " " << q << " " << w;
        }
      }
      EXPECT_EQ(total, big_pow(q, n));
      EXPECT_EQ(table.count(n, 0), 1);
    }
  EXPECT_FALSE(count_N_closed_form(10, 3, 5).has_value());
}

TEST(SampleBoundedSum, Degenerate) {
  Rng rng(2);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(sample_bounded_sum(4, 5, 0, rng), ExponentDigits::zero(5, 4));
}

TEST(SampleBoundedSum, ThreeElementSet) {
  Rng rng(3);
  std::map<std::vector<std::uint64_t>, int> hist;
  const int draws = 30000;
  for (int i = 0; i < draws; ++i) ++hist[sample_bounded_sum(2, 2, 1, rng).digits];
  ASSERT_EQ(hist.size(), 3U);
  for (const auto& [v, c] : hist) EXPECT_NEAR(c, draws / 3.0, 4 * std::sqrt(draws * (1.0 / 3) * (2.0 / 3)));
}

TEST(SampleBoundedSum, ChiSquaredUniformOn70Outcomes) {
  // 70 = sum_{w <= 4} C(w+3, 3) vectors of length 4 over base 5 with sum <= 4.
  std::size_t support = 0;
  for_each_vector(4, 5, [&](const auto& v) {
    if (v[0] + v[1] + v[2] + v[3] <= 4) ++support;
  });
  ASSERT_EQ(support, 70U);

  Rng rng(4);
  const DigitCountTable table(4, 5, 4);
  std::map<std::vector<std::uint64_t>, int> hist;
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) {
    const auto e = sample_bounded_sum(table, 4, rng);
    ASSERT_LE(e.sum(), 4U);
    ++hist[e.digits];
  }
  ASSERT_EQ(hist.size(), 70U);
  const double expected = draws / 70.0;
  double chi2 = 0;
  for (const auto& [v, c] : hist) {
    chi2 += (c - expected) * (c - expected) / expected;
    EXPECT_NEAR(c, expected, 4 * std::sqrt(expected));
  }
  // chi-squared 0.999 quantile with 69 degrees of freedom
  EXPECT_LT(chi2, 111.055);
}

TEST(SampleBoundedSum, MinNonzeroIsUniformOnTheRestrictedSet) {
  std::set<std::vector<std::uint64_t>> support;
  for_each_vector(4, 5, [&](const auto& v) {
    const auto nonzero = std::count_if(v.begin(), v.end(), [](auto d) { return d != 0; });
    if (v[0] + v[1] + v[2] + v[3] <= 5 && nonzero >= 3) support.insert(v);
  });

  Rng rng(9);
  const DigitCountTable table(4, 5, 5);
  std::map<std::vector<std::uint64_t>, int> hist;
  const int draws = 200 * static_cast<int>(support.size());
  for (int i = 0; i < draws; ++i) ++hist[sample_bounded_sum(table, 5, 3, rng).digits];
  ASSERT_EQ(hist.size(), support.size());
  for (const auto& [v, c] : hist) {
    EXPECT_TRUE(support.contains(v));
    EXPECT_NEAR(c, 200, 5 * std::sqrt(200.0));
  }
}

TEST(SampleBoundedSum, MinNonzeroErrors) {
  Rng rng(1);
  const DigitCountTable table(4, 5, 4);
  EXPECT_THROW(sample_bounded_sum(table, 4, 5, rng), Error);  // more than n
  EXPECT_THROW(sample_bounded_sum(table, 2, 3, rng), Error);  // more than the sum allows
  try {
    sample_bounded_sum(table, 4, 4, rng, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
  EXPECT_EQ(sample_bounded_sum(table, 4, 4, rng).digits, (std::vector<std::uint64_t>{1, 1, 1, 1}));
}

TEST(TailRatio, MatchesEnumeration) {
  const std::size_t n = 4;
  const std::uint64_t q = 5;
  BigInt a = 0, b = 0;
  for_each_vector(n, q, [&](const auto& v) {
    std::uint64_t s = 0;
    std::size_t zeros = 0;
    for (auto d : v) {
      s += d;
      zeros += d == 0;
    }
    if (s <= relaxed_sum_bound(n)) {
      ++a;
      if (zeros >= agreement_threshold(n)) ++b;
    }
  });
  const auto tr = tail_ratio(n, q);
  EXPECT_EQ(tr.total, a);
  EXPECT_EQ(tr.exceptional, b);
  EXPECT_EQ(tr.ratio, Rational(17, 122));
}

TEST(TailRatio, SmallAndMonotone) {
  EXPECT_EQ(tail_ratio(1, 2).ratio, Rational(1, 2));
  EXPECT_LT(tail_ratio(30, 31).ratio, tail_ratio(15, 31).ratio);
  EXPECT_THROW(tail_ratio(2000, 1000), Error);
}

TEST(Thresholds, Discretization) {
  EXPECT_EQ(relaxed_sum_bound(15), 19U);
  EXPECT_EQ(agreement_threshold(15), 9U);
  EXPECT_EQ(relaxed_sum_bound(4), 5U);
  EXPECT_EQ(agreement_threshold(4), 3U);
  EXPECT_EQ(agreement_threshold(10000), 5657U);
}

TEST(LemmaBounds, ExactValues) {
  const auto lb = lemma_bounds(50);
  EXPECT_EQ(lb.a_side, BigInt("2049503709637561751443717895527866"));
  EXPECT_EQ(lb.v_min, 29U);
  // Values frozen from an independent exact rational computation.
  for (std::size_t n : {50U, 100U, 200U}) {
    const auto b = lemma_bounds(n);
    EXPECT_FALSE(b.a_side_exceeds) << n;
    EXPECT_TRUE(b.b_side_below_base) << n;
    EXPECT_TRUE(b.b_side_below_linear) << n;
    EXPECT_EQ(b.argmax_v, b.v_min) << n;
  }
}

}  // namespace
}  // namespace kdlog
