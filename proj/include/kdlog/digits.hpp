#pragma once

// Counting and sampling digit vectors with bounded digit sum.
//
// N(w, n, q) is the number of (e_0, ..., e_{n-1}) with 0 <= e_i < q and
// sum e_i = w, i.e. the coefficient of x^w in (1 + x + ... + x^{q-1})^n.
// All counts are exact big integers.

#include "kdlog/bigint.hpp"
#include "kdlog/error.hpp"
#include "kdlog/exponent.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace kdlog {

inline std::uint64_t sum_of_digits(const ExponentDigits& e) { return e.sum(); }

/// Sum bound floor(1.32 n) and zero-count threshold ceil(0.5657 n), computed
/// with exact integer arithmetic.
inline std::uint64_t relaxed_sum_bound(std::uint64_t n) { return 132 * n / 100; }
inline std::uint64_t agreement_threshold(std::uint64_t n) { return (5657 * n + 9999) / 10000; }

class DigitCountTable {
 public:
  DigitCountTable(std::size_t n, std::uint64_t q, std::uint64_t w_max) : n_(n), q_(q), w_max_(w_max) {
    if (q < 2) throw Error(ErrorCode::DigitOutOfRange, "base must be at least 2");
    const std::size_t width = static_cast<std::size_t>(w_max) + 1;
    counts_.assign(n + 1, std::vector<BigInt>(width, 0));
    cumulative_.assign(n + 1, std::vector<BigInt>(width, 0));
    counts_[0][0] = 1;
    for (std::size_t w = 0; w < width; ++w) cumulative_[0][w] = 1;
    for (std::size_t m = 1; m <= n; ++m) {
      for (std::size_t w = 0; w < width; ++w) {
        // N(w, m) = S_{m-1}(w) - S_{m-1}(w - q)
        BigInt v = cumulative_[m - 1][w];
        if (w >= q) v -= cumulative_[m - 1][w - q];
        counts_[m][w] = v;
        cumulative_[m][w] = (w == 0 ? BigInt(0) : cumulative_[m][w - 1]) + v;
      }
    }
  }

  std::size_t n() const { return n_; }
  std::uint64_t q() const { return q_; }
  std::uint64_t w_max() const { return w_max_; }

  /// N(w, m, q) for m <= n, w <= w_max.
  const BigInt& count(std::size_t m, std::uint64_t w) const { return counts_.at(m).at(w); }
  /// Number of length-m vectors with digit sum <= w.
  const BigInt& cumulative(std::size_t m, std::uint64_t w) const { return cumulative_.at(m).at(w); }

 private:
  std::size_t n_;
  std::uint64_t q_;
  std::uint64_t w_max_;
  std::vector<std::vector<BigInt>> counts_;
  std::vector<std::vector<BigInt>> cumulative_;
};

inline BigInt count_N(std::uint64_t w, std::size_t n, std::uint64_t q) {
  return DigitCountTable(n, q, w).count(n, w);
}

/// The two closed forms for N(w, n, q): C(w+n-1, n-1) when w < q, and
/// C(w+n-1, n-1) - n C(w-q+n-1, n-1) when q <= w < 2q. Empty elsewhere.
inline std::optional<BigInt> count_N_closed_form(std::uint64_t w, std::size_t n, std::uint64_t q) {
  if (n == 0) return w == 0 ? BigInt(1) : BigInt(0);
  const auto sn = static_cast<std::int64_t>(n);
  const auto sw = static_cast<std::int64_t>(w);
  const auto sq = static_cast<std::int64_t>(q);
  if (w < q) return binomial(sw + sn - 1, sn - 1);
  if (w < 2 * q) return binomial(sw + sn - 1, sn - 1) - BigInt(sn) * binomial(sw - sq + sn - 1, sn - 1);
  return std::nullopt;
}

/// Exactly uniform draw from {digit vectors of length n, base q, sum <= s_max}:
/// each digit is picked with probability proportional to its completion count.
inline ExponentDigits sample_bounded_sum(const DigitCountTable& table, std::uint64_t s_max, Rng& rng) {
  const std::size_t n = table.n();
  const std::uint64_t q = table.q();
  if (s_max > table.w_max()) throw Error(ErrorCode::TooLarge, "sum bound exceeds the count table");
  if (table.cumulative(n, s_max) == 0) throw Error(ErrorCode::EmptySet, "no vector satisfies the bound");
  ExponentDigits out = ExponentDigits::zero(q, n);
  std::uint64_t budget = s_max;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t rest = n - i - 1;
    BigInt r = random_below(table.cumulative(rest + 1, budget), rng);
    std::uint64_t d = 0;
    for (;; ++d) {
      const BigInt& weight = table.cumulative(rest, budget - d);
      if (r < weight) break;
      r -= weight;
    }
    out.digits[i] = d;
    budget -= d;
  }
  return out;
}

inline ExponentDigits sample_bounded_sum(std::size_t n, std::uint64_t q, std::uint64_t s_max, Rng& rng) {
  if (s_max > n * (q - 1)) s_max = n * (q - 1);
  return sample_bounded_sum(DigitCountTable(n, q, s_max), s_max, rng);
}

/// Uniform over {sum <= s_max, at least min_nonzero nonzero digits}, by
/// rejection from the bounded-sum sampler.
inline ExponentDigits sample_bounded_sum(const DigitCountTable& table, std::uint64_t s_max, std::size_t min_nonzero,
                                         Rng& rng, std::size_t max_attempts = 1'000'000) {
  if (min_nonzero > table.n() || min_nonzero > s_max)
    throw Error(ErrorCode::EmptySet, "no vector has that many nonzero digits under the bound");
  for (std::size_t i = 0; i < max_attempts; ++i) {
    auto e = sample_bounded_sum(table, s_max, rng);
    if (e.nonzero_count() >= min_nonzero) return e;
  }
  throw Error(ErrorCode::BudgetExceeded, "rejection sampling did not accept within the attempt budget");
}

/// |A ∩ B| / |A| with A = {sum <= floor(1.32n)} and B = {at least
/// ceil(0.5657n) zero digits}.
struct TailRatio {
  BigInt exceptional;
  BigInt total;
  Rational ratio;
};

inline TailRatio tail_ratio(std::size_t n, std::uint64_t q) {
  if (n == 0 || q < 2) throw Error(ErrorCode::DigitOutOfRange, "tail ratio needs n >= 1, q >= 2");
  if (BigInt(n) * q > 1000000) throw Error(ErrorCode::TooLarge, "n*q above the exact-DP budget");
  const std::size_t smax = relaxed_sum_bound(n);
  const std::size_t zmin = agreement_threshold(n);
  // ways[s][z]: prefixes with digit sum s and z zero digits
  std::vector<std::vector<BigInt>> ways(smax + 1, std::vector<BigInt>(n + 1, 0));
  ways[0][0] = 1;
  for (std::size_t pos = 0; pos < n; ++pos) {
    std::vector<std::vector<BigInt>> next(smax + 1, std::vector<BigInt>(n + 1, 0));
    for (std::size_t z = 0; z <= pos; ++z) {
      // nonzero digit in [1, q-1]: sliding window over s
      BigInt window = 0;
      for (std::size_t s = 0; s <= smax; ++s) {
        if (s >= 1) window += ways[s - 1][z];
        if (s >= q) window -= ways[s - q][z];
        next[s][z] += window;
        next[s][z + 1] += ways[s][z];
      }
    }
    ways = std::move(next);
  }
  TailRatio out{0, 0, 0};
  for (std::size_t s = 0; s <= smax; ++s)
    for (std::size_t z = 0; z <= n; ++z) {
      out.total += ways[s][z];
      if (z >= zmin) out.exceptional += ways[s][z];
    }
  out.ratio = Rational(out.exceptional, out.total);
  return out;
}

/// Exact check of the counting-lemma constants at a given n.
struct LemmaBounds {
  std::size_t n = 0;
  BigInt a_side;              // C(ceil(2.32n), n)
  bool a_side_exceeds = false;  // a_side > 4.883987^n
  BigInt b_side;              // sum_{v >= ceil(0.5657n)} C(n, v) C(floor(1.32n), n-v-1)
  bool b_side_below_base = false;       // b_side < 4.883799^n
  bool b_side_below_linear = false;     // b_side < 4.8838^n * n
  std::size_t argmax_v = 0;
  std::size_t v_min = 0;
};

inline LemmaBounds lemma_bounds(std::size_t n) {
  LemmaBounds out;
  out.n = n;
  const auto sn = static_cast<std::int64_t>(n);
  const std::int64_t top = (232 * sn + 99) / 100;
  out.a_side = binomial(top, sn);
  out.a_side_exceeds = out.a_side * big_pow(10, 6 * n) > big_pow(4883987, n);

  const auto smax = static_cast<std::int64_t>(relaxed_sum_bound(n));
  out.v_min = agreement_threshold(n);
  BigInt best = -1;
  for (std::size_t v = out.v_min; v <= n; ++v) {
    const auto sv = static_cast<std::int64_t>(v);
    const BigInt term = binomial(sn, sv) * binomial(smax, sn - sv - 1);
    out.b_side += term;
    if (term > best) {
      best = term;
      out.argmax_v = v;
    }
  }
  out.b_side_below_base = out.b_side * big_pow(10, 6 * n) < big_pow(4883799, n);
  out.b_side_below_linear = out.b_side * big_pow(10, 4 * n) < big_pow(48838, n) * n;
  return out;
}

}  // namespace kdlog
