#pragma once

// Discrete logarithms to the base g = alpha + b with small digit sum.
//
// If g^e = f(alpha) with deg f < N, then prod_i L_i(x)^{e_i} = f(x) + M(x) t(x)
// for some t of degree S(e) - N. When S(e) < N, t = 0 and f itself splits into
// conjugate factors whose multiplicities are the digits. When S(e) is a bit
// larger, t agrees with y_i = -f(x_i) / M(x_i) at every x_i with e_i > 0, so t
// is recovered by list decoding. Every answer is re-encoded and compared.

#include "kdlog/digits.hpp"
#include "kdlog/error.hpp"
#include "kdlog/exponent.hpp"
#include "kdlog/extfield.hpp"
#include "kdlog/listdecode.hpp"
#include "kdlog/oracle.hpp"

#include <algorithm>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace kdlog {

enum class Method { direct, boundary, list_decode, fallback };

constexpr std::string_view to_string(Method m) {
  switch (m) {
    case Method::direct: return "direct";
    case Method::boundary: return "boundary";
    case Method::list_decode: return "list_decode";
    case Method::fallback: return "fallback";
  }
  return "unknown";
}

template <ConjugateFamily Ctx>
struct DlpInstance {
  Ctx ctx;
  ExtElement target;

  DlpInstance(Ctx c, ExtElement t) : ctx(std::move(c)), target(std::move(t)) {
    if (target.ctx_id != ctx.id()) throw Error(ErrorCode::ContextMismatch, "target belongs to another context");
    if (target.is_zero()) throw Error(ErrorCode::ZeroTarget, "zero is not a power of g");
  }
};

struct SolveOutcome {
  ExponentDigits digits;
  Method method = Method::direct;
  bool verified = false;
};

/// (x_i, -f(x_i) / M(x_i)) for every conjugate index i.
template <ConjugateFamily Ctx>
std::vector<Point> build_points(const Ctx& ctx, const BasePoly& f) {
  const Field& base = ctx.base();
  const FieldElement scale = base.neg(base.inv(ctx.denominator()));
  std::vector<Point> pts;
  for (std::size_t i = 0; i < ctx.degree(); ++i) {
    const FieldElement& x = ctx.root(i);
    pts.emplace_back(x, base.mul(scale, poly::eval(base, f, x)));
  }
  return pts;
}

template <ConjugateFamily Ctx>
std::vector<Point> build_points(const DlpInstance<Ctx>& inst) {
  return build_points(inst.ctx, inst.target.repr);
}

namespace detail {

enum class ReadOff { ok, not_split, root_not_in_table, inconsistent };

/// Reads digits off the factorization of F = prod L_i^{e_i}.
template <ConjugateFamily Ctx>
ReadOff read_off(const Ctx& ctx, const BasePoly& F, const ExtElement& target, Rng& rng, ExponentDigits& out) {
  if (F.is_zero()) return ReadOff::not_split;
  const Field& base = ctx.base();
  const auto fac = poly::factor(base, F, rng);
  ExponentDigits e = ExponentDigits::zero(ctx.frobenius_base(), ctx.degree());
  for (const auto& [h, mult] : fac.factors) {
    if (h.degree() != 1) return ReadOff::not_split;
    const auto idx = ctx.index_of_root(base.neg(h[0]));
    if (!idx) return ReadOff::root_not_in_table;
    if (mult >= e.base) return ReadOff::inconsistent;
    e.digits[*idx] = mult;
  }
  if (fac.leading != ctx.expected_leading(e)) return ReadOff::inconsistent;
  if (encode_digits(ctx, e) != target) return ReadOff::inconsistent;
  out = std::move(e);
  return ReadOff::ok;
}

inline Error read_off_error(ReadOff r) {
  switch (r) {
    case ReadOff::not_split: return Error(ErrorCode::NotSplit, "representative does not split into linear factors");
    case ReadOff::root_not_in_table: return Error(ErrorCode::RootNotInTable, "a root is not of conjugate form");
    default: return Error(ErrorCode::VerificationFailed, "factorization does not re-encode to the target");
  }
}

template <ConjugateFamily Ctx>
BasePoly lift_by(const Ctx& ctx, const BasePoly& f, const BasePoly& t) {
  const Field& base = ctx.base();
  return poly::add(base, f, poly::mul(base, ctx.modulus(), t));
}

}  // namespace detail

/// Exact recovery when S(e) <= N. The S(e) = N case is handled by adding the
/// boundary multiple of the modulus recovered from the constant term.
template <ConjugateFamily Ctx>
SolveOutcome solve_bounded(const DlpInstance<Ctx>& inst, Rng& rng) {
  const Ctx& ctx = inst.ctx;
  const BasePoly& f = inst.target.repr;
  ExponentDigits e;
  const auto first = detail::read_off(ctx, f, inst.target, rng, e);
  if (first == detail::ReadOff::ok) return {std::move(e), Method::direct, true};
  auto status = first;
  if (const auto lambda = ctx.boundary_lambda(f)) {
    const auto second = detail::read_off(ctx, detail::lift_by(ctx, f, poly::constant(ctx.base(), *lambda)),
                                         inst.target, rng, e);
    if (second == detail::ReadOff::ok) return {std::move(e), Method::boundary, true};
    if (first == detail::ReadOff::not_split) status = second;
  }
  throw detail::read_off_error(status);
}

/// Recovery when S(e) <= floor(1.32 N) and e has at least ceil(0.5657 N)
/// nonzero digits; candidates t = 0, the boundary constant, then the list
/// decoder's output by descending agreement.
template <ConjugateFamily Ctx>
SolveOutcome solve_listdecode(const DlpInstance<Ctx>& inst, Rng& rng) {
  const Ctx& ctx = inst.ctx;
  const Field& base = ctx.base();
  const BasePoly& f = inst.target.repr;
  const std::size_t n = ctx.degree();

  std::vector<std::pair<BasePoly, Method>> cands{{BasePoly{}, Method::direct}};
  if (const auto lambda = ctx.boundary_lambda(f)) cands.emplace_back(poly::constant(base, *lambda), Method::boundary);

  const auto pts = build_points(ctx, f);
  try {
    auto decoded = list_decode(base, pts, 32 * n / 100, agreement_threshold(n));
    std::vector<std::pair<std::size_t, BasePoly>> ranked;
    for (auto& t : decoded) ranked.emplace_back(agreement(base, t, pts), std::move(t));
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& u, const auto& v) { return u.first > v.first; });
    for (auto& [agree, t] : ranked) {
      const bool seen = std::any_of(cands.begin(), cands.end(), [&](const auto& c) { return c.first == t; });
      if (!seen) cands.emplace_back(std::move(t), Method::list_decode);
    }
  } catch (const Error& err) {
    if (err.code() != ErrorCode::AgreementTooSmall) throw;
  }

  for (const auto& [t, method] : cands) {
    ExponentDigits e;
    if (detail::read_off(ctx, detail::lift_by(ctx, f, t), inst.target, rng, e) == detail::ReadOff::ok)
      return {std::move(e), method, true};
  }
  throw Error(ErrorCode::NoCandidate, "no candidate t re-encodes to the target");
}

/// Generic logarithm in <g> by baby-step giant-step.
template <ConjugateFamily Ctx>
SolveOutcome solve_fallback(const DlpInstance<Ctx>& inst, const GroupBudget& budget) {
  const Ctx& ctx = inst.ctx;
  const BigInt group = ctx.order() - 1;
  BigInt x;
  try {
    x = bsgs_dlp(ctx, ctx.generator(), inst.target, group, budget);
  } catch (const Error& err) {
    throw Error(ErrorCode::Unsolvable, std::string("generic fallback failed: ") + err.what());
  }
  auto e = ExponentDigits::from_integer(x, ctx.frobenius_base(), ctx.degree());
  if (encode_digits(ctx, e) != inst.target) throw Error(ErrorCode::VerificationFailed, "fallback logarithm does not verify");
  return {std::move(e), Method::fallback, true};
}

/// Bounded, then list decoding, then the generic fallback; a digit-sum hint
/// only reorders the attempts.
template <ConjugateFamily Ctx>
SolveOutcome solve_auto(const DlpInstance<Ctx>& inst, Rng& rng, std::optional<std::uint64_t> w_hint = std::nullopt,
                        const GroupBudget& budget = {}) {
  const std::size_t n = inst.ctx.degree();
  enum class Step { bounded, list, fallback };
  std::vector<Step> order{Step::bounded, Step::list, Step::fallback};
  if (w_hint && *w_hint > n) order = {Step::list, Step::bounded, Step::fallback};
  if (w_hint && *w_hint > relaxed_sum_bound(n)) order = {Step::fallback, Step::bounded, Step::list};

  std::optional<Error> last;
  for (const auto step : order) {
    try {
      switch (step) {
        case Step::bounded: return solve_bounded(inst, rng);
        case Step::list: return solve_listdecode(inst, rng);
        case Step::fallback: return solve_fallback(inst, budget);
      }
    } catch (const Error& err) {
      last = err;
    }
  }
  throw Error(ErrorCode::Unsolvable, last ? last->what() : "no strategy applied");
}

}  // namespace kdlog
