// kdlog: generate, solve, count, benchmark and self-test.
//
// Exit codes: 0 ok, 1 selftest failure, 2 invalid parameters, 3 I/O or
// malformed file, 4 recovered exponent differs from the secret, 5 unsolved.

#include "kdlog/acceptance.hpp"
#include "kdlog/digits.hpp"
#include "kdlog/extfield.hpp"
#include "kdlog/instance.hpp"
#include "kdlog/oracle.hpp"
#include "kdlog/solver.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace kdlog;

enum Exit : int { kOk = 0, kSelftestFailed = 1, kBadParams = 2, kIo = 3, kMismatch = 4, kUnsolved = 5 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path);
}

bool is_unsolved(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotSplit:
    case ErrorCode::RootNotInTable:
    case ErrorCode::VerificationFailed:
    case ErrorCode::NoCandidate:
    case ErrorCode::Unsolvable: return true;
    default: return false;
  }
}

// "2" embeds an integer; "1,0,3" gives the d residues low-to-high.
FieldElement parse_element(const Field& f, const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) parts.push_back(part);
  try {
    if (parts.size() == 1) return f.from_int(std::stoll(parts[0]));
    Residues rs;
    for (const auto& s : parts) rs.push_back(static_cast<std::uint32_t>(std::stoul(s)));
    return f.element(rs);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::ParseError, "cannot parse field element '" + text + "'");
  }
}

int report(const std::exception& e, int code) {
  std::cerr << "error: " << e.what() << "\n";
  return code;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string kind = "kummer";
  std::uint64_t p = 0;
  std::size_t d = 1;
  std::optional<std::size_t> n;
  std::optional<std::string> a, b;
  std::optional<std::uint64_t> sum_bound;
  std::size_t min_nonzero = 0;
  std::uint64_t seed = 1;
  std::string out, secret_out;
};

template <ConjugateFamily Ctx>
void emit_instance(const Ctx& ctx, const GenArgs& g, Rng& rng) {
  const std::size_t len = ctx.degree();
  const std::uint64_t q = ctx.frobenius_base();
  std::uint64_t smax = g.sum_bound.value_or(std::is_same_v<Ctx, ASContext> ? q - 1 : len);
  smax = std::min<std::uint64_t>(smax, len * (q - 1));
  const DigitCountTable table(len, q, smax);
  const ExponentDigits e = sample_bounded_sum(table, smax, g.min_nonzero, rng);
  const ExtElement target = encode_digits(ctx, e);
  const std::string instance = dump(to_json(describe(ctx, target)));
  const std::string secret = dump(to_json(describe(e)));
  write_output(g.out, instance);
  if (!g.secret_out.empty()) write_output(g.secret_out, secret);
}

int cmd_gen(const GenArgs& g) {
  try {
    Rng rng(g.seed);
    const Kind kind = parse_kind(g.kind);
    if (kind == Kind::kummer) {
      if (!g.n) throw Error(ErrorCode::NotDividing, "--n is required for kummer instances");
      const Field base = Field::build(g.p, g.d, std::nullopt, g.seed);
      std::optional<FieldElement> a;
      if (g.a) a = parse_element(base, *g.a);
      else a = find_kummer_constant(base, *g.n);
      if (!a) throw Error(ErrorCode::ReducibleBinomial, "no a makes x^n - a irreducible");
      const FieldElement b = parse_element(base, g.b.value_or("1"));
      emit_instance(KummerContext::build(base, *g.n, *a, b), g, rng);
    } else {
      if (g.d != 1) throw Error(ErrorCode::DegreeMismatch, "artin_schreier instances need --d 1");
      const Field base = Field::prime(g.p);
      emit_instance(ASContext::build(g.p, parse_element(base, g.a.value_or("1")), parse_element(base, g.b.value_or("1"))),
                    g, rng);
    }
  } catch (const IoError& e) {
    return report(e, kIo);
  } catch (const std::exception& e) {
    return report(e, kBadParams);
  }
  return kOk;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string in;
  std::string strategy = "auto";
  std::string secret_in;
  bool json = false;
  std::uint64_t seed = 1;
};

template <ConjugateFamily Ctx>
int solve_with(const Ctx& ctx, const InstanceFile& file, const SolveArgs& s) {
  const DlpInstance<Ctx> inst(ctx, target_of(ctx, file));
  Rng rng(s.seed);
  const auto t0 = std::chrono::steady_clock::now();
  SolveOutcome out;
  try {
    if (s.strategy == "direct") out = solve_bounded(inst, rng);
    else if (s.strategy == "list") out = solve_listdecode(inst, rng);
    else out = solve_auto(inst, rng);
  } catch (const Error& e) {
    if (is_unsolved(e.code())) {
      std::cerr << "unsolved: " << e.what() << "\n";
      return kUnsolved;
    }
    throw;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  std::optional<bool> match;
  if (!s.secret_in.empty()) {
    const SecretFile secret = secret_from_json(parse_json(read_file(s.secret_in)));
    match = secret.digits == out.digits.digits;
  }

  const BigInt e = out.digits.to_integer();
  if (s.json) {
    Json j;
    Json ds = Json::array();
    for (auto d : out.digits.digits) ds.push_back(detail::json_uint(d));
    j["digits"] = ds;
    j["e"] = e > detail::kMaxExactJson ? Json(out.digits.to_decimal()) : Json(static_cast<std::uint64_t>(e));
    j["method"] = std::string(to_string(out.method));
    j["verified"] = out.verified;
    j["time_ms"] = ms;
    if (match) j["secret_match"] = *match;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "digits:";
    for (auto d : out.digits.digits) std::cout << ' ' << d;
    std::cout << "\ne: " << out.digits.to_decimal() << "\nmethod: " << to_string(out.method)
              << "\nverified: " << (out.verified ? "true" : "false") << "\ntime_ms: " << ms << "\n";
    if (match) std::cout << "secret: " << (*match ? "match" : "MISMATCH") << "\n";
  }
  return match && !*match ? kMismatch : kOk;
}

int cmd_solve(const SolveArgs& s) {
  InstanceFile file;
  try {
    file = instance_from_json(parse_json(read_file(s.in)));
  } catch (const IoError& e) {
    return report(e, kIo);
  } catch (const Error& e) {
    return report(e, kIo);
  }
  try {
    return std::visit([&](const auto& ctx) { return solve_with(ctx, file, s); }, build_context(file));
  } catch (const IoError& e) {
    return report(e, kIo);
  } catch (const Error& e) {
    return report(e, e.code() == ErrorCode::ParseError ? kIo : kBadParams);
  }
}

// ---------------------------------------------------------------- count

struct CountArgs {
  std::optional<std::uint64_t> w;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> q;
  bool tail_ratio = false;
};

int cmd_count(const CountArgs& c) {
  try {
    if (!c.n || !c.q) throw Error(ErrorCode::DigitOutOfRange, "--n and --q are required");
    if (*c.q < 2) throw Error(ErrorCode::DigitOutOfRange, "--q must be at least 2");
    if (c.tail_ratio) {
      const auto tr = tail_ratio(*c.n, *c.q);
      std::cout << numerator(tr.ratio) << "/" << denominator(tr.ratio) << "\n";
      return kOk;
    }
    if (!c.w) throw Error(ErrorCode::DigitOutOfRange, "--w is required unless --tail-ratio is given");
    if (BigInt(*c.n) * (*c.w + 1) > 100'000'000) throw Error(ErrorCode::TooLarge, "n*w above the table budget");
    std::cout << count_N(*c.w, *c.n, *c.q) << "\n";
  } catch (const std::exception& e) {
    return report(e, kBadParams);
  }
  return kOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string suite = "small";
  std::size_t trials = 5;
  std::uint64_t seed = 1;
  std::string csv;
};

struct BenchRow {
  std::string method;
  std::uint64_t q;
  std::size_t n;
  std::uint64_t sum_bound;
};

// One timed trial; returns success.
bool bench_trial(const BenchRow& row, Rng& rng, double& ms) {
  const Field f = Field::prime(row.q);
  const auto a = find_kummer_constant(f, row.n);
  const KummerContext ctx = KummerContext::build(f, row.n, *a, f.one());
  ExponentDigits e;
  if (row.method == "meet_in_middle_binary") {
    e = ExponentDigits::zero(row.q, row.n);
    for (std::size_t placed = 0; placed < row.sum_bound;) {
      auto& d = e.digits[rng() % row.n];
      if (d == 0) {
        d = 1;
        ++placed;
      }
    }
  } else {
    e = sample_bounded_sum(row.n, row.q, row.sum_bound, rng);
  }
  const DlpInstance inst(ctx, encode_digits(ctx, e));
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    if (row.method == "solve_bounded") {
      ok = solve_bounded(inst, rng).digits == e;
    } else if (row.method == "solve_listdecode") {
      ok = solve_listdecode(inst, rng).digits == e;
    } else if (row.method == "bsgs_dlp") {
      const GroupBudget budget{std::uint64_t{1} << 12, BigInt(1) << 24};
      const BigInt x = bsgs_dlp(ctx, ctx.generator(), inst.target, ctx.order() - 1, budget);
      ok = ctx.pow(ctx.generator(), x) == inst.target;
    } else {
      ok = meet_in_middle_binary(ctx, ctx.generator(), inst.target, row.n, row.sum_bound) == e.to_integer();
    }
  } catch (const Error&) {
    ok = false;
  }
  ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return ok;
}

int cmd_bench(const BenchArgs& b) {
  std::vector<BenchRow> rows{
      {"solve_bounded", 5, 4, 4},         {"solve_bounded", 7, 6, 6},          {"solve_bounded", 31, 15, 15},
      {"solve_listdecode", 7, 6, 7},      {"solve_listdecode", 31, 15, 19},    {"bsgs_dlp", 5, 4, 4},
      {"bsgs_dlp", 7, 3, 3},              {"bsgs_dlp", 31, 15, 15},            {"meet_in_middle_binary", 5, 4, 2},
      {"meet_in_middle_binary", 7, 6, 3}, {"meet_in_middle_binary", 31, 15, 4}};
  if (b.suite == "medium") {
    rows.insert(rows.end(), {{"solve_bounded", 13, 4, 4},
                             {"solve_listdecode", 13, 4, 5},
                             {"bsgs_dlp", 13, 4, 4},
                             {"meet_in_middle_binary", 13, 4, 2},
                             {"solve_bounded", 61, 30, 30},
                             {"solve_listdecode", 61, 30, 39}});
  } else if (b.suite != "small") {
    std::cerr << "error: unknown suite '" << b.suite << "'\n";
    return kBadParams;
  }

  std::ostringstream csv;
  csv << "method,q,n,sum_bound,trials,successes,mean_ms,p95_ms\n";
  if (b.trials > 0) {
    for (const auto& row : rows) {
      std::vector<double> times;
      std::size_t successes = 0;
      for (std::size_t i = 0; i < b.trials; ++i) {
        Rng rng(b.seed ^ i);
        double ms = 0;
        successes += bench_trial(row, rng, ms);
        times.push_back(ms);
      }
      std::sort(times.begin(), times.end());
      double mean = 0;
      for (double t : times) mean += t;
      mean /= static_cast<double>(times.size());
      const std::size_t p95 = (95 * times.size() + 99) / 100 - 1;
      char buf[256];
      std::snprintf(buf, sizeof buf, "%s,%llu,%zu,%llu,%zu,%zu,%.3f,%.3f\n", row.method.c_str(),
                    static_cast<unsigned long long>(row.q), row.n, static_cast<unsigned long long>(row.sum_bound),
                    b.trials, successes, mean, times[p95]);
      csv << buf;
    }
  }
  try {
    write_output(b.csv, csv.str());
  } catch (const IoError& e) {
    return report(e, kIo);
  }
  return kOk;
}

// ---------------------------------------------------------------- selftest

int cmd_selftest(bool full, bool corrupt) {
  acceptance::Options opt;
  opt.scale = full ? acceptance::Scale::full : acceptance::Scale::small;
  opt.corrupt_table = corrupt;
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = acceptance::run_all(opt, [](const acceptance::Result& r) {
    std::cout << acceptance::format(r) << std::endl;
  });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::size_t passed = 0;
  std::string failed;
  for (const auto& r : results) {
    if (r.passed) ++passed;
    else failed += (failed.empty() ? "" : ",") + std::to_string(r.id);
  }
  std::printf("selftest: %zu/%zu passed in %.2f s%s\n", passed, results.size(), secs,
              failed.empty() ? "" : ("; failed: " + failed).c_str());
  return failed.empty() ? kOk : kSelftestFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete logarithms with small digit sum in Kummer and Artin-Schreier extensions"};
  app.require_subcommand(1);
  int code = kOk;

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "sample an instance with bounded digit sum");
  g->add_option("--kind", gen.kind, "kummer or artin_schreier")->check(CLI::IsMember({"kummer", "artin_schreier"}));
  g->add_option("--p", gen.p, "characteristic")->required();
  g->add_option("--d", gen.d, "degree of the ground field over F_p");
  g->add_option("--n", gen.n, "extension degree (kummer)");
  g->add_option("--a", gen.a, "field constant: an integer or d comma-separated residues");
  g->add_option("--b", gen.b, "offset of g = alpha + b");
  g->add_option("--sum-bound", gen.sum_bound, "largest digit sum");
  g->add_option("--min-nonzero", gen.min_nonzero, "fewest nonzero digits");
  g->add_option("--seed", gen.seed);
  g->add_option("--out", gen.out, "instance file (default stdout)");
  g->add_option("--secret-out", gen.secret_out, "secret exponent file");
  g->callback([&] { code = cmd_gen(gen); });

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "recover the exponent of an instance");
  s->add_option("--in", solve.in, "instance file")->required();
  s->add_option("--strategy", solve.strategy)->check(CLI::IsMember({"direct", "list", "auto"}));
  s->add_option("--secret-in", solve.secret_in, "compare against this secret file");
  s->add_flag("--json", solve.json);
  s->add_option("--seed", solve.seed, "seed for polynomial factorization");
  s->callback([&] { code = cmd_solve(solve); });

  CountArgs count;
  auto* c = app.add_subcommand("count", "exact digit-sum counts");
  c->add_option("--w", count.w);
  c->add_option("--n", count.n);
  c->add_option("--q", count.q);
  c->add_flag("--tail-ratio", count.tail_ratio);
  c->callback([&] { code = cmd_count(count); });

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "time the solvers against generic baselines");
  b->add_option("--suite", bench.suite, "small or medium");
  b->add_option("--trials", bench.trials);
  b->add_option("--seed", bench.seed);
  b->add_option("--csv", bench.csv, "output path (default stdout)");
  b->callback([&] { code = cmd_bench(bench); });

  bool full = false, corrupt = false;
  auto* t = app.add_subcommand("selftest", "run the acceptance checks");
  t->add_flag("--full", full, "full sample counts");
  t->add_flag("--corrupt-table", corrupt, "fault injection: corrupt one relation-table entry")->group("");
  t->callback([&] { code = cmd_selftest(full, corrupt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadParams;
  }
  return code;
}
