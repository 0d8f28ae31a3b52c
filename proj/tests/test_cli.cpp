#include "kdlog/digits.hpp"
#include "kdlog/extfield.hpp"
#include "kdlog/instance.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>

#ifndef KDLOG_CLI_PATH
#error "KDLOG_CLI_PATH must name the kdlog executable"
#endif

namespace {

namespace fs = std::filesystem;
using namespace kdlog;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("kdlog_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  CliRun run(const std::string& args) const {
    const auto out = path("stdout.txt"), err = path("stderr.txt");
    const std::string cmd =
        std::string("\"") + KDLOG_CLI_PATH + "\" " + args + " > \"" + out.string() + "\" 2> \"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

  // Writes an instance file for g^e and returns its path.
  fs::path plant(const KummerContext& ctx, const ExponentDigits& e, const std::string& name) const {
    const auto p = path(name);
    spit(p, dump(to_json(describe(ctx, encode_digits(ctx, e)))));
    return p;
  }

  fs::path dir_;
};

std::map<std::string, std::string> report_fields(const std::string& out) {
  std::map<std::string, std::string> m;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);) {
    const auto colon = line.find(':');
    if (colon != std::string::npos) m[line.substr(0, colon)] = line.substr(colon + 1 + (colon + 1 < line.size()));
  }
  return m;
}

KummerContext worked_context() {
  const Field f = Field::prime(5);
  return KummerContext::build(f, 4, f.from_int(2), f.one());
}

}  // namespace

// ---------------------------------------------------------------- count

TEST_F(Cli, CountExamples) {
  EXPECT_EQ(run("count --w 5 --n 4 --q 5").out, "52\n");
  EXPECT_EQ(run("count --w 0 --n 9 --q 3").out, "1\n");
}

TEST_F(Cli, CountTailRatioMatchesEnumeration) {
  // A: sum <= floor(1.32*4) = 5; B: at least ceil(0.5657*4) = 3 zero digits.
  long a = 0, ab = 0;
  for (int v = 0; v < 625; ++v) {
    int s = 0, zeros = 0;
    for (int x = v, i = 0; i < 4; ++i, x /= 5) {
      s += x % 5;
      zeros += x % 5 == 0;
    }
    if (s <= 5) {
      ++a;
      ab += zeros >= 3;
    }
  }
  const Rational expected(ab, a);
  std::ostringstream want;
  want << numerator(expected) << "/" << denominator(expected) << "\n";
  const CliRun r = run("count --tail-ratio --n 4 --q 5");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, want.str());
}

TEST_F(Cli, CountRejectsMissingArguments) {
  EXPECT_EQ(run("count --n 4 --q 5").code, 2);
  EXPECT_EQ(run("count --w 3 --n 4 --q 1").code, 2);
  EXPECT_EQ(run("count --bogus").code, 2);
}

// ---------------------------------------------------------------- gen

TEST_F(Cli, GenKummerExample) {
  const auto inst = path("i.json"), secret = path("s.json");
  const CliRun r = run("gen --kind kummer --p 5 --n 4 --a 2 --b 1 --sum-bound 4 --seed 7 --out " + inst.string() +
                    " --secret-out " + secret.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const InstanceFile f = instance_from_json(parse_json(slurp(inst)));
  EXPECT_EQ(f.kind, Kind::kummer);
  EXPECT_EQ(f.p, 5u);
  EXPECT_EQ(f.n, 4u);
  EXPECT_EQ(f.a, Residues{2});
  EXPECT_EQ(f.b, Residues{1});
  EXPECT_LE(f.target.size(), 4u);  // degree below n
  const SecretFile s = secret_from_json(parse_json(slurp(secret)));
  EXPECT_EQ(s.digits.size(), 4u);
  EXPECT_LE(s.sum, 4u);
  std::uint64_t total = 0;
  for (auto d : s.digits) total += d;
  EXPECT_EQ(total, s.sum);
}

TEST_F(Cli, GenReducibleBinomialIsParameterError) {
  const CliRun r = run("gen --kind kummer --p 5 --n 4 --a 1");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("ReducibleBinomial"), std::string::npos) << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST_F(Cli, GenOtherParameterErrors) {
  EXPECT_EQ(run("gen --kind kummer --p 5 --n 3").code, 2);        // 3 does not divide 4
  EXPECT_EQ(run("gen --kind kummer --p 6 --n 5").code, 2);        // not prime
  EXPECT_EQ(run("gen --kind kummer --p 5").code, 2);              // n missing
  EXPECT_EQ(run("gen --kind artin_schreier --p 7 --a 0").code, 2);
  EXPECT_EQ(run("gen --kind elliptic --p 7").code, 2);
  EXPECT_EQ(run("gen --kind kummer --p 5 --n 4 --a x").code, 2);
}

TEST_F(Cli, GenUnwritableOutputIsIoError) {
  EXPECT_EQ(run("gen --kind kummer --p 5 --n 4 --out " + (dir_ / "missing" / "x.json").string()).code, 3);
}

TEST_F(Cli, GenArtinSchreierWithZeroOffset) {
  const auto inst = path("a.json"), secret = path("s.json");
  const CliRun r = run("gen --kind artin_schreier --p 7 --a 1 --b 0 --sum-bound 6 --out " + inst.string() +
                    " --secret-out " + secret.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const InstanceFile f = instance_from_json(parse_json(slurp(inst)));
  EXPECT_EQ(f.kind, Kind::artin_schreier);
  EXPECT_EQ(f.b, Residues{0});
  EXPECT_LE(secret_from_json(parse_json(slurp(secret))).sum, 6u);
  EXPECT_EQ(run("solve --in " + inst.string() + " --secret-in " + secret.string()).code, 0);
}

TEST_F(Cli, GenMinNonzeroIsRespected) {
  const auto secret = path("s.json");
  ASSERT_EQ(run("gen --kind kummer --p 31 --n 15 --sum-bound 19 --min-nonzero 9 --seed 4 --secret-out " +
                secret.string())
                .code,
            0);
  const SecretFile s = secret_from_json(parse_json(slurp(secret)));
  EXPECT_GE(std::count_if(s.digits.begin(), s.digits.end(), [](auto d) { return d != 0; }), 9);
  EXPECT_LE(s.sum, 19u);
}

TEST_F(Cli, GenIsByteStableUnderFixedSeed) {
  for (const std::string args : {"--kind kummer --p 31 --n 15 --seed 99", "--kind kummer --p 2 --d 3 --n 7 --seed 5",
                                 "--kind artin_schreier --p 11 --a 3 --b 4 --seed 12"}) {
    const CliRun first = run("gen " + args);
    const CliRun second = run("gen " + args);
    ASSERT_EQ(first.code, 0) << args << first.err;
    EXPECT_EQ(first.out, second.out) << args;
  }
  EXPECT_NE(run("gen --kind kummer --p 31 --n 15 --seed 1").out, run("gen --kind kummer --p 31 --n 15 --seed 2").out);
}

// ---------------------------------------------------------------- solve

TEST_F(Cli, SolveWorkedInstance) {
  const KummerContext ctx = worked_context();
  const auto inst = plant(ctx, ExponentDigits::from_integer(51, 5, 4), "w.json");
  const CliRun r = run("solve --in " + inst.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = report_fields(r.out);
  EXPECT_EQ(m.at("digits"), "1 0 2 0");
  EXPECT_EQ(m.at("e"), "51");
  EXPECT_EQ(m.at("method"), "direct");
  EXPECT_TRUE(m.contains("time_ms"));
}

TEST_F(Cli, SolveTargetOneIsExponentZero) {
  const KummerContext ctx = worked_context();
  const auto inst = plant(ctx, ExponentDigits::zero(5, 4), "one.json");
  const CliRun r = run("solve --in " + inst.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(report_fields(r.out).at("e"), "0");
}

TEST_F(Cli, SolveJsonReport) {
  const KummerContext ctx = worked_context();
  const auto inst = plant(ctx, ExponentDigits::from_integer(51, 5, 4), "w.json");
  const CliRun r = run("solve --json --in " + inst.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = parse_json(r.out);
  EXPECT_EQ(j.at("digits"), Json::parse("[1,0,2,0]"));
  EXPECT_EQ(j.at("e"), 51);
  EXPECT_EQ(j.at("method"), "direct");
  EXPECT_TRUE(j.at("verified").get<bool>());
}

TEST_F(Cli, SolveHeavyExponentDirectIsUnsolved) {
  const Field f = Field::prime(31);
  const KummerContext ctx = KummerContext::build(f, 15, f.from_int(3), f.one());
  ExponentDigits e = ExponentDigits::zero(31, 15);
  for (std::size_t i = 0; i < 15; ++i) e.digits[i] = 1 + (i % 2);  // sum 22 = floor(1.5 n)
  ASSERT_EQ(e.sum(), 22u);
  const auto inst = plant(ctx, e, "heavy.json");
  const CliRun r = run("solve --strategy direct --in " + inst.string());
  EXPECT_EQ(r.code, 5) << r.out << r.err;
}

TEST_F(Cli, SolveSecretMismatchExitsFour) {
  const KummerContext ctx = worked_context();
  const auto inst = plant(ctx, ExponentDigits::from_integer(51, 5, 4), "w.json");
  const auto secret = path("s.json");
  spit(secret, dump(to_json(SecretFile{{0, 1, 2, 0}, 3})));
  EXPECT_EQ(run("solve --in " + inst.string() + " --secret-in " + secret.string()).code, 4);
  spit(secret, dump(to_json(SecretFile{{1, 0, 2, 0}, 3})));
  EXPECT_EQ(run("solve --in " + inst.string() + " --secret-in " + secret.string()).code, 0);
}

TEST_F(Cli, SolveInputErrors) {
  EXPECT_EQ(run("solve --in " + path("absent.json").string()).code, 3);
  spit(path("bad.json"), "{\"kind\": ");
  EXPECT_EQ(run("solve --in " + path("bad.json").string()).code, 3);
  spit(path("nokey.json"), "{\"kind\": \"kummer\", \"p\": 5}");
  EXPECT_EQ(run("solve --in " + path("nokey.json").string()).code, 3);
  spit(path("reducible.json"), R"({"kind":"kummer","p":5,"d":1,"n":4,"a":[1],"b":[1],"target":[[1]]})");
  EXPECT_EQ(run("solve --in " + path("reducible.json").string()).code, 2);
  spit(path("zero.json"), R"({"kind":"kummer","p":5,"d":1,"n":4,"a":[2],"b":[1],"target":[]})");
  EXPECT_EQ(run("solve --in " + path("zero.json").string()).code, 2);
  EXPECT_EQ(run("solve --strategy magic --in " + path("zero.json").string()).code, 2);
}

TEST_F(Cli, GenSolveRoundTripBothKinds) {
  const std::vector<std::string> kinds{
      "--kind kummer --p 5 --n 4",          "--kind kummer --p 7 --n 6",
      "--kind kummer --p 13 --n 4",         "--kind kummer --p 2 --d 3 --n 7",
      "--kind kummer --p 31 --n 15",        "--kind artin_schreier --p 5 --a 1 --b 0",
      "--kind artin_schreier --p 7 --a 3 --b 2", "--kind artin_schreier --p 11 --a 2 --b 5",
      "--kind artin_schreier --p 13 --a 1 --b 1", "--kind kummer --p 3 --d 2 --n 4"};
  const auto inst = path("i.json"), secret = path("s.json");
  int runs = 0;
  for (int seed = 0; seed < 5; ++seed) {
    for (const auto& k : kinds) {
      const std::string gen = "gen " + k + " --seed " + std::to_string(seed) + " --out " + inst.string() +
                              " --secret-out " + secret.string();
      const CliRun g = run(gen);
      ASSERT_EQ(g.code, 0) << gen << "\n" << g.err;
      const CliRun s = run("solve --in " + inst.string() + " --secret-in " + secret.string());
      EXPECT_EQ(s.code, 0) << gen << "\n" << s.out << s.err;
      ++runs;
    }
  }
  EXPECT_EQ(runs, 50);
}

TEST_F(Cli, SolveListStrategyOnRelaxedInstance) {
  const auto inst = path("i.json"), secret = path("s.json");
  // (31, 15) with sum bound floor(1.32 n) = 19: try seeds until one needs more than the direct path.
  bool saw_list = false;
  for (int seed = 0; seed < 40 && !saw_list; ++seed) {
    ASSERT_EQ(run("gen --kind kummer --p 31 --n 15 --sum-bound 19 --seed " + std::to_string(seed) + " --out " +
                  inst.string() + " --secret-out " + secret.string())
                  .code,
              0);
    if (secret_from_json(parse_json(slurp(secret))).sum <= 15) continue;
    const CliRun r = run("solve --strategy list --in " + inst.string() + " --secret-in " + secret.string());
    if (r.code == 0) {
      EXPECT_EQ(report_fields(r.out).at("method"), "list_decode");
      saw_list = true;
    } else {
      EXPECT_EQ(r.code, 5) << r.err;
    }
  }
  EXPECT_TRUE(saw_list);
}

// ---------------------------------------------------------------- bench

TEST_F(Cli, BenchHeaderOnlyForZeroTrials) {
  const CliRun r = run("bench --trials 0");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "method,q,n,sum_bound,trials,successes,mean_ms,p95_ms\n");
}

TEST_F(Cli, BenchSmallSuiteRowsAndOrdering) {
  const auto csv = path("bench.csv");
  const CliRun r = run("bench --suite small --trials 3 --seed 5 --csv " + csv.string());
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(slurp(csv));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "method,q,n,sum_bound,trials,successes,mean_ms,p95_ms");
  std::map<std::string, double> mean_at_31;
  std::set<std::string> methods;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    ASSERT_EQ(cells.size(), 8u) << line;
    methods.insert(cells[0]);
    EXPECT_EQ(cells[4], "3");
    if (cells[1] == "31" && cells[2] == "15") mean_at_31[cells[0]] = std::stod(cells[6]);
  }
  EXPECT_EQ(methods, (std::set<std::string>{"solve_bounded", "solve_listdecode", "bsgs_dlp", "meet_in_middle_binary"}));
  ASSERT_TRUE(mean_at_31.contains("solve_bounded") && mean_at_31.contains("bsgs_dlp"));
  EXPECT_LT(mean_at_31["solve_bounded"], mean_at_31["bsgs_dlp"]);
}

TEST_F(Cli, BenchIsDeterministicApartFromTimings) {
  auto strip = [](const std::string& csv) {
    std::istringstream in(csv);
    std::string out;
    for (std::string line; std::getline(in, line);) {
      std::size_t cut = line.size();
      for (int commas = 0; commas < 2 && cut != std::string::npos; ++commas) cut = line.rfind(',', cut - 1);
      out += line.substr(0, cut) + "\n";
    }
    return out;
  };
  EXPECT_EQ(strip(run("bench --trials 2 --seed 3").out), strip(run("bench --trials 2 --seed 3").out));
}

TEST_F(Cli, BenchErrors) {
  EXPECT_EQ(run("bench --suite enormous").code, 2);
  EXPECT_EQ(run("bench --trials 0 --csv " + (dir_ / "missing" / "b.csv").string()).code, 3);
}

// ---------------------------------------------------------------- selftest

TEST_F(Cli, SelftestCorruptTableFailsNamingCriterion) {
  const CliRun r = run("selftest --corrupt-table");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL [9] relation table"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("failed:"), std::string::npos);
}

TEST_F(Cli, HelpAndMissingSubcommand) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("").code, 2);
}

// ---------------------------------------------------------------- instance files

TEST(InstanceJson, RoundTripsThroughText) {
  InstanceFile f;
  f.kind = Kind::kummer;
  f.p = 2;
  f.d = 3;
  f.base_modulus = {1, 1, 0, 1};
  f.n = 7;
  f.a = {0, 1, 0};
  f.b = {1, 0, 0};
  f.target = {{1, 0, 0}, {0, 0, 1}};
  const std::string text = dump(to_json(f));
  const InstanceFile g = instance_from_json(parse_json(text));
  EXPECT_EQ(dump(to_json(g)), text);
  EXPECT_EQ(g.base_modulus, f.base_modulus);
  EXPECT_EQ(g.target, f.target);
}

TEST(InstanceJson, LargeIntegersAreStrings) {
  const std::uint64_t big = (std::uint64_t{1} << 53) + 1;
  EXPECT_TRUE(detail::json_uint(big).is_string());
  EXPECT_TRUE(detail::json_uint(std::uint64_t{1} << 53).is_number());
  const SecretFile s{{big, 0}, big};
  const Json j = to_json(s);
  EXPECT_EQ(j.at("sum"), std::to_string(big));
  EXPECT_EQ(secret_from_json(j).digits, s.digits);
}

TEST(InstanceJson, RejectsMalformedFiles) {
  auto parse = [](const char* text) { return instance_from_json(parse_json(text)); };
  auto code_of = [&](const char* text) {
    try {
      parse(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Unsolvable;
  };
  EXPECT_EQ(code_of("[1,2]"), ErrorCode::ParseError);
  EXPECT_EQ(code_of(R"({"kind":"hyperbolic","p":5})"), ErrorCode::ParseError);
  EXPECT_EQ(code_of(R"({"kind":"kummer","p":-5,"n":4,"a":[2],"b":[1],"target":[]})"), ErrorCode::ParseError);
  EXPECT_EQ(code_of(R"({"kind":"kummer","p":5,"n":4,"a":2,"b":[1],"target":[]})"), ErrorCode::ParseError);
  EXPECT_EQ(code_of(R"({"kind":"kummer","p":"5x","n":4,"a":[2],"b":[1],"target":[]})"), ErrorCode::ParseError);
  EXPECT_EQ(code_of(R"({"kind":"kummer","p":5,"n":4,"a":[2],"b":[1]})"), ErrorCode::ParseError);
  EXPECT_EQ(code_of("{"), ErrorCode::ParseError);
}

TEST(InstanceJson, TargetDegreeMustBeBelowExtensionDegree) {
  const KummerContext ctx = worked_context();
  InstanceFile f = describe(ctx, ctx.one());
  f.target.assign(5, Residues{1});
  EXPECT_THROW(target_of(ctx, f), Error);
}

TEST(InstanceJson, DescribeRebuildsTheSameContext) {
  const Field f = Field::build(3, 2, std::nullopt, 4);
  const KummerContext ctx = KummerContext::build(f, 4, f.generator(), f.one());
  const ExtElement t = encode_digits(ctx, ExponentDigits::from_integer(1234, 9, 4));
  const InstanceFile file = instance_from_json(parse_json(dump(to_json(describe(ctx, t)))));
  const auto rebuilt = std::get<KummerContext>(build_context(file));
  EXPECT_EQ(rebuilt.modulus(), ctx.modulus());
  EXPECT_EQ(target_of(rebuilt, file).repr, t.repr);

  const ASContext as = ASContext::build(7, 3, 2);
  const ExtElement u = encode_digits(as, ExponentDigits::from_integer(50, 7, 7));
  const InstanceFile asf = instance_from_json(parse_json(dump(to_json(describe(as, u)))));
  const auto as2 = std::get<ASContext>(build_context(asf));
  EXPECT_EQ(target_of(as2, asf).repr, u.repr);
}
