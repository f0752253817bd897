#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "radsob/cli.hpp"
#include "radsob/errors.hpp"

using namespace radsob;
using namespace radsob::cli;
using nlohmann::json;

namespace {

RunConfig config(Subcommand s) {
  RunConfig c;
  c.subcommand = s;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST(RunConfig, DefaultsMatchDocumentedValues) {
  const RunConfig c;
  EXPECT_EQ(c.dim, 3);
  EXPECT_EQ(c.k, 2);
  EXPECT_EQ(c.p, 2.0);
  EXPECT_EQ(c.r, 1.0);
  EXPECT_EQ(c.tol, 1e-10);
  EXPECT_EQ(c.samples, 200000u);
  EXPECT_EQ(c.seed, 20240001u);
  EXPECT_EQ(c.corpus, "builtin");
}

TEST(RunConfig, JsonRoundTripIsLossless) {
  RunConfig a;
  EXPECT_EQ(run_config_from_json(to_json(a)), a);
  RunConfig b;
  b.subcommand = Subcommand::Verify;
  b.suite = "hardy";
  b.dim = 5;
  b.order = 4;
  b.k = 3;
  b.p = 2.5;
  b.r = kInfinity;
  b.method = MethodChoice::MonteCarlo;
  b.seed = 0xFFFFFFFFFFFFFFFFULL;
  b.samples = 12345;
  b.tol = 1.0 / 3e9;
  b.corpus = "/tmp/x.json";
  b.format = Format::Csv;
  b.out = "out.csv";
  b.s = -0.1;
  b.budget = 77;
  const auto back = run_config_from_json(to_json(b));
  EXPECT_EQ(back, b);
  EXPECT_EQ(to_json(back), to_json(b));
  EXPECT_THROW(run_config_from_json("[1]"), ConfigError);
  EXPECT_THROW(run_config_from_json(R"({"dim": "three"})"), ConfigError);
  EXPECT_THROW(run_config_from_json(R"({"method": "simpson"})"), ConfigError);
}

TEST(RunConfig, ValidationMirrorsPreconditions) {
  auto bad = [](auto mutate) {
    RunConfig c;
    mutate(c);
    EXPECT_THROW(validate(c), ConfigError);
  };
  bad([](RunConfig& c) { c.dim = 1; });
  bad([](RunConfig& c) { c.k = -1; });
  bad([](RunConfig& c) { c.p = 0.5; });
  bad([](RunConfig& c) { c.r = 0; });
  bad([](RunConfig& c) { c.tol = 0; });
  bad([](RunConfig& c) { c.samples = 0; });
  bad([](RunConfig& c) {
    c.p = 3;
    c.method = MethodChoice::ExactAngular;
  });
  bad([](RunConfig& c) {
    c.subcommand = Subcommand::Verify;
    c.suite = "everything";
  });
  EXPECT_NO_THROW(validate(RunConfig{}));
  EXPECT_EQ(parse_radius("inf"), kInfinity);
  EXPECT_EQ(parse_radius("0.5"), 0.5);
  EXPECT_THROW(parse_radius("1x"), ConfigError);
  EXPECT_THROW(parse_radius("-2"), ConfigError);
}

TEST(RunConfig, AutoMethodFollowsP) {
  RunConfig c;
  EXPECT_EQ(resolve_method(c), AngularMethod::ExactAngular);
  c.p = 3;
  EXPECT_EQ(resolve_method(c), AngularMethod::MonteCarlo);
}

TEST(CmdGram, Examples) {
  auto c = config(Subcommand::Gram);
  c.dim = 3;
  c.order = 2;
  const auto out = cmd_gram(c);
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_NE(out.text.find("[[1,1],[1,3]]"), std::string::npos);
  const auto doc = json::parse(out.text);
  EXPECT_EQ(doc["gamma_inverse"][0][0], "3/2");
  c.dim = 2;
  c.order = 3;
  EXPECT_NE(cmd_gram(c).text.find("[[1,3],[3,12]]"), std::string::npos);
  c.dim = 5;
  c.order = 6;
  c.budget = 100;
  EXPECT_THROW(cmd_gram(c), BudgetExceeded);
  std::ostringstream out_s, err_s;
  EXPECT_EQ(execute(c, out_s, err_s), kExitBudget);
  EXPECT_TRUE(out_s.str().empty());
  EXPECT_FALSE(err_s.str().empty());
}

TEST(CmdVerify, SuitesPassOnBuiltinCorpus) {
  for (const char* suite : {"identities", "hardy", "gram", "whitney"}) {
    auto c = config(Subcommand::Verify);
    c.suite = suite;
    const auto out = cmd_verify(c);
    EXPECT_EQ(out.exit_code, 0) << suite;
    const auto doc = json::parse(out.text);
    EXPECT_EQ(doc["summary"]["failed"], 0) << suite;
    EXPECT_GT(doc["summary"]["passed"].get<int>(), 0) << suite;
  }
}

TEST(CmdVerify, GramSuiteConfirms24SpdMatrices) {
  auto c = config(Subcommand::Verify);
  c.suite = "gram";
  const auto doc = json::parse(cmd_verify(c).text);
  int spd = 0;
  for (const auto& ch : doc["checks"]) {
    if (ch["name"].get<std::string>().rfind("spd/", 0) == 0 && ch["pass"].get<bool>()) ++spd;
  }
  EXPECT_EQ(spd, 24);
}

TEST(CmdVerify, HardyRejectsSBelowRange) {
  auto c = config(Subcommand::Verify);
  c.suite = "hardy";
  c.p = 2;
  c.s = -1 / c.p - 0.1;
  std::ostringstream out, err;
  EXPECT_EQ(execute(c, out, err), kExitConfig);
  EXPECT_TRUE(out.str().empty());
}

TEST(CmdEquiv, ZeroOrderRatioAndMethodMismatch) {
  auto c = config(Subcommand::Equiv);
  c.k = 0;
  const auto doc = json::parse(cmd_equiv(c).text);
  EXPECT_NEAR(doc["ratios"][0]["min"].get<double>(), std::sqrt(4 * std::numbers::pi), 1e-10);
  c.p = 3;
  c.method = MethodChoice::ExactAngular;
  std::ostringstream out, err;
  EXPECT_EQ(execute(c, out, err), kExitConfig);
}

TEST(CmdEquiv, CsvAndFileOutputAreByteIdentical) {
  auto c = config(Subcommand::Equiv);
  c.dim = 2;
  c.k = 1;
  c.p = 3;
  c.samples = 4000;
  for (Format f : {Format::Json, Format::Csv}) {
    c.format = f;
    const auto a = temp_file("radsob_equiv_a");
    const auto b = temp_file("radsob_equiv_b");
    std::ostringstream out, err;
    c.out = a.string();
    ASSERT_EQ(execute(c, out, err), 0);
    c.out = b.string();
    ASSERT_EQ(execute(c, out, err), 0);
    EXPECT_TRUE(out.str().empty());
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_FALSE(slurp(a).empty());
    std::filesystem::remove(a);
    std::filesystem::remove(b);
  }
}

TEST(CmdCorot, ExamplesAndDegenerate) {
  const auto path = temp_file("radsob_corot_corpus.json");
  {
    std::ofstream out(path);
    out << R"([{"terms": [], "label": "zero"}, {"terms": [[1, 0, 1]], "label": "gauss"}])";
  }
  auto c = config(Subcommand::Corot);
  c.corpus = path.string();
  c.k = 0;
  const auto doc = json::parse(cmd_corot(c).text);
  EXPECT_EQ(doc["degenerate"][0], "zero");
  const double r = doc["ratios"][0]["min"].get<double>();
  EXPECT_NEAR(r * r, sphere_area(3) / sphere_area(5), 1e-10);
  c.p = 3;
  std::ostringstream out, err;
  EXPECT_EQ(execute(c, out, err), kExitConfig);
  std::filesystem::remove(path);
}

TEST(CmdMoments, ExactAndMonteCarlo) {
  auto c = config(Subcommand::Moments);
  c.dim = 3;
  c.order = 2;
  c.samples = 50000;
  const auto doc = json::parse(cmd_moments(c).text);
  ASSERT_EQ(doc["moments"].size(), 6u);
  for (const auto& m : doc["moments"]) {
    const double exact = m["exact"].get<double>();
    EXPECT_LE(std::abs(m["mc"].get<double>() - exact), 4 * m["err"].get<double>() + 1e-14);
  }
}

TEST(CmdBounded, ZeroOrderRatio) {
  auto c = config(Subcommand::Bounded);
  c.k = 0;
  const auto doc = json::parse(cmd_bounded(c).text);
  EXPECT_NEAR(doc["ratios"][0]["min"].get<double>(), std::sqrt(2 / sphere_area(3)), 1e-10);
}

TEST(Execute, MissingCorpusIsConfigError) {
  auto c = config(Subcommand::Equiv);
  c.corpus = "/nonexistent/corpus.json";
  std::ostringstream out, err;
  EXPECT_EQ(execute(c, out, err), kExitConfig);
  EXPECT_TRUE(out.str().empty());
}
