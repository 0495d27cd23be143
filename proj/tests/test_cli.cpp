#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "netlat/cli.hpp"

using namespace netlat;
using cli::RunConfig;

namespace {

cli::Report run_words(const std::string &line) {
  return cli::run(cli::parse_args(cli::split_words(line)));
}

std::string fixture(const std::string &name) {
  return std::string(NETLAT_FIXTURE_DIR) + "/" + name;
}

} // namespace

TEST(Cli, ParseArgs) {
  const auto c = cli::parse_args(cli::split_words(
      "verify --q 7 --n 3 --m 1 --samples 5 --seed 9 --allow-excluded"));
  EXPECT_EQ(c.command, "verify");
  EXPECT_EQ(c.q, 7u);
  EXPECT_EQ(c.samples, 5u);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_TRUE(c.allow_excluded);
  EXPECT_EQ(cli::parse_args({"census"}).seed, cli::kDefaultSeed);
  EXPECT_THROW(cli::parse_args({"bogus"}), ConfigError);
  EXPECT_THROW(cli::parse_args({"census", "--q", "x"}), ConfigError);
  EXPECT_THROW(cli::parse_args({}), ConfigError);
  EXPECT_THROW(cli::parse_args({"census", "--mode", "fast"}), ConfigError);
}

TEST(Cli, CensusPasses) {
  const auto r = run_words("census --q 4");
  EXPECT_EQ(r.exit_code, cli::kPass);
  EXPECT_EQ(r.status(), "pass");
  ASSERT_EQ(r.body["results"].size(), 1u);
  EXPECT_EQ(r.body["results"][0]["members"].size(), 5u);
  EXPECT_FALSE(r.body["hypothesis"]["excluded"].get<bool>());
}

TEST(Cli, HypothesisGate) {
  auto r = run_words("census --q 3");
  EXPECT_EQ(r.exit_code, cli::kConfig);
  EXPECT_EQ(r.status(), "config_error");
  EXPECT_TRUE(r.body["results"].empty());

  r = run_words("census --q 3 --allow-excluded");
  EXPECT_EQ(r.exit_code, cli::kViolation);
  EXPECT_TRUE(r.body["hypothesis"]["excluded"].get<bool>());
  EXPECT_FALSE(r.body["hypothesis"]["note"].get<std::string>().empty());

  EXPECT_EQ(run_words("verify --q 5 --n 3 --m 1").exit_code, cli::kConfig);
  EXPECT_EQ(run_words("verify --q 3 --n 2 --m 1").exit_code, cli::kConfig);
  EXPECT_EQ(run_words("verify --q 2 --n 2 --m 2").exit_code, cli::kConfig);
  EXPECT_EQ(run_words("equiv --q 2 --n 3 --m 1").exit_code, cli::kConfig);
}

TEST(Cli, ConfigErrors) {
  EXPECT_EQ(run_words("census --q 6").exit_code, cli::kConfig);
  EXPECT_EQ(run_words("census --q 5 --n 3").exit_code, cli::kConfig);
  EXPECT_EQ(run_words("verify --q 7 --budget 0").exit_code, cli::kConfig);
  EXPECT_EQ(run_words("nets --q 3 --pattern 11/01").exit_code, cli::kConfig);
  EXPECT_EQ(run_words("thm3 --lattice " + fixture("n5.lat")).exit_code, cli::kConfig);
  EXPECT_EQ(run_words("verify --q 7 --samples 0 --gens 99999999999999999999").exit_code,
            cli::kConfig);
}

TEST(Cli, CapExceededMapsToBudgetExit) {
  const auto r = run_words("fixed --q 3 --n 3 --m 1 --cap 10");
  EXPECT_EQ(r.exit_code, cli::kBudget);
  EXPECT_EQ(r.status(), "budget_exceeded");
}

TEST(Cli, BudgetWitnessReplays) {
  const auto r = run_words("verify --q 7 --samples 0 --budget 1000");
  ASSERT_EQ(r.exit_code, cli::kBudget);
  std::string replay;
  for (const auto &x : r.body["results"])
    if (x.contains("witness")) {
      replay = x["witness"]["replay"];
      break;
    }
  ASSERT_FALSE(replay.empty());
  RunConfig c;
  c.replay = replay;
  const auto again = cli::run(c);
  EXPECT_EQ(again.exit_code, cli::kBudget);
  EXPECT_EQ(again.body["replay_of"], replay);
  ASSERT_EQ(again.body["results"].size(), 1u);
  EXPECT_EQ(again.body["results"][0]["status"], "budget_exceeded");
}

TEST(Cli, FailureWitnessReplays) {
  const auto r = run_words("census --q 3 --allow-excluded");
  ASSERT_EQ(r.exit_code, cli::kViolation);
  const std::string replay = r.body["results"][0]["witness"]["replay"];
  RunConfig c;
  c.replay = replay;
  const auto again = cli::run(c);
  EXPECT_EQ(again.exit_code, cli::kViolation);
  EXPECT_EQ(again.body["results"], r.body["results"]);
}

TEST(Cli, ReportsAreDeterministic) {
  for (const std::string line :
       {"census --q 4", "verify --q 5 --n 2 --m 1 --samples 3 --seed 5", "fixed --q 3 --n 2 --m 2",
        "thm3 --q 4", "autcheck --q 2", "nets --q 3 --n 3 --m 1 --pattern 101/010/001"}) {
    const auto a = run_words(line), b = run_words(line);
    EXPECT_EQ(a.exit_code, cli::kPass) << line;
    EXPECT_EQ(a.body.dump(), b.body.dump()) << line;
  }
}

TEST(Cli, SeedChangesRandomFamilies) {
  const auto a = run_words("verify --q 7 --n 2 --m 1 --samples 2 --seed 1");
  const auto b = run_words("verify --q 7 --n 2 --m 1 --samples 2 --seed 2");
  EXPECT_NE(a.body["results"].dump(), b.body["results"].dump());
}

TEST(Cli, ThmThreeOnFixtures) {
  const auto r = run_words("thm3 --lattice " + fixture("m3.lat"));
  EXPECT_EQ(r.exit_code, cli::kViolation);
  ASSERT_TRUE(r.body["results"][0].contains("witness"));
  const auto b3 = run_words("thm3 --lattice " + fixture("boolean3.lat"));
  EXPECT_NE(b3.exit_code, cli::kConfig);
}

TEST(Cli, WritesReportFile) {
  const std::string path = ::testing::TempDir() + "netlat_report.json";
  const auto r = run_words("fixed --q 5 --n 2 --m 1 --out " + path);
  EXPECT_EQ(r.exit_code, cli::kPass);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), r.text());
  const auto parsed = cli::json::parse(ss.str());
  EXPECT_EQ(parsed["schema_version"], cli::kSchemaVersion);
  EXPECT_TRUE(parsed.contains("timings"));
  std::remove(path.c_str());
  EXPECT_EQ(run_words("fixed --q 5 --n 2 --m 1 --out /nonexistent/dir/r.json").exit_code,
            cli::kConfig);
}

TEST(Cli, BodyKeyOrder) {
  const auto r = run_words("autcheck --q 2");
  std::vector<std::string> keys;
  for (auto it = r.body.begin(); it != r.body.end(); ++it)
    keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"schema_version", "engine", "command",
                                            "config", "model", "hypothesis",
                                            "status", "results"}));
}
