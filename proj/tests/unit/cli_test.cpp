#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cheesebench/render.hpp"
#include "cheesebench/report.hpp"
#include "cli.hpp"
#include "mock_chat_server.hpp"

namespace cheesebench::cli {
namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code = -1;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args, const std::string& input = "") {
  std::ostringstream out, err;
  std::istringstream in(input);
  Invocation r;
  r.code = run_cli(args, out, err, in);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    for (const char* v : {"CHEESEBENCH_ENDPOINT_URL", "CHEESEBENCH_MODEL", "CHEESEBENCH_API_KEY"}) ::unsetenv(v);
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("cheesebench-cli-") + info->name() + "-" +
                                        std::to_string(::getpid()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  BenchReport report_in(const fs::path& d) const { return report_from_json(read_text_file(d / "report.json")); }

  fs::path dir_;
};

TEST_F(CliTest, OracleSolvesTheWaterMaze) {
  const auto r = invoke({"run", "--env", "MorrisWaterMaze", "--agent", "oracle", "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("overall (unweighted mean over environments): 100.0%"), std::string::npos) << r.out;
  const auto report = report_in(dir_);
  ASSERT_EQ(report.envs.size(), 1u);
  EXPECT_EQ(report.envs[0].n_trials, 20);
  EXPECT_DOUBLE_EQ(report.envs[0].p, 1.0);
  EXPECT_TRUE(fs::exists(dir_ / "config.json"));
  EXPECT_TRUE(fs::exists(dir_ / "report.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "traces" / "MorrisWaterMaze.jsonl"));
}

TEST_F(CliTest, RandomAllEnvironmentsAtTheDefaultSeed) {
  const auto r = invoke({"run", "--env", "all", "--agent", "random", "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = report_in(dir_);
  EXPECT_EQ(report.envs.size(), 9u);
  EXPECT_GE(report.overall, 0.22);
  EXPECT_LE(report.overall, 0.42);
}

TEST_F(CliTest, TrialsOverrideAndAliases) {
  const auto r = invoke({"run", "--env", "tmaze,dnms", "--agent", "random", "--trials", "15", "--jobs", "2", "--out",
                         dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = report_in(dir_);
  ASSERT_EQ(report.envs.size(), 2u);
  for (const auto& e : report.envs) EXPECT_EQ(e.n_trials, 15);
}

TEST_F(CliTest, ListShowsBudgets) {
  const auto r = invoke({"list"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 10u);
  auto row = [&](std::string_view name) {
    for (const auto& l : rows)
      if (l.starts_with(name)) return l;
    return std::string();
  };
  // Dimension names contain spaces; read the numbers from the right.
  std::istringstream ram(row("RadialArmMaze"));
  std::vector<std::string> fields;
  for (std::string f; ram >> f;) fields.push_back(f);
  ASSERT_GE(fields.size(), 4u);
  const int trials = std::stoi(fields[fields.size() - 3]);
  const int steps = std::stoi(fields[fields.size() - 2]);
  EXPECT_EQ(trials, 20);
  EXPECT_EQ(steps, 400);
  EXPECT_NE(row("OperantChamber").find("90%"), std::string::npos);
}

TEST_F(CliTest, PlayShowsATopDownFrameAndQuits) {
  const auto r = invoke({"play", "TMaze"}, "q\n");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto header_end = r.out.find('\n');
  const auto prompt = r.out.find("[w/a/d/s");
  ASSERT_NE(prompt, std::string::npos);
  const auto frame = r.out.substr(header_end + 1, prompt - header_end - 1);
  const auto parsed = parse_topdown(frame);
  EXPECT_EQ(parsed.step, 0);
  EXPECT_EQ(parsed.max_steps, 200);
  EXPECT_NE(r.out.find("quit during trial 0"), std::string::npos);
}

TEST_F(CliTest, PlayKeysAndThreeDView) {
  const auto trace = (dir_ / "play.jsonl").string();
  fs::create_directories(dir_);
  const auto r = invoke({"play", "dnms", "--mode", "ascii_3d", "--trace", trace}, "w\nd\nq\n");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("FORWARD"), std::string::npos);
  EXPECT_NE(r.out.find("ROTATE_RIGHT"), std::string::npos);
  const auto text = read_text_file(trace);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}

TEST_F(CliTest, ConfigErrorsExitWithTwo) {
  auto r = invoke({"run", "--env", "Labyrinth", "--out", dir_.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Labyrinth"), std::string::npos);
  r = invoke({"run", "--agent", "llm", "--env", "tmaze", "--out", dir_.string()});
  EXPECT_EQ(r.code, 2);
  r = invoke({"run", "--agent", "oracle", "--mode", "ascii_3d", "--out", dir_.string()});
  EXPECT_EQ(r.code, 2);
  r = invoke({"run", "--batch", "0", "--out", dir_.string()});
  EXPECT_EQ(r.code, 2);
  r = invoke({"frobnicate"});
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, ReportAndReplayRoundTrip) {
  auto r = invoke({"run", "--env", "tmaze,operant", "--agent", "tabular-ql", "--trials", "6", "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto original = report_in(dir_);

  r = invoke({"report", dir_.string(), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(report_from_json(r.out).envs, original.envs);

  r = invoke({"report", dir_.string(), "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.starts_with("env,"));

  r = invoke({"replay", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("TMaze: identical"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("OperantChamber: identical"), std::string::npos) << r.out;
}

TEST_F(CliTest, LlmRunAgainstALocalEndpoint) {
  cheesebench::testing::MockChatServer server(
      std::vector<cheesebench::testing::MockChatServer::Reply>{{200, "ACTIONS: FORWARD, FORWARD\nLEARNINGS: go"}});
  const auto r = invoke({"run", "--agent", "llm", "--env", "operant", "--trials", "3", "--endpoint-url", server.url(),
                         "--model", "test-model", "--api-key", "secret", "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(server.request_bodies().empty());
  EXPECT_EQ(server.auth_headers().front(), "Bearer secret");
  const auto snapshot = read_text_file(dir_ / "config.json");
  EXPECT_EQ(snapshot.find("secret"), std::string::npos);
  EXPECT_EQ(report_in(dir_).envs.at(0).n_trials, 3);

  const auto replayed = invoke({"replay", dir_.string()});
  EXPECT_NE(replayed.out.find("OperantChamber: identical"), std::string::npos) << replayed.out << replayed.err;
}

}  // namespace
}  // namespace cheesebench::cli
