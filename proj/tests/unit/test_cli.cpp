#include <sys/wait.h>

#include <cstdio>
#include <filesystem>

#include <fmt/format.h>
#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"

namespace {

namespace fs = std::filesystem;

struct Result {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the installed-style binary with stderr captured in a side file.
Result run_cli(const std::string& args, const oracle::TempDir& scratch) {
  const auto err_path = scratch.file("stderr.txt");
  const auto command = fmt::format("'{}' {} 2>'{}'", COORDYN_CLI_PATH, args, err_path);
  Result r;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return r;
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) r.out.append(buffer, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = oracle::read_file(err_path);
  return r;
}

TEST(Cli, HelpAndVersionSucceed) {
  oracle::TempDir dir("cli-help");
  const auto help = run_cli("--help", dir);
  EXPECT_EQ(help.exit_code, 0);
  for (const char* sub : {"ingest", "layers", "detect", "analyze", "run", "synth", "score"}) {
    EXPECT_NE(help.out.find(sub), std::string::npos) << sub;
  }
  EXPECT_EQ(run_cli("--version", dir).exit_code, 0);
}

TEST(Cli, UsageErrorsExitOne) {
  oracle::TempDir dir("cli-usage");
  EXPECT_EQ(run_cli("", dir).exit_code, 1);
  EXPECT_EQ(run_cli("frobnicate", dir).exit_code, 1);
  EXPECT_EQ(run_cli("run --no-such-flag", dir).exit_code, 1);
  EXPECT_EQ(run_cli("score --truth x", dir).exit_code, 1);
  EXPECT_EQ(run_cli("run --alpha 2", dir).exit_code, 1);
}

TEST(Cli, InputErrorsExitOneWithMessage) {
  oracle::TempDir dir("cli-input");
  const auto missing = run_cli(fmt::format("ingest --input '{}' --output '{}'", dir.file("absent.jsonl"), dir.file("run")), dir);
  EXPECT_EQ(missing.exit_code, 1);
  EXPECT_NE(missing.err.find("absent.jsonl"), std::string::npos) << missing.err;
  EXPECT_EQ(missing.err.rfind("coordyn: ", 0), 0u);

  const auto no_layers = run_cli(fmt::format("detect --output '{}'", dir.file("run")), dir);
  EXPECT_EQ(no_layers.exit_code, 1);
  EXPECT_NE(no_layers.err.find("ingest"), std::string::npos) << no_layers.err;
}

TEST(Cli, StageFailureExitsTwo) {
  oracle::TempDir dir("cli-stage");
  oracle::write_file(dir.file("events.jsonl"), R"({"user_id": "u", "original_tweet_id": "o", "timestamp": 0})");
  oracle::write_file(dir.file("blocker"), "");
  const auto r =
      run_cli(fmt::format("ingest --input '{}' --output '{}'", dir.file("events.jsonl"), dir.file("blocker/run")), dir);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("ingest"), std::string::npos) << r.err;
}

TEST(Cli, SynthRunScoreEndToEnd) {
  oracle::TempDir dir("cli-e2e");
  oracle::write_file(dir.file("scenario.json"),
                     R"({"windows": 8, "pool_size": 120,
                         "communities": [{"id": 0, "size": 100, "leaning": -1.0, "bloc": 0},
                                         {"id": 1, "size": 100, "leaning": -0.5, "bloc": 0},
                                         {"id": 2, "size": 100, "leaning": 0.5, "bloc": 1},
                                         {"id": 3, "size": 100, "leaning": 1.0, "bloc": 1}]})");
  const auto synth = run_cli(
      fmt::format("synth --scenario '{}' --output '{}' --seed 3", dir.file("scenario.json"), dir.file("synth")), dir);
  ASSERT_EQ(synth.exit_code, 0) << synth.err;
  EXPECT_TRUE(synth.out.empty());
  EXPECT_TRUE(fs::exists(dir.path() / "synth" / "truth" / "membership.csv"));

  const auto run = run_cli(fmt::format("run --config '{}' --threads 2", dir.file("synth/config.json")), dir);
  ASSERT_EQ(run.exit_code, 0) << run.err;
  EXPECT_TRUE(run.out.empty());
  EXPECT_NE(run.err.find("analyze finished"), std::string::npos);
  const auto manifest = nlohmann::json::parse(oracle::read_file(dir.file("synth/run/manifest.json")));
  EXPECT_EQ(manifest.at("config").at("threads"), 2);
  EXPECT_EQ(manifest.at("windows"), 8);

  const auto score =
      run_cli(fmt::format("score --truth '{}' --run '{}'", dir.file("synth/truth"), dir.file("synth/run")), dir);
  ASSERT_EQ(score.exit_code, 0) << score.err;
  const auto summary = nlohmann::json::parse(oracle::read_file(dir.file("synth/run/score.json")));
  EXPECT_GT(summary.at("mean_nmi").get<double>(), 0.9);
}

TEST(Cli, StagesRunSeparatelyWithFlagOverrides) {
  oracle::TempDir dir("cli-stages");
  ASSERT_EQ(run_cli(fmt::format("synth --output '{}'", dir.file("s")), dir).exit_code, 0);
  const auto base = fmt::format("--config '{}' --output '{}'", dir.file("s/config.json"), dir.file("staged"));
  for (const char* stage : {"ingest", "layers", "detect", "analyze"}) {
    const auto r = run_cli(fmt::format("{} {} --gamma 1.0", stage, base), dir);
    ASSERT_EQ(r.exit_code, 0) << stage << ": " << r.err;
  }
  const auto manifest = nlohmann::json::parse(oracle::read_file(dir.file("staged/manifest.json")));
  EXPECT_FALSE(manifest.at("partial").get<bool>());
  EXPECT_EQ(manifest.at("config").at("output_dir"), dir.file("staged"));
}

}  // namespace
