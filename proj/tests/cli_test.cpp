#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "simoco/cli.hpp"

namespace simoco {
namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "simoco");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::parse_and_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, RunMatchesDirectCall) {
  const auto r = invoke({"run", "--mode", "static", "--nodes", "100", "--seed", "7", "--rounds", "300"});
  ASSERT_EQ(r.code, 0) << r.err;
  ScenarioConfig c;
  c.seed = 7;
  c.max_rounds = 300;
  EXPECT_EQ(r.out, export_trace(run_scenario(c)));
}

TEST(Cli, TourMatchesDirectCall) {
  const auto path = std::filesystem::temp_directory_path() / "simoco_cli_tours.txt";
  const auto r = invoke({"tour", "--nodes", "100", "--seed", "7", "-o", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  ScenarioConfig c;
  c.seed = 7;
  EXPECT_EQ(slurp(path), export_tours(cli::compute_tours(c)));
  EXPECT_TRUE(r.out.empty());
  std::filesystem::remove(path);
}

TEST(Cli, MatrixMatchesDirectCall) {
  const auto r = invoke({"matrix", "--sizes", "50,100", "--seeds", "2", "--rounds", "200"});
  ASSERT_EQ(r.code, 0) << r.err;
  ScenarioConfig c;
  c.base_n = 50;
  c.max_rounds = 200;
  const std::vector<std::size_t> sizes{50, 100};
  const std::vector<std::uint64_t> seeds{1, 2};
  EXPECT_EQ(r.out, emit_csv(run_experiment_matrix(c, sizes, seeds)));
  // header + 2 sizes * 2 modes * 2 seeds
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 9);
}

TEST(Cli, ConfigFileThenFlags) {
  const auto path = std::filesystem::temp_directory_path() / "simoco_cli_test.cfg";
  {
    std::ofstream f(path);
    f << "mode = mobile\nn = 40\nbase_n = 40\nmax_rounds = 50\nseed = 3\n";
  }
  const auto r = invoke({"run", "--config", path.string(), "--rounds", "20"});
  ASSERT_EQ(r.code, 0) << r.err;
  ScenarioConfig c;
  c.mode = SinkMode::kMobile;
  c.n = 40;
  c.base_n = 40;
  c.seed = 3;
  c.max_rounds = 20;
  EXPECT_EQ(r.out, export_trace(run_scenario(c)));
  std::filesystem::remove(path);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"fly"}).code, 1);
  EXPECT_EQ(invoke({"run", "--nodes", "abc"}).code, 1);
  EXPECT_EQ(invoke({"run", "--set", "warp=9"}).code, 1);
  EXPECT_EQ(invoke({"run", "--rounds", "0"}).code, 1);
  EXPECT_EQ(invoke({"run", "--config", "/nonexistent/simoco.cfg"}).code, 1);
  EXPECT_EQ(invoke({"matrix", "--sizes", "50,x"}).code, 1);
  EXPECT_EQ(invoke({"run", "--rounds", "1", "-o", "/nonexistent/dir/out.txt"}).code, 2);
  const auto bad = invoke({"run", "--mode", "sideways"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_FALSE(bad.err.empty());
}

TEST(Cli, SeedsArgument) {
  EXPECT_EQ(cli::parse_seeds("3"), (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_EQ(cli::parse_seeds("4,9"), (std::vector<std::uint64_t>{4, 9}));
  EXPECT_THROW(cli::parse_seeds("0"), ConfigError);
}

TEST(Cli, BinaryIsDeterministic) {
  const std::string base = std::string(SIMOCO_CLI_PATH) + " run --mode mobile --nodes 60 --seed 4 --rounds 200";
  auto capture = [](const std::string& cmd) {
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    EXPECT_EQ(pclose(p), 0);
    return out;
  };
  const auto a = capture(base);
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, capture(base));
}

}  // namespace
}  // namespace simoco

namespace simoco {
namespace {

TEST(Cli, ThreadsFromEnvironment) {
  setenv("SIMOCO_THREADS", "3", 1);
  EXPECT_EQ(cli::matrix_threads(), 3u);
  setenv("SIMOCO_THREADS", "0", 1);
  EXPECT_GE(cli::matrix_threads(), 1u);
  setenv("SIMOCO_THREADS", "lots", 1);
  EXPECT_THROW(cli::matrix_threads(), ConfigError);
  unsetenv("SIMOCO_THREADS");
}

}  // namespace
}  // namespace simoco
