#include "dispatch.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace picard;

namespace {

struct Result {
  int code = 0;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "picard");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override { unsetenv(cli::kReportDirEnv); }
};

}  // namespace

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, cli::usage);
  EXPECT_EQ(call({"frobnicate"}).code, cli::usage);
  EXPECT_EQ(call({"verify", "theorem2", "--k", "9"}).code, cli::usage);
  EXPECT_EQ(call({"quad", "--form", "P7"}).code, cli::usage);
  EXPECT_EQ(call({"quad", "--grid", "4"}).code, cli::usage);
}

TEST_F(Cli, Help) {
  Result r = call({"--help"});
  EXPECT_EQ(r.code, cli::pass);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST_F(Cli, Presentations) {
  Result r = call({"verify", "presentations"});
  EXPECT_EQ(r.code, cli::pass) << r.err;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("all checks passed"), std::string::npos);
}

TEST_F(Cli, TheoremTwoSingleWeight) {
  Result r = call({"verify", "theorem2", "--k", "2", "--json"});
  ASSERT_EQ(r.code, cli::pass) << r.err;
  json d = json::parse(r.out);
  EXPECT_EQ(d["schema"], cli::kSchema);
  EXPECT_EQ(d["command"], "verify theorem2");
  EXPECT_EQ(d["config"]["k"], json::array({2}));
  std::vector<std::string> relations;
  for (const auto& c : d["reports"][0]["checks"]) {
    std::string id = c["id"];
    if (id.size() > 4 && id.substr(id.size() - 4) == "/k=2") relations.push_back(id);
  }
  EXPECT_EQ(relations.size(), 6u);
}

TEST_F(Cli, EvalOutsideBall) {
  EXPECT_EQ(call({"eval", "theta", "--z1", "1,0", "--z2", "0,0"}).code, cli::usage);
  EXPECT_EQ(call({"eval", "theta", "--z1", "abc", "--z2", "0,0"}).code, cli::usage);
  EXPECT_EQ(call({"eval", "theta", "--z1", "-1,0x", "--z2", "0,0"}).code, cli::usage);
  EXPECT_EQ(call({"quad", "--k", "99999999999"}).code, cli::usage);
  EXPECT_EQ(call({"quad", "--k", "four"}).code, cli::usage);
  Result r = call({"eval", "period-matrix", "--z1", "-1,0", "--z2", "0,0"});
  ASSERT_EQ(r.code, cli::pass) << r.err;
  EXPECT_GT(json::parse(r.out)["min_eigenvalue_im"].get<double>(), 0);
}

TEST_F(Cli, DeterministicAcrossRuns) {
  for (auto args : {std::vector<std::string>{"verify", "paths", "--json"},
                    std::vector<std::string>{"verify", "geometry", "--seed", "4", "--json"}}) {
    Result a = call(args), b = call(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST_F(Cli, ReportDirectory) {
  auto dir = std::filesystem::temp_directory_path() / "picard_cli_test";
  std::filesystem::remove_all(dir);
  setenv(cli::kReportDirEnv, dir.c_str(), 1);
  Result r = call({"verify", "runge-invariance"});
  unsetenv(cli::kReportDirEnv);
  EXPECT_EQ(r.code, cli::pass) << r.err;
  std::ifstream f(dir / "verify_runge_invariance.json");
  ASSERT_TRUE(f.good());
  json d = json::parse(f);
  EXPECT_TRUE(d["pass"].get<bool>());
  std::filesystem::remove_all(dir);
}

TEST_F(Cli, ExplicitOutFile) {
  auto path = std::filesystem::temp_directory_path() / "picard_cli_out.json";
  Result r = call({"verify", "paths", "--out", path.string()});
  EXPECT_EQ(r.code, cli::pass) << r.err;
  std::ifstream f(path);
  ASSERT_TRUE(f.good());
  EXPECT_EQ(json::parse(f)["command"], "verify paths");
  std::filesystem::remove(path);
}
