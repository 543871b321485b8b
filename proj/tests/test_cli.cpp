#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "parcv/cli.hpp"

using namespace parcv;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "parcv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("parcv_cli_" + name)).string();
}

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"nonsense"}).code, kExitUsage);
  EXPECT_EQ(run({"xval", "--input", "x.csv", "--target", "class", "--folds", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"xval", "--input", "x.csv", "--target", "class", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(run({"xval", "--input", "x.csv"}).code, kExitUsage);
}

TEST(Cli, DataErrors) {
  EXPECT_EQ(run({"xval", "--input", temp_path("missing.csv"), "--target", "class"}).code, kExitData);
  auto path = temp_path("holes.csv");
  std::ofstream(path) << "A,class\n1,pos\n,neg\n";
  auto result = run({"xval", "--input", path, "--target", "class", "--folds", "2"});
  EXPECT_EQ(result.code, kExitData);
  EXPECT_NE(result.err.find("row 2"), std::string::npos);
}

TEST(Cli, GenXvalTrainRoundTrip) {
  auto path = temp_path("stable.csv");
  ASSERT_EQ(run({"gen", "--regime", "stable", "--rows", "300", "--attributes", "6", "--output", path}).code, kExitOk);
  auto xval = run({"xval", "--input", path, "--target", "class", "--folds", "5"});
  ASSERT_EQ(xval.code, kExitOk) << xval.err;
  auto report = nlohmann::json::parse(xval.out);
  EXPECT_DOUBLE_EQ(report["accuracy"].get<double>(), 1.0);
  EXPECT_EQ(report["folds"].size(), 5u);

  auto level = run({"xval", "--input", path, "--target", "class", "--variant", "level", "--format", "csv"});
  ASSERT_EQ(level.code, kExitOk) << level.err;
  EXPECT_EQ(level.out.rfind("fold,examples,correct,accuracy", 0), 0u);

  auto train = run({"train", "--input", path, "--target", "class"});
  ASSERT_EQ(train.code, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(train.out)["type"], "test");
}

TEST(Cli, VerifyRandomDatasets) {
  auto result = run({"verify", "--count", "50"});
  EXPECT_EQ(result.code, kExitOk) << result.err;
  EXPECT_NE(result.out.find("verified 50"), std::string::npos);
}

TEST(Cli, BenchStableShowsSpeedup) {
  auto result = run({"bench", "--regime", "stable", "--rows", "20000", "--attributes", "30", "--folds", "10",
                     "--mode", "both", "--repeats", "3"});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  auto report = nlohmann::json::parse(result.out);
  EXPECT_GT(report["S"].get<double>(), 2.0);
  EXPECT_DOUBLE_EQ(report["counter_speedup"].get<double>(), 10.0);
  EXPECT_TRUE(report.contains("speedup_bound"));
  EXPECT_FALSE(report["levels"].empty());
}
