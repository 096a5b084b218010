#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

#ifndef JODE_GOLDEN_DIR
#error "JODE_GOLDEN_DIR must be defined"
#endif

namespace jode::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("jode_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream(dir_ / "cp.cfg") << "model = changepoint\ncp_samples = 16\ncp_mu = 1\n"
                                   << "alpha = 0.05\ntrials = 500\nfractions = 0.5,1\n";
    std::ofstream(dir_ / "radar.cfg") << "model = radar\ncell_size = 30\ntrials = 300\nalpha = 0.05\n";
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run_cli(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, HelpTextsMatchGoldenFiles) {
  EXPECT_EQ(help_text(), slurp(fs::path(JODE_GOLDEN_DIR) / "help_main.txt"));
  EXPECT_EQ(help_text("sweep"), slurp(fs::path(JODE_GOLDEN_DIR) / "help_sweep.txt"));
  EXPECT_EQ(run_cli({"--help"}), kExitOk);
  EXPECT_EQ(out_.str(), help_text());
}

TEST_F(CliTest, UsageErrorsExitWithTwo) {
  EXPECT_EQ(run_cli({}), kExitUsage);
  EXPECT_EQ(run_cli({"sweep"}), kExitUsage);
  EXPECT_NE(err_.str().find("--config"), std::string::npos);
  EXPECT_EQ(run_cli({"sweep", "--config", path("cp.cfg"), "--bogus"}), kExitUsage);
  EXPECT_EQ(run_cli({"sweep", "--config", path("cp.cfg"), "--alpha", "1.5"}), kExitUsage);
  EXPECT_EQ(run_cli({"sweep", "--config", path("missing.cfg")}), kExitUsage);
  EXPECT_EQ(run_cli({"sweep", "--config", path("cp.cfg"), "--region", "square"}), kExitUsage);
  EXPECT_EQ(run_cli({"teleport"}), kExitUsage);
}

TEST_F(CliTest, SweepIsReproducibleForAFixedSeed) {
  ASSERT_EQ(run_cli({"sweep", "--config", path("cp.cfg"), "--seed", "7", "--out", path("a.csv")}), kExitOk)
      << err_.str();
  ASSERT_EQ(run_cli({"sweep", "--config", path("cp.cfg"), "--seed", "7", "--out", path("b.csv")}), kExitOk)
      << err_.str();
  const auto a = slurp(dir_ / "a.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir_ / "b.csv"));
  ASSERT_EQ(run_cli({"sweep", "--config", path("cp.cfg"), "--seed", "8", "--out", path("c.csv")}), kExitOk);
  EXPECT_NE(a, slurp(dir_ / "c.csv"));
}

TEST_F(CliTest, RadarSweepWritesOneFilePerSnr) {
  ASSERT_EQ(run_cli({"sweep", "--config", path("radar.cfg"), "--snr", "-10,10", "--out", path("s.csv")}), kExitOk)
      << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "s_snr-10dB.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "s_snr10dB.csv"));
}

TEST_F(CliTest, CalibrateWritesParsableThresholds) {
  ASSERT_EQ(run_cli({"calibrate", "--config", path("cp.cfg"), "--out", path("t.json")}), kExitOk) << err_.str();
  const auto j = nlohmann::json::parse(slurp(dir_ / "t.json"));
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 1u);
  EXPECT_TRUE(j[0]["thresholds"].contains("gamma_np"));
  EXPECT_TRUE(j[0]["thresholds"].contains("lambda_o"));
}

TEST_F(CliTest, SimulatorsWriteTrialRecords) {
  ASSERT_EQ(run_cli({"changepoint-sim", "--config", path("cp.cfg"), "--out", path("cp.csv")}), kExitOk)
      << err_.str();
  const auto cp = slurp(dir_ / "cp.csv");
  EXPECT_EQ(cp.rfind("trial,hypothesis", 0), 0u);
  ASSERT_EQ(run_cli({"radar-sim", "--config", path("radar.cfg"), "--snr", "10", "--out", path("r.csv")}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(slurp(dir_ / "r.csv").rfind("trial,hypothesis", 0), 0u);
}

TEST_F(CliTest, VerifyPasses) {
  ASSERT_EQ(run_cli({"verify", "--out", path("report.txt")}), kExitOk) << out_.str() << err_.str();
  EXPECT_EQ(out_.str().find("FAIL"), std::string::npos);
  EXPECT_EQ(slurp(dir_ / "report.txt"), out_.str());
}

}  // namespace
}  // namespace jode::cli
