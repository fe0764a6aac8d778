#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string output;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dalab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliRun run(const std::string& args, const std::string& sub = "") const {
    const fs::path out = sub.empty() ? dir_ : dir_ / sub;
    const fs::path log = dir_ / "log.txt";
    const std::string cmd = std::string(DALAB_CLI) + " " + args + " --out " + out.string() +
                            " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(log)};
  }

  static std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, VerifyDefaultsPasses) {
  const auto r = run("verify");
  EXPECT_EQ(r.code, 0) << r.output;
  const auto doc = nlohmann::json::parse(slurp(dir_ / "verify.json"));
  EXPECT_EQ(doc["schema_version"], "1");
  EXPECT_TRUE(doc["pass"].get<bool>());
  std::set<int> suites;
  for (const auto& c : doc["checks"]) {
    suites.insert(c["suite"].get<int>());
    EXPECT_FALSE(c["paper_ref"].get<std::string>().empty());
  }
  EXPECT_EQ(suites.size(), 10u);
}

TEST_F(Cli, MasslessFieldIsInvalidInput) {
  const auto r = run("verify --mass 0");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("mass"), std::string::npos) << r.output;
}

TEST_F(Cli, ConfigFileAndOverrides) {
  std::ofstream(dir_ / "run.cfg") << "n_space = 7\n";
  const auto bad = run("verify --config " + (dir_ / "run.cfg").string());
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.output.find("n_space"), std::string::npos);
  // Flags win over the file.
  const auto good = run("verify --suite dirac --n-space 8 --config " + (dir_ / "run.cfg").string());
  EXPECT_EQ(good.code, 0) << good.output;
}

TEST_F(Cli, TightenedToleranceFails) {
  const auto r = run("verify --suite antisymmetry --tolerance antisymmetry=0");
  EXPECT_EQ(r.code, 1) << r.output;
  EXPECT_NE(r.output.find("FAIL"), std::string::npos);
}

TEST_F(Cli, MalformedInputExitsTwo) {
  EXPECT_EQ(run("transmogrify").code, 2);
  EXPECT_EQ(run("verify --tolerance nonsense=1").code, 2);
  EXPECT_EQ(run("verify --n-space ten").code, 2);
  EXPECT_EQ(run("kernel --kind photon --t-range 0.1:1:3").code, 2);
  EXPECT_EQ(run("kernel --kind feynman --t-range 0:1:3").code, 2);
}

TEST_F(Cli, KernelCsvRowCount) {
  const auto r = run("kernel --kind feynman --t-range 0.1:2.0:20 --x 0");
  ASSERT_EQ(r.code, 0) << r.output;
  std::ifstream in(dir_ / "kernel_feynman.csv");
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "kind,t,x,re,im");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 20);
}

TEST_F(Cli, ReproducibleDumps) {
  ASSERT_EQ(run("kernel --kind hadamard --t-range=-1:1:11 --x 2.5", "a").code, 0);
  ASSERT_EQ(run("kernel --kind hadamard --t-range=-1:1:11 --x 2.5", "b").code, 0);
  EXPECT_EQ(slurp(dir_ / "a" / "kernel_hadamard.csv"), slurp(dir_ / "b" / "kernel_hadamard.csv"));
  ASSERT_EQ(run("absorber --n-space 16 --n-time 16 --seed 9", "a").code, 0);
  ASSERT_EQ(run("absorber --n-space 16 --n-time 16 --seed 9", "b").code, 0);
  EXPECT_EQ(slurp(dir_ / "a" / "spectrum.csv"), slurp(dir_ / "b" / "spectrum.csv"));
}

TEST_F(Cli, OtherCommands) {
  EXPECT_EQ(run("fock-vev --n-space 16 --x 0.5,1 --y=-0.3,4").code, 0);
  const auto vev = nlohmann::json::parse(slurp(dir_ / "vev.json"));
  EXPECT_LE(vev["abs_diff"].get<double>(), 1e-10);

  EXPECT_EQ(run("dirac --p 0.5,0,0").code, 0);
  const auto dirac = nlohmann::json::parse(slurp(dir_ / "dirac.json"));
  EXPECT_EQ(dirac["solutions"].size(), 4u);
  EXPECT_EQ(dirac["solutions"][2]["spinor"].size(), 4u);

  EXPECT_EQ(run("absorber --n-space 16 --n-time 16 --light-tight").code, 0);
  const auto summary = nlohmann::json::parse(slurp(dir_ / "spectrum_summary.json"));
  EXPECT_TRUE(summary["light_tight"].get<bool>());
  EXPECT_EQ(summary["n_modes"], 15);
}
