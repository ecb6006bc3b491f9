#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include "bracketlab/cli/commands.hpp"
#include "bracketlab/cli/config.hpp"
#include "bracketlab/dataset_csv.hpp"
#include "bracketlab/errors.hpp"

using namespace bracketlab;
using namespace bracketlab::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = BRACKETLAB_SOURCE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bracketlab_cli_" + std::string(::testing::UnitTest::GetInstance()
                                                ->current_test_info()
                                                ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
    return path(name);
  }

  // Simulates the small golden population into the temp dir.
  fs::path small_dataset(unsigned workers = 1) {
    SimulateOptions opt;
    opt.config = (kSource / "tests/data/small.ini").string();
    opt.out = path("small.csv").string();
    opt.workers = workers;
    std::ostringstream out, err;
    EXPECT_EQ(cmd_simulate(opt, out, err), kExitOk) << err.str();
    return opt.out;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, ExampleConfigRowCount) {
  const RunConfig cfg = load_config((kSource / "configs/example.ini").string());
  int subjects = 0;
  for (int c : cfg.population.counts) subjects += c;

  SimulateOptions opt;
  opt.config = (kSource / "configs/example.ini").string();
  opt.out = path("example.csv").string();
  std::ostringstream out, err;
  ASSERT_EQ(cmd_simulate(opt, out, err), kExitOk) << err.str();

  std::ifstream in(opt.out);
  std::string line;
  int rows = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.starts_with('#')) continue;
    if (!header) {
      EXPECT_EQ(line, dataset_header());
      header = true;
      continue;
    }
    ++rows;
  }
  EXPECT_EQ(rows, 2 * subjects);
}

TEST_F(CliTest, SimulateIsByteIdenticalAcrossRunsAndWorkers) {
  const std::string one = slurp(small_dataset(1));
  EXPECT_EQ(slurp(small_dataset(1)), one);
  EXPECT_EQ(slurp(small_dataset(4)), one);
}

TEST_F(CliTest, SimulateSeedOverride) {
  SimulateOptions opt;
  opt.config = (kSource / "tests/data/small.ini").string();
  opt.out = "-";
  std::ostringstream a, b, err;
  ASSERT_EQ(cmd_simulate(opt, a, err), kExitOk);
  opt.seed = 1;
  ASSERT_EQ(cmd_simulate(opt, b, err), kExitOk);
  EXPECT_NE(a.str(), b.str());
  EXPECT_NE(b.str().find("seed=1 "), std::string::npos);
}

TEST_F(CliTest, MissingSeedNamesField) {
  const auto cfg = write("noseed.ini", "[counts]\nBROAD = 3\n");
  SimulateOptions opt;
  opt.config = cfg.string();
  opt.out = path("x.csv").string();
  std::ostringstream out, err;
  EXPECT_EQ(cmd_simulate(opt, out, err), kExitUsage);
  EXPECT_NE(err.str().find("run.seed"), std::string::npos) << err.str();
  EXPECT_FALSE(fs::exists(opt.out));
}

TEST_F(CliTest, ConfigErrors) {
  std::istringstream typo("[run]\nseed = 1\n[gamma]\nmaen = 2\n");
  EXPECT_THROW((void)parse_config(typo), ConfigError);
  std::istringstream section("[runs]\nseed = 1\n");
  EXPECT_THROW((void)parse_config(section), ConfigError);
  std::istringstream bad_number("[run]\nseed = abc\n");
  EXPECT_THROW((void)parse_config(bad_number), ConfigError);
  std::istringstream bad_population("[run]\nseed = 1\n[behavior]\ntremble = 2\n");
  EXPECT_THROW((void)parse_config(bad_population), ConfigError);
  std::istringstream kappa("[run]\nseed = 1\n[composition]\ntype = kappa\nkappa = 1.4\n");
  const RunConfig cfg = parse_config(kappa);
  EXPECT_EQ(std::get<KappaComposition>(cfg.population.composition).kappa, 1.4);
  EXPECT_EQ(cfg.estimator.censor_limit, 4.25);
}

TEST_F(CliTest, UnwritableOutput) {
  SimulateOptions opt;
  opt.config = (kSource / "tests/data/small.ini").string();
  opt.out = (dir_ / "missing" / "x.csv").string();
  std::ostringstream out, err;
  EXPECT_EQ(cmd_simulate(opt, out, err), kExitFailure);
}

TEST_F(CliTest, MeansOnTwoRowFile) {
  const std::string text = dataset_header() +
                           "\n3,BROAD,S1,0,0,0,0,0,0,0,0,0,0,1,1,1,1,1,1,2.75,0,1,M,30,5\n"
                           "3,BROAD,S2,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,4.25,1,1,M,30,5\n";
  EstimateOptions opt;
  opt.what = "means";
  opt.data = write("two.csv", text).string();
  std::ostringstream out, err;
  ASSERT_EQ(cmd_estimate(opt, out, err), kExitOk) << err.str();
  EXPECT_EQ(out.str(),
            "| Scenario | Treatment | N | Mean | SD | Share at 4.25 |\n"
            "| --- | --- | --- | --- | --- | --- |\n"
            "| S1 | BROAD | 1 | 2.7500 | 0.0000 | 0.0000 |\n"
            "| S2 | BROAD | 1 | 4.2500 | 0.0000 | 1.0000 |\n");
}

TEST_F(CliTest, KappaWithTwoTreatmentsIsDegenerate) {
  const fs::path data = small_dataset();
  Dataset d = parse_csv(slurp(data));
  std::erase_if(d.records, [](const SubjectRecord& r) {
    return r.treatment != Treatment::Broad && r.treatment != Treatment::Narrow;
  });
  EstimateOptions opt;
  opt.what = "kappa";
  opt.data = write("two.csv", to_csv(d)).string();
  std::ostringstream out, err;
  EXPECT_EQ(cmd_estimate(opt, out, err), kExitFailure);
  EXPECT_NE(err.str().find("LOW"), std::string::npos) << err.str();
  EXPECT_NE(err.str().find("simulate"), std::string::npos) << err.str();
}

TEST_F(CliTest, SchemaErrorIsUsage) {
  EstimateOptions opt;
  opt.what = "means";
  opt.data = write("bad.csv", dataset_header() + "\n1,BROAD\n").string();
  std::ostringstream out, err;
  EXPECT_EQ(cmd_estimate(opt, out, err), kExitUsage);
  EXPECT_NE(err.str().find("line 2"), std::string::npos) << err.str();
}

TEST_F(CliTest, TobitColumnsUseCoefSe) {
  EstimateOptions opt;
  opt.what = "tobit";
  opt.data = small_dataset().string();
  opt.censor_limit = 4.25;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_estimate(opt, out, err), kExitOk) << err.str();
  const std::string md = out.str();
  EXPECT_NE(md.find("| Scenario 2 | "), std::string::npos);
  EXPECT_NE(md.find("| Tediousness | "), std::string::npos);
  EXPECT_TRUE(std::regex_search(md, std::regex(R"(\| Constant \| -?\d+\.\d{4} \(\d+\.\d{4}\) \|)")))
      << md;
}

TEST_F(CliTest, GoldenReports) {
  const fs::path data = small_dataset();
  EXPECT_EQ(slurp(data), slurp(kSource / "tests/golden/small.csv"));
  for (const std::string what : {"means", "mwu", "kappa", "tobit"}) {
    EstimateOptions opt;
    opt.what = what;
    opt.data = data.string();
    opt.out = path(what).string();
    std::ostringstream out, err;
    ASSERT_EQ(cmd_estimate(opt, out, err), kExitOk) << what << ": " << err.str();
    EXPECT_EQ(slurp(path(what + ".md")), slurp(kSource / "tests/golden" / (what + ".md")))
        << what;
    EXPECT_EQ(slurp(path(what + ".csv")), slurp(kSource / "tests/golden" / (what + ".csv")))
        << what;
  }
}

TEST_F(CliTest, KeepInconsistentChangesCounts) {
  EstimateOptions opt;
  opt.what = "means";
  opt.data = small_dataset().string();
  std::ostringstream dropped, kept, err;
  ASSERT_EQ(cmd_estimate(opt, dropped, err), kExitOk);
  opt.keep_inconsistent = true;
  ASSERT_EQ(cmd_estimate(opt, kept, err), kExitOk);
  EXPECT_NE(dropped.str(), kept.str());
  EXPECT_NE(kept.str().find("| S1 | BROAD | 30 |"), std::string::npos) << kept.str();
}

TEST_F(CliTest, Power) {
  std::ostringstream out, err;
  PowerOptions opt{0.4, 0.05, 0.90, 1.5, true};
  ASSERT_EQ(cmd_power(opt, out, err), kExitOk);
  EXPECT_EQ(out.str(), "n_large=172\nn_small=115\n");
  out.str("");
  opt = {0.4, 0.05, 0.90, 1.0, false};
  ASSERT_EQ(cmd_power(opt, out, err), kExitOk);
  EXPECT_EQ(out.str(), "n_large=132\nn_small=132\n");
  out.str("");
  opt = {1e6, 0.05, 0.90, 1.0, false};
  ASSERT_EQ(cmd_power(opt, out, err), kExitOk);
  EXPECT_EQ(out.str(), "n_large=1\nn_small=1\n");
  opt.d = -1;
  EXPECT_EQ(cmd_power(opt, out, err), kExitUsage);
}

TEST_F(CliTest, Verify) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify({"all", 20200101}, out, err), kExitOk) << out.str();
  EXPECT_NE(out.str().find("(expect-fail)"), std::string::npos);
  EXPECT_NE(out.str().find(" 0 failed"), std::string::npos);
  std::ostringstream out2, err2;
  EXPECT_EQ(cmd_verify({"bogus", 1}, out2, err2), kExitUsage);
  EXPECT_NE(err2.str().find("unknown suite"), std::string::npos);
}
