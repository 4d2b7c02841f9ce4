#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "brute_force.hpp"
#include "cli.hpp"

namespace tristream::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  std::filesystem::path dir_ = std::filesystem::temp_directory_path() / "tristream_cli_test";
  std::string toy_, star_, broken_;

  void SetUp() override {
    std::filesystem::create_directories(dir_);
    toy_ = (dir_ / "toy.txt").string();
    star_ = (dir_ / "star.txt").string();
    broken_ = (dir_ / "broken.txt").string();
    std::ofstream(toy_) << testing::kFigureOneGraph;
    std::ofstream(star_) << "0 1\n0 2\n0 3\n0 4\n";
    std::ofstream(broken_) << "1 2\n2 three\n";
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string read(const std::string& name) {
    std::ifstream in(dir_ / name);
    return {std::istreambuf_iterator<char>(in), {}};
  }
};

TEST_F(CliTest, StatsOnToyGraph) {
  const Outcome r = invoke({"stats", "--input", toy_});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "N=11 M=13 triangles=3 wedges=32 shared_pairs=1 clustering=0.28125\n"
            "N,M,triangles,wedges,shared_pairs,clustering\n"
            "11,13,3,32,1,0.28125\n");
}

TEST_F(CliTest, ExactPesAtFullSampling) {
  const Outcome r = invoke({"estimate", "--input", toy_, "--method", "pes", "--p", "1", "--pool", "1000", "--shuffle", "none"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("estimate=3\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("q=1\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, SameArgumentsSameOutput) {
  const std::vector<std::string> args = {"evaluate", "--input", toy_, "--method", "nes", "--p", "0.7", "--runs", "50", "--seed", "9"};
  const Outcome a = invoke(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, invoke(args).out);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(invoke({"estimate", "--input", toy_, "--method", "nes", "--p", "0"}).code, 1);
  const Outcome bad_p = invoke({"estimate", "--input", toy_, "--method", "nes", "--p", "0"});
  EXPECT_NE(bad_p.err.find("got 0"), std::string::npos) << bad_p.err;
  EXPECT_EQ(invoke({"stats", "--input", toy_, "--frobnicate"}).code, 1);
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"estimate", "--input", toy_, "--method", "pes", "--p", "0.5"}).code, 1);  // no pool
  EXPECT_EQ(invoke({"stats", "--input", (dir_ / "missing.txt").string()}).code, 2);
  const Outcome broken = invoke({"stats", "--input", broken_});
  EXPECT_EQ(broken.code, 2);
  EXPECT_NE(broken.err.find("line 2"), std::string::npos) << broken.err;
  EXPECT_EQ(invoke({"compare", "--input", star_, "--runs", "10"}).code, 3);
  EXPECT_EQ(invoke({"calibrate", "--input", star_}).code, 3);
  EXPECT_EQ(invoke({"evaluate", "--input", toy_, "--method", "nes", "--p", "0.5", "--runs", "1"}).code, 3);
  EXPECT_EQ(invoke({"evaluate", "--input", toy_, "--method", "nes", "--p", "0.5", "--max-edges", "5"}).code, 3);
}

TEST_F(CliTest, CsvFilesCarryHeaders) {
  const std::string summary = (dir_ / "summary.csv").string();
  const std::string runs = (dir_ / "runs.csv").string();
  ASSERT_EQ(invoke({"evaluate", "--input", toy_, "--method", "pes", "--p", "0.8", "--pool", "8", "--runs", "5",
                    "--csv", summary, "--runs-csv", runs})
                .code,
            0);
  const std::string s = read("summary.csv");
  EXPECT_EQ(s.substr(0, s.find('\n')),
            "method,p,pool,runs,base_seed,shuffle,truth,mean_estimate,observed_rse,predicted_rse,"
            "mean_triangles_observed,mean_sample_size");
  const std::string r = read("runs.csv");
  EXPECT_EQ(std::count(r.begin(), r.end(), '\n'), 6);
  EXPECT_EQ(r.rfind("run,seed,method,", 0), 0u);

  const Outcome calib = invoke({"calibrate", "--input", toy_, "--target-rse", "0.1"});
  ASSERT_EQ(calib.code, 0) << calib.err;
  EXPECT_NE(calib.out.find("target_rse,nes_p,nes_clamped,"), std::string::npos);
  EXPECT_NE(calib.out.find(",356,"), std::string::npos) << calib.out;  // pool rule at C = 0.28125

  const Outcome sweep = invoke({"sweep", "--input", toy_, "--method", "nes", "--targets", "0.5,0.9", "--runs", "20"});
  ASSERT_EQ(sweep.code, 0) << sweep.err;
  EXPECT_EQ(std::count(sweep.out.begin(), sweep.out.end(), '\n'), 3);
}

}  // namespace
}  // namespace tristream::cli
