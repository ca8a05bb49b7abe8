#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "tadpost/io/text.hpp"

namespace fs = std::filesystem;

namespace {
const std::string kCli = TADPOST_CLI_PATH;
const std::string kSamples = TADPOST_SAMPLES_DIR;

int run(const std::string& args) {
  const int status = std::system((kCli + " " + args + " 2>/dev/null").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string tmp(const std::string& name) { return (fs::temp_directory_path() / ("tadpost_cli_" + name)).string(); }
}  // namespace

TEST(Cli, PipelineIsByteIdenticalAcrossRuns) {
  const auto a = tmp("a.json"), b = tmp("b.json");
  ASSERT_EQ(run("pipeline --input " + kSamples + "/proposals.txt --config " + kSamples + "/pipeline.cfg --output " + a), 0);
  ASSERT_EQ(run("pipeline --input " + kSamples + "/proposals.txt --output " + b), 0);
  EXPECT_EQ(tadpost::io::read_file(a), tadpost::io::read_file(b));
  EXPECT_NE(tadpost::io::read_file(a).find("\"action\": \"2,5\""), std::string::npos);
}

TEST(Cli, FusionModeFlagChangesBoundaries) {
  const auto a = tmp("dwf.json"), b = tmp("mean.json");
  ASSERT_EQ(run("pipeline --input " + kSamples + "/proposals.txt --fusion-mode dwf --output " + a), 0);
  ASSERT_EQ(run("pipeline --input " + kSamples + "/proposals.txt --fusion-mode mean --output " + b), 0);
  EXPECT_NE(tadpost::io::read_file(a), tadpost::io::read_file(b));
}

TEST(Cli, EvalOnSamples) {
  const auto sub = tmp("sub.json"), metrics = tmp("metrics.txt");
  ASSERT_EQ(run("pipeline --input " + kSamples + "/proposals.txt --output " + sub), 0);
  ASSERT_EQ(run("eval --submission " + sub + " --ground-truth " + kSamples + "/ground_truth.txt --kv --output " + metrics), 0);
  const auto text = tadpost::io::read_file(metrics);
  EXPECT_NE(text.find("action.map@0.10 = "), std::string::npos);
  EXPECT_NE(text.find("verb.map_avg = "), std::string::npos);
}

TEST(Cli, NmsFuseWindowsSimulate) {
  const auto sub = tmp("sub2.json"), out = tmp("out.txt");
  ASSERT_EQ(run("pipeline --input " + kSamples + "/proposals.txt --output " + sub), 0);
  EXPECT_EQ(run("nms --input " + sub + " --nms-preset noun --output " + out), 0);
  EXPECT_EQ(run("fuse --input " + kSamples + "/proposals.txt --output " + out), 0);
  EXPECT_NE(tadpost::io::read_file(out).find("noun_weight"), std::string::npos);
  ASSERT_EQ(run("windows --total 6000 --output " + out), 0);
  EXPECT_EQ(tadpost::io::read_file(out), "start_feature\tlength_features\tstart_s\n0\t4608\t0.1333\n1392\t4608\t371.3333\n");

  const auto r1 = tmp("sim1.txt"), r2 = tmp("sim2.txt"), table = tmp("seg.tsv");
  ASSERT_EQ(run("simulate --seed 3 --output " + r1 + " --segments-table " + table), 0);
  ASSERT_EQ(run("simulate --seed 3 --output " + r2), 0);
  EXPECT_EQ(tadpost::io::read_file(r1), tadpost::io::read_file(r2));
  EXPECT_NE(tadpost::io::read_file(table).find("err_dwf"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  const auto bad = tmp("bad.cfg"), unknown = tmp("unknown.cfg"), badprops = tmp("bad.txt");
  tadpost::io::write_file(bad, "overlap = 1.5\n");
  tadpost::io::write_file(unknown, "colour = blue\n");
  tadpost::io::write_file(badprops, "v 0 1\n");
  EXPECT_EQ(run("windows --total 10 --config " + bad), 1);
  EXPECT_EQ(run("windows --total 10 --config " + unknown), 1);
  EXPECT_EQ(run("pipeline --input " + badprops), 1);
  EXPECT_EQ(run("pipeline"), 1);
  EXPECT_EQ(run("pipeline --input " + kSamples + "/proposals.txt --fusion-mode max"), 1);
  EXPECT_EQ(run("frobnicate"), 1);
  const auto empty = tmp("empty.txt"), out = tmp("empty.json");
  tadpost::io::write_file(empty, "# nothing\n");
  EXPECT_EQ(run("pipeline --input " + empty + " --output " + out), 0);
  EXPECT_NE(tadpost::io::read_file(out).find("\"results\": {}"), std::string::npos);
}
