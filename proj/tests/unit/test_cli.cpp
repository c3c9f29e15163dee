#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include <json.hpp>

#include "test_support.hpp"

using mhs::testing::catalog_path;
using mhs::testing::read_bytes;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the CLI with stderr folded into the captured output.
Run mhs_cli(const std::string& args) {
  const std::string command = std::string(MHS_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string q(const std::string& path) { return "'" + path + "'"; }

const std::string kTrainFlags = " --hash-encoder --dim 64 --c1 16 --c2 16 --epochs 10 --lr 1e-3 --seed 1 --prior-bias"
                                " --similarity-prior 0.01";

}  // namespace

TEST(Cli, ParamsMatchesClosedForm) {
  const auto r = mhs_cli("params --dim 512 --c1 100 --c2 100 --heads 9");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "612620\n");
}

TEST(Cli, CatalogValidate) {
  const auto r = mhs_cli("catalog-validate " + q(catalog_path("bipolar")));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "17 heads, OK\n");
}

TEST(Cli, UsageErrorsExitTwo) {
  auto r = mhs_cli("frobnicate");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("Usage"), std::string::npos);
  r = mhs_cli("train --catalog " + q(catalog_path("mdd")));
  EXPECT_EQ(r.status, 2);
  r = mhs_cli("params --dim not-a-number");
  EXPECT_EQ(r.status, 2);
}

TEST(Cli, RuntimeErrorsExitOne) {
  mhs::testing::TempDir dir("cli-err");
  mhs::testing::write_bytes(dir.file("bad.json"), "{\"disorder\": \"x\", \"heads\": []}");
  EXPECT_EQ(mhs_cli("catalog-validate " + q(dir.file("bad.json"))).status, 1);
}

TEST(Cli, GradcheckExitCodes) {
  auto r = mhs_cli("gradcheck --seed 1");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("gradcheck PASSED"), std::string::npos);
  r = mhs_cli("gradcheck --seed 1 --corrupt-cosine-grad");
  EXPECT_EQ(r.status, 1) << r.out;
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, GenSynthIsDeterministic) {
  mhs::testing::TempDir dir("cli-gen");
  const std::string base = "gen-synth --catalog " + q(catalog_path("gad")) + " --n-pos 10 --n-neg 20 --seed 4 --out ";
  ASSERT_EQ(mhs_cli(base + q(dir.file("a.jsonl"))).status, 0);
  ASSERT_EQ(mhs_cli(base + q(dir.file("b.jsonl"))).status, 0);
  const auto a = read_bytes(dir.file("a.jsonl"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, read_bytes(dir.file("b.jsonl")));
  EXPECT_TRUE(std::filesystem::exists(dir.file("a.jsonl.provenance.json")));
}

TEST(Cli, TrainEvaluateInterpret) {
  mhs::testing::TempDir dir("cli-pipeline");
  const auto mdd = q(catalog_path("mdd"));
  const auto corpus = q(dir.file("train.jsonl"));
  const auto held_out = q(dir.file("test.jsonl"));
  ASSERT_EQ(mhs_cli("gen-synth --catalog " + mdd + " --n-pos 100 --n-neg 400 --seed 1 --out " + corpus).status, 0);
  ASSERT_EQ(mhs_cli("gen-synth --catalog " + mdd + " --n-pos 20 --n-neg 60 --seed 2 --out " + held_out).status, 0);

  for (const char* name : {"m1.mhsm", "m2.mhsm"}) {
    const auto r = mhs_cli("train --catalog " + mdd + " --corpus " + corpus + kTrainFlags + " --out " +
                           q(dir.file(name)));
    ASSERT_EQ(r.status, 0) << r.out;
  }
  EXPECT_EQ(read_bytes(dir.file("m1.mhsm")), read_bytes(dir.file("m2.mhsm")));

  const auto model = q(dir.file("m1.mhsm"));
  auto r = mhs_cli("eval --model " + model + " --corpus " + held_out + " --out " + q(dir.file("report.json")));
  ASSERT_EQ(r.status, 0) << r.out;
  const auto report = nlohmann::json::parse(read_bytes(dir.file("report.json")));
  for (const char* key : {"accuracy", "precision", "recall", "f1", "weighted_f1", "auc", "tp", "fp", "tn", "fn"}) {
    EXPECT_TRUE(report.contains(key)) << key;
  }
  EXPECT_EQ(report.size(), 10u);
  EXPECT_EQ(report["tp"].get<int>() + report["fn"].get<int>(), 20);
  EXPECT_TRUE(std::filesystem::exists(dir.file("report.json.provenance.json")));

  r = mhs_cli("thresholds --model " + model + " --corpus " + corpus + " --out " + q(dir.file("th.json")));
  ASSERT_EQ(r.status, 0) << r.out;
  const auto th = nlohmann::json::parse(read_bytes(dir.file("th.json")));
  EXPECT_EQ(th["percentile"].get<double>(), 70.0);
  EXPECT_TRUE(th.contains("provenance"));

  r = mhs_cli("explain --model " + model + " --thresholds " + q(dir.file("th.json")) +
              " --text 'I feel hopeless and empty every day' --out " + q(dir.file("ex.json")));
  ASSERT_EQ(r.status, 0) << r.out;
  const auto ex = nlohmann::json::parse(read_bytes(dir.file("ex.json")));
  ASSERT_EQ(ex["explanations"].size(), 1u);

  r = mhs_cli("heatmap --model " + model + " --corpus " + held_out + " --out " + q(dir.file("heat.csv")) +
              " --weights-out " + q(dir.file("w.csv")));
  ASSERT_EQ(r.status, 0) << r.out;
  const auto csv = read_bytes(dir.file("heat.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
  const auto weights = read_bytes(dir.file("w.csv"));
  EXPECT_EQ(weights.substr(0, weights.find('\n')), "head_id,weight_negative,weight_positive");

  r = mhs_cli("eval --model " + model + " --corpus " + held_out + " --hash-encoder --dim 16 --out " +
              q(dir.file("bad.json")));
  EXPECT_EQ(r.status, 1);
  r = mhs_cli("eval --model " + model + " --catalog " + q(catalog_path("gad")) + " --corpus " + held_out +
              " --out " + q(dir.file("bad.json")));
  EXPECT_EQ(r.status, 1);
}

TEST(Cli, ResumeMatchesDirectTraining) {
  mhs::testing::TempDir dir("cli-resume");
  const auto mdd = q(catalog_path("mdd"));
  const auto corpus = q(dir.file("train.jsonl"));
  ASSERT_EQ(mhs_cli("gen-synth --catalog " + mdd + " --n-pos 10 --n-neg 30 --seed 3 --out " + corpus).status, 0);
  const std::string common = "train --catalog " + mdd + " --corpus " + corpus +
                             " --hash-encoder --dim 16 --c1 4 --c2 4 --lr 1e-3 --seed 2";
  ASSERT_EQ(mhs_cli(common + " --epochs 3 --out " + q(dir.file("direct.mhsm"))).status, 0);
  ASSERT_EQ(mhs_cli(common + " --epochs 1 --out " + q(dir.file("half.mhsm"))).status, 0);
  const auto r = mhs_cli(common + " --epochs 3 --resume " + q(dir.file("half.mhsm")) + " --out " +
                         q(dir.file("resumed.mhsm")));
  ASSERT_EQ(r.status, 0) << r.out;
  const auto direct = read_bytes(dir.file("direct.mhsm"));
  const auto resumed = read_bytes(dir.file("resumed.mhsm"));
  // headers carry different provenance; the tensor and optimizer payload must agree
  const auto payload = [](const std::string& bytes) { return bytes.substr(bytes.find('\n', 6) + 1); };
  EXPECT_EQ(payload(direct), payload(resumed));
}
