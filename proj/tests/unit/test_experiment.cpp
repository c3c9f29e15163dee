#include <gtest/gtest.h>

#include <json.hpp>

#include "mhs/error.hpp"
#include "mhs/evaluator.hpp"
#include "mhs/experiment.hpp"
#include "test_support.hpp"

using namespace mhs;
using mhs::testing::shipped_catalog;

namespace {

// Catalog whose every word is private to it: "<tag><letter><letter>".
SymptomCatalog private_catalog(char tag, std::size_t heads = 3) {
  SymptomCatalog c;
  c.disorder = std::string("private-") + tag;
  std::size_t word = 0;
  auto next_word = [&] {
    std::string w = {tag, 'q', static_cast<char>('a' + word / 26 % 26), static_cast<char>('a' + word % 26)};
    ++word;
    return w;
  };
  auto sentence = [&] {
    std::string s;
    for (int i = 0; i < 6; ++i) s += (i ? " " : "") + next_word();
    return s + ".";
  };
  for (std::size_t h = 0; h < heads; ++h) {
    SymptomHead head;
    head.id = std::string(1, static_cast<char>(tag - 32)) + std::to_string(h);
    head.criterion = sentence();
    head.questions = {sentence()};
    c.heads.push_back(std::move(head));
  }
  return c;
}

Protocol small_protocol() {
  Protocol p;
  p.train = mhs::testing::synthetic_train_config();
  p.train.c1 = p.train.c2 = 8;
  p.folds = 3;
  p.seeds = {1};
  return p;
}

NamedDataset task_for(const SymptomCatalog& c, const std::string& name, std::uint64_t seed) {
  auto data = prepare_dataset(generate_synthetic(c, 60, 240, 0.7, seed));
  data.name = name;
  return {name, std::move(data)};
}

}  // namespace

TEST(SymptomSwap, GridShapeAndDiagonalDominance) {
  const auto a = private_catalog('a'), b = private_catalog('b'), c = private_catalog('c');
  const std::vector<NamedCatalog> catalogs = {{"a", a}, {"b", b}, {"c", c}};
  const std::vector<NamedDataset> tasks = {task_for(a, "a", 1), task_for(b, "b", 2), task_for(c, "c", 3)};
  HashEncoder enc(32);
  const auto grid = run_symptom_swap(tasks, catalogs, enc, small_protocol());
  ASSERT_EQ(grid.cells.size(), 9u);
  for (std::size_t t = 0; t < 3; ++t) {
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_EQ(grid.at(t, k).task, tasks[t].name);
      EXPECT_EQ(grid.at(t, k).catalog, catalogs[k].name);
      EXPECT_EQ(grid.at(t, k).result.runs.size(), 3u);
    }
    for (std::size_t k = 0; k < 3; ++k) {
      if (k == t) continue;
      EXPECT_GE(grid.at(t, t).result.mean_f1, grid.at(t, k).result.mean_f1) << "task " << t << " catalog " << k;
    }
  }
  const auto j = nlohmann::json::parse(swap_grid_json(grid));
  EXPECT_EQ(j["cells"].size(), 9u);
  EXPECT_TRUE(j["cells"][0]["crossval"].contains("mean_auc"));
}

TEST(SymptomSwap, SwappingCatalogsSwapsColumns) {
  const auto a = private_catalog('a', 2), b = private_catalog('b', 2);
  const std::vector<NamedDataset> tasks = {task_for(a, "a", 4)};
  HashEncoder enc(16);
  auto protocol = small_protocol();
  protocol.train.epochs = 2;
  protocol.folds = 2;
  const std::vector<NamedCatalog> ab = {{"a", a}, {"b", b}}, ba = {{"b", b}, {"a", a}};
  const auto g1 = run_symptom_swap(tasks, ab, enc, protocol);
  const auto g2 = run_symptom_swap(tasks, ba, enc, protocol);
  EXPECT_EQ(crossval_json(g1.at(0, 0).result), crossval_json(g2.at(0, 1).result));
  EXPECT_EQ(crossval_json(g1.at(0, 1).result), crossval_json(g2.at(0, 0).result));
}

TEST(Transfer, TargetCatalogBeatsSourceCatalog) {
  const auto src = shipped_catalog("gad"), tgt = shipped_catalog("bpd");
  const auto train_data = prepare_dataset(generate_synthetic(src, 200, 800, 0.7, 1));
  const auto test_data = prepare_dataset(generate_synthetic(tgt, 200, 800, 0.7, 2));
  HashEncoder enc(mhs::testing::kSyntheticDim);
  const std::vector<TransferCell> cells = {{"source-catalog", &test_data, nullptr},
                                           {"target-catalog", &test_data, &tgt}};
  const auto results = run_transfer(train_data, src, cells, enc, mhs::testing::synthetic_train_config());
  ASSERT_EQ(results.size(), 2u);
  EXPECT_EQ(results[0].catalog, src.disorder);
  EXPECT_EQ(results[1].catalog, tgt.disorder);
  EXPECT_GT(results[1].report.f1, results[0].report.f1);
}

TEST(Transfer, InDomainCellMatchesDirectEvaluation) {
  const auto mdd = shipped_catalog("mdd");
  const auto data = prepare_dataset(generate_synthetic(mdd, 20, 60, 0.7, 7));
  HashEncoder enc(16);
  auto config = mhs::testing::synthetic_train_config();
  config.c1 = config.c2 = 4;
  config.epochs = 2;
  const std::vector<TransferCell> cells = {{"self", &data, nullptr}};
  const auto results = run_transfer(data, mdd, cells, enc, config);
  const auto direct = evaluate(train(data, mdd, enc, config).params, data, mdd, enc);
  ASSERT_EQ(results.size(), 1u);
  EXPECT_EQ(report_json(results[0].report), report_json(direct));
  EXPECT_TRUE(run_transfer(data, mdd, {}, enc, config).empty());
}

TEST(ExperimentFile, SwapSpecRunsWithRelativePaths) {
  mhs::testing::TempDir dir("experiment");
  save_catalog(private_catalog('a', 2), dir.file("a.json"));
  save_catalog(private_catalog('b', 2), dir.file("b.json"));
  save_corpus(generate_synthetic(private_catalog('a', 2), 20, 40, 0.7, 1), dir.file("a.jsonl"));
  const std::string spec = R"({
    "kind": "symptom_swap",
    "encoder": {"kind": "hash", "dim": 16, "seed": 0},
    "train": {"epochs": 1, "learning_rate": 0.001, "c1": 4, "c2": 4, "seed": 1,
              "prior_bias": true, "similarity_prior": 0.01},
    "folds": 2, "seeds": [1, 2],
    "catalogs": [{"name": "a", "path": "a.json"}, {"name": "b", "path": "b.json"}],
    "tasks": [{"name": "from-file", "corpus": "a.jsonl"},
              {"name": "generated", "synthetic": {"catalog": "b", "positives": 20, "negatives": 40,
                                                  "overlap": 0.7, "seed": 3}}]
  })";
  mhs::testing::write_bytes(dir.file("spec.json"), spec);
  const auto out = run_experiment_file(dir.file("spec.json"));
  const auto j = nlohmann::json::parse(out);
  EXPECT_EQ(j["kind"], "symptom_swap");
  EXPECT_EQ(j["cells"].size(), 4u);
  EXPECT_EQ(j["cells"][0]["crossval"]["runs"].size(), 4u);
  EXPECT_TRUE(j["provenance"].contains("config_hash"));
  EXPECT_TRUE(j["provenance"]["inputs"].contains("corpus:from-file"));
  EXPECT_EQ(run_experiment_file(dir.file("spec.json")), out);
}

TEST(ExperimentFile, TransferSpec) {
  mhs::testing::TempDir dir("transfer");
  save_catalog(shipped_catalog("mdd"), dir.file("mdd.json"));
  save_catalog(shipped_catalog("gad"), dir.file("gad.json"));
  const std::string spec = R"({
    "kind": "transfer",
    "encoder": {"kind": "hash", "dim": 16},
    "train": {"epochs": 1, "learning_rate": 0.001, "c1": 4, "c2": 4},
    "catalogs": [{"name": "mdd", "path": "mdd.json"}, {"name": "gad", "path": "gad.json"}],
    "train_task": {"name": "mdd", "synthetic": {"catalog": "mdd", "positives": 20, "negatives": 40, "overlap": 0.7}},
    "train_catalog": "mdd",
    "cells": [{"name": "gad-as-is", "synthetic": {"catalog": "gad", "positives": 10, "negatives": 30, "overlap": 0.7}},
              {"name": "gad-target", "catalog": "gad",
               "synthetic": {"catalog": "gad", "positives": 10, "negatives": 30, "overlap": 0.7}}]
  })";
  mhs::testing::write_bytes(dir.file("spec.json"), spec);
  const auto j = nlohmann::json::parse(run_experiment_file(dir.file("spec.json")));
  EXPECT_EQ(j["kind"], "transfer");
  ASSERT_EQ(j["cells"].size(), 2u);
  EXPECT_TRUE(j["cells"][1]["report"].contains("weighted_f1"));
}

TEST(ExperimentFile, BadSpecs) {
  mhs::testing::TempDir dir("badspec");
  mhs::testing::write_bytes(dir.file("kind.json"), R"({"kind": "nope", "encoder": {"kind": "hash"}})");
  EXPECT_THROW(run_experiment_file(dir.file("kind.json")), Error);
  mhs::testing::write_bytes(dir.file("broken.json"), "{");
  try {
    run_experiment_file(dir.file("broken.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
  mhs::testing::write_bytes(dir.file("missing.json"), R"({
    "kind": "symptom_swap", "encoder": {"kind": "hash", "dim": 8},
    "catalogs": [{"name": "a", "path": "does-not-exist.json"}], "tasks": []})");
  EXPECT_THROW(run_experiment_file(dir.file("missing.json")), Error);
}
