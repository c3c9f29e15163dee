#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "mhs/error.hpp"
#include "mhs/interpreter.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace mhs;
using mhs::oracle::sorted_rank;
using mhs::testing::shipped_catalog;

namespace {

Scored scored(int predicted, double prob, std::vector<double> d) { return {predicted, prob, std::move(d)}; }

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no mhs::Error thrown";
  return ErrorCode::IoError;
}

const std::vector<std::string> kTwoHeads = {"A", "B"};

}  // namespace

TEST(NearestRank, TenValues) {
  std::vector<double> v;
  for (int i = 10; i >= 1; --i) v.push_back(i / 10.0);
  EXPECT_DOUBLE_EQ(nearest_rank_percentile(v, 70), 0.7);
  EXPECT_DOUBLE_EQ(nearest_rank_percentile(v, 100), 1.0);
  EXPECT_DOUBLE_EQ(nearest_rank_percentile(v, 1), 0.1);
}

TEST(NearestRank, SingleValue) {
  for (double p : {0.5, 30.0, 70.0, 100.0}) EXPECT_EQ(nearest_rank_percentile(std::vector<double>{0.42}, p), 0.42);
}

TEST(NearestRank, AgreesWithSortingOracle) {
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v(1 + rng.below(40));
    for (auto& x : v) x = static_cast<double>(rng.below(20)) / 20.0;
    const double p = trial % 5 == 0 ? 70.0 : rng.uniform(0.01, 100.0);
    ASSERT_EQ(nearest_rank_percentile(v, p), sorted_rank(v, p));
  }
}

TEST(NearestRank, InvalidArguments) {
  EXPECT_THROW(nearest_rank_percentile(std::vector<double>{1.0}, 0.0), Error);
  EXPECT_THROW(nearest_rank_percentile(std::vector<double>{1.0}, 100.5), Error);
  EXPECT_THROW(nearest_rank_percentile(std::vector<double>{}, 50.0), Error);
}

TEST(PercentileRank, ShareAtOrBelow) {
  const std::vector<double> ref = {0.1, 0.2, 0.3, 0.4};
  EXPECT_EQ(percentile_rank(ref, 0.25), 50.0);
  EXPECT_EQ(percentile_rank(ref, 0.4), 100.0);
  EXPECT_EQ(percentile_rank(ref, 0.0), 0.0);
}

TEST(Heatmap, OneSamplePerClassIsExact) {
  const std::vector<Scored> s = {scored(0, 0.1, {0.25, 0.5}), scored(1, 0.9, {0.75, 0.125})};
  const std::vector<Label> t = {Label::Negative, Label::Positive};
  const auto h = head_heatmap(s, t, kTwoHeads);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0].mean_negative, 0.25);
  EXPECT_EQ(h[0].mean_positive, 0.75);
  EXPECT_EQ(h[1].mean_negative, 0.5);
  EXPECT_EQ(h[1].mean_positive, 0.125);
  EXPECT_EQ(heatmap_csv(h).substr(0, heatmap_csv(h).find('\n')), "head_id,mean_distance_negative,mean_distance_positive");
}

TEST(Heatmap, EmptyClass) {
  const std::vector<Scored> s = {scored(0, 0.1, {0.25, 0.5})};
  const std::vector<Label> t = {Label::Negative};
  EXPECT_EQ(code_of([&] { head_heatmap(s, t, kTwoHeads); }), ErrorCode::EmptyClass);
}

TEST(Thresholds, ReferenceSetIsTruePositives) {
  std::vector<Scored> s;
  std::vector<Label> t;
  for (int i = 1; i <= 10; ++i) {
    s.push_back(scored(1, 0.9, {i / 10.0, 1.0 - i / 10.0}));
    t.push_back(Label::Positive);
  }
  // a false positive, a false negative and a true negative are all ignored
  s.push_back(scored(1, 0.8, {5.0, 5.0}));
  t.push_back(Label::Negative);
  s.push_back(scored(0, 0.2, {-5.0, -5.0}));
  t.push_back(Label::Positive);
  s.push_back(scored(0, 0.1, {-7.0, 7.0}));
  t.push_back(Label::Negative);

  const auto th = compute_thresholds(s, t, kTwoHeads);
  ASSERT_EQ(th.heads.size(), 2u);
  EXPECT_DOUBLE_EQ(th.heads[0].threshold, 0.7);
  EXPECT_DOUBLE_EQ(th.heads[1].threshold, sorted_rank(th.heads[1].reference, 70));
  EXPECT_EQ(th.heads[0].reference.size(), 10u);
  EXPECT_EQ(th.definition, "nearest-rank");
  EXPECT_EQ(th.reference_set, "true-positives");

  const auto back = parse_thresholds(serialize_thresholds(th));
  EXPECT_EQ(back.heads[0].threshold, th.heads[0].threshold);
  EXPECT_EQ(back.heads[1].reference, th.heads[1].reference);
  EXPECT_EQ(back.percentile, 70.0);
}

TEST(Thresholds, NoTruePositives) {
  const std::vector<Scored> s = {scored(0, 0.1, {0.1, 0.1}), scored(1, 0.9, {0.2, 0.2})};
  const std::vector<Label> t = {Label::Positive, Label::Negative};
  EXPECT_EQ(code_of([&] { compute_thresholds(s, t, kTwoHeads); }), ErrorCode::NoTruePositives);
}

TEST(SalientCount, BelowEveryThresholdIsZero) {
  SalientThresholds th;
  th.heads = {{"A", 0.5, {}}, {"B", 0.6, {}}};
  EXPECT_EQ(salient_count(std::vector<double>{0.1, 0.2}, th), 0u);
  EXPECT_EQ(salient_count(std::vector<double>{0.5, 0.2}, th), 1u);
  EXPECT_EQ(salient_count(std::vector<double>{0.9, 0.6}, th), 2u);
}

TEST(SalientCount, DistributionPartitionsTruePositives) {
  Rng rng(4);
  std::vector<Scored> s;
  std::vector<Label> t;
  for (int i = 0; i < 200; ++i) {
    const int truth = static_cast<int>(rng.below(2));
    const int pred = static_cast<int>(rng.below(2));
    s.push_back(scored(pred, rng.uniform(), {rng.uniform(), rng.uniform(), rng.uniform()}));
    t.push_back(truth ? Label::Positive : Label::Negative);
  }
  const std::vector<std::string> heads = {"A", "B", "C"};
  const auto th = compute_thresholds(s, t, heads);
  const auto buckets = salient_count_distribution(s, t, th);

  std::size_t tp = 0;
  std::vector<std::size_t> freq(4, 0);
  std::vector<double> prob(4, 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (t[i] != Label::Positive || s[i].predicted != 1) continue;
    ++tp;
    std::size_t c = 0;
    for (std::size_t h = 0; h < 3; ++h) c += s[i].distances[h] >= th.heads[h].threshold ? 1 : 0;
    ++freq[c];
    prob[c] += s[i].positive_probability;
  }
  std::size_t total = 0;
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    const auto& k = buckets[b];
    total += k.frequency;
    EXPECT_EQ(k.frequency, freq[k.salient]);
    EXPECT_NEAR(k.mean_positive_probability, prob[k.salient] / static_cast<double>(freq[k.salient]), 1e-12);
    EXPECT_GT(k.frequency, 0u);
    if (b) {
      EXPECT_GT(k.salient, buckets[b - 1].salient);
    }
  }
  EXPECT_EQ(total, tp);
}

TEST(Explain, TextEqualToSoleSentenceIsFullySalient) {
  const auto one = restrict_to_first_sentence(shipped_catalog("mdd"));
  ModelConfig c;
  c.dim = 32;
  c.c1 = c.c2 = 8;
  const auto p = build_variant(Variant::Full, one, c, 3);
  HashEncoder enc(32);

  Dataset data;
  data.examples.push_back({"same", Tokenizer{}.tokenize(one.heads[0].criterion), Label::Positive});
  data.examples.push_back({"other", Tokenizer{}.tokenize("my garden has a lot of tomatoes this summer and I like it"),
                           Label::Positive});
  const auto symptoms = embed_symptoms(one, Variant::Full, enc);
  auto s = score_dataset(p, data, symptoms, enc);
  EXPECT_NEAR(s[0].distances[0], 1.0, 1e-6);

  SalientThresholds th;
  const auto ids = model_head_ids(p, one);
  for (std::size_t h = 0; h < ids.size(); ++h) {
    th.heads.push_back({ids[h], s[1].distances[h], {s[0].distances[h], s[1].distances[h]}});
  }
  const auto e = explain(s[0], "same", ids, th);
  EXPECT_EQ(e.heads[0].head_id, "D0");
  EXPECT_NEAR(e.heads[0].distance, 1.0, 1e-6);
  EXPECT_EQ(e.heads[0].percentile_rank, 100.0);
  EXPECT_TRUE(e.heads[0].salient);
}

TEST(Explain, ThresholdsMustCoverModelHeads) {
  SalientThresholds th;
  th.heads = {{"A", 0.5, {0.5}}};
  EXPECT_EQ(code_of([&] { explain(scored(1, 0.9, {0.1, 0.2}), "x", kTwoHeads, th); }), ErrorCode::CatalogMismatch);
  th.heads = {{"A", 0.5, {0.5}}, {"C", 0.5, {0.5}}};
  EXPECT_EQ(code_of([&] { explain(scored(1, 0.9, {0.1, 0.2}), "x", kTwoHeads, th); }), ErrorCode::CatalogMismatch);
}

TEST(HeadIds, CnnOnlyHasNoHeads) {
  const auto mdd = shipped_catalog("mdd");
  ModelConfig c;
  c.dim = 8;
  c.c1 = c.c2 = 2;
  EXPECT_EQ(code_of([&] { model_head_ids(build_variant(Variant::CnnOnly, mdd, c, 1), mdd); }),
            ErrorCode::ValidationError);
  EXPECT_EQ(model_head_ids(build_variant(Variant::SingleHead, mdd, c, 1), mdd).size(), 1u);
}

TEST(TrainedModel, PositiveClassSitsCloserToMostHeads) {
  const auto& m = mhs::testing::trained_mdd();
  HashEncoder enc(mhs::testing::kSyntheticDim);
  const auto rows = head_heatmap(m.params, m.test, m.catalog, enc);
  ASSERT_EQ(rows.size(), 9u);
  int closer = 0;
  for (const auto& r : rows) closer += r.mean_positive > r.mean_negative ? 1 : 0;
  EXPECT_GE(closer, 7);
}

TEST(TrainedModel, ConfidenceGrowsWithSalientCount) {
  const auto& m = mhs::testing::trained_mdd();
  HashEncoder enc(mhs::testing::kSyntheticDim);
  const auto th = compute_thresholds(m.params, m.train, m.catalog, enc);
  const auto buckets = salient_count_distribution(m.params, m.train, m.catalog, enc, th);
  double low = 0, high = 0;
  std::size_t n_low = 0, n_high = 0;
  for (const auto& b : buckets) {
    if (b.salient <= 1) {
      low += b.mean_positive_probability * static_cast<double>(b.frequency);
      n_low += b.frequency;
    } else if (b.salient >= 3) {
      high += b.mean_positive_probability * static_cast<double>(b.frequency);
      n_high += b.frequency;
    }
  }
  ASSERT_GT(n_low, 0u);
  ASSERT_GT(n_high, 0u);
  EXPECT_LE(low / static_cast<double>(n_low), high / static_cast<double>(n_high));
}

TEST(Thresholds, SampleOrderDoesNotMatter) {
  Rng rng(8);
  std::vector<Scored> s;
  std::vector<Label> t;
  for (int i = 0; i < 60; ++i) {
    s.push_back(scored(static_cast<int>(rng.below(2)), rng.uniform(), {rng.uniform(), rng.uniform()}));
    t.push_back(rng.below(2) ? Label::Positive : Label::Negative);
  }
  const auto a = compute_thresholds(s, t, kTwoHeads);
  std::vector<std::size_t> order(s.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(std::span<std::size_t>(order));
  std::vector<Scored> ps;
  std::vector<Label> pt;
  for (auto i : order) {
    ps.push_back(s[i]);
    pt.push_back(t[i]);
  }
  const auto b = compute_thresholds(ps, pt, kTwoHeads);
  for (std::size_t h = 0; h < 2; ++h) EXPECT_EQ(a.heads[h].threshold, b.heads[h].threshold);
}

TEST(SalientCount, RaisingThePercentileNeverAddsSalientHeads) {
  Rng rng(12);
  std::vector<Scored> s;
  std::vector<Label> t;
  const std::vector<std::string> heads = {"A", "B", "C", "D"};
  for (int i = 0; i < 80; ++i) {
    s.push_back(scored(1, rng.uniform(), {rng.uniform(), rng.uniform(), rng.uniform(), rng.uniform()}));
    t.push_back(Label::Positive);
  }
  std::vector<std::size_t> previous(s.size(), heads.size());
  for (double p : {10.0, 30.0, 50.0, 70.0, 90.0, 100.0}) {
    const auto th = compute_thresholds(s, t, heads, p);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto c = salient_count(s[i].distances, th);
      EXPECT_LE(c, previous[i]) << "p " << p;
      previous[i] = c;
    }
  }
}

TEST(TrainedModel, HeatmapValuesAreBoundedAndWeightsExported) {
  const auto& m = mhs::testing::trained_mdd();
  HashEncoder enc(mhs::testing::kSyntheticDim);
  for (const auto& r : head_heatmap(m.params, m.test, m.catalog, enc)) {
    EXPECT_GE(r.mean_negative, -1.0);
    EXPECT_LE(r.mean_negative, 1.0);
    EXPECT_GE(r.mean_positive, -1.0);
    EXPECT_LE(r.mean_positive, 1.0);
  }
  const auto csv = head_weights_csv(m.params, m.catalog);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "head_id,weight_negative,weight_positive");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
  EXPECT_NE(csv.find("\nD0,"), std::string::npos);
}

TEST(TrainedModel, ExplainFlagsMatchExternalRecomputation) {
  const auto& m = mhs::testing::trained_mdd();
  HashEncoder enc(mhs::testing::kSyntheticDim);
  const auto th = compute_thresholds(m.params, m.train, m.catalog, enc);

  // 100 texts mixing catalog words and filler at random
  const auto vocab = catalog_vocabulary(m.catalog);
  const auto filler = filler_vocabulary();
  Rng rng(77);
  Dataset texts;
  for (int i = 0; i < 100; ++i) {
    std::vector<std::string> tokens(10 + rng.below(40));
    for (auto& tok : tokens) {
      tok = rng.below(2) ? vocab[rng.below(vocab.size())] : std::string(filler[rng.below(filler.size())]);
    }
    texts.examples.push_back({"t" + std::to_string(i), std::move(tokens), Label::Negative});
  }
  const auto explanations = explain(m.params, texts, m.catalog, enc, th);
  const auto scores = score_dataset(m.params, texts, embed_symptoms(m.catalog, Variant::Full, enc), enc);
  ASSERT_EQ(explanations.size(), 100u);
  for (std::size_t i = 0; i < 100; ++i) {
    ASSERT_EQ(explanations[i].heads.size(), m.catalog.size());
    for (std::size_t h = 0; h < m.catalog.size(); ++h) {
      const double d = scores[i].distances[h];
      EXPECT_EQ(explanations[i].heads[h].distance, d);
      EXPECT_EQ(explanations[i].heads[h].salient, d >= th.heads[h].threshold);
      EXPECT_EQ(explanations[i].heads[h].percentile_rank, percentile_rank(th.heads[h].reference, d));
    }
  }
}
