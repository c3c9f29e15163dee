#include <gtest/gtest.h>

#include <set>

#include "mhs/corpus.hpp"
#include "mhs/error.hpp"
#include "mhs/synthetic.hpp"
#include "test_support.hpp"

using namespace mhs;
using mhs::testing::shipped_catalog;

namespace {

// Share of a post's tokens that appear anywhere in the catalog.
double catalog_overlap(const Post& p, const std::set<std::string>& vocab) {
  const auto tokens = Tokenizer{}.tokenize(p.text());
  std::size_t hits = 0;
  for (const auto& t : tokens) hits += vocab.count(t);
  return static_cast<double>(hits) / static_cast<double>(tokens.size());
}

std::set<std::string> vocab_of(const SymptomCatalog& c) {
  const auto v = catalog_vocabulary(c);
  return {v.begin(), v.end()};
}

}  // namespace

TEST(Synthetic, SizesAndClassRatio) {
  const auto c = generate_synthetic(shipped_catalog("mdd"), 200, 800, 0.5, 1);
  EXPECT_EQ(c.posts.size(), 1000u);
  EXPECT_EQ(c.count(Label::Positive), 200u);
  std::set<std::string> ids;
  for (const auto& p : c.posts) ids.insert(p.id);
  EXPECT_EQ(ids.size(), 1000u);
}

TEST(Synthetic, EveryPostSurvivesPreprocessing) {
  for (double overlap : {0.0, 0.7, 1.0}) {
    const auto c = generate_synthetic(shipped_catalog("gad"), 50, 50, overlap, 3);
    const auto d = prepare_dataset(c);
    EXPECT_EQ(d.size(), 100u) << overlap;
  }
}

TEST(Synthetic, SameSeedSameBytes) {
  const auto mdd = shipped_catalog("mdd");
  EXPECT_EQ(serialize_corpus_jsonl(generate_synthetic(mdd, 30, 70, 0.7, 9)),
            serialize_corpus_jsonl(generate_synthetic(mdd, 30, 70, 0.7, 9)));
  EXPECT_NE(serialize_corpus_jsonl(generate_synthetic(mdd, 30, 70, 0.7, 9)),
            serialize_corpus_jsonl(generate_synthetic(mdd, 30, 70, 0.7, 10)));
}

TEST(Synthetic, PositivesOverlapCatalogMoreThanNegatives) {
  const auto mdd = shipped_catalog("mdd");
  const auto vocab = vocab_of(mdd);
  for (double overlap : {0.5, 0.7, 0.9}) {
    const auto c = generate_synthetic(mdd, 100, 100, overlap, 2);
    double pos = 0, neg = 0;
    for (const auto& p : c.posts) (p.label == Label::Positive ? pos : neg) += catalog_overlap(p, vocab);
    EXPECT_GT(pos / 100.0, neg / 100.0);
    EXPECT_EQ(neg, 0.0);
    // rounding adds at most half a token; synonym noise only lowers the share
    EXPECT_LE(pos / 100.0, overlap + 0.5 / 24.0);
    EXPECT_GT(pos / 100.0, overlap - 0.15);
  }
}

TEST(Synthetic, ZeroOverlapHasNoCatalogTokens) {
  const auto mdd = shipped_catalog("mdd");
  const auto vocab = vocab_of(mdd);
  const auto c = generate_synthetic(mdd, 100, 100, 0.0, 4);
  for (const auto& p : c.posts) EXPECT_EQ(catalog_overlap(p, vocab), 0.0);
}

TEST(Synthetic, RejectsBadArguments) {
  const auto mdd = shipped_catalog("mdd");
  EXPECT_THROW(generate_synthetic(mdd, 0, 10, 0.5, 1), Error);
  EXPECT_THROW(generate_synthetic(mdd, 10, 10, 1.5, 1), Error);
}
