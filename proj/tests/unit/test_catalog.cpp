#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>

#include "mhs/catalog.hpp"
#include "mhs/error.hpp"
#include "test_support.hpp"

using namespace mhs;
using mhs::testing::catalog_path;
using mhs::testing::shipped_catalog;

namespace {

// Independent count straight from the JSON document.
std::size_t sentences_in_file(const std::string& name) {
  std::ifstream in(catalog_path(name));
  const auto doc = nlohmann::json::parse(in);
  std::size_t total = 0;
  for (const auto& h : doc.at("heads")) total += 1 + h.at("questions").size();
  return total;
}

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

}  // namespace

TEST(Catalog, ShippedHeadCounts) {
  EXPECT_EQ(shipped_catalog("mdd").size(), 9u);
  EXPECT_EQ(shipped_catalog("bipolar").size(), 17u);
  EXPECT_EQ(shipped_catalog("gad").size(), 7u);
  EXPECT_EQ(shipped_catalog("bpd").size(), 9u);
}

TEST(Catalog, MddIdsAreD0ToD8) {
  const auto c = shipped_catalog("mdd");
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(c.heads[i].id, "D" + std::to_string(i));
}

TEST(Catalog, BipolarIsDepressiveAndManicHeads) {
  const auto c = shipped_catalog("bipolar");
  std::vector<std::string> ids;
  for (const auto& h : c.heads) ids.push_back(h.id);
  std::vector<std::string> expected;
  for (int i = 0; i <= 8; ++i) expected.push_back("D" + std::to_string(i));
  for (int i = 0; i <= 7; ++i) expected.push_back("M" + std::to_string(i));
  EXPECT_EQ(ids, expected);
}

TEST(Catalog, EveryShippedHeadHasAtLeastTwoSentences) {
  for (const auto* name : {"mdd", "bipolar", "gad", "bpd"}) {
    for (const auto& h : shipped_catalog(name).heads) {
      EXPECT_GE(h.sentence_count(), 2u) << name << "/" << h.id;
      EXPECT_FALSE(h.criterion.empty());
    }
  }
}

TEST(Catalog, HeadSentencesPutCriterionFirst) {
  const auto mdd = shipped_catalog("mdd");
  const auto s = head_sentences(mdd, 0);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], mdd.heads[0].criterion);
  EXPECT_EQ(s[1], "Feeling down, depressed, or hopeless.");

  const auto gad = shipped_catalog("gad");
  ASSERT_EQ(gad.heads[0].id, "A0");
  EXPECT_EQ(head_sentences(gad, 0).size(), 5u);
}

TEST(Catalog, HeadSentencesOutOfRange) {
  const auto mdd = shipped_catalog("mdd");
  EXPECT_EQ(code_of([&] { head_sentences(mdd, mdd.size()); }), ErrorCode::IndexError);
}

TEST(Catalog, DuplicateIdsRejected) {
  const std::string doc = R"({"disorder":"x","heads":[
    {"id":"D0","criterion":"a","questions":[]},
    {"id":"D0","criterion":"b","questions":[]}]})";
  EXPECT_EQ(code_of([&] { parse_catalog(doc); }), ErrorCode::ValidationError);
}

TEST(Catalog, EmptyCriterionAndZeroHeadsRejected) {
  EXPECT_EQ(code_of([] { parse_catalog(R"({"disorder":"x","heads":[{"id":"D0","criterion":"","questions":[]}]})"); }),
            ErrorCode::ValidationError);
  EXPECT_EQ(code_of([] { parse_catalog(R"({"disorder":"x","heads":[]})"); }), ErrorCode::ValidationError);
}

TEST(Catalog, MalformedDocumentsAreParseErrors) {
  EXPECT_EQ(code_of([] { parse_catalog("{not json"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_catalog(R"({"disorder":"x"})"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_catalog(R"({"disorder":"x","heads":[{"id":3,"criterion":"a","questions":[]}]})"); }),
            ErrorCode::ParseError);
}

TEST(Catalog, RestrictToFirstSentence) {
  for (const auto* name : {"mdd", "bipolar", "gad"}) {
    const auto c = shipped_catalog(name);
    const auto r = restrict_to_first_sentence(c);
    ASSERT_EQ(r.size(), c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      EXPECT_EQ(r.heads[i].sentence_count(), 1u);
      EXPECT_EQ(r.heads[i].criterion, c.heads[i].criterion);
      EXPECT_EQ(r.heads[i].id, c.heads[i].id);
    }
    EXPECT_EQ(restrict_to_first_sentence(r), r);
  }
}

TEST(Catalog, MergeToSingleHead) {
  for (const auto* name : {"mdd", "gad", "bpd", "bipolar"}) {
    const auto c = shipped_catalog(name);
    const auto m = merge_to_single_head(c);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m.heads[0].sentence_count(), sentences_in_file(name)) << name;
    EXPECT_EQ(m.total_sentences(), c.total_sentences());

    std::vector<std::string> flat;
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (auto& s : head_sentences(c, i)) flat.push_back(s);
    }
    EXPECT_EQ(head_sentences(m, 0), flat);
    EXPECT_EQ(merge_to_single_head(m), m);
  }
  EXPECT_EQ(sentences_in_file("mdd"), 18u);
}

TEST(Catalog, RoundTripsThroughJson) {
  mhs::testing::TempDir dir("catalog");
  for (const auto* name : {"mdd", "bipolar", "gad", "bpd"}) {
    const auto c = shipped_catalog(name);
    EXPECT_EQ(parse_catalog(serialize_catalog(c)), c);
    const auto path = dir.file(std::string(name) + ".json");
    save_catalog(c, path);
    EXPECT_EQ(load_catalog(path), c);
    EXPECT_EQ(catalog_fingerprint(load_catalog(path)), catalog_fingerprint(c));
  }
}

TEST(Catalog, FingerprintTracksContent) {
  auto c = shipped_catalog("mdd");
  const auto before = catalog_fingerprint(c);
  c.heads[3].questions[0] += " ";
  EXPECT_NE(catalog_fingerprint(c), before);
}

TEST(Catalog, SentenceKeys) {
  const auto c = shipped_catalog("gad");
  EXPECT_EQ(sentence_key(c, 0, 3), c.disorder + "/A0/3");
}

TEST(Catalog, MissingFileIsIoError) {
  EXPECT_EQ(code_of([] { load_catalog("/nonexistent/catalog.json"); }), ErrorCode::IoError);
}
