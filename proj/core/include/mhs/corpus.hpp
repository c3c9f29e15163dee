#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mhs/text.hpp"

namespace mhs {

enum class Label : std::uint8_t { Negative = 0, Positive = 1 };

inline int to_int(Label l) { return static_cast<int>(l); }

struct Post {
  std::string id;
  std::string title;
  std::string body;
  Label label = Label::Negative;
  std::string source;

  /// title + " " + body
  std::string text() const;

  bool operator==(const Post&) const = default;
};

struct Corpus {
  std::string task_name;
  std::vector<Post> posts;

  std::size_t count(Label label) const;
};

struct TokenizedText {
  std::vector<std::string> tokens;
  bool truncated = false;
};

enum class RejectReason { ContainsUrl, ContainsPii, TooShort, NotEnglish };

std::string_view to_string(RejectReason reason);

struct Rejected {
  RejectReason reason;
};

using PreprocessResult = std::variant<TokenizedText, Rejected>;

inline constexpr std::size_t kMinWords = 10;

/// Filters and tokenizes one post. Checks run in order: URL, PII, length,
/// English heuristic. Accepted texts are truncated to kMaxTokens.
PreprocessResult preprocess(const Post& post, const Tokenizer& tokenizer);

bool contains_url(std::string_view text);
bool contains_pii(std::string_view text);
/// True when at least 80% of the tokens consist only of ASCII letters,
/// digits and apostrophes.
bool looks_english(std::span<const std::string> tokens);

/// JSONL, one {"id","title","body","label","source"} object per line.
Corpus parse_corpus_jsonl(std::string_view text, std::string task_name = {});
Corpus load_corpus(const std::string& path, std::string task_name = {});
std::string serialize_corpus_jsonl(const Corpus& corpus);
void save_corpus(const Corpus& corpus, const std::string& path);

/// A post that survived preprocessing.
struct Example {
  std::string id;
  std::vector<std::string> tokens;
  Label label = Label::Negative;
};

struct Dataset {
  std::string name;
  std::vector<Example> examples;
  std::map<std::string, std::size_t> rejected;  // reason -> count

  std::size_t size() const { return examples.size(); }
  std::vector<Label> labels() const;
  std::size_t count(Label label) const;
};

Dataset prepare_dataset(const Corpus& corpus, const Tokenizer& tokenizer = {});
Dataset subset(const Dataset& data, std::span<const std::size_t> indices);

struct Fold {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// k stratified folds. Each label is shuffled with the seed and dealt
/// round-robin, so every test fold holds floor or ceil of its share of each
/// class. Throws InsufficientData when k < 2 or a class has fewer than k items.
std::vector<Fold> stratified_folds(std::span<const Label> labels, std::size_t k, std::uint64_t seed);
std::vector<Fold> stratified_folds(const Corpus& corpus, std::size_t k, std::uint64_t seed);

}  // namespace mhs
