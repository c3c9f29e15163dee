#include "mhs/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "mhs/error.hpp"
#include "mhs/random.hpp"

namespace mhs {

using nlohmann::json;

std::string Post::text() const { return title + " " + body; }

std::size_t Corpus::count(Label label) const {
  return static_cast<std::size_t>(
      std::count_if(posts.begin(), posts.end(), [&](const Post& p) { return p.label == label; }));
}

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::ContainsUrl: return "ContainsUrl";
    case RejectReason::ContainsPii: return "ContainsPii";
    case RejectReason::TooShort: return "TooShort";
    case RejectReason::NotEnglish: return "NotEnglish";
  }
  return "Unknown";
}

bool contains_url(std::string_view text) {
  static const std::regex url(R"((https?://|www\.))", std::regex::icase | std::regex::optimize);
  return std::regex_search(text.begin(), text.end(), url);
}

bool contains_pii(std::string_view text) {
  static const std::regex email(R"([A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\.[A-Za-z]{2,})", std::regex::optimize);
  static const std::regex mention(R"((^|[\s(\[])/?u/[A-Za-z0-9_-]+)", std::regex::icase | std::regex::optimize);
  return std::regex_search(text.begin(), text.end(), email) ||
         std::regex_search(text.begin(), text.end(), mention);
}

bool looks_english(std::span<const std::string> tokens) {
  if (tokens.empty()) return false;
  std::size_t ok = 0;
  for (const auto& t : tokens) {
    const bool ascii_word = std::all_of(t.begin(), t.end(), [](char ch) {
      const auto c = static_cast<unsigned char>(ch);
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '\'';
    });
    if (ascii_word) ++ok;
  }
  // ok / n >= 0.8 without floating point
  return ok * 5 >= tokens.size() * 4;
}

PreprocessResult preprocess(const Post& post, const Tokenizer& tokenizer) {
  const std::string text = post.text();
  if (contains_url(text)) return Rejected{RejectReason::ContainsUrl};
  if (contains_pii(text)) return Rejected{RejectReason::ContainsPii};
  TokenizedText out;
  out.tokens = tokenizer.tokenize(text);
  if (out.tokens.size() < kMinWords) return Rejected{RejectReason::TooShort};
  if (!looks_english(out.tokens)) return Rejected{RejectReason::NotEnglish};
  if (out.tokens.size() > kMaxTokens) {
    out.tokens.resize(kMaxTokens);
    out.truncated = true;
  }
  return out;
}

Corpus parse_corpus_jsonl(std::string_view text, std::string task_name) {
  Corpus corpus;
  corpus.task_name = std::move(task_name);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    const std::string where = "line " + std::to_string(line_no);
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
    auto str = [&](const char* key, bool required) -> std::string {
      auto it = obj.find(key);
      if (it == obj.end()) {
        if (required) throw Error(ErrorCode::ParseError, where + ": missing '" + key + "'");
        return {};
      }
      if (!it->is_string()) throw Error(ErrorCode::ParseError, where + ": '" + key + "' must be a string");
      return it->get<std::string>();
    };
    Post p;
    p.id = str("id", true);
    p.title = str("title", false);
    p.body = str("body", false);
    p.source = str("source", false);
    auto label = obj.find("label");
    if (label == obj.end() || !label->is_number_integer() || (label->get<int>() != 0 && label->get<int>() != 1)) {
      throw Error(ErrorCode::ParseError, where + ": 'label' must be 0 or 1");
    }
    p.label = label->get<int>() == 1 ? Label::Positive : Label::Negative;
    corpus.posts.push_back(std::move(p));
  }

  std::vector<std::string_view> ids;
  ids.reserve(corpus.posts.size());
  for (const auto& p : corpus.posts) ids.push_back(p.id);
  std::sort(ids.begin(), ids.end());
  if (auto dup = std::adjacent_find(ids.begin(), ids.end()); dup != ids.end()) {
    throw Error(ErrorCode::ValidationError, "duplicate post id '" + std::string(*dup) + "'");
  }
  return corpus;
}

Corpus load_corpus(const std::string& path, std::string task_name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open corpus '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (task_name.empty()) task_name = path;
  return parse_corpus_jsonl(ss.str(), std::move(task_name));
}

std::string serialize_corpus_jsonl(const Corpus& corpus) {
  std::string out;
  for (const auto& p : corpus.posts) {
    json obj = json::object();
    obj["id"] = p.id;
    obj["title"] = p.title;
    obj["body"] = p.body;
    obj["label"] = to_int(p.label);
    obj["source"] = p.source;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out << serialize_corpus_jsonl(corpus);
}

std::vector<Label> Dataset::labels() const {
  std::vector<Label> out;
  out.reserve(examples.size());
  for (const auto& e : examples) out.push_back(e.label);
  return out;
}

std::size_t Dataset::count(Label label) const {
  return static_cast<std::size_t>(
      std::count_if(examples.begin(), examples.end(), [&](const Example& e) { return e.label == label; }));
}

Dataset prepare_dataset(const Corpus& corpus, const Tokenizer& tokenizer) {
  Dataset data;
  data.name = corpus.task_name;
  for (const auto& post : corpus.posts) {
    auto result = preprocess(post, tokenizer);
    if (auto* rejected = std::get_if<Rejected>(&result)) {
      ++data.rejected[std::string(to_string(rejected->reason))];
      continue;
    }
    data.examples.push_back({post.id, std::move(std::get<TokenizedText>(result).tokens), post.label});
  }
  return data;
}

Dataset subset(const Dataset& data, std::span<const std::size_t> indices) {
  Dataset out;
  out.name = data.name;
  out.examples.reserve(indices.size());
  for (std::size_t i : indices) out.examples.push_back(data.examples.at(i));
  return out;
}

std::vector<Fold> stratified_folds(std::span<const Label> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::InsufficientData, "fold count must be at least 2");
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] == Label::Positive ? pos : neg).push_back(i);
  }
  if (pos.size() < k || neg.size() < k) {
    throw Error(ErrorCode::InsufficientData, "need at least " + std::to_string(k) +
                                                 " posts of each label, have " + std::to_string(pos.size()) +
                                                 " positive / " + std::to_string(neg.size()) + " negative");
  }
  Rng rng(seed, 0xf01d);
  rng.shuffle(std::span(pos));
  rng.shuffle(std::span(neg));

  std::vector<std::size_t> fold_of(labels.size());
  for (std::size_t i = 0; i < pos.size(); ++i) fold_of[pos[i]] = i % k;
  // Continue the deal where positives stopped so fold sizes stay balanced.
  for (std::size_t i = 0; i < neg.size(); ++i) fold_of[neg[i]] = (pos.size() + i) % k;

  std::vector<Fold> folds(k);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t f = 0; f < k; ++f) {
      (fold_of[i] == f ? folds[f].test : folds[f].train).push_back(i);
    }
  }
  return folds;
}

std::vector<Fold> stratified_folds(const Corpus& corpus, std::size_t k, std::uint64_t seed) {
  std::vector<Label> labels;
  labels.reserve(corpus.posts.size());
  for (const auto& p : corpus.posts) labels.push_back(p.label);
  return stratified_folds(labels, k, seed);
}

}  // namespace mhs
