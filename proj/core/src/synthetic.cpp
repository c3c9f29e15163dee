#include "mhs/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include "mhs/error.hpp"
#include "mhs/random.hpp"

namespace mhs {

namespace {

constexpr std::array<std::string_view, 240> kFiller = {
    "kitchen", "recipe", "garlic", "onion", "pasta", "bread", "butter", "cheese", "pizza", "salad",
    "coffee", "tea", "cup", "table", "chair", "window", "garden", "flower", "tree", "grass",
    "river", "mountain", "lake", "beach", "ocean", "island", "bridge", "road", "street", "city",
    "village", "train", "bus", "bike", "car", "truck", "engine", "tire", "wheel", "garage",
    "laptop", "keyboard", "monitor", "printer", "cable", "router", "server", "software", "update", "version",
    "game", "player", "team", "score", "match", "league", "season", "coach", "stadium", "ticket",
    "guitar", "piano", "drum", "song", "album", "concert", "band", "singer", "lyrics", "melody",
    "movie", "film", "actor", "scene", "camera", "trailer", "sequel", "director", "studio", "script",
    "book", "novel", "chapter", "author", "library", "page", "poem", "story", "comic", "magazine",
    "dog", "cat", "puppy", "kitten", "bird", "fish", "horse", "rabbit", "turtle", "hamster",
    "weather", "rain", "snow", "wind", "cloud", "sunny", "storm", "winter", "summer", "autumn",
    "market", "price", "sale", "store", "shop", "discount", "receipt", "wallet", "coupon", "brand",
    "paint", "brush", "canvas", "color", "blue", "green", "yellow", "purple", "orange", "silver",
    "phone", "battery", "charger", "screen", "app", "button", "menu", "setting", "photo", "video",
    "school", "class", "homework", "teacher", "exam", "lecture", "campus", "course", "grade", "essay",
    "office", "meeting", "project", "deadline", "email", "report", "budget", "client", "invoice", "desk",
    "recipe", "oven", "grill", "soup", "rice", "noodle", "sauce", "pepper", "salt", "sugar",
    "hike", "trail", "camp", "tent", "backpack", "map", "compass", "forest", "valley", "hill",
    "planet", "rocket", "star", "galaxy", "orbit", "telescope", "moon", "comet", "space", "launch",
    "museum", "gallery", "statue", "history", "castle", "tower", "church", "temple", "palace", "ruins",
    "lego", "puzzle", "board", "cards", "dice", "chess", "toy", "model", "kit", "glue",
    "shirt", "jacket", "shoes", "hat", "scarf", "jeans", "dress", "boots", "socks", "gloves",
    "pizza", "burger", "taco", "sushi", "steak", "chicken", "bacon", "egg", "cereal", "juice",
    "yesterday", "weekend", "morning", "evening", "tonight", "tomorrow", "today", "monday", "friday", "sunday",
};

const std::map<std::string, std::string, std::less<>>& synonyms() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"anger", "rage"},          {"anxiety", "nervousness"}, {"anxious", "nervous"},
      {"appetite", "hunger"},     {"asleep", "sleeping"},     {"concentrate", "focus"},
      {"concentrating", "focusing"}, {"death", "dying"},      {"depressed", "miserable"},
      {"down", "low"},            {"emotions", "feelings"},   {"energy", "stamina"},
      {"failure", "loser"},       {"fatigued", "exhausted"},  {"feeling", "sensing"},
      {"guilt", "shame"},         {"hopeless", "despairing"}, {"interest", "enthusiasm"},
      {"irritable", "cranky"},    {"little", "hardly"},       {"mood", "spirits"},
      {"sleep", "rest"},          {"sleeping", "resting"},    {"suicidal", "selfdestructive"},
      {"talkative", "chatty"},    {"thoughts", "ideas"},      {"tired", "drained"},
      {"trouble", "difficulty"},  {"worry", "fret"},          {"worries", "fears"},
      {"worthlessness", "uselessness"},
  };
  return table;
}

std::string join(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace

std::span<const std::string_view> filler_vocabulary() { return kFiller; }

std::vector<std::string> catalog_vocabulary(const SymptomCatalog& catalog, const Tokenizer& tokenizer) {
  std::set<std::string> vocab;
  for (const auto& head : catalog.heads) {
    for (const auto& s : head.sentences()) {
      for (auto& t : tokenizer.tokenize(s)) vocab.insert(std::move(t));
    }
  }
  return {vocab.begin(), vocab.end()};
}

Corpus generate_synthetic(const SymptomCatalog& catalog, std::size_t n_pos, std::size_t n_neg,
                          double overlap_rate, std::uint64_t seed, const SyntheticOptions& options) {
  if (n_pos == 0 || n_neg == 0) throw Error(ErrorCode::ValidationError, "n_pos and n_neg must be >= 1");
  if (!(overlap_rate >= 0.0 && overlap_rate <= 1.0)) {
    throw Error(ErrorCode::ValidationError, "overlap_rate must lie in [0, 1]");
  }
  if (options.min_tokens < kMinWords || options.max_tokens < options.min_tokens ||
      options.max_tokens > kMaxTokens || options.ngram_min < 1 || options.ngram_max < options.ngram_min) {
    throw Error(ErrorCode::ValidationError, "inconsistent synthetic options");
  }
  validate_catalog(catalog);

  const Tokenizer tokenizer;
  // head -> sentences -> tokens
  using HeadTokens = std::vector<std::vector<std::vector<std::string>>>;
  auto tokenize_heads = [&](const SymptomCatalog& source, HeadTokens& out) {
    for (const auto& head : source.heads) {
      auto& sentences = out.emplace_back();
      for (const auto& s : head.sentences()) {
        auto toks = tokenizer.tokenize(s);
        if (!toks.empty()) sentences.push_back(std::move(toks));
      }
      if (sentences.empty()) throw Error(ErrorCode::ValidationError, "head '" + head.id + "' has no tokens");
    }
  };
  HeadTokens head_tokens;
  tokenize_heads(catalog, head_tokens);
  const auto excluded = catalog_vocabulary(catalog, tokenizer);
  std::vector<std::string> filler;
  for (auto w : kFiller) {
    std::string word(w);
    if (!std::binary_search(excluded.begin(), excluded.end(), word) &&
        std::find(filler.begin(), filler.end(), word) == filler.end()) {
      filler.push_back(std::move(word));
    }
  }

  Rng rng(seed, 0x5e7);
  auto filler_token = [&] { return filler[rng.below(filler.size())]; };
  auto post_length = [&] {
    return options.min_tokens + rng.below(options.max_tokens - options.min_tokens + 1);
  };

  auto make_quoting = [&](const HeadTokens& source) {
    const std::size_t length = post_length();
    const auto n_catalog = static_cast<std::size_t>(std::llround(overlap_rate * static_cast<double>(length)));

    std::vector<std::size_t> heads(source.size());
    for (std::size_t i = 0; i < heads.size(); ++i) heads[i] = i;
    rng.shuffle(std::span(heads));
    heads.resize(1 + rng.below(heads.size()));

    std::vector<std::vector<std::string>> items;
    std::size_t placed = 0;
    while (placed < n_catalog) {
      const auto& sentences = source[heads[rng.below(heads.size())]];
      const auto& sentence = sentences[rng.below(sentences.size())];
      std::size_t n = options.ngram_min + rng.below(options.ngram_max - options.ngram_min + 1);
      n = std::min({n, sentence.size(), n_catalog - placed});
      const std::size_t start = rng.below(sentence.size() - n + 1);
      std::vector<std::string> chunk(sentence.begin() + static_cast<std::ptrdiff_t>(start),
                                     sentence.begin() + static_cast<std::ptrdiff_t>(start + n));
      for (auto& tok : chunk) {
        auto syn = synonyms().find(tok);
        if (syn != synonyms().end() && rng.bernoulli(options.synonym_rate)) tok = syn->second;
      }
      placed += n;
      items.push_back(std::move(chunk));
    }
    for (std::size_t i = n_catalog; i < length; ++i) items.push_back({filler_token()});
    rng.shuffle(std::span(items));

    std::vector<std::string> tokens;
    for (auto& item : items) {
      for (auto& t : item) tokens.push_back(std::move(t));
    }
    return tokens;
  };
  auto make_positive = [&] { return make_quoting(head_tokens); };

  auto make_negative = [&]() {
    std::vector<std::string> tokens(post_length());
    for (auto& t : tokens) t = filler_token();
    return tokens;
  };

  std::vector<std::pair<Label, std::vector<std::string>>> drafts;
  drafts.reserve(n_pos + n_neg);
  for (std::size_t i = 0; i < n_pos; ++i) drafts.emplace_back(Label::Positive, make_positive());
  for (std::size_t i = 0; i < n_neg; ++i) drafts.emplace_back(Label::Negative, make_negative());
  rng.shuffle(std::span(drafts));

  Corpus corpus;
  corpus.task_name = "synthetic-" + catalog.disorder;
  corpus.posts.reserve(drafts.size());
  for (std::size_t i = 0; i < drafts.size(); ++i) {
    auto& [label, tokens] = drafts[i];
    const std::size_t split = std::min(options.title_tokens, tokens.size());
    Post p;
    p.id = "synth-" + std::to_string(seed) + "-" + std::to_string(i);
    p.title = join(std::span(tokens).first(split));
    p.body = join(std::span(tokens).subspan(split));
    p.label = label;
    p.source = "synthetic";
    corpus.posts.push_back(std::move(p));
  }
  return corpus;
}

}  // namespace mhs
