#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mhs {

inline constexpr std::size_t kMaxTokens = 512;

/// NFC-normalizes and lower-cases, splits on Unicode whitespace and strips
/// punctuation from both ends of each token. Tokens that are pure punctuation
/// are dropped. Thread-safe.
class Tokenizer {
 public:
  std::vector<std::string> tokenize(std::string_view text) const;
};

/// NFC + lower-case only (no splitting).
std::string normalize_text(std::string_view text);

}  // namespace mhs
