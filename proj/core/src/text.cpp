#include "mhs/text.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "mhs/error.hpp"

namespace mhs {

namespace {

icu::UnicodeString normalized(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error(ErrorCode::IoError, "ICU NFC normalizer unavailable");
  icu::UnicodeString src = icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString out = nfc->normalize(src, status);
  if (U_FAILURE(status)) throw Error(ErrorCode::ParseError, "text normalization failed");
  out.toLower(icu::Locale::getRoot());
  return out;
}

void flush_token(const icu::UnicodeString& text, int32_t begin, int32_t end, std::vector<std::string>& out) {
  // Strip punctuation code points from both edges.
  while (begin < end) {
    UChar32 c = text.char32At(begin);
    if (!u_ispunct(c)) break;
    begin = text.moveIndex32(begin, 1);
  }
  while (end > begin) {
    int32_t prev = text.moveIndex32(end, -1);
    if (!u_ispunct(text.char32At(prev))) break;
    end = prev;
  }
  if (begin >= end) return;
  std::string token;
  text.tempSubStringBetween(begin, end).toUTF8String(token);
  out.push_back(std::move(token));
}

}  // namespace

std::string normalize_text(std::string_view text) {
  std::string out;
  normalized(text).toUTF8String(out);
  return out;
}

std::vector<std::string> Tokenizer::tokenize(std::string_view text) const {
  const icu::UnicodeString s = normalized(text);
  std::vector<std::string> tokens;
  int32_t start = -1;
  int32_t i = 0;
  while (i < s.length()) {
    UChar32 c = s.char32At(i);
    int32_t next = s.moveIndex32(i, 1);
    if (u_isUWhiteSpace(c)) {
      if (start >= 0) flush_token(s, start, i, tokens);
      start = -1;
    } else if (start < 0) {
      start = i;
    }
    i = next;
  }
  if (start >= 0) flush_token(s, start, s.length(), tokens);
  return tokens;
}

}  // namespace mhs
