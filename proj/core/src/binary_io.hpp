#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mhs/error.hpp"

namespace mhs::detail {

inline std::uint32_t byteswap32(std::uint32_t v) {
  return (v >> 24) | ((v >> 8) & 0xff00u) | ((v << 8) & 0xff0000u) | (v << 24);
}

inline void write_u32le(std::ostream& out, std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::big) v = byteswap32(v);
  out.write(reinterpret_cast<const char*>(&v), 4);
}

inline void write_f32le(std::ostream& out, std::span<const float> values) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size() * 4));
  } else {
    for (float f : values) write_u32le(out, std::bit_cast<std::uint32_t>(f));
  }
}

/// Bounds-checked cursor over an in-memory file. Every short read is a
/// CorruptRecord.
class Reader {
 public:
  explicit Reader(std::span<const char> bytes) : bytes_(bytes) {}

  std::size_t remaining() const { return bytes_.size() - pos_; }
  bool at_end() const { return pos_ == bytes_.size(); }

  std::span<const char> take(std::size_t n, const char* what) {
    if (n > remaining()) throw Error(ErrorCode::CorruptRecord, std::string("truncated ") + what);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::uint32_t u32le(const char* what) {
    std::uint32_t v;
    std::memcpy(&v, take(4, what).data(), 4);
    if constexpr (std::endian::native == std::endian::big) v = byteswap32(v);
    return v;
  }

  void f32le(std::span<float> out, const char* what) {
    if (out.size() > remaining() / 4) throw Error(ErrorCode::CorruptRecord, std::string("truncated ") + what);
    auto raw = take(out.size() * 4, what);
    std::memcpy(out.data(), raw.data(), raw.size());
    if constexpr (std::endian::native == std::endian::big) {
      for (float& f : out) f = std::bit_cast<float>(byteswap32(std::bit_cast<std::uint32_t>(f)));
    }
  }

  std::string line(const char* what) {
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
    if (pos_ == bytes_.size()) throw Error(ErrorCode::CorruptRecord, std::string("unterminated ") + what);
    std::string out(bytes_.data() + start, pos_ - start);
    ++pos_;
    return out;
  }

 private:
  std::span<const char> bytes_;
  std::size_t pos_ = 0;
};

std::vector<char> read_file(const std::string& path);

}  // namespace mhs::detail
