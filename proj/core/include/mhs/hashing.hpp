#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace mhs {

/// 64-bit FNV-1a. Used for token hashing and content fingerprints.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);

/// Finalizer from splitmix64; good avalanche for seeding.
std::uint64_t mix64(std::uint64_t x);

/// Lower-case 16 hex digit rendering of fnv1a64(bytes).
std::string fingerprint(std::string_view bytes);

}  // namespace mhs
