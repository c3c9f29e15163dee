#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mhs {

inline constexpr std::size_t kDefaultEmbeddingDim = 512;
/// Shortest sequence the deepest channel (k=5: conv, pool, conv) can consume
/// is 14 rows; 16 leaves headroom. Shorter inputs are right-padded with zeros.
inline constexpr std::size_t kMinSequenceLength = 16;

/// Row-major length x dim matrix of token vectors.
struct EmbeddedSequence {
  std::size_t length = 0;
  std::size_t dim = 0;
  std::vector<float> values;
  std::string source_id;

  EmbeddedSequence() = default;
  EmbeddedSequence(std::size_t length, std::size_t dim, std::string source_id = {})
      : length(length), dim(dim), values(length * dim, 0.0f), source_id(std::move(source_id)) {}

  std::span<float> row(std::size_t t) { return {values.data() + t * dim, dim}; }
  std::span<const float> row(std::size_t t) const { return {values.data() + t * dim, dim}; }

  bool operator==(const EmbeddedSequence&) const = default;
};

/// Zero-pads to at least min_length rows and truncates to max_length.
EmbeddedSequence fit_length(EmbeddedSequence seq, std::size_t min_length = kMinSequenceLength,
                            std::size_t max_length = 512);

/// Unit-norm pseudorandom vector for a token: FNV-1a of the token, mixed with
/// the seed, drives a splitmix64 stream of uniforms in [-1, 1). Bit-identical
/// on every platform.
std::vector<float> hash_token_vector(std::string_view token, std::size_t dim, std::uint64_t seed = 0);

/// What a provider needs to embed one text: file-backed providers look up the
/// id, the hash encoder reads the tokens.
struct TextRef {
  std::string_view id;
  std::span<const std::string> tokens;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::size_t dim() const = 0;
  /// Always returns max(L, kMinSequenceLength) rows.
  virtual EmbeddedSequence embed(const TextRef& text) const = 0;
  /// Short human/JSON-friendly description used in provenance records.
  virtual std::string describe() const = 0;
};

class HashEncoder final : public EmbeddingProvider {
 public:
  explicit HashEncoder(std::size_t dim = kDefaultEmbeddingDim, std::uint64_t seed = 0);

  std::size_t dim() const override { return dim_; }
  std::uint64_t seed() const { return seed_; }
  EmbeddedSequence embed(const TextRef& text) const override;
  std::string describe() const override;

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

/// Read-only EMB1 store, fully loaded in memory.
class EmbeddingStore {
 public:
  /// Throws BadMagic, CorruptRecord, IoError.
  static std::shared_ptr<const EmbeddingStore> open(const std::string& path);
  static std::shared_ptr<const EmbeddingStore> parse(std::span<const char> bytes);

  std::size_t dim() const { return dim_; }
  std::size_t count() const { return records_.size(); }
  bool contains(std::string_view id) const;
  std::vector<std::string> ids() const;
  /// Stored matrix, unpadded. Throws UnknownId.
  EmbeddedSequence lookup(std::string_view id) const;
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  std::size_t dim_ = 0;
  std::map<std::string, EmbeddedSequence, std::less<>> records_;
  std::string fingerprint_;
};

/// Serves EmbeddedSequences from a store by id.
class StoreProvider final : public EmbeddingProvider {
 public:
  /// Throws DimensionMismatch when expected_dim is non-zero and differs from the store.
  explicit StoreProvider(std::shared_ptr<const EmbeddingStore> store, std::size_t expected_dim = 0);

  std::size_t dim() const override { return store_->dim(); }
  EmbeddedSequence embed(const TextRef& text) const override;
  std::string describe() const override;

 private:
  std::shared_ptr<const EmbeddingStore> store_;
};

/// Writes an EMB1 file: "EMB1", a JSON header line {"dim","count","dtype"},
/// then per record u32le id length, id bytes, u32le token count, f32le rows.
void write_embedding_store(const std::string& path, std::span<const EmbeddedSequence> records, std::size_t dim);
std::string serialize_embedding_store(std::span<const EmbeddedSequence> records, std::size_t dim);

}  // namespace mhs
