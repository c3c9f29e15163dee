#include "mhs/embedding.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "binary_io.hpp"
#include "json.hpp"
#include "mhs/error.hpp"
#include "mhs/hashing.hpp"

namespace mhs {

namespace detail {

std::vector<char> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace detail

EmbeddedSequence fit_length(EmbeddedSequence seq, std::size_t min_length, std::size_t max_length) {
  if (seq.length > max_length) {
    seq.length = max_length;
    seq.values.resize(max_length * seq.dim);
  }
  if (seq.length < min_length) {
    seq.length = min_length;
    seq.values.resize(min_length * seq.dim, 0.0f);
  }
  return seq;
}

std::vector<float> hash_token_vector(std::string_view token, std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw Error(ErrorCode::ShapeError, "embedding dim must be >= 1");
  std::uint64_t state = fnv1a64(token) ^ mix64(seed);
  std::vector<double> v(dim);
  double norm2 = 0.0;
  // splitmix64 stream: state advances by the golden gamma, mix64 finalizes.
  do {
    norm2 = 0.0;
    for (auto& x : v) {
      state += 0x9e3779b97f4a7c15ULL;
      x = static_cast<double>(mix64(state) >> 11) * 0x1.0p-52 - 1.0;
      norm2 += x * x;
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  std::vector<float> out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = static_cast<float>(v[i] * inv);
  return out;
}

HashEncoder::HashEncoder(std::size_t dim, std::uint64_t seed) : dim_(dim), seed_(seed) {
  if (dim == 0) throw Error(ErrorCode::ShapeError, "embedding dim must be >= 1");
}

EmbeddedSequence HashEncoder::embed(const TextRef& text) const {
  const std::size_t n = std::min(text.tokens.size(), std::size_t{512});
  EmbeddedSequence seq(n, dim_, std::string(text.id));
  for (std::size_t t = 0; t < n; ++t) {
    auto v = hash_token_vector(text.tokens[t], dim_, seed_);
    std::copy(v.begin(), v.end(), seq.row(t).begin());
  }
  return fit_length(std::move(seq));
}

std::string HashEncoder::describe() const {
  return "hash-encoder(dim=" + std::to_string(dim_) + ",seed=" + std::to_string(seed_) + ")";
}

std::shared_ptr<const EmbeddingStore> EmbeddingStore::open(const std::string& path) {
  const auto bytes = detail::read_file(path);
  return parse(bytes);
}

std::shared_ptr<const EmbeddingStore> EmbeddingStore::parse(std::span<const char> bytes) {
  detail::Reader reader(bytes);
  if (bytes.size() < 4 || std::string_view(bytes.data(), 4) != "EMB1") {
    throw Error(ErrorCode::BadMagic, "not an EMB1 file");
  }
  reader.take(4, "magic");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(reader.line("header"));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::CorruptRecord, std::string("bad EMB1 header: ") + e.what());
  }
  auto field = [&](const char* key) -> const nlohmann::json& {
    auto it = header.find(key);
    if (it == header.end()) throw Error(ErrorCode::CorruptRecord, std::string("EMB1 header lacks '") + key + "'");
    return *it;
  };
  const auto& dim = field("dim");
  const auto& count = field("count");
  const auto& dtype = field("dtype");
  if (!dim.is_number_unsigned() || dim.get<std::uint64_t>() == 0 || !count.is_number_unsigned() ||
      !dtype.is_string() || dtype.get<std::string>() != "f32le") {
    throw Error(ErrorCode::CorruptRecord, "EMB1 header must carry positive dim, count and dtype \"f32le\"");
  }

  auto store = std::make_shared<EmbeddingStore>();
  store->dim_ = dim.get<std::size_t>();
  const auto n = count.get<std::size_t>();
  for (std::size_t r = 0; r < n; ++r) {
    const std::uint32_t id_len = reader.u32le("record id length");
    auto id_bytes = reader.take(id_len, "record id");
    std::string id(id_bytes.data(), id_bytes.size());
    const std::uint32_t tokens = reader.u32le("record token count");
    if (static_cast<std::uint64_t>(tokens) * store->dim_ > reader.remaining() / 4) {
      throw Error(ErrorCode::CorruptRecord, "record '" + id + "' is shorter than its token count implies");
    }
    EmbeddedSequence seq(tokens, store->dim_, id);
    reader.f32le(seq.values, "record payload");
    for (float f : seq.values) {
      if (!std::isfinite(f)) throw Error(ErrorCode::CorruptRecord, "record '" + id + "' holds a non-finite value");
    }
    if (!store->records_.emplace(id, std::move(seq)).second) {
      throw Error(ErrorCode::CorruptRecord, "duplicate record id '" + id + "'");
    }
  }
  if (!reader.at_end()) throw Error(ErrorCode::CorruptRecord, "trailing bytes after last record");
  store->fingerprint_ = mhs::fingerprint(std::string_view(bytes.data(), bytes.size()));
  return store;
}

bool EmbeddingStore::contains(std::string_view id) const { return records_.find(id) != records_.end(); }

std::vector<std::string> EmbeddingStore::ids() const {
  std::vector<std::string> out;
  out.reserve(records_.size());
  for (const auto& [id, _] : records_) out.push_back(id);
  return out;
}

EmbeddedSequence EmbeddingStore::lookup(std::string_view id) const {
  auto it = records_.find(id);
  if (it == records_.end()) throw Error(ErrorCode::UnknownId, "no embedding for id '" + std::string(id) + "'");
  return it->second;
}

StoreProvider::StoreProvider(std::shared_ptr<const EmbeddingStore> store, std::size_t expected_dim)
    : store_(std::move(store)) {
  if (expected_dim != 0 && expected_dim != store_->dim()) {
    throw Error(ErrorCode::DimensionMismatch, "store dim " + std::to_string(store_->dim()) +
                                                  " != expected " + std::to_string(expected_dim));
  }
}

EmbeddedSequence StoreProvider::embed(const TextRef& text) const { return fit_length(store_->lookup(text.id)); }

std::string StoreProvider::describe() const {
  return "emb1(dim=" + std::to_string(store_->dim()) + ",fingerprint=" + store_->fingerprint() + ")";
}

std::string serialize_embedding_store(std::span<const EmbeddedSequence> records, std::size_t dim) {
  std::ostringstream out(std::ios::binary);
  out.write("EMB1", 4);
  nlohmann::json header = {{"dim", dim}, {"count", records.size()}, {"dtype", "f32le"}};
  out << header.dump() << '\n';
  for (const auto& r : records) {
    if (r.dim != dim || r.values.size() != r.length * r.dim) {
      throw Error(ErrorCode::DimensionMismatch, "record '" + r.source_id + "' does not match store dim");
    }
    detail::write_u32le(out, static_cast<std::uint32_t>(r.source_id.size()));
    out.write(r.source_id.data(), static_cast<std::streamsize>(r.source_id.size()));
    detail::write_u32le(out, static_cast<std::uint32_t>(r.length));
    detail::write_f32le(out, r.values);
  }
  return std::move(out).str();
}

void write_embedding_store(const std::string& path, std::span<const EmbeddedSequence> records, std::size_t dim) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  const auto bytes = serialize_embedding_store(records, dim);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace mhs
