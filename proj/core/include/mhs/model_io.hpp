#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "mhs/adam.hpp"
#include "mhs/catalog.hpp"
#include "mhs/embedding.hpp"
#include "mhs/model.hpp"

namespace mhs {

/// How target and symptom texts were embedded when the model was trained.
struct EncoderSpec {
  enum class Kind { Unspecified, Hash, Store };
  Kind kind = Kind::Unspecified;
  std::size_t dim = 0;
  std::uint64_t seed = 0;           // hash encoder only
  std::string store_fingerprint;    // store only

  bool operator==(const EncoderSpec&) const = default;
};

/// Everything an MHSM1 file carries.
struct ModelBundle {
  MhsParams params;
  /// Catalog before the variant is applied; empty disorder if unknown.
  SymptomCatalog catalog;
  EncoderSpec encoder;
  /// Present in training checkpoints.
  std::optional<AdamState<float>> optimizer;
  std::size_t epochs_done = 0;
  /// Free-form JSON object echoed into the header (tool version, config, inputs).
  std::string provenance_json = "{}";
};

inline constexpr std::uint32_t kModelFormatVersion = 1;

// MHSM1 layout: the bytes "MHSM", one ASCII version digit, '\n', a JSON header
// line (config, variant, catalog, catalog fingerprint, encoder, tensor table,
// optional optimizer step), then every tensor as f32 little-endian in
// Params::tensors() order, followed by the Adam first and second moments when
// an optimizer is present. Nothing may follow.

std::string serialize_model(const ModelBundle& bundle);
/// Throws BadMagic, VersionMismatch, CorruptRecord; CatalogMismatch when
/// expected_catalog is given and its fingerprint differs from the stored one.
ModelBundle parse_model(std::span<const char> bytes, const SymptomCatalog* expected_catalog = nullptr);

void save_model(const ModelBundle& bundle, const std::string& path);
ModelBundle load_model_bundle(const std::string& path, const SymptomCatalog* expected_catalog = nullptr);

void save_model(const MhsParams& params, const std::string& path);
MhsParams load_model(const std::string& path);

}  // namespace mhs
