#include "mhs/model_io.hpp"

#include <fstream>
#include <sstream>

#include "binary_io.hpp"
#include "json.hpp"
#include "mhs/error.hpp"

namespace mhs {

using nlohmann::json;

namespace {

constexpr char kMagic[4] = {'M', 'H', 'S', 'M'};

std::string_view encoder_kind_name(EncoderSpec::Kind kind) {
  switch (kind) {
    case EncoderSpec::Kind::Hash: return "hash";
    case EncoderSpec::Kind::Store: return "emb1";
    case EncoderSpec::Kind::Unspecified: break;
  }
  return "unspecified";
}

EncoderSpec::Kind parse_encoder_kind(const std::string& name) {
  if (name == "hash") return EncoderSpec::Kind::Hash;
  if (name == "emb1") return EncoderSpec::Kind::Store;
  if (name == "unspecified") return EncoderSpec::Kind::Unspecified;
  throw Error(ErrorCode::CorruptRecord, "unknown encoder kind '" + name + "'");
}

json encoder_json(const EncoderSpec& e) {
  json out = {{"kind", encoder_kind_name(e.kind)}, {"dim", e.dim}};
  if (e.kind == EncoderSpec::Kind::Hash) out["seed"] = e.seed;
  if (e.kind == EncoderSpec::Kind::Store) out["store_fingerprint"] = e.store_fingerprint;
  return out;
}

template <typename J, typename V>
V field(const J& obj, const char* key) {
  try {
    return obj.at(key).template get<V>();
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::CorruptRecord, std::string("model header field '") + key + "': " + ex.what());
  }
}

}  // namespace

std::string serialize_model(const ModelBundle& bundle) {
  const auto& p = bundle.params;
  json tensors = json::array();
  for (const auto& t : p.tensors()) {
    tensors.push_back({{"name", t.name}, {"shape", t.shape}, {"count", t.values.size()}});
  }
  json header = {
      {"format", "MHSM" + std::to_string(kModelFormatVersion)},
      {"config",
       {{"dim", p.config.dim},
        {"c1", p.config.c1},
        {"c2", p.config.c2},
        {"heads", p.config.heads},
        {"variant", to_string(p.config.variant)}}},
      {"encoder", encoder_json(bundle.encoder)},
      {"tensors", std::move(tensors)},
      {"epochs_done", bundle.epochs_done},
      {"provenance", json::parse(bundle.provenance_json)},
  };
  if (bundle.catalog.heads.empty()) {
    header["catalog"] = nullptr;
    header["catalog_fingerprint"] = nullptr;
  } else {
    header["catalog"] = json::parse(serialize_catalog(bundle.catalog, -1));
    header["catalog_fingerprint"] = catalog_fingerprint(bundle.catalog);
  }
  header["optimizer"] = bundle.optimizer ? json{{"step", bundle.optimizer->step}} : json(nullptr);

  std::ostringstream out;
  out.write(kMagic, 4);
  out << static_cast<char>('0' + kModelFormatVersion) << '\n' << header.dump() << '\n';
  for (const auto& t : p.tensors()) detail::write_f32le(out, t.values);
  if (bundle.optimizer) {
    const auto& opt = *bundle.optimizer;
    const auto n = p.tensors().size();
    if (opt.first_moment.size() != n || opt.second_moment.size() != n) {
      throw Error(ErrorCode::ShapeError, "optimizer state does not match parameters");
    }
    for (const auto& m : opt.first_moment) detail::write_f32le(out, m);
    for (const auto& v : opt.second_moment) detail::write_f32le(out, v);
  }
  return std::move(out).str();
}

ModelBundle parse_model(std::span<const char> bytes, const SymptomCatalog* expected_catalog) {
  if (bytes.size() < 4 || !std::equal(kMagic, kMagic + 4, bytes.begin())) {
    throw Error(ErrorCode::BadMagic, "not an MHSM model file");
  }
  detail::Reader in(bytes.subspan(4));
  const std::string version = in.line("model version");
  if (version != std::to_string(kModelFormatVersion)) {
    throw Error(ErrorCode::VersionMismatch,
                "model format version '" + version + "', expected " + std::to_string(kModelFormatVersion));
  }

  json header;
  try {
    header = json::parse(in.line("model header"));
  } catch (const json::parse_error& ex) {
    throw Error(ErrorCode::CorruptRecord, std::string("model header: ") + ex.what());
  }
  if (!header.is_object()) throw Error(ErrorCode::CorruptRecord, "model header is not an object");

  ModelBundle bundle;
  const auto& cfg = header.contains("config") ? header["config"] : json();
  ModelConfig config;
  config.dim = field<json, std::size_t>(cfg, "dim");
  config.c1 = field<json, std::size_t>(cfg, "c1");
  config.c2 = field<json, std::size_t>(cfg, "c2");
  config.heads = field<json, std::size_t>(cfg, "heads");
  try {
    config.variant = parse_variant(field<json, std::string>(cfg, "variant"));
  } catch (const Error& ex) {
    throw Error(ErrorCode::CorruptRecord, ex.what());
  }

  if (header.contains("catalog") && !header["catalog"].is_null()) {
    try {
      bundle.catalog = parse_catalog(header["catalog"].dump());
    } catch (const Error& ex) {
      throw Error(ErrorCode::CorruptRecord, std::string("embedded catalog: ") + ex.what());
    }
    const auto stored = field<json, std::string>(header, "catalog_fingerprint");
    if (stored != catalog_fingerprint(bundle.catalog)) {
      throw Error(ErrorCode::CorruptRecord, "embedded catalog does not match its fingerprint");
    }
  }
  if (expected_catalog) {
    const auto want = catalog_fingerprint(*expected_catalog);
    const std::string have = bundle.catalog.heads.empty() ? "none" : catalog_fingerprint(bundle.catalog);
    if (want != have) {
      throw Error(ErrorCode::CatalogMismatch, "model was trained with catalog " + have + ", got " + want);
    }
  }

  const auto& enc = header.contains("encoder") ? header["encoder"] : json();
  bundle.encoder.kind = parse_encoder_kind(field<json, std::string>(enc, "kind"));
  bundle.encoder.dim = field<json, std::size_t>(enc, "dim");
  if (bundle.encoder.kind == EncoderSpec::Kind::Hash) bundle.encoder.seed = field<json, std::uint64_t>(enc, "seed");
  if (bundle.encoder.kind == EncoderSpec::Kind::Store) {
    bundle.encoder.store_fingerprint = field<json, std::string>(enc, "store_fingerprint");
  }
  bundle.epochs_done = header.value("epochs_done", std::size_t{0});
  bundle.provenance_json = header.contains("provenance") ? header["provenance"].dump() : "{}";

  bundle.params = MhsParams::zeros(config);
  auto tensors = bundle.params.tensors();
  const auto& table = header.contains("tensors") ? header["tensors"] : json();
  if (!table.is_array() || table.size() != tensors.size()) {
    throw Error(ErrorCode::CorruptRecord, "tensor table does not match the configuration");
  }
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    if (field<json, std::string>(table[i], "name") != tensors[i].name ||
        field<json, std::vector<std::size_t>>(table[i], "shape") != tensors[i].shape ||
        field<json, std::size_t>(table[i], "count") != tensors[i].values.size()) {
      throw Error(ErrorCode::CorruptRecord, "tensor table entry " + std::to_string(i) + " is inconsistent");
    }
    in.f32le(tensors[i].values, "tensor data");
  }

  if (header.contains("optimizer") && !header["optimizer"].is_null()) {
    AdamState<float> opt = AdamState<float>::init(bundle.params);
    opt.step = field<json, std::uint64_t>(header["optimizer"], "step");
    for (auto& m : opt.first_moment) in.f32le(m, "optimizer state");
    for (auto& v : opt.second_moment) in.f32le(v, "optimizer state");
    bundle.optimizer = std::move(opt);
  }
  if (!in.at_end()) throw Error(ErrorCode::CorruptRecord, "trailing bytes after model data");
  return bundle;
}

void save_model(const ModelBundle& bundle, const std::string& path) {
  const auto bytes = serialize_model(bundle);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

ModelBundle load_model_bundle(const std::string& path, const SymptomCatalog* expected_catalog) {
  const auto bytes = detail::read_file(path);
  return parse_model(bytes, expected_catalog);
}

void save_model(const MhsParams& params, const std::string& path) {
  ModelBundle bundle;
  bundle.params = params;
  save_model(bundle, path);
}

MhsParams load_model(const std::string& path) { return load_model_bundle(path).params; }

}  // namespace mhs
