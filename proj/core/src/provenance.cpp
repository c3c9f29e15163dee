#include "mhs/provenance.hpp"

#include "binary_io.hpp"
#include "json.hpp"
#include "mhs/hashing.hpp"

namespace mhs {

std::string_view tool_version() { return MHS_VERSION; }

std::string file_fingerprint(const std::string& path) {
  const auto bytes = detail::read_file(path);
  return fingerprint(std::string_view(bytes.data(), bytes.size()));
}

std::string Provenance::to_json() const {
  const auto config = nlohmann::json::parse(config_json);
  nlohmann::ordered_json j;
  j["tool"] = "mhs";
  j["version"] = tool_version();
  j["command"] = command;
  j["config"] = config;
  j["config_hash"] = fingerprint(config.dump());
  j["inputs"] = inputs;
  return j.dump();
}

}  // namespace mhs
