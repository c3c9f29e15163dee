#pragma once

#include <map>
#include <string>
#include <string_view>

namespace mhs {

std::string_view tool_version();

/// Fingerprint of a file's bytes. Throws IoError.
std::string file_fingerprint(const std::string& path);

/// Reproducibility record embedded in every artifact. Carries no timestamps
/// or host details, so identical invocations give identical bytes.
struct Provenance {
  std::string command;
  /// Compact JSON object with the fully resolved configuration.
  std::string config_json = "{}";
  /// Input name -> content fingerprint.
  std::map<std::string, std::string> inputs;

  /// {"tool","version","command","config","config_hash","inputs"}
  std::string to_json() const;
};

}  // namespace mhs
