#pragma once

#include "robusthalf/common.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <variant>

namespace robusthalf {

/// One CLI invocation, serializable as a single JSON object: the command,
/// the fully resolved configuration, the seed, the metrics it produced and
/// the artifact paths it wrote. Re-running a deterministic command from the
/// recorded config reproduces the metrics.
struct RunRecord {
  using Value = std::variant<double, long, std::string, bool>;

  std::string command;
  uint64_t seed = 0;
  std::map<std::string, Value> config;
  std::map<std::string, Value> metrics;
  std::map<std::string, std::string> artifacts;

  std::string to_json_text() const;  // indented
  std::string to_json_line() const;  // single line, for JSON-lines streams
  void write(const std::filesystem::path& path) const;
};

}  // namespace robusthalf
