#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace gcurves {

struct RunReport {
  std::string command;
  std::map<std::string, std::string> inputs;
  std::map<std::string, double> metrics;
  bool pass = false;
  std::string error;  // empty on success

  /// JSON with sorted keys, two-space indent, trailing newline.
  std::string to_json() const;
  void write(const std::filesystem::path& path) const;
};

}  // namespace gcurves
