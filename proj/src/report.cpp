#include "gcurves/report.hpp"

#include <cmath>

#include "gcurves/curve.hpp"
#include "json.hpp"

namespace gcurves {

std::string RunReport::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["inputs"] = nlohmann::json::object();
  for (const auto& [k, v] : inputs) j["inputs"][k] = v;
  j["metrics"] = nlohmann::json::object();
  for (const auto& [k, v] : metrics) {
    if (std::isfinite(v)) j["metrics"][k] = v;
    else j["metrics"][k] = std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  }
  j["pass"] = pass;
  if (!error.empty()) j["error"] = error;
  return j.dump(2) + "\n";
}

void RunReport::write(const std::filesystem::path& path) const { write_file_atomic(path, to_json()); }

}  // namespace gcurves
