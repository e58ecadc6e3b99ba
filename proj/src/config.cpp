#include "gcurves/config.hpp"

#include <fstream>
#include <sstream>

#include "gcurves/error.hpp"

namespace gcurves {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

SolverConfig parse_config(std::istream& in) {
  SolverConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::Parse, "config line " + std::to_string(lineno) + ": " + why);
    };
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) fail("missing value for '" + key + "'");

    auto number = [&]() {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(value, &used);
      } catch (const std::logic_error&) {
        fail("bad number '" + value + "'");
      }
      if (used != value.size()) fail("bad number '" + value + "'");
      return v;
    };
    auto integer = [&]() {
      const double v = number();
      if (v != static_cast<double>(static_cast<long long>(v)) || v < 0) fail("expected a non-negative integer");
      return static_cast<long long>(v);
    };

    if (key == "A") {
      if (value == "auto") cfg.A.reset();
      else cfg.A = number();
    } else if (key == "B") {
      if (value == "auto") cfg.B.reset();
      else cfg.B = number();
    } else if (key == "t0") {
      if (value == "auto") cfg.t0.reset();
      else cfg.t0 = number();
    } else if (key == "grid_size") {
      cfg.grid_size = static_cast<std::size_t>(integer());
    } else if (key == "tol") {
      cfg.tol = number();
    } else if (key == "max_iter") {
      cfg.max_iter = static_cast<int>(integer());
    } else if (key == "R") {
      cfg.R = number();
    } else if (key == "delta_cut_ratio") {
      cfg.delta_cut_ratio = number();
    } else if (key == "s0_max") {
      cfg.s0_max = number();
    } else if (key == "kappa_step") {
      cfg.kappa_step = number();
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  return cfg;
}

SolverConfig read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config " + path.string());
  return parse_config(in);
}

}  // namespace gcurves
