#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace gcurves {

/// Solver settings read from `key = value` text. Lines starting with '#'
/// and trailing '# ...' comments are ignored. `A = auto` selects 1/a*.
struct SolverConfig {
  std::optional<double> A;  // empty: 1 / solve_fundamental_a()
  std::optional<double> B;
  std::optional<double> t0;
  std::size_t grid_size = 10000;
  double tol = 1e-10;
  int max_iter = 200;
  double R = 1.0;
  double delta_cut_ratio = 1e-3;
  double s0_max = 0.2;       // cap on the automatic curve length
  double kappa_step = 0.05;  // kappa * ds per integration step
};

SolverConfig parse_config(std::istream& in);
SolverConfig read_config(const std::filesystem::path& path);

}  // namespace gcurves
