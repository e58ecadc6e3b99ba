#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace gcurves {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured values against their thresholds
  double seconds = 0.0;
};

CriterionResult criterion_fundamental_root();
CriterionResult criterion_theta_iteration();
CriterionResult criterion_pipeline();
CriterionResult criterion_involute_forms(std::uint64_t seed);
CriterionResult criterion_length_bound(std::uint64_t seed);
CriterionResult criterion_distance_derivative(std::uint64_t seed);
CriterionResult criterion_hull_monotonicity(std::uint64_t seed);
CriterionResult criterion_trigonometry(std::uint64_t seed);
CriterionResult criterion_dilation_limit();

/// Runs the nine criteria in order. With `progress`, prints one
/// `[PASS|FAIL] id name: detail (seconds)` line per criterion as it finishes.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, std::ostream* progress = nullptr);

std::string format_line(const CriterionResult& r);

}  // namespace gcurves
