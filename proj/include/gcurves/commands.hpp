#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "gcurves/config.hpp"
#include "gcurves/descent.hpp"
#include "gcurves/report.hpp"
#include "gcurves/solver.hpp"
#include "gcurves/surface.hpp"

namespace gcurves {

/// Every stage of the self-involute construction for one configuration.
struct SelfInvoluteBuild {
  ThetaSolution theta;
  SelfInvoluteProfile profile;
  Curve curve;
  SystemResidual system;
  MaximalLengthReport maximal;
  GCurveReport gcurve;
  FundamentalPair pair;
};

/// Runs the pipeline: parameters, theta iteration, profile, integration and
/// every verifier. Solver errors propagate.
SelfInvoluteBuild build_self_involute(const SolverConfig& config);

/// Pass rule and metrics for a finished build.
RunReport summarize_build(const SolverConfig& config, const SelfInvoluteBuild& build);

/// Writes curve.csv, theta.csv and report.json into out_dir. Errors are
/// folded into the returned report (pass = false), which is written too.
RunReport cmd_build_self_involute(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
                                  std::optional<double> radius = std::nullopt);
RunReport cmd_build_self_involute(const SolverConfig& config, const std::filesystem::path& out_dir);

struct VerifyOptions {
  bool gcurve = false;
  bool bound = false;
  bool maximal = false;
  std::optional<double> tol;  // overrides the G-curve and length-bound tolerances
};

/// With no verifier selected, --gcurve and --bound both run.
RunReport cmd_verify(const std::filesystem::path& csv, const SurfaceSpec& surface, VerifyOptions options);

RunReport cmd_plot(const std::filesystem::path& csv, const SurfaceSpec& surface, const std::filesystem::path& svg,
                   bool with_involute);

/// All acceptance criteria; one metric per criterion (1 pass, 0 fail).
RunReport cmd_suite(std::uint64_t seed, std::ostream* progress = nullptr);

void write_theta_csv(const std::filesystem::path& path, const ThetaSolution& sol);

}  // namespace gcurves
