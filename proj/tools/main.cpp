#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gcurves/commands.hpp"

using namespace gcurves;

namespace {

SurfaceSpec make_surface(const std::string& name, double radius) {
  if (name == "sphere") return SurfaceSpec::sphere(radius);
  if (name == "hyperbolic") return SurfaceSpec::hyperbolic(radius);
  return SurfaceSpec::euclidean();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steepest-descent curves, involutes and self-involutes on constant-curvature surfaces"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string surface_name = "sphere";
  std::optional<double> radius;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::string report_path;
  app.add_option("--surface", surface_name, "Model surface")
      ->check(CLI::IsMember({"sphere", "euclidean", "hyperbolic"}));
  app.add_option("--radius", radius, "Surface radius R")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for randomized suites");
  app.add_option("--tol", tol, "Tolerance override for verifiers")->check(CLI::PositiveNumber);
  app.add_option("--report", report_path, "Also write the JSON report to this path");

  auto* build = app.add_subcommand("build-self-involute", "Construct and verify a self-involute on the sphere");
  std::string config_path, out_dir = ".";
  build->add_option("--config", config_path, "key = value solver config")->required();
  build->add_option("--out-dir", out_dir, "Directory for curve.csv, theta.csv and report.json");

  auto* verify = app.add_subcommand("verify", "Run verifiers on a curve CSV");
  std::string csv;
  bool gcurve = false, bound = false, maximal = false;
  verify->add_option("csv", csv, "Curve CSV")->required();
  verify->add_flag("--gcurve", gcurve, "Half-plane (G-curve) test");
  verify->add_flag("--bound", bound, "Length versus hull perimeter");
  verify->add_flag("--maximal", maximal, "Maximal length property");

  auto* plot = app.add_subcommand("plot", "Render the chart image of a curve as SVG");
  std::string plot_csv, svg_path;
  bool with_involute = false;
  plot->add_option("csv", plot_csv, "Curve CSV")->required();
  plot->add_option("--out", svg_path, "SVG output path")->required();
  plot->add_flag("--involute", with_involute, "Overlay the involute");

  auto* suite = app.add_subcommand("suite", "Run the acceptance criteria");

  CLI11_PARSE(app, argc, argv);

  const SurfaceSpec surface = make_surface(surface_name, radius.value_or(1.0));
  RunReport report;
  if (*build) {
    report = cmd_build_self_involute(config_path, out_dir, radius);
  } else if (*verify) {
    report = cmd_verify(csv, surface, VerifyOptions{gcurve, bound, maximal, tol});
  } else if (*plot) {
    report = cmd_plot(plot_csv, surface, svg_path, with_involute);
  } else if (*suite) {
    report = cmd_suite(seed, &std::cout);
  }

  if (!report_path.empty()) {
    try {
      report.write(report_path);
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return 1;
    }
  }
  if (!*suite) std::cout << report.to_json();
  if (!report.error.empty()) std::cerr << "error: " << report.error << "\n";
  return report.pass ? 0 : 1;
}
