#include <gtest/gtest.h>
#include <sys/wait.h>
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gcurves/commands.hpp"
#include "gcurves/involute.hpp"
#include "support.hpp"

using namespace gcurves;
using namespace gcurves::testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gcurves_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GCURVES_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, ParsesKeysAndAuto) {
  std::istringstream in("# comment\nA = 0.3  # trailing\nB = auto\nt0=0.5\ngrid_size = 2000\nR = 2\n\n");
  const SolverConfig c = parse_config(in);
  ASSERT_TRUE(c.A.has_value());
  EXPECT_DOUBLE_EQ(*c.A, 0.3);
  EXPECT_FALSE(c.B.has_value());
  EXPECT_DOUBLE_EQ(*c.t0, 0.5);
  EXPECT_EQ(c.grid_size, 2000u);
  EXPECT_DOUBLE_EQ(c.R, 2.0);
  EXPECT_DOUBLE_EQ(c.tol, 1e-10);
  const SolverConfig f = read_config(write_config("c.conf", "A = auto\nkappa_step = 0.02\n"));
  EXPECT_FALSE(f.A.has_value());
  EXPECT_DOUBLE_EQ(f.kappa_step, 0.02);
}

TEST(Config, ReportsTheOffendingLine) {
  std::istringstream unknown("A = auto\nfoo = 1\n");
  try {
    parse_config(unknown);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
  }
  std::istringstream bad_value("A = x\n");
  EXPECT_ERROR_CODE(parse_config(bad_value), Parse);
  std::istringstream no_equals("A 0.3\n");
  EXPECT_ERROR_CODE(parse_config(no_equals), Parse);
  EXPECT_ERROR_CODE(read_config(scratch("missing.conf")), Io);
}

TEST(Report, JsonHasSortedKeys) {
  RunReport r;
  r.command = "verify";
  r.inputs = {{"csv", "c.csv"}, {"surface", "sphere"}};
  r.metrics = {{"zeta", 1.0}, {"alpha", 2.5}, {"gap", std::nan("")}};
  r.pass = true;
  const std::string text = r.to_json();
  EXPECT_EQ(text.back(), '\n');
  const nlohmann::json j = nlohmann::json::parse(text);
  EXPECT_EQ(j["command"], "verify");
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_DOUBLE_EQ(j["metrics"]["alpha"].get<double>(), 2.5);
  EXPECT_LT(text.find("\"alpha\""), text.find("\"zeta\""));
  EXPECT_LT(text.find("\"command\""), text.find("\"metrics\""));
  EXPECT_FALSE(j["metrics"]["gap"].is_number());
}

TEST(BuildCommand, DefaultConfigPasses) {
  const fs::path out = scratch("build_default");
  fs::remove_all(out);
  const RunReport r = cmd_build_self_involute(fs::path(GCURVES_SOURCE_DIR) / "config/default.conf", out);
  EXPECT_TRUE(r.pass) << r.error;
  EXPECT_NEAR(r.metrics.at("a_times_A"), 1.0, 1e-12);
  EXPECT_LT(r.metrics.at("theta_residual"), 1e-6);
  EXPECT_LE(r.metrics.at("s0"), 0.2);
  for (const char* f : {"curve.csv", "theta.csv", "report.json"}) EXPECT_TRUE(fs::exists(out / f)) << f;
  const Curve c = read_curve_csv(out / "curve.csv", SurfaceSpec::sphere(1.0));
  EXPECT_EQ(static_cast<double>(c.size()), r.metrics.at("samples"));
  const nlohmann::json j = nlohmann::json::parse(slurp(out / "report.json"));
  EXPECT_TRUE(j["pass"].get<bool>());

  // The curve attains the bound, so only a tolerance above the sampling error accepts it.
  const RunReport strict = cmd_verify(out / "curve.csv", SurfaceSpec::sphere(1.0), VerifyOptions{false, true, false, std::nullopt});
  EXPECT_FALSE(strict.pass);
  EXPECT_LT(strict.metrics.at("length_minus_perimeter"), 1e-4);
  const RunReport loose = cmd_verify(out / "curve.csv", SurfaceSpec::sphere(1.0), VerifyOptions{true, true, true, 1e-3});
  EXPECT_TRUE(loose.pass) << loose.error;
  EXPECT_EQ(loose.metrics.at("maximal_ok"), 1.0);
}

TEST(BuildCommand, LargerSphere) {
  SolverConfig cfg;
  cfg.grid_size = 4000;
  cfg.R = 2.0;
  const RunReport r = cmd_build_self_involute(cfg, scratch("build_r2"));
  EXPECT_TRUE(r.pass) << r.error;
  EXPECT_LE(r.metrics.at("s0"), 0.2 * 2.0 + 1e-12);
  EXPECT_LT(std::abs(r.metrics.at("rotation_angle")), 1e-3);
}

TEST(BuildCommand, OtherAIsSelfInvoluteOnlyUpToRotation) {
  SolverConfig cfg;
  cfg.A = 0.6;
  cfg.grid_size = 4000;
  const RunReport r = cmd_build_self_involute(cfg, scratch("build_explicit"));
  EXPECT_TRUE(r.error.empty()) << r.error;
  EXPECT_NEAR(r.metrics.at("A"), 0.6, 1e-15);
  EXPECT_LT(r.metrics.at("theta_residual"), 1e-6);
  EXPECT_LT(r.metrics.at("system_residual_tau_dot"), 1e-5);
  EXPECT_LT(r.metrics.at("system_residual_kappa_tau"), 1e-5);
  EXPECT_GT(std::abs(r.metrics.at("rotation_angle")), 0.1);
  EXPECT_GT(r.metrics.at("max_perimeter_defect"), 1e-2);
  EXPECT_FALSE(r.pass);
}

TEST(BuildCommand, InvalidAIsReportedNotThrown) {
  SolverConfig cfg;
  cfg.A = 1.5;
  const fs::path out = scratch("build_invalid");
  const RunReport r = cmd_build_self_involute(cfg, out);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.error.empty());
  EXPECT_TRUE(fs::exists(out / "report.json"));
}

TEST(VerifyCommand, GeodesicSatisfiesTheBound) {
  const SurfaceSpec sf = SurfaceSpec::sphere(1.0);
  const fs::path csv = scratch("geodesic.csv");
  write_curve_csv(csv, make_geodesic(pole(sf), unit_at(pole(sf), 0.0), 0.8, 200));
  const RunReport r = cmd_verify(csv, sf, VerifyOptions{false, true, false, std::nullopt});
  EXPECT_TRUE(r.pass) << r.error;
  EXPECT_EQ(r.metrics.at("bound_ok"), 1.0);
  EXPECT_NEAR(r.metrics.at("length"), 0.8, 1e-12);
}

TEST(VerifyCommand, CircleArcBeyondAHalfTurnIsNotAGCurve) {
  const SurfaceSpec sf = SurfaceSpec::euclidean();
  const fs::path csv = scratch("circle.csv");
  write_curve_csv(csv, make_circle(pole(sf), unit_at(pole(sf), 0.0), 1.0, 1.5 * kPi, 400));
  const RunReport r = cmd_verify(csv, sf, VerifyOptions{true, false, false, std::nullopt});
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.metrics.at("gcurve_ok"), 0.0);
  const RunReport half = cmd_verify(csv, sf, VerifyOptions{});
  EXPECT_FALSE(half.pass);
}

TEST(VerifyCommand, LimitSpiralIsMaximal) {
  const fs::path csv = scratch("spiral.csv");
  write_curve_csv(csv, limit_spiral(solve_fundamental_a(), 1.0));
  const RunReport r = cmd_verify(csv, SurfaceSpec::euclidean(), VerifyOptions{false, false, true, std::nullopt});
  EXPECT_TRUE(r.pass) << r.error;
}

TEST(VerifyCommand, MissingFileIsAnError) {
  const RunReport r = cmd_verify(scratch("nope.csv"), SurfaceSpec::sphere(1.0), VerifyOptions{});
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.error.empty());
}

TEST(PlotCommand, DeterministicOutput) {
  const SurfaceSpec sf = SurfaceSpec::sphere(1.0);
  const fs::path csv = scratch("plot_in.csv");
  write_curve_csv(csv, make_circle(pole(sf), unit_at(pole(sf), 0.0), 0.3, 1.0, 100));
  const RunReport a = cmd_plot(csv, sf, scratch("a.svg"), true);
  const RunReport b = cmd_plot(csv, sf, scratch("b.svg"), true);
  EXPECT_TRUE(a.pass) << a.error;
  EXPECT_TRUE(b.pass);
  const std::string sa = slurp(scratch("a.svg"));
  EXPECT_EQ(sa, slurp(scratch("b.svg")));
  EXPECT_NE(sa.find("<svg"), std::string::npos);
  EXPECT_NE(sa.find("polyline"), std::string::npos);
  EXPECT_EQ(a.metrics.at("bytes"), static_cast<double>(sa.size()));
}

TEST(PlotCommand, HyperbolicPlotShowsTheKleinBoundary) {
  const SurfaceSpec sf = SurfaceSpec::hyperbolic(1.0);
  const fs::path csv = scratch("plot_h.csv");
  write_curve_csv(csv, make_circle(pole(sf), unit_at(pole(sf), 0.0), 0.5, 1.0, 100));
  ASSERT_TRUE(cmd_plot(csv, sf, scratch("h.svg"), false).pass);
  EXPECT_NE(slurp(scratch("h.svg")).find("<ellipse"), std::string::npos);
}

TEST(PlotCommand, UnwritablePathFails) {
  const SurfaceSpec sf = SurfaceSpec::sphere(1.0);
  const fs::path csv = scratch("plot_in.csv");
  write_curve_csv(csv, make_geodesic(pole(sf), unit_at(pole(sf), 0.0), 0.5, 20));
  const RunReport r = cmd_plot(csv, sf, "/nonexistent_dir/x/y.svg", false);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.error.empty());
}

TEST(Binary, ExitCodes) {
  const SurfaceSpec sf = SurfaceSpec::sphere(1.0);
  const fs::path good = scratch("bin_geodesic.csv");
  write_curve_csv(good, make_geodesic(pole(sf), unit_at(pole(sf), 0.0), 0.8, 100));
  EXPECT_EQ(run_cli("verify " + good.string() + " --bound"), 0);
  const fs::path report = scratch("bin_report.json");
  fs::remove(report);
  EXPECT_EQ(run_cli("--report " + report.string() + " verify " + good.string()), 0);
  EXPECT_TRUE(nlohmann::json::parse(slurp(report))["pass"].get<bool>());

  const SurfaceSpec pl = SurfaceSpec::euclidean();
  const fs::path bad = scratch("bin_circle.csv");
  write_curve_csv(bad, make_circle(pole(pl), unit_at(pole(pl), 0.0), 1.0, 1.5 * kPi, 300));
  EXPECT_NE(run_cli("--surface euclidean verify " + bad.string() + " --gcurve"), 0);
  EXPECT_NE(run_cli("--surface torus verify " + good.string()), 0);
  EXPECT_NE(run_cli("frobnicate"), 0);
  EXPECT_EQ(run_cli("plot " + good.string() + " --out " + scratch("bin.svg").string()), 0);
}
