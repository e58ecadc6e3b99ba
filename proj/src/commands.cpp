#include "gcurves/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "gcurves/descent.hpp"
#include "gcurves/suite.hpp"
#include "gcurves/svg.hpp"

namespace gcurves {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunReport failed(RunReport r, const std::exception& e) {
  r.pass = false;
  r.error = e.what();
  return r;
}

}  // namespace

SelfInvoluteBuild build_self_involute(const SolverConfig& config) {
  const double A = config.A ? *config.A : 1.0 / solve_fundamental_a();
  if (!(A > 0.0 && A < 1.0)) throw Error(ErrorCode::ContractViolation, "A must lie in (0, 1), got " + num(A));
  if (!(config.R > 0.0)) throw Error(ErrorCode::ContractViolation, "R must be positive");

  ParameterOptions po;
  po.B = config.B;
  po.t0 = config.t0;
  if (!config.t0 && config.s0_max > 0.0) {
    // s0 = R theta(t0) <= R K t0, and K only shrinks with t0.
    const IterationParams uncapped = choose_parameters(A, po);
    po.t0_max = config.s0_max / (config.R * uncapped.K_bound);
  }
  const IterationParams params = choose_parameters(A, po);
  ThetaSolution sol = theta_iterate(params, config.grid_size, config.tol, config.max_iter);
  SelfInvoluteProfile prof = profile_from_theta(sol, config.R, config.delta_cut_ratio);
  const SystemResidual sys = system_residual(prof.kappa_table(4000), prof.tau_table(2000), prof.surface());

  IntegrationOptions io;
  io.kappa_step = config.kappa_step;
  Curve curve = self_involute_curve(prof, io);
  const MaximalLengthReport ml = verify_maximal_length(curve, prof);
  const GCurveReport g = is_g_curve(curve, 1e-6);
  const FundamentalPair fp = fundamental_pair(curve);
  return SelfInvoluteBuild{std::move(sol), prof, std::move(curve), sys, ml, g, fp};
}

RunReport summarize_build(const SolverConfig& config, const SelfInvoluteBuild& b) {
  RunReport r;
  r.command = "build-self-involute";
  const auto& p = b.theta.params;
  r.inputs["A"] = config.A ? num(*config.A) : "auto";
  r.inputs["B"] = config.B ? num(*config.B) : "auto";
  r.inputs["t0"] = config.t0 ? num(*config.t0) : "auto";
  r.inputs["grid_size"] = std::to_string(config.grid_size);
  r.inputs["tol"] = num(config.tol);
  r.inputs["max_iter"] = std::to_string(config.max_iter);
  r.inputs["R"] = num(config.R);
  r.inputs["delta_cut_ratio"] = num(config.delta_cut_ratio);
  r.inputs["s0_max"] = num(config.s0_max);
  r.inputs["kappa_step"] = num(config.kappa_step);

  auto& m = r.metrics;
  m["A"] = p.A;
  m["B"] = p.B;
  m["t0"] = p.t0;
  m["K_bound"] = p.K_bound;
  m["eps_F"] = p.eps_F;
  m["a"] = b.pair.a;
  m["a_times_A"] = b.pair.a * p.A;
  m["iterations"] = b.theta.iterations_used;
  m["theta_residual"] = b.theta.residual;
  m["second_difference_bound"] = b.theta.history.empty() ? 0.0 : b.theta.history.back().second_difference;
  m["s0"] = b.profile.s0();
  m["delta_cut"] = b.profile.delta_cut();
  m["system_residual_tau_dot"] = b.system.tau_dot;
  m["system_residual_kappa_tau"] = b.system.kappa_tau;
  m["samples"] = static_cast<double>(b.curve.size());
  m["rotation_angle"] = b.pair.rotation_angle;
  m["reflect"] = b.pair.reflect ? 1.0 : 0.0;
  m["congruence_residual"] = b.pair.residual;
  m["max_perimeter_defect"] = b.maximal.max_perimeter_defect;
  m["max_winding_defect"] = b.maximal.max_winding_defect;
  m["tangent_support_violation"] = b.maximal.tangent_support_violation;
  m["normal_support_violation"] = b.maximal.normal_support_violation;
  m["closure_defect"] = b.maximal.closure_defect;
  m["involute_closure_defect"] = b.maximal.involute_closure_defect;
  m["gcurve_worst_violation"] = b.gcurve.worst_violation;

  r.pass = b.theta.residual < 1e-6 && b.system.tau_dot < 1e-5 && b.system.kappa_tau < 1e-5 && b.maximal.ok &&
           b.gcurve.ok;
  return r;
}

void write_theta_csv(const std::filesystem::path& path, const ThetaSolution& sol) {
  std::ostringstream o;
  o << "t,theta,theta_prime\n";
  char buf[96];
  for (std::size_t j = 0; j < sol.t.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", sol.t[j], sol.theta[j], sol.theta_prime[j]);
    o << buf;
  }
  write_file_atomic(path, o.str());
}

RunReport cmd_build_self_involute(const SolverConfig& config, const std::filesystem::path& out_dir) {
  RunReport r;
  r.command = "build-self-involute";
  r.inputs["out_dir"] = out_dir.string();
  try {
    std::filesystem::create_directories(out_dir);
  } catch (const std::filesystem::filesystem_error& e) {
    return failed(r, Error(ErrorCode::Io, e.what()));
  }
  try {
    const SelfInvoluteBuild b = build_self_involute(config);
    r = summarize_build(config, b);
    r.inputs["out_dir"] = out_dir.string();
    write_curve_csv(out_dir / "curve.csv", b.curve);
    write_theta_csv(out_dir / "theta.csv", b.theta);
  } catch (const std::exception& e) {
    r = failed(r, e);
  }
  try {
    r.write(out_dir / "report.json");
  } catch (const std::exception& e) {
    r = failed(r, e);
  }
  return r;
}

RunReport cmd_build_self_involute(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
                                  std::optional<double> radius) {
  SolverConfig cfg;
  try {
    cfg = read_config(config_path);
  } catch (const std::exception& e) {
    RunReport r;
    r.command = "build-self-involute";
    r.inputs["config"] = config_path.string();
    return failed(r, e);
  }
  if (radius) cfg.R = *radius;
  RunReport r = cmd_build_self_involute(cfg, out_dir);
  r.inputs["config"] = config_path.string();
  return r;
}

RunReport cmd_verify(const std::filesystem::path& csv, const SurfaceSpec& surface, VerifyOptions opt) {
  RunReport r;
  r.command = "verify";
  r.inputs["csv"] = csv.string();
  r.inputs["surface"] = to_string(surface.kind());
  r.inputs["radius"] = num(surface.radius());
  if (!opt.gcurve && !opt.bound && !opt.maximal) opt.gcurve = opt.bound = true;
  r.inputs["checks"] = std::string(opt.gcurve ? "gcurve " : "") + (opt.bound ? "bound " : "") +
                       (opt.maximal ? "maximal" : "");
  if (opt.tol) r.inputs["tol"] = num(*opt.tol);
  try {
    const Curve curve = read_curve_csv(csv, surface);
    auto& m = r.metrics;
    m["length"] = curve.length();
    m["samples"] = static_cast<double>(curve.size());
    bool pass = true;

    const GCurveReport g = is_g_curve(curve, opt.tol ? *opt.tol : -1.0);
    m["gcurve_worst_violation"] = g.worst_violation;
    m["gcurve_worst_s"] = g.worst_s;
    if (g.diameter_checked) m["diameter"] = g.diameter;
    if (opt.gcurve) {
      m["gcurve_ok"] = g.ok ? 1.0 : 0.0;
      pass = pass && g.ok;
    }
    try {
      m["hull_perimeter"] = perimeter(convex_hull(curve.points()));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoConvexHull) throw;
      m["hull_perimeter"] = std::numeric_limits<double>::quiet_NaN();
    }
    if (opt.bound) {
      if (!g.ok) {
        m["bound_ok"] = 0.0;
        pass = false;
        r.error = "length bound needs a G-curve";
      } else {
        const LengthBoundReport lb =
            verify_length_bound(curve, opt.tol ? *opt.tol : 1e-9, opt.tol ? *opt.tol : 1e-6, 400, opt.tol ? *opt.tol : -1.0);
        m["bound_ok"] = lb.ok ? 1.0 : 0.0;
        m["length_minus_perimeter"] = lb.length - lb.hull_perimeter;
        m["min_cos_sum"] = lb.min_cos_sum;
        m["max_sector_opening"] = lb.max_opening;
        double lo = std::numeric_limits<double>::infinity();
        for (double o : lb.sector_openings) lo = std::min(lo, o);
        m["min_sector_opening"] = lb.sector_openings.empty() ? 0.0 : lo;
        m["lemma_ok"] = lb.lemma34_ok ? 1.0 : 0.0;
        pass = pass && lb.ok;
      }
    }
    if (opt.maximal) {
      const SelfInvoluteProfile prof = profile_from_curve(curve);
      const MaximalLengthReport ml = verify_maximal_length(curve, prof);
      m["maximal_ok"] = ml.ok ? 1.0 : 0.0;
      m["max_perimeter_defect"] = ml.max_perimeter_defect;
      m["max_winding_defect"] = ml.max_winding_defect;
      m["tangent_support_violation"] = ml.tangent_support_violation;
      m["normal_support_violation"] = ml.normal_support_violation;
      m["closure_defect"] = ml.closure_defect;
      m["maximal_checked"] = static_cast<double>(ml.checked);
      pass = pass && ml.ok;
    }
    r.pass = pass;
  } catch (const std::exception& e) {
    r = failed(r, e);
  }
  return r;
}

RunReport cmd_plot(const std::filesystem::path& csv, const SurfaceSpec& surface, const std::filesystem::path& svg,
                   bool with_involute) {
  RunReport r;
  r.command = "plot";
  r.inputs["csv"] = csv.string();
  r.inputs["out"] = svg.string();
  r.inputs["surface"] = to_string(surface.kind());
  r.inputs["involute"] = with_involute ? "true" : "false";
  try {
    const Curve curve = read_curve_csv(csv, surface);
    PlotOptions po;
    po.involute = with_involute;
    const std::string text = render_svg(curve, po);
    write_file_atomic(svg, text);
    r.metrics["bytes"] = static_cast<double>(text.size());
    r.metrics["samples"] = static_cast<double>(curve.size());
    r.pass = true;
  } catch (const std::exception& e) {
    r = failed(r, e);
  }
  return r;
}

RunReport cmd_suite(std::uint64_t seed, std::ostream* progress) {
  RunReport r;
  r.command = "suite";
  r.inputs["seed"] = std::to_string(seed);
  bool pass = true;
  for (const CriterionResult& c : run_acceptance(seed, progress)) {
    const std::string key = "criterion_" + std::to_string(c.id);
    r.metrics[key] = c.pass ? 1.0 : 0.0;
    r.metrics[key + "_seconds"] = c.seconds;
    pass = pass && c.pass;
  }
  r.pass = pass;
  return r;
}

}  // namespace gcurves
