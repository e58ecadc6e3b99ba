#include "gcurves/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gcurves/convex.hpp"
#include "gcurves/descent.hpp"

namespace gcurves {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_A(double A) {
  if (!(A > 0.0 && A < 1.0)) throw Error(ErrorCode::ContractViolation, "A must lie in (0, 1)");
}

bool cris1(double A, double B) { return std::pow(A, 5) + std::pow(A, 3) / 2.0 + A * A * B - 1.5 * B < 0.0; }

}  // namespace

// --- parameters -----------------------------------------------------------------------

double min_admissible_B(double A) {
  require_A(A);
  return (std::pow(A, 5) + std::pow(A, 3) / 2.0) / (1.5 - A * A);
}

double claim_function(double A, double B, double x) {
  return std::tan(A * x + B * x * x * x / 3.0) - (A + B * x * x / (2.0 * A * A)) * std::sin(x);
}

double claim_interval(double A, double B, double x_max, std::size_t samples) {
  const double h = x_max / static_cast<double>(samples);
  double last = 0.0;
  for (std::size_t i = 1; i <= samples; ++i) {
    const double x = h * static_cast<double>(i);
    if (A * x + B * x * x * x / 3.0 >= 0.5 * kPi) break;
    if (!(claim_function(A, B, x) < 0.0)) break;
    last = x;
  }
  return last;
}

double slope_bound_t0(double A, double B) { return std::sqrt((1.0 - A) / B); }

double quartic_bound_t0(double A, double B) {
  // (B^2/(18A^2)) y^2 + (B/(3A)) y - 1/2 = 0, y = t^2
  const double qa = B * B / (18.0 * A * A), qb = B / (3.0 * A), qc = -0.5;
  const double y = (2.0 * -qc) / (qb + std::sqrt(qb * qb - 4.0 * qa * qc));
  return std::sqrt(y);
}

bool admissible(const IterationParams& p) {
  if (!(p.A > 0.0 && p.A < 1.0 && p.B > 0.0 && p.t0 > 0.0 && p.t0 < 1.0)) return false;
  const double t2 = p.t0 * p.t0;
  return cris1(p.A, p.B) && p.t0 <= p.eps_F &&
         0.5 + p.B / (3.0 * p.A) * t2 + p.B * p.B / (18.0 * p.A * p.A) * t2 * t2 < 1.0 && p.A + p.B * t2 < 1.0 &&
         p.K_bound < 1.0;
}

IterationParams choose_parameters(double A, const ParameterOptions& options) {
  require_A(A);
  IterationParams p;
  p.A = A;
  p.B = options.B.value_or(1.5 * min_admissible_B(A));
  if (!(p.B > 0.0) || !cris1(A, p.B))
    throw Error(ErrorCode::ParameterSearch, "B = " + std::to_string(p.B) + " violates the admissibility inequality");
  p.eps_F = claim_interval(A, p.B);
  const double shrink = 1.0 - 1e-9;
  double t_max = std::min({p.eps_F, quartic_bound_t0(A, p.B) * shrink, slope_bound_t0(A, p.B) * shrink, shrink});
  if (options.t0) {
    p.t0 = *options.t0;
  } else {
    p.t0 = t_max;
    if (options.t0_max) {
      // theta(t0) <= K t0, so this cap bounds the resulting curve length.
      p.t0 = std::min(p.t0, *options.t0_max);
    }
  }
  if (!(p.t0 >= 1e-8)) throw Error(ErrorCode::ParameterSearch, "no admissible t0 above the grid resolution");
  p.K_bound = A + p.B * p.t0 * p.t0 / 3.0;
  if (!admissible(p))
    throw Error(ErrorCode::ParameterSearch, "t0 = " + std::to_string(p.t0) + " violates the admissibility conditions");
  return p;
}

// --- theta iteration ------------------------------------------------------------------

double claim_tolerance(double scale) { return 10.0 * kEps * scale; }

MonotoneCubic ThetaSolution::interpolant() const { return MonotoneCubic(t, theta, theta_prime); }

namespace {

// Cumulative trapezoid with compensated summation.
std::vector<double> cumulative_trapezoid(const std::vector<double>& g, double h) {
  std::vector<double> out(g.size(), 0.0);
  double sum = 0.0, comp = 0.0;
  for (std::size_t j = 1; j < g.size(); ++j) {
    const double term = 0.5 * h * (g[j - 1] + g[j]) - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
    out[j] = sum;
  }
  return out;
}

std::vector<double> integrand(const std::vector<double>& theta, const MonotoneCubic& interp, double A) {
  std::vector<double> g(theta.size());
  g[0] = A;
  for (std::size_t j = 1; j < theta.size(); ++j) g[j] = std::tan(interp(theta[j])) / std::sin(theta[j]);
  return g;
}

[[noreturn]] void claim_failed(int n, const char* claim, double margin) {
  throw Error(ErrorCode::IterationDiagnostic,
              std::string(claim) + " fails at iteration " + std::to_string(n) + " (margin " + std::to_string(margin) + ")");
}

}  // namespace

ThetaSolution theta_iterate(const IterationParams& params, std::size_t grid_size, double tol, int max_iter) {
  if (!admissible(params)) throw Error(ErrorCode::ContractViolation, "iteration parameters are not admissible");
  if (grid_size < 4 || !(tol > 0.0) || max_iter < 1)
    throw Error(ErrorCode::ContractViolation, "theta_iterate needs grid_size >= 4, tol > 0, max_iter >= 1");
  const std::size_t N = grid_size;
  const double h = params.t0 / static_cast<double>(N);
  const double A = params.A, B = params.B, K = params.K_bound;

  ThetaSolution sol;
  sol.params = params;
  sol.t.resize(N + 1);
  for (std::size_t j = 0; j <= N; ++j) sol.t[j] = h * static_cast<double>(j);
  sol.t[N] = params.t0;
  sol.theta.resize(N + 1);
  for (std::size_t j = 0; j <= N; ++j) sol.theta[j] = A * sol.t[j];
  sol.theta_prime.assign(N + 1, A);

  const double bound_tol = claim_tolerance(K * params.t0);
  for (int n = 1; n <= max_iter; ++n) {
    const MonotoneCubic interp(sol.t, sol.theta, sol.theta_prime);
    const std::vector<double> g = integrand(sol.theta, interp, A);
    const double gmax = *std::max_element(g.begin(), g.end());
    const double slope_tol = claim_tolerance(gmax);

    std::vector<double> dg(N + 1);
    for (std::size_t j = 0; j <= N; ++j) dg[j] = g[j] - sol.theta_prime[j];
    const std::vector<double> delta = cumulative_trapezoid(dg, h);
    std::vector<double> theta = cumulative_trapezoid(g, h);

    IterationRecord rec;
    rec.bound_margin = rec.slope_low_margin = rec.slope_high_margin = rec.convexity_margin = rec.monotone_margin =
        std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j <= N; ++j) {
      rec.update = std::max(rec.update, std::abs(delta[j]));
      rec.monotone_margin = std::min(rec.monotone_margin, delta[j]);
      rec.slope_low_margin = std::min(rec.slope_low_margin, g[j] - A);
      rec.slope_high_margin = std::min(rec.slope_high_margin, A + B * sol.t[j] * sol.t[j] - g[j]);
      if (j > 0) {
        if (!(theta[j] > 0.0)) claim_failed(n, "positivity of theta", theta[j]);
        rec.bound_margin = std::min(rec.bound_margin, K * sol.t[j] - theta[j]);
        rec.convexity_margin = std::min(rec.convexity_margin, g[j] - g[j - 1]);
      }
      if (j > 0 && j < N)
        rec.second_difference =
            std::max(rec.second_difference, std::abs(theta[j + 1] - 2.0 * theta[j] + theta[j - 1]) / (h * h));
    }
    if (g[0] != A) claim_failed(n, "limit slope A at t = 0", g[0] - A);
    if (rec.bound_margin < -bound_tol) claim_failed(n, "bound theta <= K t", rec.bound_margin);
    if (rec.slope_low_margin < -slope_tol) claim_failed(n, "lower slope bound A", rec.slope_low_margin);
    if (rec.slope_high_margin < -slope_tol) claim_failed(n, "upper slope bound A + B t^2", rec.slope_high_margin);
    if (rec.convexity_margin < -slope_tol) claim_failed(n, "convexity", rec.convexity_margin);
    if (rec.monotone_margin < -bound_tol) claim_failed(n, "monotonicity in n", rec.monotone_margin);
    sol.history.push_back(rec);

    sol.theta = std::move(theta);
    sol.theta_prime = g;
    sol.iterations_used = n;
    if (rec.update < tol) {
      sol.residual = theta_residual(sol);
      return sol;
    }
  }
  throw Error(ErrorCode::Convergence, "theta iteration did not settle within " + std::to_string(max_iter) + " steps");
}

double theta_residual(const ThetaSolution& sol) {
  const MonotoneCubic interp = sol.interpolant();
  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < sol.t.size(); ++j) {
    const double d = (sol.theta[j + 1] - sol.theta[j - 1]) / (sol.t[j + 1] - sol.t[j - 1]);
    const double rhs = std::tan(interp(sol.theta[j])) / std::sin(sol.theta[j]);
    worst = std::max(worst, std::abs(d - rhs));
  }
  return worst;
}

// --- profile ----------------------------------------------------------------------------

SelfInvoluteProfile SelfInvoluteProfile::from_theta(const ThetaSolution& sol, double R, double delta_cut_ratio) {
  if (!(R > 0.0)) throw Error(ErrorCode::ContractViolation, "radius must be positive");
  for (std::size_t j = 0; j + 1 < sol.theta.size(); ++j)
    if (!(sol.theta[j + 1] > sol.theta[j])) throw Error(ErrorCode::ContractViolation, "theta is not strictly increasing");
  SelfInvoluteProfile p(SurfaceSpec::sphere(R));
  p.mode_ = Mode::Theta;
  p.a_ = 1.0 / sol.params.A;
  p.theta_ = sol.interpolant();
  std::vector<double> inv_slope(sol.theta_prime.size());
  for (std::size_t j = 0; j < inv_slope.size(); ++j) inv_slope[j] = 1.0 / sol.theta_prime[j];
  p.theta_inv_ = MonotoneCubic(sol.theta, sol.t, inv_slope);
  p.s0_ = R * sol.theta.back();
  p.kappa_end_ = R * sol.t.back();
  p.delta_cut_ = delta_cut_ratio * p.s0_;
  return p;
}

SelfInvoluteProfile SelfInvoluteProfile::spiral(double a, double s0, double delta_cut_ratio) {
  if (!(a > 1.0) || !(s0 > 0.0)) throw Error(ErrorCode::ContractViolation, "spiral profile needs a > 1, s0 > 0");
  SelfInvoluteProfile p(SurfaceSpec::euclidean());
  p.mode_ = Mode::Spiral;
  p.a_ = a;
  p.s0_ = s0;
  p.kappa_end_ = a * s0;
  p.delta_cut_ = delta_cut_ratio * s0;
  return p;
}

SelfInvoluteProfile profile_from_theta(const ThetaSolution& sol, double R, double delta_cut_ratio) {
  return SelfInvoluteProfile::from_theta(sol, R, delta_cut_ratio);
}

double SelfInvoluteProfile::kappa_at(double s) const {
  if (!(s > 0.0)) throw Error(ErrorCode::Range, "kappa is defined for s > 0");
  switch (mode_) {
    case Mode::Spiral: return a_ / s;
    case Mode::Theta: {
      if (s > kappa_end_ * (1.0 + 1e-12)) throw Error(ErrorCode::Range, "kappa queried past its domain");
      const double R = surface_.radius();
      return 1.0 / (R * std::tan(theta_(std::min(s / R, theta_.back()))));
    }
    case Mode::Table: return 1.0 / inv_kappa_(s);
  }
  return 0.0;
}

double SelfInvoluteProfile::tau_at(double s) const {
  switch (mode_) {
    case Mode::Spiral: return a_ * s;
    case Mode::Theta: return surface_.radius() * theta_inv_(s / surface_.radius());
    case Mode::Table: return theta_(s);
  }
  return 0.0;
}

double SelfInvoluteProfile::tau_dot_at(double s) const {
  switch (mode_) {
    case Mode::Spiral: return a_;
    case Mode::Theta: return 1.0 / theta_.derivative(theta_inv_(s / surface_.radius()));
    case Mode::Table: return theta_.derivative(s);
  }
  return 0.0;
}

double SelfInvoluteProfile::tau_inverse_at(double sigma) const {
  switch (mode_) {
    case Mode::Spiral: return sigma / a_;
    case Mode::Theta: return surface_.radius() * theta_(sigma / surface_.radius());
    case Mode::Table: return theta_inv_(sigma);
  }
  return 0.0;
}

FunctionTable SelfInvoluteProfile::kappa_table(std::size_t n) const {
  FunctionTable t;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = delta_cut_ + (kappa_end_ - delta_cut_) * static_cast<double>(i) / static_cast<double>(n - 1);
    t.s.push_back(s);
    t.value.push_back(kappa_at(s));
  }
  return t;
}

FunctionTable SelfInvoluteProfile::tau_table(std::size_t n) const {
  FunctionTable t;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = delta_cut_ + (s0_ - delta_cut_) * static_cast<double>(i) / static_cast<double>(n - 1);
    t.s.push_back(s);
    t.value.push_back(tau_at(s));
  }
  return t;
}

SelfInvoluteProfile profile_from_curve(const Curve& curve) {
  const SurfaceSpec& sf = curve.surface();
  const std::size_t n = curve.size();
  if (n < 10) throw Error(ErrorCode::DegenerateInput, "profile needs at least 10 samples");
  std::vector<double> s(n), speed(n), inv_k(n), tau(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = curve[i].s;
    if (!(curve[i].kappa > 0.0)) throw Error(ErrorCode::ContractViolation, "profile needs kappa > 0");
    inv_k[i] = 1.0 / curve[i].kappa;
    speed[i] = involute_speed(sf, s[i], curve[i].kappa);
  }
  const std::size_t m = std::max<std::size_t>(3, n / 10);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) sx += s[i], sy += speed[i], sxx += s[i] * s[i], sxy += s[i] * speed[i];
  const double md = static_cast<double>(m);
  const double den = md * sxx - sx * sx;
  const double slope = den > 0.0 ? (md * sxy - sx * sy) / den : 0.0;
  const double a = (sy - slope * sx) / md;
  tau[0] = a * s[0];
  for (std::size_t i = 1; i < n; ++i) tau[i] = tau[i - 1] + 0.5 * (speed[i - 1] + speed[i]) * (s[i] - s[i - 1]);

  SelfInvoluteProfile p(sf);
  p.mode_ = SelfInvoluteProfile::Mode::Table;
  p.a_ = a;
  p.theta_ = MonotoneCubic(s, tau);
  p.theta_inv_ = MonotoneCubic(tau, s);
  p.inv_kappa_ = MonotoneCubic(s, inv_k);
  p.s0_ = curve.s_end();
  p.kappa_end_ = curve.s_end();
  p.tau_begin_ = tau.front();
  p.delta_cut_ = std::max(tau.front(), s.front());
  return p;
}

// --- Frenet integration -----------------------------------------------------------------

namespace {

Vec3 normal_of(const SurfaceSpec& sf, const Vec3& x, const Vec3& t) {
  switch (sf.kind()) {
    case SurfaceKind::Sphere: return x.cross(t) / sf.radius();
    case SurfaceKind::Hyperbolic: {
      const Vec3 c = x.cross(t) / sf.radius();
      return {c.x(), c.y(), -c.z()};
    }
    case SurfaceKind::Euclidean: return Vec3(0.0, 0.0, 1.0).cross(t);
  }
  return Vec3::Zero();
}

}  // namespace

Curve integrate_curve(const std::function<double(double)>& kappa, const SurfacePoint& start,
                      const TangentVector& dir, double s_begin, double s_end, const IntegrationOptions& options) {
  if (options.kappa_step > 0.1 || !(options.kappa_step > 0.0))
    throw Error(ErrorCode::Resolution, "kappa * ds per step must lie in (0, 0.1]");
  if (!(s_end > s_begin)) throw Error(ErrorCode::ContractViolation, "integration range is empty");
  const SurfaceSpec& sf = start.surface();
  const double K = sf.curvature();
  const double max_step = options.max_step * sf.radius();
  if (std::abs(dir.norm() - 1.0) > 1e-9) throw Error(ErrorCode::ContractViolation, "initial direction is not unit");

  struct State {
    Vec3 x, t;
  };
  auto rhs = [&](double s, const State& y) {
    const Vec3 n = normal_of(sf, y.x, y.t);
    return State{y.t, kappa(s) * n - K * sf.inner(y.t, y.t) * y.x};
  };
  auto axpy = [](const State& y, double h, const State& k) { return State{y.x + h * k.x, y.t + h * k.t}; };

  std::vector<CurveSample> out;
  State y{start.coords(), dir.dir()};
  double s = s_begin;
  out.push_back({s, start, dir, kappa(s)});
  while (s < s_end) {
    const double k0 = std::abs(kappa(s));
    double ds = k0 > 0.0 ? std::min(max_step, options.kappa_step / k0) : max_step;
    if (s + ds > s_end || s_end - (s + ds) < 1e-3 * ds) ds = s_end - s;
    if (std::abs(kappa(s + ds)) * ds > 0.1 || k0 * ds > 0.1)
      throw Error(ErrorCode::Resolution, "step too coarse for the curvature at s = " + std::to_string(s));
    const State k1 = rhs(s, y);
    const State k2 = rhs(s + 0.5 * ds, axpy(y, 0.5 * ds, k1));
    const State k3 = rhs(s + 0.5 * ds, axpy(y, 0.5 * ds, k2));
    const State k4 = rhs(s + ds, axpy(y, ds, k3));
    y.x += ds / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    y.t += ds / 6.0 * (k1.t + 2.0 * k2.t + 2.0 * k3.t + k4.t);
    s = (ds == s_end - s) ? s_end : s + ds;
    const SurfacePoint p = SurfacePoint::project(sf, y.x);
    const TangentVector t = TangentVector::project(p, y.t).normalized();
    y = {p.coords(), t.dir()};
    out.push_back({s, p, t, kappa(s)});
  }
  return {sf, std::move(out)};
}

Curve integrate_curve(const SelfInvoluteProfile& profile, const SurfacePoint& start, const TangentVector& dir,
                      const IntegrationOptions& options) {
  return integrate_curve([&](double s) { return profile.kappa_at(s); }, start, dir, profile.delta_cut(), profile.s0(),
                         options);
}

TangentVector spiral_state(const SurfaceSpec& surface, double a, double s, double phase) {
  const double Rz = surface.is_euclidean() ? 1.0 : surface.radius();
  const SurfacePoint pole(surface, Vec3(0.0, 0.0, Rz));
  const double c = std::sqrt(1.0 + a * a);
  const double r = s / c;
  const double psi = a * std::log(r) + phase;
  const TangentVector u(pole, Vec3(std::cos(psi), std::sin(psi), 0.0));
  const TangentVector vr = geodesic_velocity(pole, u, r);
  const TangentVector vp = rotate_quarter(vr);
  return TangentVector::project(vr.base(), (vr.dir() + a * vp.dir()) / c).normalized();
}

Curve self_involute_curve(const SelfInvoluteProfile& profile, const IntegrationOptions& options, double inner_ratio) {
  const SurfaceSpec& sf = profile.surface();
  const double a = profile.a();
  const double delta = profile.delta_cut();
  if (!(inner_ratio > 0.0 && inner_ratio < 1.0)) throw Error(ErrorCode::ContractViolation, "inner_ratio must lie in (0, 1)");

  std::vector<CurveSample> samples;
  const double growth = std::log1p(options.kappa_step / a);
  const auto m = static_cast<std::size_t>(std::ceil(std::log(1.0 / inner_ratio) / growth));
  for (std::size_t i = 0; i < m; ++i) {
    const double s = delta * inner_ratio * std::exp(std::log(1.0 / inner_ratio) * static_cast<double>(i) / static_cast<double>(m));
    const TangentVector t = spiral_state(sf, a, s);
    samples.push_back({s, t.base(), t, profile.kappa_at(s)});
  }
  const TangentVector t0 = spiral_state(sf, a, delta);
  const Curve outer = integrate_curve(profile, t0.base(), t0, options);
  samples.insert(samples.end(), outer.samples().begin(), outer.samples().end());
  return {sf, std::move(samples)};
}

double solve_fundamental_a() {
  auto f = [](double a) { return a - std::exp(3.0 * kPi / (2.0 * a)); };
  double lo = 1.0, hi = 10.0;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
}

// --- maximal length ---------------------------------------------------------------------

namespace {

double chart_angle(const Vec2& v) { return std::atan2(v.y(), v.x()); }

double signed_chart_angle(const Vec2& from, const Vec2& to) {
  return std::atan2(from.x() * to.y() - from.y() * to.x(), from.dot(to));
}

}  // namespace

MaximalLengthReport verify_maximal_length(const Curve& curve, const SelfInvoluteProfile& profile,
                                          const MaximalLengthOptions& options) {
  MaximalLengthReport r;
  const SurfaceSpec& sf = curve.surface();
  if (!(sf == profile.surface())) throw Error(ErrorCode::Usage, "curve and profile live on different surfaces");
  const std::size_t n = curve.size();
  for (const auto& c : curve.samples())
    if (!(c.kappa > 0.0)) throw Error(ErrorCode::ContractViolation, "maximal-length check needs kappa > 0");
  const double s_min = options.s_min >= 0.0 ? options.s_min : 2.0 * profile.delta_cut();

  const PerimeterProfile pp = perimeter_profile(curve);

  // Unwrapped chart tangent angle.
  std::vector<double> phi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double raw = chart_angle(chart_direction(curve[i].tangent));
    if (i == 0) {
      phi[i] = raw;
    } else {
      phi[i] = phi[i - 1] + std::remainder(raw - phi[i - 1], 2.0 * kPi);
    }
  }
  auto phi_at = [&](double s) {
    const std::size_t i = curve.segment_index(s);
    const double w = std::clamp((s - curve[i].s) / (curve[i + 1].s - curve[i].s), 0.0, 1.0);
    return (1.0 - w) * phi[i] + w * phi[i + 1];
  };

  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i)
    if (curve[i].s >= s_min) idx.push_back(i);
  const std::size_t stride = std::max<std::size_t>(1, (idx.size() + options.max_checks - 1) / std::max<std::size_t>(1, options.max_checks));

  r.min_winding = std::numeric_limits<double>::infinity();
  r.max_winding = -std::numeric_limits<double>::infinity();
  const auto pts = curve.points();
  for (std::size_t k = 0; k < idx.size(); k += stride) {
    const std::size_t i = idx[k];
    const double s = curve[i].s;
    const double sigma = profile.tau_inverse_at(s);
    if (sigma < curve.s_begin() || sigma >= s) continue;
    ++r.checked;

    const double pd = std::abs(pp.p[i] - s) / s;
    if (pd > r.max_perimeter_defect) {
      r.max_perimeter_defect = pd;
      r.worst_perimeter_s = s;
    }

    const SurfacePoint eta_s = curve[i].point;
    const SurfacePoint eta_sig = curve.point_at(sigma);
    const TangentVector t_sig = curve.tangent_at(sigma);
    const Vec2 chord = to_chart(eta_sig).uv() - to_chart(eta_s).uv();
    const double rho = phi[i] - phi_at(sigma) + signed_chart_angle(chart_direction(curve[i].tangent), chord) +
                       signed_chart_angle(chord, chart_direction(t_sig));
    const double m = rho / (2.0 * kPi);
    r.min_winding = std::min(r.min_winding, m);
    r.max_winding = std::max(r.max_winding, m);
    r.max_winding_defect = std::max(r.max_winding_defect, std::abs(m - 1.0));

    // Tangent line and normal line at eta_s against the prefix.
    const TangentVector& t = curve[i].tangent;
    const TangentVector nrm = rotate_quarter(t);
    double tpos = 0, tneg = 0, npos = 0, nneg = 0;
    for (std::size_t j = 0; j < i; ++j) {
      const double dt = signed_distance_to_line(nrm, pts[j]);
      const double dn = signed_distance_to_line(t, pts[j]);
      tpos = std::max(tpos, dt), tneg = std::max(tneg, -dt);
      npos = std::max(npos, dn), nneg = std::max(nneg, -dn);
    }
    r.tangent_support_violation = std::max(r.tangent_support_violation, std::min(tpos, tneg) / s);
    r.normal_support_violation = std::max(r.normal_support_violation, std::min(npos, nneg) / s);

    r.closure_defect = std::max(r.closure_defect, std::abs(distance(eta_sig, eta_s) / sigma - 1.0));
    r.involute_closure_defect =
        std::max(r.involute_closure_defect, distance(involute_point(sigma, eta_sig, t_sig), eta_s) / sigma);
  }
  if (r.checked == 0) {
    r.min_winding = r.max_winding = 0.0;
    r.ok = false;
    return r;
  }
  r.ok = r.max_perimeter_defect < options.perimeter_tol && r.max_winding_defect < options.winding_tol &&
         r.tangent_support_violation < options.support_tol && r.normal_support_violation < options.support_tol;
  return r;
}

}  // namespace gcurves
