#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gcurves/curve.hpp"
#include "gcurves/interpolation.hpp"
#include "gcurves/involute.hpp"

namespace gcurves {

struct IterationParams {
  double A = 0.0;
  double B = 0.0;
  double t0 = 0.0;
  double K_bound = 0.0;  // A + B t0^2 / 3
  double eps_F = 0.0;    // end of the initial interval where F < 0
};

/// Smallest B allowed by A^5 + A^3/2 + A^2 B - 3B/2 < 0 (strict: B must exceed it).
double min_admissible_B(double A);
/// F(x) = tan(Ax + Bx^3/3) - (A + B x^2 / (2A^2)) sin x.
double claim_function(double A, double B, double x);
/// Largest x with F < 0 on (0, x], found on a uniform grid of `samples` points over (0, x_max].
double claim_interval(double A, double B, double x_max = 1.5, std::size_t samples = 200000);
/// sqrt((1 - A) / B): the bound A + B t0^2 < 1.
double slope_bound_t0(double A, double B);
/// Positive root of 1/2 + (B/(3A)) t^2 + (B^2/(18A^2)) t^4 = 1.
double quartic_bound_t0(double A, double B);

struct ParameterOptions {
  std::optional<double> B;       // default 1.5 * min_admissible_B(A)
  std::optional<double> t0;      // default: largest admissible, capped by t0_max
  std::optional<double> t0_max;  // extra cap on the automatic t0
};

/// Admissible (B, t0, K) for 0 < A < 1. Requested values that break any of the
/// conditions raise a parameter-search error, as does an empty t0 range.
IterationParams choose_parameters(double A, const ParameterOptions& options = {});
bool admissible(const IterationParams& p);

/// Per-iteration record of the discrete claims.
struct IterationRecord {
  double update = 0.0;               // sup |theta_n - theta_{n-1}|
  double bound_margin = 0.0;         // min (K t - theta_n), t > 0
  double slope_low_margin = 0.0;     // min (theta_n' - A)
  double slope_high_margin = 0.0;    // min (A + B t^2 - theta_n')
  double convexity_margin = 0.0;     // min (theta'_{j+1} - theta'_j)
  double monotone_margin = 0.0;      // min (theta_n - theta_{n-1})
  double second_difference = 0.0;    // max |theta_{j+1} - 2 theta_j + theta_{j-1}| / h^2
};

struct ThetaSolution {
  IterationParams params;
  std::vector<double> t, theta, theta_prime;
  int iterations_used = 0;
  double residual = 0.0;  // max |theta' - tan(theta(theta))/sin(theta)|, central differences
  std::vector<IterationRecord> history;

  /// Hermite interpolant through (t, theta) with the stored slopes.
  MonotoneCubic interpolant() const;
};

/// Slack allowed when checking a discrete claim on values of size `scale`.
double claim_tolerance(double scale);

/// Picard-type iteration from theta_0 = A t on a uniform grid of grid_size
/// intervals over [0, t0]. Each iterate is the cumulative trapezoid integral
/// of tan(theta(theta(u))) / sin(theta(u)), extended by A at u = 0, with the
/// inner composition evaluated by monotone Hermite interpolation.
ThetaSolution theta_iterate(const IterationParams& params, std::size_t grid_size = 10000, double tol = 1e-10,
                            int max_iter = 200);

/// Residual of the functional equation on the grid of `sol`.
double theta_residual(const ThetaSolution& sol);

/// kappa and tau of a self-involute on the sphere of radius R, or the planar
/// spiral kappa = a/s, tau = a s.
class SelfInvoluteProfile {
 public:
  static SelfInvoluteProfile from_theta(const ThetaSolution& sol, double R, double delta_cut_ratio = 1e-3);
  static SelfInvoluteProfile spiral(double a, double s0, double delta_cut_ratio = 1e-3);

  const SurfaceSpec& surface() const { return surface_; }
  double R() const { return surface_.radius(); }
  double a() const { return a_; }
  double s0() const { return s0_; }
  double delta_cut() const { return delta_cut_; }
  /// Upper end of the kappa domain (R t0 on the sphere); tau maps (0, s0] into it.
  double kappa_domain_end() const { return kappa_end_; }

  double kappa_at(double s) const;
  double tau_at(double s) const;
  double tau_dot_at(double s) const;
  double tau_inverse_at(double sigma) const;

  /// Tables on a uniform s grid over [delta_cut, end].
  FunctionTable kappa_table(std::size_t n) const;
  FunctionTable tau_table(std::size_t n) const;

 private:
  SelfInvoluteProfile(SurfaceSpec surface) : surface_(surface) {}

  friend SelfInvoluteProfile profile_from_curve(const Curve& curve);
  enum class Mode { Theta, Spiral, Table };

  SurfaceSpec surface_;
  Mode mode_ = Mode::Theta;
  double a_ = 0.0, s0_ = 0.0, delta_cut_ = 0.0, kappa_end_ = 0.0;
  double tau_begin_ = 0.0;
  // Theta mode: theta and its inverse. Table mode: tau, its inverse and 1/kappa over s.
  MonotoneCubic theta_, theta_inv_, inv_kappa_;
};

SelfInvoluteProfile profile_from_theta(const ThetaSolution& sol, double R, double delta_cut_ratio = 1e-3);

struct IntegrationOptions {
  double kappa_step = 0.05;  // kappa * ds per step; above 0.1 is refused
  double max_step = 1e-2;    // in units of R
};

/// Frenet integration of eta' = t, t' = kappa n - K eta with classic RK4 and
/// re-projection onto the surface after every step, from s_begin to s_end.
/// The sample at s_begin is (start, dir).
Curve integrate_curve(const std::function<double(double)>& kappa, const SurfacePoint& start,
                      const TangentVector& dir, double s_begin, double s_end, const IntegrationOptions& options = {});
Curve integrate_curve(const SelfInvoluteProfile& profile, const SurfacePoint& start, const TangentVector& dir,
                      const IntegrationOptions& options = {});

/// Point and tangent at arc length s of the kappa = a/s spiral whose limit
/// point is the pole (0, 0, R), carried to the surface by the exponential map.
TangentVector spiral_state(const SurfaceSpec& surface, double a, double s, double phase = 0.0);

/// Full self-involute: spiral asymptotics on a geometric grid from
/// inner_ratio * delta_cut up to delta_cut, then Frenet integration to s0.
/// Sample curvatures come from the profile.
Curve self_involute_curve(const SelfInvoluteProfile& profile, const IntegrationOptions& options = {},
                          double inner_ratio = 1e-3);

/// Root of a = exp(3 pi / (2a)) by bisection on [1, 10].
double solve_fundamental_a();

struct MaximalLengthReport {
  double max_perimeter_defect = 0.0;  // max |p(s) - s| / s over checked s
  double worst_perimeter_s = 0.0;
  double max_winding_defect = 0.0;    // max |m_s - 1|
  double min_winding = 0.0, max_winding = 0.0;
  double tangent_support_violation = 0.0;
  double normal_support_violation = 0.0;
  double closure_defect = 0.0;        // max |d(eta_sigma, eta_s) / sigma - 1|, sigma = tau^-1(s)
  double involute_closure_defect = 0.0;  // max d(involute at sigma, eta_s) / sigma
  std::size_t checked = 0;
  bool ok = false;
};

struct MaximalLengthOptions {
  double s_min = -1.0;             // default 2 delta_cut
  std::size_t max_checks = 400;
  double perimeter_tol = 1e-3;
  double winding_tol = 1e-3;
  double support_tol = 1e-6;       // relative to s
};

MaximalLengthReport verify_maximal_length(const Curve& curve, const SelfInvoluteProfile& profile,
                                          const MaximalLengthOptions& options = {});

/// Profile whose tau is rebuilt from the curve's own curvature samples.
SelfInvoluteProfile profile_from_curve(const Curve& curve);

}  // namespace gcurves
