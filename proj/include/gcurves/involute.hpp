#pragma once

#include <optional>
#include <vector>

#include "gcurves/curve.hpp"

namespace gcurves {

struct FrenetFrame {
  TangentVector t;
  TangentVector n;
  double kappa;
};

/// Frenet data at an interior sample. The tangent derivative is a
/// three-point nonuniform finite difference of the stored tangents and
/// kappa = g(t', n); the normal component of t' does not enter.
FrenetFrame frenet_data(const Curve& curve, std::size_t index);
/// Frenet data at the interior sample nearest to s.
FrenetFrame frenet_data(const Curve& curve, double s);

/// Involute points cos(s/R) eta - R sin(s/R) t (cosh/sinh, or eta - s t on
/// the plane), with s the curve parameter of each sample. No curvature
/// requirement; the involute of a geodesic is a single point.
std::vector<SurfacePoint> involute_points(const Curve& curve);
/// Involute point for string length s at the point x with unit tangent t.
SurfacePoint involute_point(double s, const SurfacePoint& x, const TangentVector& t);

/// Involute as a curve in its own arc length. The tangent is -n, the
/// arc length grows by R sin(s/R) kappa ds (trapezoid rule) starting from
/// `s_tilde_begin`, and the curvature is cot(s/R)/R, coth(s/R)/R or 1/s.
/// Any sample with kappa <= 0 past s = 0 raises a monotonicity error.
Curve involute(const Curve& curve, double s_tilde_begin = 0.0);

/// d s~/ds = R sin(s/R) kappa (sinh, or s kappa on the plane).
double involute_speed(const SurfaceSpec& surface, double s, double kappa);
/// Curvature of the involute at string length s.
double involute_curvature(const SurfaceSpec& surface, double s);

struct FunctionTable {
  std::vector<double> s;
  std::vector<double> value;
};

struct SystemResidual {
  /// max |tau' / (R sin(s/R) kappa_s) - 1| over interior tau nodes
  double tau_dot = 0.0;
  /// max |kappa_{tau_s} / (cot(s/R)/R) - 1|
  double kappa_tau = 0.0;
  std::size_t nodes = 0;
};

/// Relative residuals of the self-involute system on the nodes of `tau`.
/// tau' uses central differences; kappa is interpolated monotonically
/// through 1/kappa. Nodes whose tau_s leaves the kappa table are skipped.
SystemResidual system_residual(const FunctionTable& kappa, const FunctionTable& tau, const SurfaceSpec& surface);

/// lambda * eta(s / lambda) on the sphere or hyperboloid of radius lambda R,
/// curvature kappa / lambda. With `truncate`, samples past the original end
/// arc length are dropped.
Curve dilate(const Curve& curve, double lambda, bool truncate = true);

/// Planar spiral with kappa_s = a / s around the origin of the plane x3 = 1,
/// sampled on a geometric grid from s_min to L. Polar radius s / sqrt(1 + a^2),
/// polar angle a log(radius) + phase.
Curve limit_spiral(double a, double L, std::size_t n = 4000, double s_min = -1.0, double phase = 0.0);

struct FundamentalPair {
  double a = 0.0;
  double rotation_angle = 0.0;  // in (-pi, pi]
  bool reflect = false;
  double residual = 0.0;        // relative RMS chart misfit
  std::size_t matched = 0;
  /// Orthogonal map fixing the pole: rotation about x3, preceded by
  /// x2 -> -x2 when reflect is set.
  Mat3 matrix() const;
};

/// Estimates a = lim tau'(0+) from a linear fit of R sin(s/R) kappa over the
/// first 10% of samples, builds tau by the trapezoid rule and aligns the
/// involute samples with the curve at arc length tau. The curve must start
/// near the pole (0, 0, R) of its surface.
FundamentalPair fundamental_pair(const Curve& curve, double max_residual = 1e-2);

}  // namespace gcurves
