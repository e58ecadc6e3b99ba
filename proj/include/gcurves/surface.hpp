#pragma once

#include <Eigen/Dense>

#include <random>

#include "gcurves/error.hpp"

namespace gcurves {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

/// Tolerance for the embedding invariants (on-surface, tangency, unit norm).
inline constexpr double kEmbeddingTol = 1e-10;
/// Tolerance for triangle trigonometry cross-checks.
inline constexpr double kTrigTol = 1e-10;

enum class SurfaceKind { Sphere, Euclidean, Hyperbolic };

/// One of the three constant-curvature model surfaces embedded in R^3:
/// the sphere x.x = R^2, the plane x3 = 1, and the upper sheet of the
/// hyperboloid x1^2 + x2^2 - x3^2 = -R^2.
class SurfaceSpec {
 public:
  static SurfaceSpec sphere(double radius = 1.0);
  static SurfaceSpec euclidean();
  static SurfaceSpec hyperbolic(double radius = 1.0);

  SurfaceKind kind() const { return kind_; }
  /// Radius R. The plane reports 1 so that formulas scaling by R stay valid.
  double radius() const { return radius_; }
  /// Gaussian curvature: 1/R^2, 0 or -1/R^2.
  double curvature() const;

  bool is_sphere() const { return kind_ == SurfaceKind::Sphere; }
  bool is_euclidean() const { return kind_ == SurfaceKind::Euclidean; }
  bool is_hyperbolic() const { return kind_ == SurfaceKind::Hyperbolic; }

  /// Ambient bilinear form: Euclidean dot product, or the Lorentz form
  /// diag(1, 1, -1) for the hyperboloid.
  double inner(const Vec3& a, const Vec3& b) const;

  friend bool operator==(const SurfaceSpec&, const SurfaceSpec&) = default;

 private:
  SurfaceSpec(SurfaceKind kind, double radius);

  SurfaceKind kind_;
  double radius_;
};

const char* to_string(SurfaceKind kind);

class SurfacePoint {
 public:
  /// Validates that `coords` lies on the surface within kEmbeddingTol
  /// (relative to R^2) and snaps it exactly onto it.
  SurfacePoint(const SurfaceSpec& surface, const Vec3& coords);

  /// Radially rescales arbitrary coordinates onto the surface. Used after
  /// every arithmetic step to keep long computations from drifting.
  static SurfacePoint project(const SurfaceSpec& surface, const Vec3& coords);

  const SurfaceSpec& surface() const { return surface_; }
  const Vec3& coords() const { return x_; }

 private:
  struct Unchecked {};
  SurfacePoint(Unchecked, const SurfaceSpec& surface, const Vec3& coords)
      : surface_(surface), x_(coords) {}

  SurfaceSpec surface_;
  Vec3 x_;
};

class TangentVector {
 public:
  /// Validates tangency at `base` within kEmbeddingTol.
  TangentVector(const SurfacePoint& base, const Vec3& dir);

  /// Removes the normal component of `dir` at `base`.
  static TangentVector project(const SurfacePoint& base, const Vec3& dir);

  const SurfacePoint& base() const { return base_; }
  const Vec3& dir() const { return v_; }
  const SurfaceSpec& surface() const { return base_.surface(); }

  double norm() const;
  TangentVector normalized() const;
  TangentVector scaled(double factor) const;

 private:
  struct Unchecked {};
  TangentVector(Unchecked, const SurfacePoint& base, const Vec3& dir) : base_(base), v_(dir) {}

  SurfacePoint base_;
  Vec3 v_;
};

/// Point of the projective chart: gnomonic coordinates on the upper open
/// hemisphere, Klein-disc coordinates on the hyperboloid, (x1, x2) on the
/// plane. Geodesics are straight lines in all three charts.
class ChartPoint {
 public:
  ChartPoint(const SurfaceSpec& surface, const Vec2& uv);

  const SurfaceSpec& surface() const { return surface_; }
  const Vec2& uv() const { return uv_; }

 private:
  SurfaceSpec surface_;
  Vec2 uv_;
};

// --- metric and orientation -------------------------------------------------

double inner(const TangentVector& v, const TangentVector& w);

/// Oriented area form omega(v, w) = det[x, v, w] / R. Positive when (x, v, w)
/// is a positively oriented basis of R^3.
double area_form(const TangentVector& v, const TangentVector& w);

/// Rotation by +pi/2 in the tangent plane: the unique n with g(t, n) = 0,
/// |n| = |t| and omega(t, n) > 0.
TangentVector rotate_quarter(const TangentVector& t);

// --- geodesics ------------------------------------------------------------------

/// Point at arc length s along the unit-speed geodesic from `start` with
/// initial velocity `dir`.
SurfacePoint geodesic_point(const SurfacePoint& start, const TangentVector& dir, double s);

/// Velocity of the same geodesic at arc length s (unit, tangent at the
/// returned point).
TangentVector geodesic_velocity(const SurfacePoint& start, const TangentVector& dir, double s);

double distance(const SurfacePoint& p, const SurfacePoint& q);

/// Unit tangent at p of the oriented segment [p, q].
TangentVector direction_to(const SurfacePoint& p, const SurfacePoint& q);

/// Metric angle in [0, pi].
double angle_between(const TangentVector& v, const TangentVector& w);

/// Signed angle from v to w in (-pi, pi], positive counterclockwise.
double signed_angle(const TangentVector& v, const TangentVector& w);

/// Signed distance from p to the geodesic through `line_normal.base()`
/// orthogonal to `line_normal` (a unit tangent). Positive on the side
/// `line_normal` points to.
double signed_distance_to_line(const TangentVector& line_normal, const SurfacePoint& p);

// --- charts ---------------------------------------------------------------------

ChartPoint to_chart(const SurfacePoint& p);
SurfacePoint from_chart(const ChartPoint& c);

/// Differential of the chart map applied to a tangent vector.
Vec2 chart_direction(const TangentVector& v);
/// Inverse of chart_direction at `base`.
TangentVector from_chart_direction(const SurfacePoint& base, const Vec2& d);

/// Pulled-back metric g_ij at a chart point.
Mat2 chart_metric_at(const ChartPoint& c);

// --- trigonometry -------------------------------------------------------------

struct TriangleAngles {
  double alpha;  // opposite side a
  double beta;   // opposite side b
  double gamma;  // opposite side c
};

/// Interior angles of the geodesic triangle with the given side lengths.
TriangleAngles triangle_solve(const SurfaceSpec& surface, double a, double b, double c);

// --- isometries -----------------------------------------------------------------

/// All isometries used here act linearly on the embedding coordinates:
/// orthogonal maps for the sphere, SO+(2,1) for the hyperboloid and
/// homogeneous rigid motions (last row 0 0 1) for the plane x3 = 1.
SurfacePoint apply(const Mat3& isometry, const SurfacePoint& p);
TangentVector apply(const Mat3& isometry, const TangentVector& v);

/// Rotation by `angle` about the x3 axis, an isometry of all three surfaces.
Mat3 rotation_about_axis3(double angle);

/// Orthogonal map sending the unit vector `from` to (0, 0, 1).
Mat3 rotation_to_pole(const Vec3& from);

/// Lorentz boost with rapidity `rapidity` along the unit direction
/// (cos heading, sin heading, 0).
Mat3 lorentz_boost(double rapidity, double heading);

/// Random isometry of the surface: rotation for the sphere, rotation
/// composed with a boost of rapidity <= max_shift for the hyperboloid,
/// rotation plus translation of length <= max_shift for the plane.
Mat3 random_isometry(const SurfaceSpec& surface, std::mt19937_64& rng, double max_shift = 1.0);

}  // namespace gcurves
