#include "gcurves/surface.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <functional>
#include <numbers>

namespace gcurves {

namespace {

constexpr double kPi = std::numbers::pi;

const Vec3 kE3(0.0, 0.0, 1.0);

double scale2(const SurfaceSpec& s) { return std::max(1.0, s.radius() * s.radius()); }

void require_same_surface(const SurfaceSpec& a, const SurfaceSpec& b) {
  if (!(a == b)) throw Error(ErrorCode::Usage, "points belong to different surfaces");
}

void require_unit(const TangentVector& v, const char* what) {
  if (std::abs(inner(v, v) - 1.0) > 1e-9)
    throw Error(ErrorCode::ContractViolation, std::string(what) + " is not a unit vector");
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ContractViolation: return "contract violation";
    case ErrorCode::Range: return "range error";
    case ErrorCode::DegenerateInput: return "degenerate input";
    case ErrorCode::OutOfChart: return "out of chart";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::Usage: return "usage error";
    case ErrorCode::NoConvexHull: return "no convex hull";
    case ErrorCode::NotGCurve: return "not a G-curve";
    case ErrorCode::Monotonicity: return "monotonicity error";
    case ErrorCode::ParameterSearch: return "parameter search error";
    case ErrorCode::IterationDiagnostic: return "iteration diagnostic";
    case ErrorCode::Convergence: return "convergence error";
    case ErrorCode::Resolution: return "resolution error";
    case ErrorCode::NotAlmostSelfInvolute: return "not almost self-involute";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Generation: return "generation error";
    case ErrorCode::Io: return "I/O error";
  }
  return "error";
}

// --- SurfaceSpec ------------------------------------------------------------------

SurfaceSpec::SurfaceSpec(SurfaceKind kind, double radius) : kind_(kind), radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw Error(ErrorCode::ContractViolation, "surface radius must be positive");
}

SurfaceSpec SurfaceSpec::sphere(double radius) { return {SurfaceKind::Sphere, radius}; }
SurfaceSpec SurfaceSpec::euclidean() { return {SurfaceKind::Euclidean, 1.0}; }
SurfaceSpec SurfaceSpec::hyperbolic(double radius) { return {SurfaceKind::Hyperbolic, radius}; }

double SurfaceSpec::curvature() const {
  switch (kind_) {
    case SurfaceKind::Sphere: return 1.0 / (radius_ * radius_);
    case SurfaceKind::Euclidean: return 0.0;
    case SurfaceKind::Hyperbolic: return -1.0 / (radius_ * radius_);
  }
  return 0.0;
}

double SurfaceSpec::inner(const Vec3& a, const Vec3& b) const {
  if (kind_ == SurfaceKind::Hyperbolic) return a.x() * b.x() + a.y() * b.y() - a.z() * b.z();
  return a.dot(b);
}

const char* to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Sphere: return "sphere";
    case SurfaceKind::Euclidean: return "euclidean";
    case SurfaceKind::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

// --- SurfacePoint -------------------------------------------------------------------

SurfacePoint::SurfacePoint(const SurfaceSpec& surface, const Vec3& coords) : surface_(surface), x_(coords) {
  if (!coords.allFinite()) throw Error(ErrorCode::ContractViolation, "non-finite point coordinates");
  const double r2 = surface.radius() * surface.radius();
  switch (surface.kind()) {
    case SurfaceKind::Sphere:
      if (std::abs(coords.squaredNorm() - r2) > kEmbeddingTol * scale2(surface))
        throw Error(ErrorCode::ContractViolation, "point is not on the sphere");
      break;
    case SurfaceKind::Hyperbolic:
      if (coords.z() <= 0.0 ||
          std::abs(surface.inner(coords, coords) + r2) > kEmbeddingTol * std::max(scale2(surface), coords.squaredNorm()))
        throw Error(ErrorCode::ContractViolation, "point is not on the hyperboloid");
      break;
    case SurfaceKind::Euclidean:
      if (std::abs(coords.z() - 1.0) > kEmbeddingTol)
        throw Error(ErrorCode::ContractViolation, "point is not on the plane x3 = 1");
      break;
  }
  // Coordinates already on the surface to round-off are kept bit-for-bit, so
  // printed and re-read samples compare equal.
  constexpr double kSnapTol = 16.0 * std::numeric_limits<double>::epsilon();
  const double defect = surface.is_sphere()      ? std::abs(coords.squaredNorm() - r2) / r2
                        : surface.is_hyperbolic() ? std::abs(surface.inner(coords, coords) + r2) /
                                                        std::max(r2, coords.squaredNorm())
                                                  : std::abs(coords.z() - 1.0);
  if (defect > kSnapTol) x_ = project(surface, coords).x_;
}

SurfacePoint SurfacePoint::project(const SurfaceSpec& surface, const Vec3& coords) {
  const double R = surface.radius();
  switch (surface.kind()) {
    case SurfaceKind::Sphere: {
      const double n = coords.norm();
      if (!(n > 0.0)) throw Error(ErrorCode::DegenerateInput, "cannot project the origin onto the sphere");
      return {Unchecked{}, surface, coords * (R / n)};
    }
    case SurfaceKind::Hyperbolic: {
      const double q = -surface.inner(coords, coords);
      if (!(q > 0.0) || coords.z() <= 0.0)
        throw Error(ErrorCode::DegenerateInput, "cannot project a non-timelike vector onto the hyperboloid");
      return {Unchecked{}, surface, coords * (R / std::sqrt(q))};
    }
    case SurfaceKind::Euclidean:
      return {Unchecked{}, surface, Vec3(coords.x(), coords.y(), 1.0)};
  }
  return {Unchecked{}, surface, coords};
}

// --- TangentVector --------------------------------------------------------------------

namespace {

// Component of v along the surface normal at x, in the ambient form.
double normal_component(const SurfacePoint& p, const Vec3& v) {
  const SurfaceSpec& s = p.surface();
  if (s.is_euclidean()) return v.z();
  return s.inner(p.coords(), v) / s.radius();
}

}  // namespace

TangentVector::TangentVector(const SurfacePoint& base, const Vec3& dir) : base_(base), v_(dir) {
  if (!dir.allFinite()) throw Error(ErrorCode::ContractViolation, "non-finite tangent vector");
  if (std::abs(normal_component(base, dir)) > kEmbeddingTol * std::max(1.0, dir.norm()))
    throw Error(ErrorCode::ContractViolation, "vector is not tangent to the surface");
  if (std::abs(normal_component(base, dir)) > 16.0 * std::numeric_limits<double>::epsilon() *
                                                  std::max(1.0, dir.norm()) * std::max(1.0, base.coords().norm()))
    v_ = project(base, dir).v_;
}

TangentVector TangentVector::project(const SurfacePoint& base, const Vec3& dir) {
  const SurfaceSpec& s = base.surface();
  const Vec3& x = base.coords();
  switch (s.kind()) {
    case SurfaceKind::Sphere:
      return {Unchecked{}, base, dir - x * (x.dot(dir) / x.squaredNorm())};
    case SurfaceKind::Hyperbolic: {
      // <x, x>_L = -R^2, so v - <x,v>_L x / <x,x>_L is Lorentz-orthogonal to x.
      const double xx = s.inner(x, x);
      return {Unchecked{}, base, dir - x * (s.inner(x, dir) / xx)};
    }
    case SurfaceKind::Euclidean:
      return {Unchecked{}, base, Vec3(dir.x(), dir.y(), 0.0)};
  }
  return {Unchecked{}, base, dir};
}

double TangentVector::norm() const {
  const double q = surface().inner(v_, v_);
  return std::sqrt(std::max(0.0, q));
}

TangentVector TangentVector::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw Error(ErrorCode::ContractViolation, "cannot normalize a zero tangent vector");
  return {Unchecked{}, base_, v_ / n};
}

TangentVector TangentVector::scaled(double factor) const { return {Unchecked{}, base_, v_ * factor}; }

ChartPoint::ChartPoint(const SurfaceSpec& surface, const Vec2& uv) : surface_(surface), uv_(uv) {
  if (!uv.allFinite()) throw Error(ErrorCode::OutOfChart, "non-finite chart coordinates");
  if (surface.is_hyperbolic() && uv.squaredNorm() >= 1.0)
    throw Error(ErrorCode::OutOfChart, "chart point outside the Klein disc");
}

// --- metric -------------------------------------------------------------------------

double inner(const TangentVector& v, const TangentVector& w) { return v.surface().inner(v.dir(), w.dir()); }

double area_form(const TangentVector& v, const TangentVector& w) {
  const SurfaceSpec& s = v.surface();
  const Vec3& x = v.base().coords();
  const double det = x.dot(v.dir().cross(w.dir()));
  return s.is_euclidean() ? det : det / s.radius();
}

TangentVector rotate_quarter(const TangentVector& t) {
  const SurfaceSpec& s = t.surface();
  const Vec3& x = t.base().coords();
  Vec3 n;
  switch (s.kind()) {
    case SurfaceKind::Sphere: n = x.cross(t.dir()) / s.radius(); break;
    case SurfaceKind::Hyperbolic: {
      const Vec3 c = x.cross(t.dir()) / s.radius();
      n = Vec3(c.x(), c.y(), -c.z());
      break;
    }
    case SurfaceKind::Euclidean: n = kE3.cross(t.dir()); break;
  }
  return TangentVector::project(t.base(), n);
}

// --- geodesics ----------------------------------------------------------------------

namespace {

void check_geodesic_args(const SurfacePoint& start, const TangentVector& dir, double s) {
  require_same_surface(start.surface(), dir.surface());
  if ((start.coords() - dir.base().coords()).norm() > 1e-9 * std::max(1.0, start.surface().radius()))
    throw Error(ErrorCode::Usage, "direction is not based at the start point");
  require_unit(dir, "geodesic direction");
  if (start.surface().is_sphere() && std::abs(s) >= kPi * start.surface().radius())
    throw Error(ErrorCode::Range, "geodesic parameter exceeds the sphere's injectivity range");
}

}  // namespace

SurfacePoint geodesic_point(const SurfacePoint& start, const TangentVector& dir, double s) {
  check_geodesic_args(start, dir, s);
  const SurfaceSpec& sf = start.surface();
  const double R = sf.radius();
  const Vec3& x = start.coords();
  const Vec3& v = dir.dir();
  switch (sf.kind()) {
    case SurfaceKind::Sphere:
      return SurfacePoint::project(sf, std::cos(s / R) * x + std::sin(s / R) * R * v);
    case SurfaceKind::Hyperbolic:
      return SurfacePoint::project(sf, std::cosh(s / R) * x + std::sinh(s / R) * R * v);
    case SurfaceKind::Euclidean:
      return SurfacePoint::project(sf, x + s * v);
  }
  return start;
}

TangentVector geodesic_velocity(const SurfacePoint& start, const TangentVector& dir, double s) {
  const SurfacePoint p = geodesic_point(start, dir, s);
  const SurfaceSpec& sf = start.surface();
  const double R = sf.radius();
  const Vec3& x = start.coords();
  const Vec3& v = dir.dir();
  Vec3 w;
  switch (sf.kind()) {
    case SurfaceKind::Sphere: w = -std::sin(s / R) * x / R + std::cos(s / R) * v; break;
    case SurfaceKind::Hyperbolic: w = std::sinh(s / R) * x / R + std::cosh(s / R) * v; break;
    case SurfaceKind::Euclidean: w = v; break;
  }
  return TangentVector::project(p, w).normalized();
}

double distance(const SurfacePoint& p, const SurfacePoint& q) {
  require_same_surface(p.surface(), q.surface());
  const SurfaceSpec& s = p.surface();
  const double R = s.radius();
  const Vec3& x = p.coords();
  const Vec3& y = q.coords();
  switch (s.kind()) {
    case SurfaceKind::Sphere: {
      const double c = x.cross(y).norm();
      const double d = x.dot(y);
      if (c <= 1e-12 * R * R && d < 0.0) throw Error(ErrorCode::DegenerateInput, "antipodal points");
      return R * std::atan2(c, d);
    }
    case SurfaceKind::Hyperbolic: {
      // Chord form 2R asinh(|x - y|_L / 2R) is well conditioned for close
      // points; acosh is used for far ones, where the chord form cancels.
      const Vec3 diff = x - y;
      const double chord2 = s.inner(diff, diff);
      if (chord2 < R * R) return 2.0 * R * std::asinh(std::sqrt(std::max(0.0, chord2)) / (2.0 * R));
      return R * std::acosh(std::max(1.0, -s.inner(x, y) / (R * R)));
    }
    case SurfaceKind::Euclidean:
      return (x - y).norm();
  }
  return 0.0;
}

TangentVector direction_to(const SurfacePoint& p, const SurfacePoint& q) {
  require_same_surface(p.surface(), q.surface());
  const SurfaceSpec& s = p.surface();
  const double R = s.radius();
  const Vec3& x = p.coords();
  const Vec3& y = q.coords();
  Vec3 u;
  switch (s.kind()) {
    case SurfaceKind::Sphere:
      if (x.cross(y).norm() <= 1e-12 * R * R && x.dot(y) < 0.0)
        throw Error(ErrorCode::DegenerateInput, "antipodal points");
      u = y - x * (x.dot(y) / (R * R));
      break;
    case SurfaceKind::Hyperbolic: u = y + x * (s.inner(x, y) / (R * R)); break;
    case SurfaceKind::Euclidean: u = y - x; break;
  }
  const TangentVector t = TangentVector::project(p, u);
  if (!(t.norm() > 0.0)) throw Error(ErrorCode::DegenerateInput, "direction between coincident points");
  return t.normalized();
}

double angle_between(const TangentVector& v, const TangentVector& w) {
  if (!(v.norm() > 0.0) || !(w.norm() > 0.0))
    throw Error(ErrorCode::ContractViolation, "angle with a zero vector");
  return std::atan2(std::abs(area_form(v, w)), inner(v, w));
}

double signed_angle(const TangentVector& v, const TangentVector& w) {
  if (!(v.norm() > 0.0) || !(w.norm() > 0.0))
    throw Error(ErrorCode::ContractViolation, "angle with a zero vector");
  return std::atan2(area_form(v, w), inner(v, w));
}

double signed_distance_to_line(const TangentVector& line_normal, const SurfacePoint& p) {
  require_same_surface(line_normal.surface(), p.surface());
  const SurfaceSpec& s = p.surface();
  const double R = s.radius();
  const Vec3& m = line_normal.dir();
  switch (s.kind()) {
    case SurfaceKind::Sphere: return R * std::asin(std::clamp(p.coords().dot(m) / R, -1.0, 1.0));
    case SurfaceKind::Hyperbolic: return R * std::asinh(s.inner(p.coords(), m) / R);
    case SurfaceKind::Euclidean: return (p.coords() - line_normal.base().coords()).dot(m);
  }
  return 0.0;
}

// --- charts -------------------------------------------------------------------------

ChartPoint to_chart(const SurfacePoint& p) {
  const SurfaceSpec& s = p.surface();
  const Vec3& x = p.coords();
  if (s.is_euclidean()) return {s, Vec2(x.x(), x.y())};
  if (s.is_sphere() && !(x.z() > 0.0))
    throw Error(ErrorCode::OutOfChart, "sphere point outside the open upper hemisphere");
  const Vec2 uv(x.x() / x.z(), x.y() / x.z());
  if (s.is_hyperbolic() && uv.squaredNorm() >= 1.0)
    throw Error(ErrorCode::OutOfChart, "point too far out for the Klein chart");
  return {s, uv};
}

SurfacePoint from_chart(const ChartPoint& c) {
  const SurfaceSpec& s = c.surface();
  const Vec2& u = c.uv();
  const Vec3 h(u.x(), u.y(), 1.0);
  switch (s.kind()) {
    case SurfaceKind::Sphere: return SurfacePoint::project(s, h * (s.radius() / std::sqrt(1.0 + u.squaredNorm())));
    case SurfaceKind::Hyperbolic: {
      const double q = 1.0 - u.squaredNorm();
      if (!(q > 0.0)) throw Error(ErrorCode::OutOfChart, "chart point outside the Klein disc");
      return SurfacePoint::project(s, h * (s.radius() / std::sqrt(q)));
    }
    case SurfaceKind::Euclidean: return SurfacePoint::project(s, h);
  }
  return SurfacePoint::project(s, h);
}

Vec2 chart_direction(const TangentVector& v) {
  const SurfaceSpec& s = v.surface();
  const Vec3& x = v.base().coords();
  const Vec3& d = v.dir();
  if (s.is_euclidean()) return {d.x(), d.y()};
  if (!(x.z() > 0.0)) throw Error(ErrorCode::OutOfChart, "base point outside the chart");
  return {d.x() / x.z() - x.x() * d.z() / (x.z() * x.z()), d.y() / x.z() - x.y() * d.z() / (x.z() * x.z())};
}

TangentVector from_chart_direction(const SurfacePoint& base, const Vec2& d) {
  const SurfaceSpec& s = base.surface();
  const double R = s.radius();
  if (s.is_euclidean()) return TangentVector::project(base, Vec3(d.x(), d.y(), 0.0));
  const Vec2 u = to_chart(base).uv();
  const Vec3 h(u.x(), u.y(), 1.0);
  const Vec3 dd(d.x(), d.y(), 0.0);
  const double ud = u.dot(d);
  Vec3 w;
  if (s.is_sphere()) {
    const double rho = std::sqrt(1.0 + u.squaredNorm());
    w = R * (dd / rho - h * (ud / (rho * rho * rho)));
  } else {
    const double sigma = std::sqrt(1.0 - u.squaredNorm());
    w = R * (dd / sigma + h * (ud / (sigma * sigma * sigma)));
  }
  return TangentVector::project(base, w);
}

Mat2 chart_metric_at(const ChartPoint& c) {
  const SurfaceSpec& s = c.surface();
  const Vec2& u = c.uv();
  const double R2 = s.radius() * s.radius();
  switch (s.kind()) {
    case SurfaceKind::Euclidean: return Mat2::Identity();
    case SurfaceKind::Sphere: {
      const double rho2 = 1.0 + u.squaredNorm();
      return R2 / (rho2 * rho2) * (rho2 * Mat2::Identity() - u * u.transpose());
    }
    case SurfaceKind::Hyperbolic: {
      const double sig2 = 1.0 - u.squaredNorm();
      return R2 / (sig2 * sig2) * (sig2 * Mat2::Identity() + u * u.transpose());
    }
  }
  return Mat2::Identity();
}

// --- trigonometry -------------------------------------------------------------------

TriangleAngles triangle_solve(const SurfaceSpec& surface, double a, double b, double c) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0) || !(a < b + c && b < a + c && c < a + b))
    throw Error(ErrorCode::Domain, "side lengths violate the triangle inequality");
  const double R = surface.radius();
  if (surface.is_sphere() && !(a + b + c < 2.0 * kPi * R))
    throw Error(ErrorCode::Domain, "spherical triangle perimeter must be below 2 pi R");

  // Half-angle formulas: tan(alpha/2)^2 = f(p-b) f(p-c) / (f(p) f(p-a)) with
  // f = sin, sinh or identity. Well conditioned for thin and fat triangles.
  std::function<double(double)> f;
  double scale = 1.0;
  switch (surface.kind()) {
    case SurfaceKind::Sphere: f = [](double x) { return std::sin(x); }; scale = R; break;
    case SurfaceKind::Hyperbolic: f = [](double x) { return std::sinh(x); }; scale = R; break;
    case SurfaceKind::Euclidean: f = [](double x) { return x; }; break;
  }
  const double A = a / scale, B = b / scale, C = c / scale;
  const double p = 0.5 * (A + B + C);
  const double fp = f(p), fa = f(p - A), fb = f(p - B), fc = f(p - C);
  auto half = [&](double num1, double num2, double den) { return 2.0 * std::atan(std::sqrt(num1 * num2 / (fp * den))); };
  return {half(fb, fc, fa), half(fa, fc, fb), half(fa, fb, fc)};
}

// --- isometries ---------------------------------------------------------------------

SurfacePoint apply(const Mat3& isometry, const SurfacePoint& p) {
  return SurfacePoint::project(p.surface(), isometry * p.coords());
}

TangentVector apply(const Mat3& isometry, const TangentVector& v) {
  return TangentVector::project(apply(isometry, v.base()), isometry * v.dir());
}

Mat3 rotation_about_axis3(double angle) {
  Mat3 m;
  m << std::cos(angle), -std::sin(angle), 0.0, std::sin(angle), std::cos(angle), 0.0, 0.0, 0.0, 1.0;
  return m;
}

Mat3 rotation_to_pole(const Vec3& from) {
  const Eigen::Quaterniond q = Eigen::Quaterniond::FromTwoVectors(from.normalized(), kE3);
  return q.toRotationMatrix();
}

Mat3 lorentz_boost(double rapidity, double heading) {
  Mat3 boost;
  boost << std::cosh(rapidity), 0.0, std::sinh(rapidity), 0.0, 1.0, 0.0, std::sinh(rapidity), 0.0, std::cosh(rapidity);
  return rotation_about_axis3(heading) * boost * rotation_about_axis3(-heading);
}

Mat3 random_isometry(const SurfaceSpec& surface, std::mt19937_64& rng, double max_shift) {
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (surface.kind()) {
    case SurfaceKind::Sphere: {
      std::normal_distribution<double> g;
      Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
      q.normalize();
      return q.toRotationMatrix();
    }
    case SurfaceKind::Hyperbolic:
      return lorentz_boost(max_shift * unit(rng) / surface.radius(), angle(rng)) * rotation_about_axis3(angle(rng));
    case SurfaceKind::Euclidean: {
      Mat3 m = rotation_about_axis3(angle(rng));
      const double r = max_shift * unit(rng), h = angle(rng);
      m(0, 2) = r * std::cos(h);
      m(1, 2) = r * std::sin(h);
      return m;
    }
  }
  return Mat3::Identity();
}

}  // namespace gcurves
