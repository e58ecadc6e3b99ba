#include "gcurves/involute.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gcurves/interpolation.hpp"

namespace gcurves {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double x) {
  x = std::remainder(x, 2.0 * kPi);
  if (x <= -kPi) x += 2.0 * kPi;
  return x;
}

Vec3 involute_coords(const SurfaceSpec& sf, double s, const Vec3& x, const Vec3& t) {
  const double R = sf.radius();
  switch (sf.kind()) {
    case SurfaceKind::Sphere: return std::cos(s / R) * x - R * std::sin(s / R) * t;
    case SurfaceKind::Hyperbolic: return std::cosh(s / R) * x - R * std::sinh(s / R) * t;
    case SurfaceKind::Euclidean: return x - s * t;
  }
  return x;
}

}  // namespace

FrenetFrame frenet_data(const Curve& curve, std::size_t i) {
  if (curve.size() < 3 || i == 0 || i + 1 >= curve.size())
    throw Error(ErrorCode::Range, "Frenet data needs a sample with two neighbours");
  const double h1 = curve[i].s - curve[i - 1].s;
  const double h2 = curve[i + 1].s - curve[i].s;
  const Vec3 dt = -h2 / (h1 * (h1 + h2)) * curve[i - 1].tangent.dir() + (h2 - h1) / (h1 * h2) * curve[i].tangent.dir() +
                  h1 / (h2 * (h1 + h2)) * curve[i + 1].tangent.dir();
  const TangentVector& t = curve[i].tangent;
  const TangentVector n = rotate_quarter(t);
  return {t, n, curve.surface().inner(dt, n.dir())};
}

FrenetFrame frenet_data(const Curve& curve, double s) {
  if (curve.size() < 3 || !(s > curve.s_begin()) || !(s < curve.s_end()))
    throw Error(ErrorCode::Range, "Frenet data needs a sample with two neighbours");
  std::size_t i = curve.segment_index(s);
  if (i + 1 < curve.size() && std::abs(curve[i + 1].s - s) < std::abs(s - curve[i].s)) ++i;
  i = std::clamp<std::size_t>(i, 1, curve.size() - 2);
  return frenet_data(curve, i);
}

double involute_speed(const SurfaceSpec& surface, double s, double kappa) {
  const double R = surface.radius();
  switch (surface.kind()) {
    case SurfaceKind::Sphere: return R * std::sin(s / R) * kappa;
    case SurfaceKind::Hyperbolic: return R * std::sinh(s / R) * kappa;
    case SurfaceKind::Euclidean: return s * kappa;
  }
  return 0.0;
}

double involute_curvature(const SurfaceSpec& surface, double s) {
  if (s == 0.0) return std::numeric_limits<double>::infinity();
  const double R = surface.radius();
  switch (surface.kind()) {
    case SurfaceKind::Sphere: return 1.0 / (R * std::tan(s / R));
    case SurfaceKind::Hyperbolic: return 1.0 / (R * std::tanh(s / R));
    case SurfaceKind::Euclidean: return 1.0 / s;
  }
  return 0.0;
}

std::vector<SurfacePoint> involute_points(const Curve& curve) {
  const SurfaceSpec& sf = curve.surface();
  std::vector<SurfacePoint> out;
  out.reserve(curve.size());
  for (const auto& c : curve.samples())
    out.push_back(SurfacePoint::project(sf, involute_coords(sf, c.s, c.point.coords(), c.tangent.dir())));
  return out;
}

SurfacePoint involute_point(double s, const SurfacePoint& x, const TangentVector& t) {
  return SurfacePoint::project(x.surface(), involute_coords(x.surface(), s, x.coords(), t.dir()));
}

Curve involute(const Curve& curve, double s_tilde_begin) {
  const SurfaceSpec& sf = curve.surface();
  if (sf.is_sphere() && curve.s_end() >= 0.5 * kPi * sf.radius())
    throw Error(ErrorCode::Range, "sphere involutes are only handled for s < pi R / 2");
  for (const auto& c : curve.samples())
    if (c.s > 0.0 && !(c.kappa > 0.0))
      throw Error(ErrorCode::Monotonicity, "involute arc length needs kappa > 0 (s = " + std::to_string(c.s) + ")");

  const auto pts = involute_points(curve);
  std::vector<CurveSample> out;
  out.reserve(curve.size());
  double st = s_tilde_begin;
  double prev_speed = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const CurveSample& c = curve[i];
    const double speed = involute_speed(sf, c.s, c.kappa);
    if (i > 0) st += 0.5 * (prev_speed + speed) * (c.s - curve[i - 1].s);
    prev_speed = speed;
    const TangentVector n = rotate_quarter(c.tangent);
    const TangentVector t = TangentVector::project(pts[i], -n.dir()).normalized();
    out.push_back({st, pts[i], t, involute_curvature(sf, c.s)});
  }
  return {sf, std::move(out)};
}

SystemResidual system_residual(const FunctionTable& kappa, const FunctionTable& tau, const SurfaceSpec& surface) {
  if (tau.s.size() != tau.value.size() || kappa.s.size() != kappa.value.size() || tau.s.size() < 3 ||
      kappa.s.size() < 2)
    throw Error(ErrorCode::ContractViolation, "malformed function tables");
  for (std::size_t i = 0; i + 1 < tau.value.size(); ++i)
    if (!(tau.value[i + 1] > tau.value[i])) throw Error(ErrorCode::ContractViolation, "tau must increase strictly");
  std::vector<double> inv(kappa.value.size());
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (!(kappa.value[i] > 0.0)) throw Error(ErrorCode::ContractViolation, "kappa must be positive");
    inv[i] = 1.0 / kappa.value[i];
  }
  const MonotoneCubic inv_kappa(kappa.s, inv);
  const double lo = kappa.s.front(), hi = kappa.s.back();

  SystemResidual r;
  for (std::size_t j = 1; j + 1 < tau.s.size(); ++j) {
    const double s = tau.s[j];
    if (!(s > 0.0) || s < lo || s > hi || tau.value[j] < lo || tau.value[j] > hi) continue;
    const double h1 = s - tau.s[j - 1], h2 = tau.s[j + 1] - s;
    const double tau_dot = -h2 / (h1 * (h1 + h2)) * tau.value[j - 1] + (h2 - h1) / (h1 * h2) * tau.value[j] +
                           h1 / (h2 * (h1 + h2)) * tau.value[j + 1];
    const double k_s = 1.0 / inv_kappa(s);
    const double k_tau = 1.0 / inv_kappa(tau.value[j]);
    r.tau_dot = std::max(r.tau_dot, std::abs(tau_dot / involute_speed(surface, s, k_s) - 1.0));
    r.kappa_tau = std::max(r.kappa_tau, std::abs(k_tau / involute_curvature(surface, s) - 1.0));
    ++r.nodes;
  }
  return r;
}

Curve dilate(const Curve& curve, double lambda, bool truncate) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::ContractViolation, "dilation factor must be positive");
  const SurfaceSpec& sf = curve.surface();
  if (sf.is_euclidean()) throw Error(ErrorCode::Usage, "dilation acts on the sphere or the hyperboloid");
  const SurfaceSpec big = sf.is_sphere() ? SurfaceSpec::sphere(lambda * sf.radius())
                                         : SurfaceSpec::hyperbolic(lambda * sf.radius());
  const double limit = curve.s_end() * (1.0 + 1e-12);
  std::vector<CurveSample> out;
  for (const auto& c : curve.samples()) {
    const double s = lambda * c.s;
    if (truncate && s > limit) break;
    const SurfacePoint p = SurfacePoint::project(big, lambda * c.point.coords());
    out.push_back({s, p, TangentVector::project(p, c.tangent.dir()).normalized(), c.kappa / lambda});
  }
  if (out.empty()) throw Error(ErrorCode::DegenerateInput, "dilation left no samples");
  return {big, std::move(out)};
}

Curve limit_spiral(double a, double L, std::size_t n, double s_min, double phase) {
  if (!(a > 1.0) || !(L > 0.0) || n < 2) throw Error(ErrorCode::ContractViolation, "limit spiral needs a > 1, L > 0");
  if (s_min < 0.0) s_min = 1e-9 * L;
  if (!(s_min > 0.0 && s_min < L)) throw Error(ErrorCode::ContractViolation, "limit spiral needs 0 < s_min < L");
  const SurfaceSpec plane = SurfaceSpec::euclidean();
  const double c = std::sqrt(1.0 + a * a);
  const double ratio = std::log(L / s_min);
  std::vector<CurveSample> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = i + 1 == n ? L : s_min * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n - 1));
    const double r = s / c;
    const double psi = a * std::log(r) + phase;
    const Vec3 er(std::cos(psi), std::sin(psi), 0.0), ep(-std::sin(psi), std::cos(psi), 0.0);
    const SurfacePoint p(plane, Vec3(r * er.x(), r * er.y(), 1.0));
    out.push_back({s, p, TangentVector(p, (er + a * ep) / c), a / s});
  }
  return {plane, std::move(out)};
}

Mat3 FundamentalPair::matrix() const {
  Mat3 m = rotation_about_axis3(rotation_angle);
  if (reflect) m = m * Eigen::Vector3d(1.0, -1.0, 1.0).asDiagonal();
  return m;
}

FundamentalPair fundamental_pair(const Curve& curve, double max_residual) {
  const SurfaceSpec& sf = curve.surface();
  const std::size_t n = curve.size();
  if (n < 10) throw Error(ErrorCode::DegenerateInput, "fundamental pair needs at least 10 samples");

  std::vector<double> speed(n);
  for (std::size_t i = 0; i < n; ++i) speed[i] = involute_speed(sf, curve[i].s, curve[i].kappa);

  // Least-squares line through (s, tau') on the first tenth, read at s = 0.
  const std::size_t m = std::max<std::size_t>(3, n / 10);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += curve[i].s, sy += speed[i];
    sxx += curve[i].s * curve[i].s, sxy += curve[i].s * speed[i];
  }
  const double md = static_cast<double>(m);
  const double den = md * sxx - sx * sx;
  const double slope = den > 0.0 ? (md * sxy - sx * sy) / den : 0.0;
  FundamentalPair fp;
  fp.a = (sy - slope * sx) / md;

  std::vector<double> tau(n);
  tau[0] = fp.a * curve[0].s;
  for (std::size_t i = 1; i < n; ++i) tau[i] = tau[i - 1] + 0.5 * (speed[i - 1] + speed[i]) * (curve[i].s - curve[i - 1].s);

  const auto inv = involute_points(curve);
  std::vector<Vec2> p, q;
  for (std::size_t i = 0; i < n; ++i) {
    if (tau[i] < curve.s_begin() || tau[i] > curve.s_end()) continue;
    p.push_back(to_chart(curve.point_at(tau[i])).uv());
    q.push_back(to_chart(inv[i]).uv());
  }
  fp.matched = p.size();
  if (p.size() < 3) throw Error(ErrorCode::NotAlmostSelfInvolute, "too few matched samples for the congruence fit");

  double qq = 0.0;
  for (const auto& v : q) qq += v.squaredNorm();
  auto fit = [&](bool reflect, double& angle) {
    double c = 0.0, s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Vec2 pi(p[i].x(), reflect ? -p[i].y() : p[i].y());
      c += pi.dot(q[i]);
      s += pi.x() * q[i].y() - pi.y() * q[i].x();
    }
    angle = std::atan2(s, c);
    const Eigen::Rotation2Dd rot(angle);
    double err = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Vec2 pi(p[i].x(), reflect ? -p[i].y() : p[i].y());
      err += (rot * pi - q[i]).squaredNorm();
    }
    return std::sqrt(err / std::max(qq, std::numeric_limits<double>::min()));
  };
  double angle_plain = 0.0, angle_refl = 0.0;
  const double res_plain = fit(false, angle_plain);
  const double res_refl = fit(true, angle_refl);
  if (res_refl < res_plain - 1e-12) {
    fp.reflect = true;
    fp.rotation_angle = wrap_angle(angle_refl);
    fp.residual = res_refl;
  } else {
    fp.rotation_angle = wrap_angle(angle_plain);
    fp.residual = res_plain;
  }
  if (!(fp.a > 1.0))
    throw Error(ErrorCode::NotAlmostSelfInvolute, "extrapolated a = " + std::to_string(fp.a) + " is not above 1");
  if (fp.residual > max_residual)
    throw Error(ErrorCode::NotAlmostSelfInvolute, "congruence residual " + std::to_string(fp.residual));
  return fp;
}

}  // namespace gcurves
