#include "gcurves/descent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <random>

namespace gcurves {

namespace {

constexpr double kPi = std::numbers::pi;

double default_tol(const Curve& curve, double tol) { return tol >= 0.0 ? tol : 1e-8 * curve.length(); }

// Amount by which `points` straddle the normal line at (p, t): zero when all
// of them lie in one closed half-plane.
double straddle(const TangentVector& t, const std::vector<SurfacePoint>& points) {
  double pos = 0.0, neg = 0.0;
  for (const auto& q : points) {
    const double d = signed_distance_to_line(t, q);
    pos = std::max(pos, d);
    neg = std::max(neg, -d);
  }
  return std::min(pos, neg);
}

void fill_diameter(const Curve& curve, const std::vector<SurfacePoint>& hull, GCurveReport& r) {
  if (!curve.surface().is_sphere()) return;
  r.diameter_checked = true;
  double d = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j) d = std::max(d, distance(hull[i], hull[j]));
  r.diameter = d;
  r.diameter_ok = d < 0.5 * kPi * curve.surface().radius();
}

}  // namespace

GCurveReport is_g_curve(const Curve& curve, double tol) {
  GCurveReport r;
  r.tol = default_tol(curve, tol);
  const auto pts = curve.points();
  IncrementalHull hull(curve.surface(), canonical_frame(curve.surface(), pts));
  std::vector<SurfacePoint> verts;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (i > 0) {
      verts.clear();
      for (std::size_t k : hull.vertex_indices()) verts.push_back(hull.point(k));
      const double v = straddle(curve[i].tangent, verts);
      if (v > r.worst_violation) {
        r.worst_violation = v;
        r.worst_s = curve[i].s;
      }
    }
    hull.insert(pts[i]);
  }
  r.ok = r.worst_violation <= r.tol;
  verts.clear();
  for (std::size_t k : hull.vertex_indices()) verts.push_back(hull.point(k));
  fill_diameter(curve, verts, r);
  return r;
}

GCurveReport is_g_curve_bruteforce(const Curve& curve, double tol) {
  GCurveReport r;
  r.tol = default_tol(curve, tol);
  const auto pts = curve.points();
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const std::vector<SurfacePoint> prefix(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(i));
    const double v = straddle(curve[i].tangent, prefix);
    if (v > r.worst_violation) {
      r.worst_violation = v;
      r.worst_s = curve[i].s;
    }
  }
  r.ok = r.worst_violation <= r.tol;
  fill_diameter(curve, pts, r);
  return r;
}

PerimeterProfile perimeter_profile(const Curve& curve) {
  const auto pts = curve.points();
  IncrementalHull hull(curve.surface(), canonical_frame(curve.surface(), pts));
  PerimeterProfile out;
  out.s.reserve(pts.size());
  out.p.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    hull.insert(pts[i]);
    out.s.push_back(curve[i].s);
    out.p.push_back(hull.perimeter());
  }
  return out;
}

ProjectingSector projecting_sector(const Curve& curve, std::size_t index) {
  if (index == 0 || index >= curve.size()) throw Error(ErrorCode::Range, "sector index needs a nonempty prefix");
  return projecting_sector(curve[index].point, curve[index].tangent, curve.points_upto(index - 1));
}

ProjectingSector projecting_sector(const Curve& curve, double s) {
  const SurfacePoint vertex = curve.point_at(s);
  std::vector<SurfacePoint> prefix;
  for (const auto& c : curve.samples()) {
    if (!(c.s < s)) break;
    prefix.push_back(c.point);
  }
  return projecting_sector(vertex, curve.tangent_at(s), prefix);
}

double cos_phi_sum(const ProjectingSector& sector, const TangentVector& tangent) {
  return -std::cos(angle_between(tangent, sector.v1)) - std::cos(angle_between(tangent, sector.v2));
}

LengthBoundReport verify_length_bound(const Curve& curve, double tol, double lemma_tol, std::size_t max_sectors,
                                      double gcurve_tol) {
  LengthBoundReport r;
  r.gcurve = is_g_curve(curve, gcurve_tol);
  if (!r.gcurve.ok)
    throw Error(ErrorCode::NotGCurve, "input fails the G-curve test (violation " +
                                          std::to_string(r.gcurve.worst_violation) + ")");
  r.length = curve.length();
  r.hull_perimeter = perimeter(convex_hull(curve.points()));
  r.ok = r.length <= r.hull_perimeter + tol;

  const std::size_t n = curve.size();
  std::size_t stride = 1;
  if (max_sectors > 0 && n - 1 > max_sectors) stride = (n - 1 + max_sectors - 1) / max_sectors;
  r.min_cos_sum = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < n; i += stride) {
    const ProjectingSector sec = projecting_sector(curve, i);
    const double c = cos_phi_sum(sec, curve[i].tangent);
    r.s.push_back(curve[i].s);
    r.sector_openings.push_back(sec.opening);
    r.cos_sums.push_back(c);
    r.min_cos_sum = std::min(r.min_cos_sum, c);
    r.max_opening = std::max(r.max_opening, sec.opening);
  }
  if (r.s.empty()) r.min_cos_sum = 1.0;
  r.lemma34_ok = r.min_cos_sum >= 1.0 - lemma_tol && r.max_opening <= 0.5 * kPi + lemma_tol;
  return r;
}

PerimeterDerivativeReport check_perimeter_derivative(const Curve& curve, double rel_h) {
  PerimeterDerivativeReport r;
  r.worst_margin = std::numeric_limits<double>::infinity();
  const auto pts = curve.points();
  const Mat3 frame = canonical_frame(curve.surface(), pts);
  IncrementalHull prefix(curve.surface(), frame);
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    prefix.insert(pts[i]);
    const double ds = curve[i + 1].s - curve[i].s;
    const double sm = curve[i].s + 0.5 * ds;
    const double h = rel_h * ds;
    const SurfacePoint pm = curve.point_at(sm);
    const SurfacePoint ph = curve.point_at(sm + h);
    // Inside a geodesic piece the velocity is the direction of the piece.
    const TangentVector t = direction_to(pm, pts[i + 1]);

    IncrementalHull at_m = prefix;
    at_m.insert(pm);
    IncrementalHull at_mh = at_m;
    at_mh.insert(ph);
    const double dp = (at_mh.perimeter() - at_m.perimeter()) / h;

    const ProjectingSector sec = projecting_sector(pm, t, curve.points_upto(i));
    const double margin = dp - cos_phi_sum(sec, t);
    ++r.checked;
    if (margin < r.worst_margin) {
      r.worst_margin = margin;
      r.worst_s = sm;
    }
  }
  if (r.checked == 0) r.worst_margin = 0.0;
  return r;
}

double distance_derivative(const Curve& curve, const SurfacePoint& y, double s) {
  const SurfacePoint p = curve.point_at(s);
  const TangentVector t = curve.tangent_at(s);
  const double speed = t.norm();
  if (distance(p, y) <= 1e-14 * std::max(1.0, curve.surface().radius())) return speed;
  const double alpha = angle_between(t, direction_to(p, y));
  return speed * std::cos(kPi - alpha);
}

Curve generate_descent_curve(std::uint64_t seed, const SurfaceSpec& surface, std::size_t n_steps) {
  if (n_steps < 2) throw Error(ErrorCode::ContractViolation, "descent curve needs at least two samples");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double R = surface.radius();

  // Start point and direction.
  const Mat3 placement = random_isometry(surface, rng, 1.5 * R);
  const SurfacePoint origin(surface, Vec3(0.0, 0.0, surface.is_euclidean() ? 1.0 : R));
  const SurfacePoint start = apply(placement, origin);
  const double heading = 2.0 * kPi * unit(rng);
  const TangentVector dir0 =
      apply(placement, TangentVector(origin, Vec3(std::cos(heading), std::sin(heading), 0.0)));

  double total = 0.0;
  if (surface.is_sphere())
    total = R * (0.3 + 1.2 * unit(rng));  // below pi R / 2 keeps the diameter below it as well
  else
    total = R * (0.5 + 2.5 * unit(rng));
  const double turn_cap = std::min(0.3, 6.0 / static_cast<double>(n_steps));

  std::vector<CurveSample> samples;
  std::vector<SurfacePoint> pts;
  samples.push_back({0.0, start, dir0, 0.0});
  pts.push_back(start);
  TangentVector w = dir0;  // outgoing direction at the last vertex
  double s = 0.0;
  std::vector<double> steps(n_steps - 1);
  double acc = 0.0;
  for (auto& st : steps) acc += (st = 0.5 + unit(rng));
  for (auto& st : steps) st *= total / acc;

  for (std::size_t k = 1; k < n_steps; ++k) {
    const double ds = steps[k - 1];
    const SurfacePoint& prev = pts.back();
    const TangentVector u = geodesic_velocity(prev, w, ds);
    const SurfacePoint p = u.base();
    s += ds;

    double turn = 0.0;
    if (k + 1 < n_steps) {
      const ProjectingSector sec = [&] {
        try {
          return projecting_sector(p, u, pts);
        } catch (const Error& e) {
          throw Error(ErrorCode::Generation, std::string("sector failed: ") + e.what());
        }
      }();
      double a1 = signed_angle(u, sec.v1);
      if (a1 < 0.0) a1 += 2.0 * kPi;
      const double room = std::clamp(a1 - 0.5 * kPi, 0.0, 0.5 * kPi);
      turn = (0.05 + 0.95 * unit(rng)) * std::min(room, turn_cap);
    }
    // The turn is concentrated at the vertex; kappa records its average over the step.
    samples.push_back({s, p, u, turn / ds});
    pts.push_back(p);
    // Turn left by `turn` in the tangent plane at p.
    const TangentVector n = rotate_quarter(u);
    w = TangentVector::project(p, std::cos(turn) * u.dir() + std::sin(turn) * n.dir()).normalized();
  }
  Curve out(surface, std::move(samples));
  const GCurveReport g = is_g_curve(out);
  if (!g.ok) throw Error(ErrorCode::Generation, "generated curve failed the G-curve test");
  return out;
}

}  // namespace gcurves
