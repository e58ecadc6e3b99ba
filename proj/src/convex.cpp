#include "gcurves/convex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace gcurves {

namespace {

double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

bool left_turn(const Vec2& o, const Vec2& a, const Vec2& b) {
  return cross2(o, a, b) > kCollinearTol * (a - o).norm() * (b - o).norm();
}

void require_common_surface(const SurfaceSpec& s, const std::vector<SurfacePoint>& points) {
  for (const auto& p : points)
    if (!(p.surface() == s)) throw Error(ErrorCode::Usage, "points belong to different surfaces");
}

}  // namespace

Mat3 canonical_frame(const SurfaceSpec& surface, const std::vector<SurfacePoint>& points) {
  if (points.empty()) throw Error(ErrorCode::DegenerateInput, "empty point set");
  require_common_surface(surface, points);
  if (surface.is_euclidean()) return Mat3::Identity();

  Vec3 c = Vec3::Zero();
  for (const auto& p : points) c += p.coords();
  const double R = surface.radius();
  if (surface.is_sphere()) {
    auto fits = [&](const Vec3& dir) {
      for (const auto& p : points)
        if (dir.dot(p.coords()) <= 1e-9 * R * R) return false;
      return true;
    };
    Vec3 dir = c.norm() > 1e-12 * R * static_cast<double>(points.size()) ? c.normalized()
                                                                          : points.front().coords().normalized();
    if (!fits(dir)) {
      // Lopsided sets can leave the centroid's hemisphere while still fitting in
      // another one. Badoiu-Clarkson steps towards the farthest point approach the
      // centre of the smallest enclosing cap.
      for (int k = 1; k <= 2000 && !fits(dir); ++k) {
        const Vec3* far = &points.front().coords();
        for (const auto& p : points)
          if (p.coords().dot(dir) < far->dot(dir)) far = &p.coords();
        dir = (dir + (far->normalized() - dir) / (k + 1.0)).normalized();
      }
      if (!fits(dir)) throw Error(ErrorCode::NoConvexHull, "point set is not contained in an open hemisphere");
    }
    return rotation_to_pole(dir);
  }
  const SurfacePoint centre = SurfacePoint::project(surface, c);
  const Vec3& x = centre.coords();
  const double rapidity = std::acosh(std::max(1.0, x.z() / R));
  const double heading = std::atan2(x.y(), x.x());
  return lorentz_boost(-rapidity, heading);
}

Vec2 framed_chart(const Mat3& frame, const SurfacePoint& p) { return to_chart(apply(frame, p)).uv(); }

ConvexRegion::ConvexRegion(SurfaceSpec surface, Mat3 frame, std::vector<SurfacePoint> vertices,
                           std::vector<Vec2> chart, bool degenerate)
    : surface_(surface), frame_(frame), vertices_(std::move(vertices)), chart_(std::move(chart)),
      degenerate_(degenerate) {}

ConvexRegion convex_hull(const std::vector<SurfacePoint>& points) {
  if (points.empty()) throw Error(ErrorCode::DegenerateInput, "convex hull of an empty set");
  return convex_hull(points, canonical_frame(points.front().surface(), points));
}

ConvexRegion convex_hull(const std::vector<SurfacePoint>& points, const Mat3& frame) {
  if (points.empty()) throw Error(ErrorCode::DegenerateInput, "convex hull of an empty set");
  const SurfaceSpec surface = points.front().surface();
  require_common_surface(surface, points);

  std::vector<Vec2> uv;
  uv.reserve(points.size());
  for (const auto& p : points) uv.push_back(framed_chart(frame, p));

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return uv[a].x() < uv[b].x() || (uv[a].x() == uv[b].x() && uv[a].y() < uv[b].y());
  });
  order.erase(std::unique(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return uv[a] == uv[b]; }),
              order.end());

  std::vector<std::size_t> hull;
  if (order.size() == 1) {
    hull = order;
  } else {
    std::vector<std::size_t> h(2 * order.size());
    std::size_t k = 0;
    for (std::size_t i : order) {
      while (k >= 2 && !left_turn(uv[h[k - 2]], uv[h[k - 1]], uv[i])) --k;
      h[k++] = i;
    }
    const std::size_t lower = k + 1;
    for (auto it = order.rbegin() + 1; it != order.rend(); ++it) {
      while (k >= lower && !left_turn(uv[h[k - 2]], uv[h[k - 1]], uv[*it])) --k;
      h[k++] = *it;
    }
    h.resize(k - 1);
    hull = std::move(h);
  }

  std::vector<SurfacePoint> verts;
  std::vector<Vec2> chart;
  for (std::size_t i : hull) {
    verts.push_back(points[i]);
    chart.push_back(uv[i]);
  }
  const bool degenerate = verts.size() < 3;
  return {surface, frame, std::move(verts), std::move(chart), degenerate};
}

double perimeter(const ConvexRegion& region) {
  const auto& v = region.vertices();
  if (v.size() < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) total += distance(v[i], v[(i + 1) % v.size()]);
  return total;
}

bool contains(const ConvexRegion& region, const SurfacePoint& p, double tol) {
  if (!(p.surface() == region.surface())) throw Error(ErrorCode::Usage, "point on a different surface");
  const Vec2 q = framed_chart(region.frame(), p);
  const auto& c = region.chart_vertices();
  if (c.size() == 1) return (q - c[0]).norm() <= tol;
  if (c.size() == 2) {
    const Vec2 ab = c[1] - c[0];
    const double t = std::clamp((q - c[0]).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
    return (q - (c[0] + t * ab)).norm() <= tol;
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec2& a = c[i];
    const Vec2& b = c[(i + 1) % c.size()];
    if (cross2(a, b, q) / (b - a).norm() < -tol) return false;
  }
  return true;
}

// --- incremental hull ---------------------------------------------------------------

IncrementalHull::IncrementalHull(SurfaceSpec surface, Mat3 frame) : surface_(surface), frame_(frame) {}

bool IncrementalHull::right_of(std::size_t a, std::size_t b, const Vec2& q) const {
  const Vec2& A = chart_[a];
  const Vec2& B = chart_[b];
  return cross2(A, B, q) < -kCollinearTol * (B - A).norm() * (q - A).norm();
}

double IncrementalHull::edge(std::size_t a, std::size_t b) const { return distance(points_[a], points_[b]); }

void IncrementalHull::rebuild_from_degenerate(std::size_t q) {
  const std::size_t a = seg_a_, b = seg_b_;
  const double c = cross2(chart_[a], chart_[b], chart_[q]);
  if (c > 0.0) {
    next_[a] = b, next_[b] = q, next_[q] = a;
    prev_[b] = a, prev_[q] = b, prev_[a] = q;
  } else {
    next_[a] = q, next_[q] = b, next_[b] = a;
    prev_[q] = a, prev_[b] = q, prev_[a] = b;
  }
  perimeter_ = edge(a, b) + edge(b, q) + edge(q, a);
  ring_ = true;
  entry_ = q;
  last_ = q;
}

void IncrementalHull::insert(const SurfacePoint& p) {
  if (!(p.surface() == surface_)) throw Error(ErrorCode::Usage, "point on a different surface");
  const std::size_t q = points_.size();
  points_.push_back(p);
  chart_.push_back(framed_chart(frame_, p));
  next_.push_back(q);
  prev_.push_back(q);
  const Vec2& Q = chart_[q];

  if (q == 0) {
    seg_a_ = seg_b_ = 0;
    return;
  }
  if (!ring_) {
    if (seg_a_ == seg_b_) {
      if (chart_[seg_a_] != Q) {
        seg_b_ = q;
        perimeter_ = 2.0 * edge(seg_a_, seg_b_);
      }
      return;
    }
    const Vec2& A = chart_[seg_a_];
    const Vec2& B = chart_[seg_b_];
    const Vec2 ab = B - A;
    if (std::abs(cross2(A, B, Q)) <= kCollinearTol * ab.norm() * (Q - A).norm()) {
      const double t = (Q - A).dot(ab) / ab.squaredNorm();
      if (t < 0.0) seg_a_ = q;
      if (t > 1.0) seg_b_ = q;
      perimeter_ = 2.0 * edge(seg_a_, seg_b_);
      return;
    }
    rebuild_from_degenerate(q);
    return;
  }

  // Locate one visible edge, trying the neighbourhood of the previous insertion first.
  std::size_t start = q;
  if (right_of(last_, next_[last_], Q)) {
    start = last_;
  } else if (right_of(prev_[last_], last_, Q)) {
    start = prev_[last_];
  } else {
    std::size_t v = entry_;
    do {
      if (right_of(v, next_[v], Q)) {
        start = v;
        break;
      }
      v = next_[v];
    } while (v != entry_);
  }
  if (start == q) return;

  std::size_t a = start, b = next_[start];
  const std::size_t guard = points_.size();
  for (std::size_t n = 0; n < guard && right_of(prev_[a], a, Q); ++n) a = prev_[a];
  for (std::size_t n = 0; n < guard && right_of(b, next_[b], Q); ++n) b = next_[b];

  double removed = 0.0;
  for (std::size_t v = a; v != b; v = next_[v]) removed += edge(v, next_[v]);
  perimeter_ += edge(a, q) + edge(q, b) - removed;
  next_[a] = q;
  prev_[q] = a;
  next_[q] = b;
  prev_[b] = q;
  entry_ = q;
  last_ = q;
}

std::vector<std::size_t> IncrementalHull::vertex_indices() const {
  std::vector<std::size_t> out;
  if (points_.empty()) return out;
  if (!ring_) {
    out.push_back(seg_a_);
    if (seg_b_ != seg_a_) out.push_back(seg_b_);
    return out;
  }
  std::size_t v = entry_;
  do {
    out.push_back(v);
    v = next_[v];
  } while (v != entry_);
  return out;
}

// --- projecting sector --------------------------------------------------------------

ProjectingSector projecting_sector(const SurfacePoint& vertex, const TangentVector& reference,
                                   const std::vector<SurfacePoint>& points) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const double R = vertex.surface().radius();
  std::vector<std::pair<double, TangentVector>> dirs;
  for (const auto& p : points) {
    if (distance(vertex, p) <= 1e-15 * std::max(1.0, R)) continue;
    const TangentVector d = direction_to(vertex, p);
    dirs.emplace_back(signed_angle(reference, d), d);
  }
  if (dirs.empty()) throw Error(ErrorCode::ContractViolation, "projecting sector of an empty prefix");
  std::stable_sort(dirs.begin(), dirs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  // The sector is the complement of the largest angular gap.
  const std::size_t n = dirs.size();
  std::size_t gap_end = 0;  // index of the direction following the largest gap
  double best_gap = dirs[0].first + kTwoPi - dirs[n - 1].first;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double g = dirs[i + 1].first - dirs[i].first;
    if (g > best_gap) {
      best_gap = g;
      gap_end = i + 1;
    }
  }
  if (best_gap < std::numbers::pi - 1e-12)
    throw Error(ErrorCode::NotGCurve, "prefix does not fit in a half-plane at the vertex");
  const TangentVector& v1 = dirs[gap_end].second;
  const TangentVector& v2 = dirs[(gap_end + n - 1) % n].second;
  const double opening = std::clamp(kTwoPi - best_gap, 0.0, std::numbers::pi);
  return {vertex, v1, v2, opening};
}

}  // namespace gcurves
