#pragma once

#include <vector>

#include "gcurves/surface.hpp"

namespace gcurves {

/// Isometry moving a point set to a position where the chart is well
/// conditioned: the normalized centroid goes to (0, 0, R) on the sphere and
/// hyperboloid, the plane is left alone. When the centroid's hemisphere misses
/// a sphere point, the centre of an approximate smallest enclosing cap is used
/// instead; sets still not inside the open upper hemisphere afterwards
/// (x3 <= 1e-9 R) raise no-convex-hull.
Mat3 canonical_frame(const SurfaceSpec& surface, const std::vector<SurfacePoint>& points);

/// Chart image of p after applying `frame`.
Vec2 framed_chart(const Mat3& frame, const SurfacePoint& p);

class ConvexRegion {
 public:
  ConvexRegion(SurfaceSpec surface, Mat3 frame, std::vector<SurfacePoint> vertices, std::vector<Vec2> chart,
               bool degenerate);

  const SurfaceSpec& surface() const { return surface_; }
  /// Vertices in counterclockwise chart order, as given (unframed) points.
  const std::vector<SurfacePoint>& vertices() const { return vertices_; }
  /// Chart images of the vertices in the canonical frame.
  const std::vector<Vec2>& chart_vertices() const { return chart_; }
  const Mat3& frame() const { return frame_; }
  /// Set when the hull is a single point or a segment.
  bool degenerate() const { return degenerate_; }

 private:
  SurfaceSpec surface_;
  Mat3 frame_;
  std::vector<SurfacePoint> vertices_;
  std::vector<Vec2> chart_;
  bool degenerate_;
};

/// Relative cross-product tolerance below which chart points count as collinear.
inline constexpr double kCollinearTol = 1e-12;

ConvexRegion convex_hull(const std::vector<SurfacePoint>& points);
/// Hull computed in a caller-provided frame (see canonical_frame).
ConvexRegion convex_hull(const std::vector<SurfacePoint>& points, const Mat3& frame);

/// Boundary length. A segment counts twice, a single point is 0.
double perimeter(const ConvexRegion& region);

/// True when the chart image of p lies in the chart polygon inflated by tol
/// (chart units).
bool contains(const ConvexRegion& region, const SurfacePoint& p, double tol = 1e-12);

/// Hull perimeter of a growing point sequence, maintained in one fixed frame.
/// Each insertion costs O(number of hull vertices) in the worst case and is
/// close to O(1) when points arrive along the hull boundary.
class IncrementalHull {
 public:
  IncrementalHull(SurfaceSpec surface, Mat3 frame);

  void insert(const SurfacePoint& p);
  double perimeter() const { return perimeter_; }
  std::size_t size() const { return points_.size(); }
  /// Indices (insertion order) of the current hull vertices, counterclockwise.
  std::vector<std::size_t> vertex_indices() const;
  const SurfacePoint& point(std::size_t i) const { return points_[i]; }

 private:
  bool right_of(std::size_t a, std::size_t b, const Vec2& q) const;
  double edge(std::size_t a, std::size_t b) const;
  void rebuild_from_degenerate(std::size_t q);

  SurfaceSpec surface_;
  Mat3 frame_;
  std::vector<SurfacePoint> points_;
  std::vector<Vec2> chart_;
  // Ring over hull vertices; next_/prev_ are indexed by point index.
  std::vector<std::size_t> next_, prev_;
  std::size_t entry_ = 0;
  std::size_t last_ = 0;
  // Degenerate state: segment [seg_a_, seg_b_] (possibly a point).
  bool ring_ = false;
  std::size_t seg_a_ = 0, seg_b_ = 0;
  double perimeter_ = 0.0;
};

/// Smallest closed convex sector at `vertex` containing the given points.
struct ProjectingSector {
  SurfacePoint vertex;
  TangentVector v1;  // counterclockwise start
  TangentVector v2;  // counterclockwise end
  double opening;    // angle_between(v1, v2), in [0, pi]
};

/// Sector from the directions to `points` (points coinciding with the vertex
/// are skipped). `reference` fixes the angular origin. Throws not-a-G-curve
/// when the directions do not fit in a closed half-plane.
ProjectingSector projecting_sector(const SurfacePoint& vertex, const TangentVector& reference,
                                   const std::vector<SurfacePoint>& points);

}  // namespace gcurves
