#include <gtest/gtest.h>

#include "gcurves/convex.hpp"
#include "gcurves/curve.hpp"
#include "support.hpp"

using namespace gcurves;
using namespace gcurves::testing;

namespace {

const SurfaceSpec S2 = SurfaceSpec::sphere(1.0);
const SurfaceSpec E2 = SurfaceSpec::euclidean();

SurfacePoint e2(double x, double y) { return SurfacePoint(E2, Vec3(x, y, 1.0)); }

std::vector<SurfacePoint> random_cloud(const SurfaceSpec& sf, std::mt19937_64& rng, std::size_t n, double r) {
  std::vector<SurfacePoint> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(random_point(sf, rng, r));
  return pts;
}

// Brute-force hull test: every other point lies left of (or on) each hull edge.
void expect_supporting_edges(const ConvexRegion& hull, const std::vector<SurfacePoint>& pts) {
  const auto& c = hull.chart_vertices();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec2 a = c[i], b = c[(i + 1) % c.size()];
    for (const auto& p : pts) {
      const Vec2 q = framed_chart(hull.frame(), p);
      const double cross = (b - a).x() * (q - a).y() - (b - a).y() * (q - a).x();
      EXPECT_GE(cross, -1e-12 * (1.0 + (b - a).norm() * (q - a).norm()));
    }
  }
}

}  // namespace

TEST(ConvexHull, TriangleAndInteriorPoint) {
  const ConvexRegion t = convex_hull({e2(0, 0), e2(1, 0), e2(0, 1)});
  EXPECT_EQ(t.vertices().size(), 3u);
  EXPECT_FALSE(t.degenerate());
  const ConvexRegion q = convex_hull({e2(0, 0), e2(1, 0), e2(0.2, 0.2), e2(0, 1)});
  EXPECT_EQ(q.vertices().size(), 3u);
}

TEST(ConvexHull, TwoPointsGiveADegenerateSegment) {
  const ConvexRegion s = convex_hull({e2(0, 0), e2(2, 0)});
  EXPECT_TRUE(s.degenerate());
  EXPECT_DOUBLE_EQ(perimeter(s), 4.0);
  EXPECT_DOUBLE_EQ(perimeter(convex_hull({e2(1, 1)})), 0.0);
}

TEST(ConvexHull, CollinearPointsAreDropped) {
  const ConvexRegion s = convex_hull({e2(0, 0), e2(1, 0), e2(2, 0), e2(2, 2), e2(1, 1)});
  EXPECT_EQ(s.vertices().size(), 3u);
}

TEST(ConvexHull, PerimeterExamples) {
  EXPECT_NEAR(perimeter(convex_hull({SurfacePoint(S2, Vec3(1, 0, 0)), SurfacePoint(S2, Vec3(0, 1, 0)),
                                     SurfacePoint(S2, Vec3(0, 0, 1))})),
              3 * kPi / 2, 1e-14);
  EXPECT_NEAR(perimeter(convex_hull({e2(0, 0), e2(1, 0), e2(1, 1), e2(0, 1)})), 4.0, 1e-15);
}

TEST(ConvexHull, DenseGeodesicCircle) {
  std::vector<SurfacePoint> pts;
  const SurfacePoint c = pole(S2);
  for (int i = 0; i < 10000; ++i) pts.push_back(geodesic_point(c, unit_at(c, 2 * kPi * i / 10000.0), 0.3));
  EXPECT_NEAR(perimeter(convex_hull(pts)), 2 * kPi * std::sin(0.3), 1e-4);
}

TEST(ConvexHull, NoHullWithoutAnOpenHemisphere) {
  const std::vector<SurfacePoint> pts{SurfacePoint(S2, Vec3(1, 0, 0)), SurfacePoint(S2, Vec3(-0.5, 0.8660254037844386, 0)),
                                      SurfacePoint(S2, Vec3(-0.5, -0.8660254037844386, 0))};
  EXPECT_ERROR_CODE(convex_hull(pts), NoConvexHull);
}

TEST(ConvexHull, RandomCloudsHaveSupportingEdges) {
  std::mt19937_64 rng(37);
  for (const SurfaceSpec& sf : kAllSurfaces) {
    for (int k = 0; k < 50; ++k) {
      const auto pts = random_cloud(sf, rng, 40, sf.is_sphere() ? 1.3 : 2.0);
      expect_supporting_edges(convex_hull(pts), pts);
    }
  }
}

TEST(ConvexHull, Idempotent) {
  std::mt19937_64 rng(41);
  for (const SurfaceSpec& sf : kAllSurfaces) {
    for (int k = 0; k < 50; ++k) {
      const ConvexRegion h = convex_hull(random_cloud(sf, rng, 30, 1.0));
      const ConvexRegion h2 = convex_hull(h.vertices());
      ASSERT_EQ(h2.vertices().size(), h.vertices().size());
      EXPECT_NEAR(perimeter(h2), perimeter(h), 1e-12);
    }
  }
}

TEST(ConvexHull, PerimeterInvariantUnderIsometries) {
  std::mt19937_64 rng(43);
  for (const SurfaceSpec& sf : kAllSurfaces) {
    for (int k = 0; k < 100; ++k) {
      const auto pts = random_cloud(sf, rng, 20, 1.0);
      const Mat3 g = random_isometry(sf, rng, 1.0);
      std::vector<SurfacePoint> moved;
      for (const auto& p : pts) moved.push_back(apply(g, p));
      EXPECT_NEAR(perimeter(convex_hull(moved)), perimeter(convex_hull(pts)), 1e-9);
    }
  }
}

TEST(ConvexHull, NestedPairsAreMonotone) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (const SurfaceSpec& sf : kAllSurfaces) {
    for (int k = 0; k < 200; ++k) {
      const auto outer = random_cloud(sf, rng, 25, 1.2);
      std::vector<SurfacePoint> inner;
      for (const auto& p : outer)
        if (U(rng) < 0.4) inner.push_back(p);
      if (inner.empty()) inner.push_back(outer.front());
      EXPECT_LE(perimeter(convex_hull(inner)), perimeter(convex_hull(outer)) + 1e-9);
    }
  }
}

TEST(Contains, VerticesBarycentreAndOutsidePoints) {
  const ConvexRegion oct = convex_hull({SurfacePoint(S2, Vec3(1, 0, 0)), SurfacePoint(S2, Vec3(0, 1, 0)),
                                        SurfacePoint(S2, Vec3(0, 0, 1))});
  for (const auto& v : oct.vertices()) EXPECT_TRUE(contains(oct, v));
  const SurfacePoint bary = SurfacePoint::project(S2, Vec3(1, 1, 1));
  EXPECT_TRUE(contains(oct, bary));
  EXPECT_ERROR_CODE(contains(oct, SurfacePoint(S2, Vec3(0, 0, -1))), OutOfChart);
  EXPECT_FALSE(contains(oct, SurfacePoint::project(S2, Vec3(1, 1, -0.2))));
}

TEST(IncrementalHullTest, MatchesBatchHull) {
  std::mt19937_64 rng(53);
  for (const SurfaceSpec& sf : kAllSurfaces) {
    for (int k = 0; k < 20; ++k) {
      const auto pts = random_cloud(sf, rng, 60, 1.0);
      const Mat3 frame = canonical_frame(sf, pts);
      IncrementalHull inc(sf, frame);
      std::vector<SurfacePoint> prefix;
      for (const auto& p : pts) {
        inc.insert(p);
        prefix.push_back(p);
        ASSERT_NEAR(inc.perimeter(), perimeter(convex_hull(prefix, frame)), 1e-11);
      }
    }
  }
}

TEST(ProjectingSectorTest, HalfPlaneViolationIsReported) {
  const SurfacePoint v = e2(0, 0);
  const TangentVector ref(v, Vec3(1, 0, 0));
  EXPECT_ERROR_CODE(projecting_sector(v, ref, {e2(1, 0), e2(-0.5, 0.8), e2(-0.5, -0.8)}), NotGCurve);
  const ProjectingSector s = projecting_sector(v, ref, {e2(1, 0), e2(0, 1)});
  EXPECT_NEAR(s.opening, kPi / 2, 1e-15);
  EXPECT_NEAR((s.v1.dir() - Vec3(1, 0, 0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((s.v2.dir() - Vec3(0, 1, 0)).norm(), 0.0, 1e-15);
}

TEST(ProjectingSectorTest, ContainsEveryDirectionAndIsMinimal) {
  std::mt19937_64 rng(59);
  for (const SurfaceSpec& sf : kAllSurfaces) {
    for (int k = 0; k < 100; ++k) {
      const SurfacePoint v = random_point(sf, rng, 0.5);
      const TangentVector ref = random_direction(v, rng);
      // Points inside a random sector of opening < pi.
      std::uniform_real_distribution<double> U(0.0, 1.0);
      const double start = 2 * kPi * U(rng), width = 3.0 * U(rng);
      std::vector<SurfacePoint> pts;
      const TangentVector n = rotate_quarter(ref);
      for (int i = 0; i < 10; ++i) {
        const double ang = start + width * U(rng);
        const TangentVector d(v, std::cos(ang) * ref.dir() + std::sin(ang) * n.dir());
        pts.push_back(geodesic_point(v, d, 0.2 + U(rng)));
      }
      const ProjectingSector s = projecting_sector(v, ref, pts);
      EXPECT_LE(s.opening, width + 1e-12);
      double span = 0.0;
      for (const auto& p : pts) {
        const double a = signed_angle(s.v1, direction_to(v, p));
        const double w = a < -1e-12 ? a + 2 * kPi : std::max(a, 0.0);
        EXPECT_LE(w, s.opening + 1e-12);
        span = std::max(span, w);
      }
      EXPECT_NEAR(span, s.opening, 1e-12);
    }
  }
}
