#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "gcurves/surface.hpp"

namespace gcurves::testing {

constexpr double kPi = std::numbers::pi;

inline const SurfaceSpec kAllSurfaces[] = {SurfaceSpec::sphere(1.0), SurfaceSpec::euclidean(),
                                           SurfaceSpec::hyperbolic(1.0)};

inline SurfacePoint pole(const SurfaceSpec& sf) { return SurfacePoint(sf, Vec3(0.0, 0.0, sf.radius())); }

inline TangentVector unit_at(const SurfacePoint& p, double angle) {
  return TangentVector(p, Vec3(std::cos(angle), std::sin(angle), 0.0));
}

/// Point within distance r_max of the pole.
inline SurfacePoint random_point(const SurfaceSpec& sf, std::mt19937_64& rng, double r_max) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double phi = 2.0 * kPi * U(rng);
  return geodesic_point(pole(sf), unit_at(pole(sf), phi), r_max * std::sqrt(U(rng)));
}

/// Random unit tangent at an arbitrary point.
inline TangentVector random_direction(const SurfacePoint& p, std::mt19937_64& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  for (;;) {
    const TangentVector v = TangentVector::project(p, Vec3(N(rng), N(rng), N(rng)));
    if (v.norm() > 1e-3) return v.normalized();
  }
}

}  // namespace gcurves::testing

#define EXPECT_ERROR_CODE(stmt, expected)                                  \
  do {                                                                     \
    try {                                                                  \
      stmt;                                                                \
      ADD_FAILURE() << "expected " #expected " from " #stmt;              \
    } catch (const ::gcurves::Error& e) {                                  \
      EXPECT_EQ(e.code(), ::gcurves::ErrorCode::expected) << e.what();    \
    }                                                                      \
  } while (0)
