#pragma once

#include <cstdint>
#include <vector>

#include "gcurves/convex.hpp"
#include "gcurves/curve.hpp"

namespace gcurves {

struct GCurveReport {
  bool ok = true;
  double tol = 0.0;
  /// Largest amount by which the earlier samples straddle a normal line.
  double worst_violation = 0.0;
  double worst_s = 0.0;
  /// Sphere only: diameter of the sample set and whether it is below pi R / 2.
  /// Reported, never enforced.
  bool diameter_checked = false;
  double diameter = 0.0;
  bool diameter_ok = true;
};

/// Half-plane test at every sample against all earlier samples. A negative
/// tol selects the default 1e-8 * length.
GCurveReport is_g_curve(const Curve& curve, double tol = -1.0);

/// Same predicate evaluated by brute force over all sample pairs.
GCurveReport is_g_curve_bruteforce(const Curve& curve, double tol = -1.0);

struct PerimeterProfile {
  std::vector<double> s;
  std::vector<double> p;
};

/// Hull perimeter of each sample prefix, all in one canonical frame.
PerimeterProfile perimeter_profile(const Curve& curve);

/// Sector at sample `index` spanned by the earlier samples; the reference
/// direction is the sample tangent.
ProjectingSector projecting_sector(const Curve& curve, std::size_t index);
/// Sector at an arbitrary arc length: vertex point_at(s), prefix = samples before s.
ProjectingSector projecting_sector(const Curve& curve, double s);

/// cos(phi_1) + cos(phi_2) with phi_i = pi - angle(tangent, v_i).
double cos_phi_sum(const ProjectingSector& sector, const TangentVector& tangent);

struct LengthBoundReport {
  double length = 0.0;
  double hull_perimeter = 0.0;
  bool ok = false;
  std::vector<double> s;
  std::vector<double> sector_openings;
  std::vector<double> cos_sums;
  double min_cos_sum = 0.0;
  double max_opening = 0.0;
  /// cos sum >= 1 - lemma_tol and opening <= pi/2 + lemma_tol everywhere.
  bool lemma34_ok = false;
  GCurveReport gcurve;
};

/// Checks length <= hull perimeter + tol and gathers sector data at up to
/// `max_sectors` evenly spaced samples (0 means all). Throws not-a-G-curve
/// when the input fails is_g_curve.
LengthBoundReport verify_length_bound(const Curve& curve, double tol = 1e-9, double lemma_tol = 1e-6,
                                      std::size_t max_sectors = 0, double gcurve_tol = -1.0);

struct PerimeterDerivativeReport {
  double worst_margin = 0.0;  // min of p'(s) - (cos phi_1 + cos phi_2)
  double worst_s = 0.0;
  std::size_t checked = 0;
};

/// Forward-difference perimeter derivative at segment midpoints compared with
/// the sector bound. Step h = rel_h * segment length.
PerimeterDerivativeReport check_perimeter_derivative(const Curve& curve, double rel_h = 1e-3);

/// d/ds distance(eta_s, y) = |eta'_s| cos(phi), phi = pi - alpha, alpha the
/// angle at eta_s between the tangent and the segment towards y.
double distance_derivative(const Curve& curve, const SurfacePoint& y, double s);

/// Random piecewise-geodesic G-curve with n_steps samples. Every new
/// direction is the previous one turned left inside the polar cone of the
/// current projecting sector. Sphere curves are shorter than pi R / 2.
Curve generate_descent_curve(std::uint64_t seed, const SurfaceSpec& surface, std::size_t n_steps);

}  // namespace gcurves
