#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "gcurves/surface.hpp"

namespace gcurves {

struct CurveSample {
  double s;
  SurfacePoint point;
  TangentVector tangent;  // unit
  double kappa;           // geodesic curvature
};

/// Arc-length sampled curve. Between samples the curve is read as the
/// geodesic segment joining them.
class Curve {
 public:
  Curve(SurfaceSpec surface, std::vector<CurveSample> samples, bool closed = false);

  const SurfaceSpec& surface() const { return surface_; }
  const std::vector<CurveSample>& samples() const { return samples_; }
  const CurveSample& operator[](std::size_t i) const { return samples_[i]; }
  std::size_t size() const { return samples_.size(); }
  bool closed() const { return closed_; }

  double s_begin() const { return samples_.front().s; }
  double s_end() const { return samples_.back().s; }
  /// Arc length of the sampled range.
  double length() const { return s_end() - s_begin(); }

  std::vector<SurfacePoint> points() const;
  std::vector<SurfacePoint> points_upto(std::size_t last) const;

  /// Index i with s_i <= s < s_{i+1} (clamped to the last segment).
  std::size_t segment_index(double s) const;
  SurfacePoint point_at(double s) const;
  /// Tangent blended linearly between neighbouring samples and renormalized.
  TangentVector tangent_at(double s) const;

 private:
  SurfaceSpec surface_;
  std::vector<CurveSample> samples_;
  bool closed_;
};

/// Largest relative defect |d(p_i, p_{i+1}) - ds| / ds. Chords of curved
/// segments are short by O(kappa^2 ds^2), so this is a consistency check
/// rather than an exact invariant.
double arc_length_defect(const Curve& curve);

/// Applies an isometry to every sample; s and kappa are unchanged.
Curve transform(const Curve& curve, const Mat3& isometry);

// --- analytic test curves --------------------------------------------------------

/// Unit-speed geodesic from `start` in direction `dir`, n samples on [0, length].
Curve make_geodesic(const SurfacePoint& start, const TangentVector& dir, double length, std::size_t n);

/// Counterclockwise geodesic circle of radius r about `centre`, starting at
/// polar angle `phase` (measured from `axis`, a unit tangent at the centre),
/// n samples on [0, length]. Curvature is cot(r/R)/R, 1/r or coth(r/R)/R.
Curve make_circle(const SurfacePoint& centre, const TangentVector& axis, double r, double length, std::size_t n,
                  double phase = 0.0);

// --- CSV -----------------------------------------------------------------------------

/// Header `s,x1,x2,x3,t1,t2,t3,kappa`, 17 significant digits.
void write_curve_csv(std::ostream& out, const Curve& curve);
void write_curve_csv(const std::filesystem::path& path, const Curve& curve);
/// Parse errors report the 1-based line number.
Curve read_curve_csv(std::istream& in, const SurfaceSpec& surface);
Curve read_curve_csv(const std::filesystem::path& path, const SurfaceSpec& surface);

/// Writes through a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace gcurves
