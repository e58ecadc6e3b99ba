#include "gcurves/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace gcurves {

Curve::Curve(SurfaceSpec surface, std::vector<CurveSample> samples, bool closed)
    : surface_(surface), samples_(std::move(samples)), closed_(closed) {
  if (samples_.empty()) throw Error(ErrorCode::DegenerateInput, "curve without samples");
  if (samples_.front().s < 0.0) throw Error(ErrorCode::ContractViolation, "arc length must start at s >= 0");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const CurveSample& c = samples_[i];
    if (!(c.point.surface() == surface_) || !(c.tangent.surface() == surface_))
      throw Error(ErrorCode::Usage, "curve sample on a different surface");
    // kappa may be +inf at a string length of zero on involutes.
    if (!std::isfinite(c.s) || std::isnan(c.kappa))
      throw Error(ErrorCode::ContractViolation, "invalid curve sample");
    if (std::abs(c.tangent.norm() - 1.0) > 1e-8)
      throw Error(ErrorCode::ContractViolation, "curve tangent is not a unit vector");
    if (i > 0 && !(c.s > samples_[i - 1].s))
      throw Error(ErrorCode::ContractViolation, "arc length must increase strictly");
  }
}

std::vector<SurfacePoint> Curve::points() const { return points_upto(samples_.size() - 1); }

std::vector<SurfacePoint> Curve::points_upto(std::size_t last) const {
  std::vector<SurfacePoint> out;
  out.reserve(last + 1);
  for (std::size_t i = 0; i <= last && i < samples_.size(); ++i) out.push_back(samples_[i].point);
  return out;
}

std::size_t Curve::segment_index(double s) const {
  if (samples_.size() < 2) return 0;
  auto it = std::upper_bound(samples_.begin(), samples_.end(), s,
                             [](double v, const CurveSample& c) { return v < c.s; });
  std::size_t i = static_cast<std::size_t>(it - samples_.begin());
  if (i == 0) return 0;
  return std::min(i - 1, samples_.size() - 2);
}

namespace {

void check_range(const Curve& c, double s) {
  const double slack = 1e-12 * std::max(1.0, std::abs(c.s_end()));
  if (!(s >= c.s_begin() - slack && s <= c.s_end() + slack))
    throw Error(ErrorCode::Range, "arc length outside the curve");
}

}  // namespace

SurfacePoint Curve::point_at(double s) const {
  check_range(*this, s);
  if (samples_.size() == 1) return samples_[0].point;
  const std::size_t i = segment_index(s);
  const CurveSample& a = samples_[i];
  const CurveSample& b = samples_[i + 1];
  const double w = std::clamp((s - a.s) / (b.s - a.s), 0.0, 1.0);
  if (w == 0.0) return a.point;
  if (w == 1.0) return b.point;
  const double d = distance(a.point, b.point);
  if (d == 0.0) return a.point;
  return geodesic_point(a.point, direction_to(a.point, b.point), w * d);
}

TangentVector Curve::tangent_at(double s) const {
  check_range(*this, s);
  if (samples_.size() == 1) return samples_[0].tangent;
  const std::size_t i = segment_index(s);
  const CurveSample& a = samples_[i];
  const CurveSample& b = samples_[i + 1];
  const double w = std::clamp((s - a.s) / (b.s - a.s), 0.0, 1.0);
  if (w == 0.0) return a.tangent;
  if (w == 1.0) return b.tangent;
  const SurfacePoint p = point_at(s);
  return TangentVector::project(p, (1.0 - w) * a.tangent.dir() + w * b.tangent.dir()).normalized();
}

double arc_length_defect(const Curve& curve) {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const double ds = curve[i + 1].s - curve[i].s;
    worst = std::max(worst, std::abs(distance(curve[i].point, curve[i + 1].point) - ds) / ds);
  }
  return worst;
}

Curve transform(const Curve& curve, const Mat3& isometry) {
  std::vector<CurveSample> out;
  out.reserve(curve.size());
  for (const auto& c : curve.samples()) {
    const TangentVector t = apply(isometry, c.tangent);
    out.push_back({c.s, t.base(), t, c.kappa});
  }
  return {curve.surface(), std::move(out), curve.closed()};
}

Curve make_geodesic(const SurfacePoint& start, const TangentVector& dir, double length, std::size_t n) {
  if (n < 2 || !(length > 0.0)) throw Error(ErrorCode::ContractViolation, "geodesic needs n >= 2 and length > 0");
  std::vector<CurveSample> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = length * static_cast<double>(i) / static_cast<double>(n - 1);
    const TangentVector t = geodesic_velocity(start, dir, s);
    out.push_back({s, t.base(), t, 0.0});
  }
  return {start.surface(), std::move(out)};
}

Curve make_circle(const SurfacePoint& centre, const TangentVector& axis, double r, double length, std::size_t n,
                  double phase) {
  if (n < 2 || !(length > 0.0) || !(r > 0.0))
    throw Error(ErrorCode::ContractViolation, "circle needs n >= 2, r > 0 and length > 0");
  const SurfaceSpec& sf = centre.surface();
  const double R = sf.radius();
  const Vec3 e1 = axis.normalized().dir();
  const Vec3 e2 = rotate_quarter(axis.normalized()).dir();
  const Vec3& c = centre.coords();
  double radial = 0.0, axial = 0.0, kappa = 0.0;
  switch (sf.kind()) {
    case SurfaceKind::Sphere:
      if (!(r < std::numbers::pi * R)) throw Error(ErrorCode::Range, "circle radius exceeds pi R");
      axial = std::cos(r / R), radial = R * std::sin(r / R), kappa = 1.0 / (R * std::tan(r / R));
      break;
    case SurfaceKind::Hyperbolic:
      axial = std::cosh(r / R), radial = R * std::sinh(r / R), kappa = 1.0 / (R * std::tanh(r / R));
      break;
    case SurfaceKind::Euclidean:
      axial = 1.0, radial = r, kappa = 1.0 / r;
      break;
  }
  std::vector<CurveSample> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = length * static_cast<double>(i) / static_cast<double>(n - 1);
    const double phi = phase + s / radial;
    const Vec3 x = axial * c + radial * (std::cos(phi) * e1 + std::sin(phi) * e2);
    const SurfacePoint p = SurfacePoint::project(sf, x);
    const TangentVector t = TangentVector::project(p, -std::sin(phi) * e1 + std::cos(phi) * e2).normalized();
    out.push_back({s, p, t, kappa});
  }
  return {sf, std::move(out)};
}

// --- CSV -----------------------------------------------------------------------------

void write_curve_csv(std::ostream& out, const Curve& curve) {
  out << "s,x1,x2,x3,t1,t2,t3,kappa\n";
  char buf[512];
  for (const auto& c : curve.samples()) {
    const Vec3& x = c.point.coords();
    const Vec3& t = c.tangent.dir();
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", c.s, x.x(), x.y(), x.z(),
                  t.x(), t.y(), t.z(), c.kappa);
    out << buf;
  }
}

void write_curve_csv(const std::filesystem::path& path, const Curve& curve) {
  std::ostringstream ss;
  write_curve_csv(ss, curve);
  write_file_atomic(path, ss.str());
}

Curve read_curve_csv(std::istream& in, const SurfaceSpec& surface) {
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": " + why);
  };
  if (!std::getline(in, line)) {
    lineno = 1;
    fail("missing header");
  }
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "s,x1,x2,x3,t1,t2,t3,kappa") fail("unexpected header '" + line + "'");

  std::vector<CurveSample> samples;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (std::count(line.begin(), line.end(), ',') != 7) fail("expected 8 fields");
    double v[8];
    std::size_t pos = 0;
    for (int field = 0; field < 8; ++field) {
      const std::size_t comma = line.find(',', pos);
      const std::string tok = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      std::size_t used = 0;
      try {
        v[field] = std::stod(tok, &used);
      } catch (const std::logic_error&) {
        used = std::string::npos;
      }
      if (used != tok.size()) fail("bad number '" + tok + "'");
      pos = comma + 1;
    }
    try {
      const SurfacePoint p(surface, Vec3(v[1], v[2], v[3]));
      const TangentVector t(p, Vec3(v[4], v[5], v[6]));
      samples.push_back({v[0], p, t, v[7]});
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  if (samples.empty()) fail("no samples");
  try {
    return {surface, std::move(samples)};
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

Curve read_curve_csv(const std::filesystem::path& path, const SurfaceSpec& surface) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return read_curve_csv(in, surface);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot rename into " + path.string());
  }
}

}  // namespace gcurves
