#include "gcurves/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

#include "gcurves/convex.hpp"
#include "gcurves/involute.hpp"

namespace gcurves {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

const char* chart_name(const SurfaceSpec& s) {
  switch (s.kind()) {
    case SurfaceKind::Sphere: return "gnomonic chart of the sphere";
    case SurfaceKind::Hyperbolic: return "Klein disc chart of the hyperbolic plane";
    case SurfaceKind::Euclidean: return "plane x3 = 1";
  }
  return "";
}

}  // namespace

std::string render_svg(const Curve& curve, const PlotOptions& options) {
  const SurfaceSpec& sf = curve.surface();
  Mat3 frame = Mat3::Identity();
  if (sf.is_sphere()) {
    for (const auto& c : curve.samples())
      if (c.point.coords().z() <= 1e-9 * sf.radius()) {
        frame = canonical_frame(sf, curve.points());
        break;
      }
  }
  std::vector<Vec2> path;
  for (const auto& c : curve.samples()) path.push_back(framed_chart(frame, c.point));
  std::vector<Vec2> hull;
  if (options.hull) hull = convex_hull(curve.points(), frame).chart_vertices();
  std::vector<Vec2> inv;
  if (options.involute)
    for (const auto& p : involute_points(curve)) inv.push_back(framed_chart(frame, p));

  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin, xmax = -xmin, ymax = -xmin;
  auto grow = [&](const Vec2& v) {
    xmin = std::min(xmin, v.x()), xmax = std::max(xmax, v.x());
    ymin = std::min(ymin, v.y()), ymax = std::max(ymax, v.y());
  };
  for (const auto& v : path) grow(v);
  for (const auto& v : inv) grow(v);
  if (sf.is_hyperbolic()) grow({-1.0, -1.0}), grow({1.0, 1.0});
  double span = std::max(xmax - xmin, ymax - ymin);
  if (!(span > 0.0)) span = 1.0;
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  const double W = options.size, margin = 0.06 * W, caption = 40.0;
  const double scale = (W - 2.0 * margin) / span;
  auto X = [&](double x) { return W / 2.0 + (x - cx) * scale; };
  auto Y = [&](double y) { return (W - caption) / 2.0 - (y - cy) * scale * (W - caption) / W; };
  auto points = [&](const std::vector<Vec2>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ' ';
      s += fmt(X(v[i].x())) + "," + fmt(Y(v[i].y()));
    }
    return s;
  };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.size << "\" height=\"" << options.size
    << "\" viewBox=\"0 0 " << options.size << " " << options.size << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (sf.is_hyperbolic()) {
    o << "<ellipse cx=\"" << fmt(X(0.0)) << "\" cy=\"" << fmt(Y(0.0)) << "\" rx=\"" << fmt(scale) << "\" ry=\""
      << fmt(scale * (W - caption) / W) << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  }
  if (hull.size() >= 2)
    o << "<polygon points=\"" << points(hull) << "\" fill=\"#dde8f6\" stroke=\"#6b8fc7\" stroke-width=\"1\"/>\n";
  if (!inv.empty())
    o << "<polyline points=\"" << points(inv)
      << "\" fill=\"none\" stroke=\"#d0542c\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n";
  o << "<polyline points=\"" << points(path) << "\" fill=\"none\" stroke=\"#1b1b1b\" stroke-width=\"1.5\"/>\n";
  o << "<text x=\"" << fmt(margin) << "\" y=\"" << fmt(W - 14.0)
    << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">" << chart_name(sf)
    << ": geodesics are straight, but chart lengths and angles are distorted relative to the surface metric</text>\n";
  o << "</svg>\n";
  return o.str();
}

}  // namespace gcurves
