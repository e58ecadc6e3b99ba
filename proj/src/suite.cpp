#include "gcurves/suite.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <numbers>
#include <ostream>
#include <random>

#include "gcurves/commands.hpp"
#include "gcurves/convex.hpp"
#include "gcurves/descent.hpp"
#include "gcurves/involute.hpp"
#include "gcurves/solver.hpp"

namespace gcurves {

namespace {

constexpr double kPi = std::numbers::pi;

std::string printf_string(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

CriterionResult timed(int id, const char* name, const std::function<bool(std::string&)>& body) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    r.pass = body(r.detail);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("threw ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

const SurfaceSpec kSurfaces[] = {SurfaceSpec::sphere(1.0), SurfaceSpec::euclidean(), SurfaceSpec::hyperbolic(1.0)};

SurfacePoint pole(const SurfaceSpec& sf) { return SurfacePoint(sf, Vec3(0.0, 0.0, sf.radius())); }

TangentVector unit_at_pole(const SurfaceSpec& sf, double angle) {
  return TangentVector(pole(sf), Vec3(std::cos(angle), std::sin(angle), 0.0));
}

/// Point at distance <= r_max from the pole, uniform in polar coordinates.
SurfacePoint random_point(const SurfaceSpec& sf, std::mt19937_64& rng, double r_max) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double phi = 2.0 * kPi * U(rng);
  return geodesic_point(pole(sf), unit_at_pole(sf, phi), r_max * U(rng));
}

/// Point at arc length s on the counterclockwise circle of radius r about
/// `centre`, starting in direction `axis`, from the polar parametrization.
SurfacePoint circle_point(const SurfacePoint& centre, const TangentVector& axis, double r, double s) {
  const SurfaceSpec& sf = centre.surface();
  const double R = sf.radius();
  const double rho = sf.is_sphere() ? R * std::sin(r / R) : sf.is_hyperbolic() ? R * std::sinh(r / R) : r;
  const double ang = s / rho;
  const TangentVector n = rotate_quarter(axis);
  const Vec3 d = std::cos(ang) * axis.dir() + std::sin(ang) * n.dir();
  return geodesic_point(centre, TangentVector(centre, d), r);
}

}  // namespace

std::string format_line(const CriterionResult& r) {
  return printf_string("[%s] %d %s: %s (%.2f s)", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str(),
                       r.seconds);
}

CriterionResult criterion_fundamental_root() {
  CriterionResult r = timed(1, "fundamental-equation root", [](std::string& detail) {
    const double a = solve_fundamental_a();
    const double f = a - std::exp(3.0 * kPi / (2.0 * a));
    detail = printf_string("a* = %.15f, |a - exp(3pi/2a)| = %.2e", a, std::abs(f));
    return std::abs(f) < 1e-12 && a > 3.6 && a < 3.7;
  });
  if (r.seconds >= 1.0) r.pass = false, r.detail += ", runtime over 1 s";
  return r;
}

CriterionResult criterion_theta_iteration() {
  CriterionResult r = timed(2, "theta iteration", [](std::string& detail) {
    const double A = 1.0 / solve_fundamental_a();
    const IterationParams p = choose_parameters(A);
    // theta_iterate throws on any claim breach; the margins are re-read here.
    const ThetaSolution half = theta_iterate(p, 5000, 1e-10, 200);
    const ThetaSolution sol = theta_iterate(p, 10000, 1e-10, 200);
    const ThetaSolution dbl = theta_iterate(p, 20000, 1e-10, 200);
    double worst_margin = INFINITY;
    for (const auto& h : sol.history) {
      worst_margin = std::min({worst_margin, h.bound_margin, h.slope_low_margin, h.slope_high_margin,
                               h.convexity_margin, h.monotone_margin});
    }
    const double claim_slack = -claim_tolerance(1.0);
    double d1 = 0.0, d2 = 0.0;  // max inter-grid differences at shared nodes
    for (std::size_t j = 0; j < half.t.size(); ++j) {
      d1 = std::max(d1, std::abs(sol.theta[2 * j] - half.theta[j]));
      d2 = std::max(d2, std::abs(dbl.theta[4 * j] - sol.theta[2 * j]));
    }
    detail = printf_string(
        "t0 = %.4f, %d iterations, min claim margin %.2e, residual %.2e (N=5e3 %.2e, N=2e4 %.2e), "
        "grid differences %.2e -> %.2e",
        p.t0, sol.iterations_used, worst_margin, sol.residual, half.residual, dbl.residual, d1, d2);
    return worst_margin >= claim_slack && sol.residual < 1e-6 && dbl.residual < sol.residual &&
           sol.residual < half.residual && d2 < 4.0 * d1;
  });
  if (r.seconds >= 30.0) r.pass = false, r.detail += ", runtime over 30 s";
  return r;
}

CriterionResult criterion_pipeline() {
  CriterionResult r = timed(3, "self-involute pipeline", [](std::string& detail) {
    SolverConfig cfg;  // A = 1/a*, R = 1, s0 <= 0.2, delta_cut = 1e-3 s0
    const SelfInvoluteBuild b = build_self_involute(cfg);
    const auto& m = b.maximal;
    detail = printf_string(
        "s0 = %.4f, max |p(s)-s|/s = %.2e, G-curve violation %.2e, winding in [%.6f, %.6f], rotation %.2e, "
        "%zu checks",
        b.profile.s0(), m.max_perimeter_defect, b.gcurve.worst_violation, m.min_winding, m.max_winding,
        b.pair.rotation_angle, m.checked);
    return b.profile.s0() <= 0.2 && m.max_perimeter_defect < 1e-3 && b.gcurve.ok && m.max_winding_defect < 1e-3 &&
           std::abs(b.pair.rotation_angle) < 1e-3;
  });
  if (r.seconds >= 120.0) r.pass = false, r.detail += ", runtime over 2 min";
  return r;
}

CriterionResult criterion_involute_forms(std::uint64_t seed) {
  return timed(4, "involute closed forms", [seed](std::string& detail) {
    std::mt19937_64 rng(seed ^ 0x4a4a);
    double geo = 0.0;
    for (const SurfaceSpec& sf : kSurfaces) {
      for (int k = 0; k < 20; ++k) {
        const Mat3 g = random_isometry(sf, rng, 1.0);
        const SurfacePoint start = apply(g, pole(sf));
        const TangentVector dir = apply(g, unit_at_pole(sf, 0.7 * k));
        const double L = sf.is_sphere() ? 1.4 : 3.0;
        const auto pts = involute_points(make_geodesic(start, dir, L, 301));
        for (const auto& q : pts) geo = std::max(geo, (q.coords() - pts.front().coords()).norm());
      }
    }

    const SurfaceSpec E = SurfaceSpec::euclidean();
    const Curve unit = make_circle(pole(E), unit_at_pole(E, 0.0), 1.0, 2.0 * kPi, 2001);
    const auto ipts = involute_points(unit);
    double circ = 0.0;
    for (std::size_t i = 0; i < unit.size(); ++i) {
      const double s = unit[i].s;
      const Vec3 expect(std::cos(s) + s * std::sin(s), std::sin(s) - s * std::cos(s), 1.0);
      circ = std::max(circ, (ipts[i].coords() - expect).norm());
    }

    double kap = 0.0;
    for (const SurfaceSpec& sf : kSurfaces) {
      const double L = sf.is_sphere() ? 1.2 : 2.5;
      const Curve c = make_circle(pole(sf), unit_at_pole(sf, 0.0), 0.5, L, 20001);
      const Curve inv = involute(c);
      for (std::size_t i = 1; i + 1 < inv.size(); ++i) {
        const double s = c[i].s;
        if (s < 0.2) continue;  // kappa~ grows like 1/s near the cusp
        kap = std::max(kap, std::abs(frenet_data(inv, i).kappa - involute_curvature(sf, s)));
      }
    }
    detail = printf_string("geodesic involute spread %.2e, unit-circle involute error %.2e, kappa~ error %.2e", geo,
                           circ, kap);
    return geo < 1e-10 && circ < 1e-12 && kap < 1e-4;
  });
}

CriterionResult criterion_length_bound(std::uint64_t seed) {
  CriterionResult r = timed(5, "length bound on generated G-curves", [seed](std::string& detail) {
    struct Stats {
      double worst_gap = -INFINITY, min_cos = INFINITY, max_diam = 0.0;
      int failures = 0;
    };
    auto run = [seed](const SurfaceSpec& sf) {
      Stats st;
      for (std::uint64_t k = 0; k < 200; ++k) {
        const Curve c = generate_descent_curve(seed * 1000 + k, sf, 200);
        const LengthBoundReport lb = verify_length_bound(c, 1e-9, 1e-6);
        st.worst_gap = std::max(st.worst_gap, lb.length - lb.hull_perimeter);
        st.min_cos = std::min(st.min_cos, lb.min_cos_sum);
        if (sf.is_sphere()) st.max_diam = std::max(st.max_diam, lb.gcurve.diameter);
        if (!lb.ok || lb.min_cos_sum < 1.0 - 1e-6 || (sf.is_sphere() && !lb.gcurve.diameter_ok)) ++st.failures;
      }
      return st;
    };
    std::vector<std::future<Stats>> jobs;
    for (const SurfaceSpec& sf : kSurfaces) jobs.push_back(std::async(std::launch::async, run, sf));
    bool ok = true;
    const char* names[] = {"sphere", "plane", "hyperbolic"};
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const Stats st = jobs[i].get();
      detail += printf_string("%s%s: max l-p %.2e, min cos sum %.6f, %d failures", i ? "; " : "", names[i],
                              st.worst_gap, st.min_cos, st.failures);
      if (i == 0) detail += printf_string(", max diameter %.3f", st.max_diam);
      ok = ok && st.failures == 0;
    }
    return ok;
  });
  if (r.seconds >= 120.0) r.pass = false, r.detail += ", runtime over 2 min";
  return r;
}

CriterionResult criterion_distance_derivative(std::uint64_t seed) {
  return timed(6, "distance derivative", [seed](std::string& detail) {
    std::mt19937_64 rng(seed ^ 0x6d6d);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double h = 1e-4;
    double worst = 0.0;
    for (const SurfaceSpec& sf : kSurfaces) {
      for (int k = 0; k < 1000; ++k) {
        const Mat3 g = random_isometry(sf, rng, 0.5);
        const SurfacePoint centre = apply(g, pole(sf));
        const TangentVector axis = apply(g, unit_at_pole(sf, 2.0 * kPi * U(rng)));
        const bool geodesic = k % 2 == 0;
        const double r = 0.2 + 0.6 * U(rng);
        const double L = 1.0;
        const Curve c = geodesic ? make_geodesic(centre, axis, L, 101) : make_circle(centre, axis, r, L, 101);
        auto eta = [&](double s) { return geodesic ? geodesic_point(centre, axis, s) : circle_point(centre, axis, r, s); };
        const std::size_t i = 5 + static_cast<std::size_t>(U(rng) * 90.0);
        const double s = c[i].s;
        SurfacePoint y = random_point(sf, rng, 1.2);
        while (distance(y, c[i].point) < 0.1) y = random_point(sf, rng, 1.2);
        const double fd = (distance(eta(s + h), y) - distance(eta(s - h), y)) / (2.0 * h);
        worst = std::max(worst, std::abs(distance_derivative(c, y, s) - fd));
      }
    }
    detail = printf_string("max |analytic - central difference| = %.2e over 3000 triples", worst);
    return worst < 1e-5;
  });
}

CriterionResult criterion_hull_monotonicity(std::uint64_t seed) {
  return timed(7, "hull perimeter monotonicity", [seed](std::string& detail) {
    std::mt19937_64 rng(seed ^ 0x7e7e);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = -INFINITY;
    for (const SurfaceSpec& sf : kSurfaces) {
      for (int k = 0; k < 500; ++k) {
        const double r_max = sf.is_sphere() ? 1.2 : 2.0;
        const std::size_t n = 3 + static_cast<std::size_t>(U(rng) * 30.0);
        std::vector<SurfacePoint> outer;
        for (std::size_t i = 0; i < n; ++i) outer.push_back(random_point(sf, rng, r_max));
        // Inner set: a subset of the outer points plus points on segments between them.
        std::vector<SurfacePoint> inner;
        for (const auto& p : outer)
          if (U(rng) < 0.5) inner.push_back(p);
        const std::size_t extra = 1 + static_cast<std::size_t>(U(rng) * 10.0);
        for (std::size_t i = 0; i < extra; ++i) {
          const auto& p = outer[static_cast<std::size_t>(U(rng) * n) % n];
          const auto& q = outer[static_cast<std::size_t>(U(rng) * n) % n];
          if (distance(p, q) < 1e-9) {
            inner.push_back(p);
            continue;
          }
          inner.push_back(geodesic_point(p, direction_to(p, q), U(rng) * distance(p, q)));
        }
        const double po = perimeter(convex_hull(outer));
        const double pi = perimeter(convex_hull(inner));
        worst = std::max(worst, pi - po);
      }
    }
    detail = printf_string("max p(inner) - p(outer) = %.2e over 1500 pairs", worst);
    return worst <= 1e-9;
  });
}

CriterionResult criterion_trigonometry(std::uint64_t seed) {
  return timed(8, "triangle trigonometry", [seed](std::string& detail) {
    std::mt19937_64 rng(seed ^ 0x8f8f);
    double cos_err = 0.0, sin_err = 0.0, angle_err = 0.0;
    int rejected = 0;
    const SurfaceSpec curved[] = {SurfaceSpec::sphere(1.0), SurfaceSpec::hyperbolic(1.0)};
    for (const SurfaceSpec& sf : curved) {
      const double R = sf.radius();
      auto S = [&](double x) { return sf.is_sphere() ? std::sin(x / R) : std::sinh(x / R); };
      auto C = [&](double x) { return sf.is_sphere() ? std::cos(x / R) : std::cosh(x / R); };
      const double sign = sf.is_sphere() ? 1.0 : -1.0;
      int done = 0;
      while (done < 10000) {
        const SurfacePoint p = random_point(sf, rng, 1.4), q = random_point(sf, rng, 1.4), w = random_point(sf, rng, 1.4);
        const double a = distance(q, w), b = distance(p, w), c = distance(p, q);
        const double ap = angle_between(direction_to(p, q), direction_to(p, w));
        const double bq = angle_between(direction_to(q, p), direction_to(q, w));
        const double cw = angle_between(direction_to(w, p), direction_to(w, q));
        // Near-degenerate triangles make every angle ill-conditioned; they carry no information.
        if (std::min({a, b, c}) < 0.05 || std::min({ap, bq, cw}) < 0.05 || std::max({ap, bq, cw}) > kPi - 0.05) {
          ++rejected;
          continue;
        }
        ++done;
        const TriangleAngles t = triangle_solve(sf, a, b, c);
        angle_err = std::max({angle_err, std::abs(t.alpha - ap), std::abs(t.beta - bq), std::abs(t.gamma - cw)});
        // Law of cosines for each side, using the measured angles.
        cos_err = std::max({cos_err, std::abs(C(a) - C(b) * C(c) - sign * S(b) * S(c) * std::cos(ap)),
                           std::abs(C(b) - C(a) * C(c) - sign * S(a) * S(c) * std::cos(bq)),
                           std::abs(C(c) - C(a) * C(b) - sign * S(a) * S(b) * std::cos(cw))});
        // Law of sines: sin(angle) / S(opposite side) is the same for all three.
        const double k1 = std::sin(t.alpha) / S(a), k2 = std::sin(t.beta) / S(b), k3 = std::sin(t.gamma) / S(c);
        sin_err = std::max({sin_err, std::abs(k1 - k2) / k1, std::abs(k1 - k3) / k1});
      }
    }
    const TriangleAngles oct = triangle_solve(SurfaceSpec::sphere(1.0), kPi / 2, kPi / 2, kPi / 2);
    const double oct_err =
        std::max({std::abs(oct.alpha - kPi / 2), std::abs(oct.beta - kPi / 2), std::abs(oct.gamma - kPi / 2)});
    detail = printf_string(
        "20000 triangles (%d degenerate draws skipped): law-of-cosines residual %.2e, law-of-sines spread %.2e, "
        "solved vs measured angles %.2e, octant %.2e",
        rejected, cos_err, sin_err, angle_err, oct_err);
    return cos_err < 1e-10 && sin_err < 1e-10 && angle_err < 1e-10 && oct_err < 1e-12;
  });
}

CriterionResult criterion_dilation_limit() {
  return timed(9, "dilation limit", [](std::string& detail) {
    SolverConfig cfg;
    const double A = 1.0 / solve_fundamental_a();
    ParameterOptions po;
    po.t0_max = cfg.s0_max / choose_parameters(A).K_bound;
    const ThetaSolution sol = theta_iterate(choose_parameters(A, po), cfg.grid_size, cfg.tol, cfg.max_iter);
    const SelfInvoluteProfile base = profile_from_theta(sol, 1.0, cfg.delta_cut_ratio);
    const double s0 = base.s0();
    std::vector<double> sup;
    for (double lambda : {10.0, 100.0, 1000.0}) {
      // The dilated curve lives on the sphere of radius lambda.
      const SelfInvoluteProfile p = profile_from_theta(sol, lambda, cfg.delta_cut_ratio);
      double w = 0.0;
      for (int i = 0; i <= 2000; ++i) {
        const double s = s0 * (0.1 + 0.9 * i / 2000.0);
        w = std::max(w, std::abs(p.kappa_at(s) - p.a() / s));
      }
      sup.push_back(w);
    }
    detail = printf_string("sup |kappa - a/s| on [0.1 s0, s0]: %.3e, %.3e, %.3e for lambda = 10, 100, 1000", sup[0],
                           sup[1], sup[2]);
    return sup[1] < sup[0] && sup[2] < sup[1];
  });
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, std::ostream* progress) {
  const std::function<CriterionResult()> all[] = {
      criterion_fundamental_root,
      criterion_theta_iteration,
      criterion_pipeline,
      [seed] { return criterion_involute_forms(seed); },
      [seed] { return criterion_length_bound(seed); },
      [seed] { return criterion_distance_derivative(seed); },
      [seed] { return criterion_hull_monotonicity(seed); },
      [seed] { return criterion_trigonometry(seed); },
      criterion_dilation_limit,
  };
  std::vector<CriterionResult> out;
  for (const auto& f : all) {
    out.push_back(f());
    if (progress) *progress << format_line(out.back()) << std::endl;
  }
  return out;
}

}  // namespace gcurves
