#include <gtest/gtest.h>

#include "gcurves/descent.hpp"
#include "gcurves/solver.hpp"
#include "support.hpp"

using namespace gcurves;
using namespace gcurves::testing;

namespace {

const SurfaceSpec S2 = SurfaceSpec::sphere(1.0);

double fundamental_A() { return 1.0 / solve_fundamental_a(); }

IterationParams capped_params(double A, double s0_max = 0.2) {
  ParameterOptions po;
  po.t0_max = s0_max / choose_parameters(A).K_bound;
  return choose_parameters(A, po);
}

// One solve shared by the pipeline tests.
struct Pipeline {
  ThetaSolution sol;
  SelfInvoluteProfile prof;
  Curve curve;
};

const Pipeline& pipeline() {
  static const Pipeline p = [] {
    ThetaSolution sol = theta_iterate(capped_params(fundamental_A()), 10000);
    SelfInvoluteProfile prof = profile_from_theta(sol, 1.0);
    Curve c = self_involute_curve(prof);
    return Pipeline{std::move(sol), prof, std::move(c)};
  }();
  return p;
}

}  // namespace

TEST(FundamentalEquation, RootAndBracket) {
  auto f = [](double a) { return a - std::exp(3 * kPi / (2 * a)); };
  EXPECT_LT(f(1.0), 0.0);
  EXPECT_GT(f(10.0), 0.0);
  const double a = solve_fundamental_a();
  EXPECT_LT(std::abs(f(a)), 1e-12);
  EXPECT_GT(a, 3.6);
  EXPECT_LT(a, 3.7);
  EXPECT_LT(f(3.6), 0.0);
  EXPECT_GT(f(3.7), 0.0);
}

TEST(Parameters, AdmissibilityExamples) {
  EXPECT_NEAR(min_admissible_B(0.5), 0.075, 1e-15);
  EXPECT_NEAR(slope_bound_t0(0.5, 0.1), std::sqrt(5.0), 1e-15);
  // Quartic bound: 1/2 + (B/3A) t^2 + (B^2/18A^2) t^4 = 1 at the returned root.
  const double A = 0.5, B = 0.1, t = quartic_bound_t0(A, B);
  EXPECT_NEAR(0.5 + B / (3 * A) * t * t + B * B / (18 * A * A) * std::pow(t, 4), 1.0, 1e-12);
  EXPECT_LT(claim_function(0.5, 0.1, 0.1), 0.0);
}

TEST(Parameters, ReturnedParametersSatisfyEveryCondition) {
  for (double A : {0.1, 0.2744, 0.5, 0.8, 0.95}) {
    const IterationParams p = choose_parameters(A);
    EXPECT_TRUE(admissible(p)) << A;
    EXPECT_GT(p.B, min_admissible_B(A));
    EXPECT_LE(p.t0, p.eps_F);
    EXPECT_LT(A + p.B * p.t0 * p.t0, 1.0);
    EXPECT_LT(0.5 + p.B / (3 * A) * p.t0 * p.t0 + p.B * p.B / (18 * A * A) * std::pow(p.t0, 4), 1.0);
    EXPECT_NEAR(p.K_bound, A + p.B * p.t0 * p.t0 / 3, 1e-15);
    EXPECT_LT(p.K_bound, 1.0);
    for (double x = p.eps_F / 100; x <= p.eps_F; x += p.eps_F / 100) EXPECT_LT(claim_function(A, p.B, x), 0.0);
  }
}

TEST(Parameters, RejectsBadRequests) {
  EXPECT_ERROR_CODE(choose_parameters(1.5), ContractViolation);
  EXPECT_ERROR_CODE(choose_parameters(0.0), ContractViolation);
  ParameterOptions small_B;
  small_B.B = 0.05;
  EXPECT_ERROR_CODE(choose_parameters(0.5, small_B), ParameterSearch);
  ParameterOptions big_t0;
  big_t0.t0 = 3.0;
  EXPECT_ERROR_CODE(choose_parameters(0.5, big_t0), ParameterSearch);
}

TEST(ThetaIteration, FirstUpdateStartsFromTheLinearIterate) {
  const double A = fundamental_A();
  const IterationParams p = capped_params(A);
  const std::size_t N = 2000;
  const ThetaSolution sol = theta_iterate(p, N);
  // theta_1 = integral of tan(A^2 u) / sin(A u), by the same trapezoid rule.
  const double h = p.t0 / N;
  double acc = 0.0, worst = 0.0, prev = A;
  for (std::size_t j = 1; j <= N; ++j) {
    const double u = h * j;
    const double g = std::tan(A * A * u) / std::sin(A * u);
    acc += 0.5 * h * (prev + g);
    prev = g;
    worst = std::max(worst, std::abs(acc - A * u));
  }
  ASSERT_FALSE(sol.history.empty());
  EXPECT_NEAR(sol.history.front().update, worst, 1e-12);
}

TEST(ThetaIteration, ClaimsHoldOnTheGrid) {
  const ThetaSolution sol = theta_iterate(choose_parameters(fundamental_A()), 10000);
  const IterationParams& p = sol.params;
  EXPECT_EQ(sol.theta.front(), 0.0);
  EXPECT_NEAR(sol.theta_prime.front(), p.A, 1e-15);
  for (std::size_t j = 1; j < sol.t.size(); ++j) {
    EXPECT_GT(sol.theta[j], 0.0);
    EXPECT_LE(sol.theta[j], p.K_bound * sol.t[j] + claim_tolerance(1.0));
    EXPECT_GE(sol.theta_prime[j], sol.theta_prime[j - 1] - claim_tolerance(1.0));
  }
  for (const IterationRecord& r : sol.history) {
    EXPECT_GE(r.bound_margin, -claim_tolerance(1.0));
    EXPECT_GE(r.slope_low_margin, -claim_tolerance(1.0));
    EXPECT_GE(r.slope_high_margin, -claim_tolerance(1.0));
    EXPECT_GE(r.convexity_margin, -claim_tolerance(1.0));
    EXPECT_GE(r.monotone_margin, -claim_tolerance(1.0));
  }
  EXPECT_LT(sol.residual, 1e-6);
  EXPECT_NEAR(theta_residual(sol), sol.residual, 1e-15);
}

TEST(ThetaIteration, SecondDifferencesStayBounded) {
  const ThetaSolution sol = theta_iterate(choose_parameters(fundamental_A()), 10000);
  double lo = INFINITY, hi = 0.0;
  for (const IterationRecord& r : sol.history) lo = std::min(lo, r.second_difference), hi = std::max(hi, r.second_difference);
  EXPECT_LT(hi, 10.0 * std::max(lo, 1e-3));
}

TEST(ThetaIteration, GridRefinement) {
  const IterationParams p = choose_parameters(fundamental_A());
  const ThetaSolution a = theta_iterate(p, 2500), b = theta_iterate(p, 5000), c = theta_iterate(p, 10000);
  double d1 = 0.0, d2 = 0.0;
  for (std::size_t j = 0; j < a.t.size(); ++j) {
    d1 = std::max(d1, std::abs(b.theta[2 * j] - a.theta[j]));
    d2 = std::max(d2, std::abs(c.theta[4 * j] - b.theta[2 * j]));
  }
  EXPECT_LT(d2, 4.0 * d1);
  EXPECT_LT(b.residual, a.residual);
  EXPECT_LT(c.residual, b.residual);
}

TEST(ThetaIteration, FailureModes) {
  IterationParams bad = choose_parameters(0.5);
  bad.t0 *= 10.0;
  EXPECT_ERROR_CODE(theta_iterate(bad, 100), ContractViolation);
  EXPECT_ERROR_CODE(theta_iterate(choose_parameters(0.5), 1000, 1e-14, 2), Convergence);
}

TEST(ThetaIteration, WorksAcrossA) {
  for (double A : {0.3, 0.6, 0.9}) {
    const ThetaSolution sol = theta_iterate(choose_parameters(A), 4000);
    EXPECT_LT(sol.residual, 1e-6) << A;
  }
}

TEST(Profile, MatchesTheThetaSolution) {
  const Pipeline& p = pipeline();
  const ThetaSolution& sol = p.sol;
  EXPECT_NEAR(p.prof.s0(), sol.theta.back(), 1e-15);
  EXPECT_NEAR(p.prof.delta_cut(), 1e-3 * p.prof.s0(), 1e-15);
  for (std::size_t j = sol.t.size() / 10; j < sol.t.size(); j += 500) {
    const double k = 1.0 / std::tan(sol.theta[j]);
    EXPECT_NEAR(p.prof.kappa_at(sol.t[j]), k, 1e-9 * k);
  }
  EXPECT_NEAR(p.prof.tau_dot_at(1e-7), 1.0 / sol.params.A, 1e-3);
  EXPECT_NEAR(p.prof.a() * sol.params.A, 1.0, 1e-12);
}

TEST(Profile, ShapeOfKappaAndTau) {
  const SelfInvoluteProfile& prof = pipeline().prof;
  double prev_tau = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double s = prof.s0() * i / 200.0;
    const double tau = prof.tau_at(s);
    EXPECT_GT(tau, prev_tau);
    // theta(t) < t, so tau = R theta^-1(s / R) runs ahead of s.
    EXPECT_GT(tau, s);
    EXPECT_GT(prof.kappa_at(s), 0.0);
    EXPECT_NEAR(prof.tau_inverse_at(tau), s, 1e-12);
    prev_tau = tau;
  }
  EXPECT_GT(prof.kappa_at(1e-9), 1e8);
}

TEST(Profile, SystemResidualIsSmall) {
  const SelfInvoluteProfile& prof = pipeline().prof;
  const SystemResidual r = system_residual(prof.kappa_table(4000), prof.tau_table(2000), prof.surface());
  EXPECT_LT(r.tau_dot, 1e-5);
  EXPECT_LT(r.kappa_tau, 1e-5);
}

TEST(Profile, RadiusScaling) {
  const ThetaSolution& sol = pipeline().sol;
  const SelfInvoluteProfile big = profile_from_theta(sol, 3.0);
  EXPECT_NEAR(big.s0(), 3.0 * pipeline().prof.s0(), 1e-14);
  EXPECT_NEAR(big.kappa_at(0.3), pipeline().prof.kappa_at(0.1) / 3.0, 1e-12);
}

TEST(Profile, RejectsNonIncreasingTheta) {
  ThetaSolution sol = pipeline().sol;
  sol.theta[5] = sol.theta[4];
  EXPECT_ERROR_CODE(profile_from_theta(sol, 1.0), ContractViolation);
}

TEST(Profile, SpiralMode) {
  const SelfInvoluteProfile sp = SelfInvoluteProfile::spiral(3.0, 1.0);
  EXPECT_DOUBLE_EQ(sp.kappa_at(0.5), 6.0);
  EXPECT_DOUBLE_EQ(sp.tau_at(0.2), 0.6);
  EXPECT_DOUBLE_EQ(sp.tau_dot_at(0.2), 3.0);
}

TEST(Integration, ZeroCurvatureGivesAGreatCircle) {
  const SurfacePoint p = pole(S2);
  const TangentVector d = unit_at(p, 0.3);
  const Curve c = integrate_curve([](double) { return 0.0; }, p, d, 0.0, 1.5);
  for (const auto& x : c.samples()) EXPECT_LT(distance(x.point, geodesic_point(p, d, x.s)), 1e-8);
}

TEST(Integration, ConstantCurvatureGivesASmallCircle) {
  const double k = 2.0;
  const Curve c = integrate_curve([k](double) { return k; }, pole(S2), unit_at(pole(S2), 0.0), 0.0, 2.0,
                                  IntegrationOptions{0.05, 4e-4});
  for (std::size_t i = 1; i + 1 < c.size(); i += 50) EXPECT_NEAR(frenet_data(c, i).kappa, k, 1e-6);
  // Closed orbit: geodesic radius r with cot r = k.
  const double r = std::atan(1.0 / k);
  const Vec3 centre = geodesic_point(pole(S2), unit_at(pole(S2), kPi / 2), r).coords();
  for (const auto& x : c.samples()) EXPECT_NEAR(std::acos(std::clamp(x.point.coords().dot(centre), -1.0, 1.0)), r, 1e-8);
}

TEST(Integration, RejectsCoarseSteps) {
  EXPECT_ERROR_CODE(integrate_curve([](double) { return 1.0; }, pole(S2), unit_at(pole(S2), 0.0), 0.0, 1.0,
                                    IntegrationOptions{0.2, 1e-2}),
                    Resolution);
}

TEST(Integration, SpiralStateNearThePole) {
  const double a = solve_fundamental_a();
  for (double s : {1e-6, 1e-4}) {
    const TangentVector t = spiral_state(S2, a, s);
    EXPECT_NEAR(distance(pole(S2), t.base()), s / std::sqrt(1 + a * a), 1e-15);
    EXPECT_NEAR(t.norm(), 1.0, 1e-14);
  }
}

TEST(Pipeline, CurveIsAMaximalLengthGCurve) {
  const Pipeline& p = pipeline();
  EXPECT_TRUE(is_g_curve(p.curve, 1e-6).ok);
  const MaximalLengthReport m = verify_maximal_length(p.curve, p.prof);
  EXPECT_TRUE(m.ok);
  EXPECT_LT(m.max_perimeter_defect, 1e-3);
  EXPECT_LT(m.max_winding_defect, 1e-3);
  EXPECT_LE(m.tangent_support_violation, 1e-6);
  EXPECT_LE(m.normal_support_violation, 1e-6);
  EXPECT_LT(m.closure_defect, 1e-3);
  EXPECT_GT(m.checked, 100u);
}

TEST(Pipeline, LengthEqualsHullPerimeter) {
  // Equality case: the polyline overshoots the hull perimeter by O(ds^2).
  const LengthBoundReport coarse = verify_length_bound(pipeline().curve, 1.0, 1.0, 50, 1e-6);
  EXPECT_LT(std::abs(coarse.length - coarse.hull_perimeter), 1e-4 * coarse.length);
  EXPECT_GT(coarse.min_cos_sum, 1.0 - 1e-3);
  EXPECT_LE(coarse.max_opening, kPi / 2 + 1e-6);
  IntegrationOptions fine_opts;
  fine_opts.kappa_step = 0.0125;
  fine_opts.max_step = 0.0025;
  const LengthBoundReport fine = verify_length_bound(self_involute_curve(pipeline().prof, fine_opts), 1.0, 1.0, 50, 1e-6);
  EXPECT_LT(std::abs(fine.length - fine.hull_perimeter), std::abs(coarse.length - coarse.hull_perimeter) / 10.0);
  EXPECT_LT(std::abs(fine.length - fine.hull_perimeter), 1e-5 * fine.length);
}

TEST(Pipeline, FundamentalPairIsTrivial) {
  const FundamentalPair fp = fundamental_pair(pipeline().curve);
  EXPECT_LT(std::abs(fp.rotation_angle), 1e-3);
  EXPECT_FALSE(fp.reflect);
  EXPECT_NEAR(fp.a * pipeline().sol.params.A, 1.0, 1e-3);
}

TEST(Pipeline, RebuiltProfileAgreesWithTheOriginal) {
  const Pipeline& p = pipeline();
  const SelfInvoluteProfile rebuilt = profile_from_curve(p.curve);
  for (int i = 1; i <= 10; ++i) {
    const double s = p.prof.s0() * i / 10.0;
    EXPECT_NEAR(rebuilt.tau_at(s) / p.prof.tau_at(s), 1.0, 1e-3);
  }
}

TEST(MaximalLength, EuclideanLimitSpiral) {
  const double a = solve_fundamental_a();
  const MaximalLengthReport m = verify_maximal_length(limit_spiral(a, 1.0), SelfInvoluteProfile::spiral(a, 1.0));
  EXPECT_TRUE(m.ok);
  EXPECT_LT(m.max_perimeter_defect, 1e-3);
  EXPECT_LT(m.max_winding_defect, 1e-3);
}

TEST(MaximalLength, GeodesicsViolateThePrecondition) {
  const Curve g = make_geodesic(pole(S2), unit_at(pole(S2), 0.0), 0.2, 50);
  EXPECT_ERROR_CODE(verify_maximal_length(g, pipeline().prof), ContractViolation);
}
