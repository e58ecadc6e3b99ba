#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gcurves/error.hpp"
#include "gcurves/interpolation.hpp"
#include "support.hpp"

using namespace gcurves;

TEST(MonotoneCubicTest, InterpolatesNodes) {
  const std::vector<double> x{0.0, 0.5, 1.5, 2.0, 4.0}, y{0.0, 0.1, 1.0, 1.1, 3.0};
  const MonotoneCubic f(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_DOUBLE_EQ(f(x[i]), y[i]);
}

TEST(MonotoneCubicTest, ReproducesLinearData) {
  std::vector<double> x, y;
  for (int i = 0; i <= 20; ++i) x.push_back(0.1 * i * i), y.push_back(3.0 * 0.1 * i * i - 1.0);
  const MonotoneCubic f(x, y);
  for (double q = 0.0; q <= 40.0; q += 0.37) {
    EXPECT_NEAR(f(q), 3.0 * q - 1.0, 1e-12);
    EXPECT_NEAR(f.derivative(q), 3.0, 1e-12);
  }
}

TEST(MonotoneCubicTest, NoOvershootOnStepData) {
  const std::vector<double> x{0, 1, 2, 3, 4, 5}, y{0, 0, 0, 1, 1, 1};
  const MonotoneCubic f(x, y);
  double prev = -1.0;
  for (double q = 0.0; q <= 5.0; q += 1e-3) {
    const double v = f(q);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    EXPECT_GE(v, prev - 1e-15);
    prev = v;
  }
}

TEST(MonotoneCubicTest, RandomMonotoneDataStaysMonotone) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x{0.0}, y{0.0}, d{U(rng)};
    for (int i = 0; i < 30; ++i) {
      x.push_back(x.back() + 0.01 + U(rng));
      y.push_back(y.back() + (U(rng) < 0.3 ? 0.0 : U(rng)));
      d.push_back(5.0 * U(rng));  // deliberately wild slopes
    }
    const MonotoneCubic f(x, y, d);
    double prev = f(x.front());
    for (int k = 1; k <= 3000; ++k) {
      const double v = f(x.front() + (x.back() - x.front()) * k / 3000.0);
      ASSERT_GE(v, prev - 1e-12);
      prev = v;
    }
  }
}

TEST(MonotoneCubicTest, HermiteWithExactSlopesIsFourthOrder) {
  auto err = [](int n) {
    std::vector<double> x, y, d;
    for (int i = 0; i <= n; ++i) {
      const double t = 1.0 * i / n;
      x.push_back(t), y.push_back(std::sin(t)), d.push_back(std::cos(t));
    }
    const MonotoneCubic f(x, y, d);
    double e = 0.0;
    for (int k = 0; k <= 1000; ++k) e = std::max(e, std::abs(f(k / 1000.0) - std::sin(k / 1000.0)));
    return e;
  };
  const double e1 = err(10), e2 = err(20);
  EXPECT_GT(e1 / e2, 12.0);
}

TEST(MonotoneCubicTest, RangeAndInputErrors) {
  const MonotoneCubic f({0.0, 1.0, 2.0}, {0.0, 1.0, 2.0});
  EXPECT_NO_THROW(f(2.0 + 1e-14));
  EXPECT_ERROR_CODE(f(2.1), Range);
  EXPECT_ERROR_CODE(f(-0.1), Range);
  EXPECT_ERROR_CODE(MonotoneCubic({0.0, 0.0, 1.0}, {0.0, 1.0, 2.0}), ContractViolation);
  EXPECT_ERROR_CODE(MonotoneCubic({0.0, 1.0}, {0.0}), ContractViolation);
}
