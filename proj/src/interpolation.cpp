#include "gcurves/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "gcurves/error.hpp"

namespace gcurves {

namespace {

int sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    delta[i] = (y[i + 1] - y[i]) / h[i];
  }
  if (n == 2) {
    d[0] = d[1] = delta[0];
    return d;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (sign(delta[i - 1]) * sign(delta[i]) <= 0) {
      d[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  // One-sided three-point end slopes, limited as in Moler's pchip.
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (sign(s) != sign(d0)) s = 0.0;
    else if (sign(d0) != sign(d1) && std::abs(s) > std::abs(3.0 * d0)) s = 3.0 * d0;
    return s;
  };
  d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

void limit_slopes(const std::vector<double>& x, const std::vector<double>& y, std::vector<double>& d) {
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double delta = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    if (delta == 0.0) {
      d[i] = d[i + 1] = 0.0;
      continue;
    }
    if (sign(d[i]) == -sign(delta)) d[i] = 0.0;
    if (sign(d[i + 1]) == -sign(delta)) d[i + 1] = 0.0;
    const double a = d[i] / delta, b = d[i + 1] / delta;
    const double r2 = a * a + b * b;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      d[i] = tau * a * delta;
      d[i + 1] = tau * b * delta;
    }
  }
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  validate();
  d_ = pchip_slopes(x_, y_);
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y, std::vector<double> slopes)
    : x_(std::move(x)), y_(std::move(y)), d_(std::move(slopes)) {
  validate();
  if (d_.size() != x_.size()) throw Error(ErrorCode::ContractViolation, "slope count does not match nodes");
  limit_slopes(x_, y_, d_);
}

void MonotoneCubic::validate() const {
  if (x_.size() != y_.size()) throw Error(ErrorCode::ContractViolation, "interpolation table size mismatch");
  if (x_.size() < 2) throw Error(ErrorCode::ContractViolation, "interpolation needs at least two nodes");
  for (std::size_t i = 0; i + 1 < x_.size(); ++i)
    if (!(x_[i + 1] > x_[i])) throw Error(ErrorCode::ContractViolation, "interpolation nodes must increase strictly");
}

std::size_t MonotoneCubic::locate(double& xq) const {
  const double span = x_.back() - x_.front();
  const double slack = 1e-12 * std::max(span, std::abs(x_.back()));
  if (!(xq >= x_.front() - slack && xq <= x_.back() + slack))
    throw Error(ErrorCode::Range, "interpolation query outside the table");
  xq = std::clamp(xq, x_.front(), x_.back());
  auto it = std::upper_bound(x_.begin(), x_.end(), xq);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i == 0) i = 1;
  if (i >= x_.size()) i = x_.size() - 1;
  return i - 1;
}

double MonotoneCubic::operator()(double xq) const {
  const std::size_t i = locate(xq);
  const double h = x_[i + 1] - x_[i];
  const double t = (xq - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double MonotoneCubic::derivative(double xq) const {
  const std::size_t i = locate(xq);
  const double h = x_[i + 1] - x_[i];
  const double t = (xq - x_[i]) / h;
  const double t2 = t * t;
  const double d00 = (6 * t2 - 6 * t) / h, d10 = 3 * t2 - 4 * t + 1;
  const double d01 = (-6 * t2 + 6 * t) / h, d11 = 3 * t2 - 2 * t;
  return d00 * y_[i] + d10 * d_[i] + d01 * y_[i + 1] + d11 * d_[i + 1];
}

}  // namespace gcurves
