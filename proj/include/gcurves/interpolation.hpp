#pragma once

#include <vector>

namespace gcurves {

/// Shape-preserving piecewise cubic Hermite interpolant. Monotone data gives a
/// monotone interpolant without overshoot. Slopes are either estimated from
/// the data (PCHIP) or supplied, in which case they are limited with the
/// Fritsch-Carlson condition so monotonicity still holds.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  MonotoneCubic(std::vector<double> x, std::vector<double> y, std::vector<double> slopes);

  /// Evaluate at xq. Queries outside [front, back] by more than a relative
  /// 1e-12 raise a range error; closer ones are clamped.
  double operator()(double xq) const;
  double derivative(double xq) const;

  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  bool empty() const { return x_.empty(); }
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

 private:
  void validate() const;
  std::size_t locate(double& xq) const;

  std::vector<double> x_, y_, d_;
};

/// PCHIP slope estimates for strictly increasing x.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y);

/// Clamp slopes so each Hermite segment is monotone (Fritsch-Carlson).
void limit_slopes(const std::vector<double>& x, const std::vector<double>& y, std::vector<double>& d);

}  // namespace gcurves
