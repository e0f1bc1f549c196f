#include "wlde/growth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wlde {

namespace {

constexpr double kFrequencyTol = 1e-12;

double checked_frequency(double v) {
  if (!(v >= -kFrequencyTol && v <= 1.0 + kFrequencyTol)) {
    throw std::domain_error("growth: frequency " + std::to_string(v) +
                            " outside [0,1]");
  }
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace

GrowthParams::GrowthParams(double fitness_cost, double ci_intensity)
    : s_f_(fitness_cost), s_h_(ci_intensity) {
  if (!(s_f_ > 0.0 && s_f_ < s_h_ && s_h_ < 1.0)) {
    throw std::invalid_argument(
        "growth: requires 0 < s_f < s_h < 1, got s_f=" + std::to_string(s_f_) +
        " s_h=" + std::to_string(s_h_));
  }
  // Denominator d(v) = s_h v^2 - (s_h+s_f) v + 1; its minimum over [0,1]
  // sits at v = (s_h+s_f)/(2 s_h).
  const double v_min = std::clamp((s_h_ + s_f_) / (2.0 * s_h_), 0.0, 1.0);
  const double d_min = s_h_ * v_min * v_min - (s_h_ + s_f_) * v_min + 1.0;
  if (!(d_min > 0.0)) {
    throw std::invalid_argument(
        "growth: denominator of f not positive on [0,1] (min " +
        std::to_string(d_min) + ")");
  }
}

GrowthParams GrowthParams::from_allee(double ci_intensity,
                                      double allee_threshold) {
  if (!(allee_threshold > 0.0 && allee_threshold < 1.0)) {
    throw std::invalid_argument("growth: Allee threshold must lie in (0,1)");
  }
  return GrowthParams(allee_threshold * ci_intensity, ci_intensity);
}

double GrowthParams::evaluate(double v) const {
  v = checked_frequency(v);
  const double denom = s_h_ * v * v - (s_h_ + s_f_) * v + 1.0;
  // The image lies in [0,1]; rounding can edge a hair past 1 for nearly
  // degenerate parameter pairs.
  return std::clamp((1.0 - s_f_) * v / denom, 0.0, 1.0);
}

double GrowthParams::derivative(double v) const {
  v = checked_frequency(v);
  const double denom = s_h_ * v * v - (s_h_ + s_f_) * v + 1.0;
  return (1.0 - s_f_) * (1.0 - s_h_ * v * v) / (denom * denom);
}

std::array<double, 3> GrowthParams::fixed_points() const {
  return {0.0, s_f_ / s_h_, 1.0};
}

}  // namespace wlde
