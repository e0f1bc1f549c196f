#pragma once

#include <array>

namespace wlde {

/// Bistable growth map for the local infection frequency,
///
///   f(v) = (1 - s_f) v / (s_h v^2 - (s_h + s_f) v + 1),
///
/// where s_f is the relative fitness cost of infected hosts and s_h the
/// incompatibility intensity.  For 0 < s_f < s_h < 1 the map has fixed
/// points 0, s_f/s_h and 1; the interior one is the invasion (Allee)
/// threshold: frequencies below it decay to 0, above it grow to 1.
class GrowthParams {
 public:
  // Requires 0 < s_f < s_h < 1.  The denominator of f is then strictly
  // positive on [0,1] (checked at its minimum anyway).
  GrowthParams(double fitness_cost, double ci_intensity);

  // Alternative parameterization by the threshold A = s_f / s_h.
  static GrowthParams from_allee(double ci_intensity, double allee_threshold);

  double fitness_cost() const { return s_f_; }
  double ci_intensity() const { return s_h_; }
  double allee_threshold() const { return s_f_ / s_h_; }

  // f(v).  Throws std::domain_error if v is outside [0,1] by more than
  // 1e-12; values within that tolerance are clamped.
  double evaluate(double v) const;

  // Analytic f'(v).  Simplifies to (1-s_f)(1 - s_h v^2) / d(v)^2 with
  // d(v) the denominator of f, so f is strictly increasing on [0,1].
  //
  // Note: at v=1 this gives (1-s_h)/(1-s_f) < 1.  Some write-ups quote
  // the reciprocal; finite differences confirm the value used here.
  double derivative(double v) const;

  // {0, s_f/s_h, 1} in ascending order.
  std::array<double, 3> fixed_points() const;

 private:
  double s_f_;
  double s_h_;
};

}  // namespace wlde
