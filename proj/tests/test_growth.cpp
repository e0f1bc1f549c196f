#include <stdexcept>
#include <cmath>
#include <random>

#include <doctest.h>

#include "wlde/growth.hpp"

using wlde::GrowthParams;

namespace {

// Independent derivative oracle: central finite difference.
double fd_derivative(const GrowthParams& g, double v, double h = 1e-6) {
  return (g.evaluate(v + h) - g.evaluate(v - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("growth map fixed-point values") {
  const GrowthParams g(0.3, 0.7);
  CHECK(g.evaluate(0.0) == 0.0);
  CHECK(g.evaluate(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  // Interior fixed point 3/7: substitute v = s_f/s_h into the map.
  const double a = 3.0 / 7.0;
  CHECK(std::abs(g.evaluate(a) - a) <= 1e-12);
  CHECK(g.allee_threshold() == doctest::Approx(a));
}

TEST_CASE("growth fixed points are ordered and complete") {
  {
    const auto fp = GrowthParams(0.3, 0.7).fixed_points();
    CHECK(fp[0] == 0.0);
    CHECK(fp[1] == doctest::Approx(3.0 / 7.0));
    CHECK(fp[2] == 1.0);
  }
  {
    const auto fp = GrowthParams(0.2, 0.9).fixed_points();
    CHECK(fp[1] == doctest::Approx(2.0 / 9.0));
  }
  {
    // Near-degenerate pair: the interior point approaches 1.
    const auto fp = GrowthParams::from_allee(0.9, 0.999).fixed_points();
    CHECK(fp[1] == doctest::Approx(0.999));
    CHECK(fp[1] < 1.0);
  }
}

TEST_CASE("growth derivative closed forms") {
  const GrowthParams g(0.3, 0.7);
  CHECK(g.derivative(0.0) == doctest::Approx(0.7).epsilon(1e-12));

  // The quotient rule gives f'(1) = (1-s_h)/(1-s_f) < 1, not its
  // reciprocal; the finite-difference oracle settles it.
  const double slope_at_one = g.derivative(1.0);
  CHECK(slope_at_one == doctest::Approx((1.0 - 0.7) / (1.0 - 0.3)));
  CHECK(slope_at_one < 1.0);
  const double h = 1e-6;
  const double fd_near_one = fd_derivative(g, 1.0 - h);
  CHECK(std::abs(fd_near_one - g.derivative(1.0 - h)) <=
        1e-6 * std::abs(fd_near_one));

  // At the interior fixed point the slope is (s_h - s_f^2)/(s_h - s_h s_f).
  const GrowthParams g2(0.2, 0.9);
  const double slope_mid = g2.derivative(g2.allee_threshold());
  CHECK(slope_mid == doctest::Approx((0.9 - 0.04) / (0.9 - 0.18)));
  CHECK(slope_mid > 1.0);
  CHECK(slope_mid == doctest::Approx(1.19444).epsilon(1e-4));
}

TEST_CASE("growth derivative matches finite differences") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double s_h = 0.1 + 0.85 * unif(rng);
    const double s_f = s_h * (0.05 + 0.9 * unif(rng));
    const GrowthParams g(s_f, s_h);
    const double v = 0.01 + 0.98 * unif(rng);
    const double fd = fd_derivative(g, v);
    CHECK(std::abs(g.derivative(v) - fd) <= 1e-6 * std::abs(fd));
  }
}

TEST_CASE("growth map is increasing and bistable") {
  for (double s_h : {0.2, 0.5, 0.7, 0.9, 0.99}) {
    for (double frac : {0.1, 0.4, 0.7, 0.95}) {
      const GrowthParams g(frac * s_h, s_h);
      const double a = g.allee_threshold();
      double prev = g.evaluate(0.0);
      for (int i = 1; i <= 1000; ++i) {
        const double v = double(i) / 1000.0;
        const double fv = g.evaluate(v);
        CHECK(fv > prev);  // strictly increasing
        CHECK(fv >= 0.0);
        CHECK(fv <= 1.0);
        if (v < a - 1e-9) CHECK(fv < v);
        if (v > a + 1e-9 && v < 1.0) CHECK(fv > v);
        prev = fv;
      }
    }
  }
}

TEST_CASE("growth parameterizations and validation") {
  const GrowthParams g = GrowthParams::from_allee(0.8, 0.4);
  CHECK(g.fitness_cost() == doctest::Approx(0.32));
  CHECK(g.ci_intensity() == doctest::Approx(0.8));

  // Round trip with fixed_points.
  const GrowthParams g2 = GrowthParams::from_allee(0.7, 3.0 / 7.0);
  CHECK(g2.fitness_cost() == doctest::Approx(0.3));

  CHECK_THROWS_AS(GrowthParams(0.7, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(GrowthParams(0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(GrowthParams(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(GrowthParams(0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GrowthParams::from_allee(0.8, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(GrowthParams::from_allee(0.8, 1.0), std::invalid_argument);

  const GrowthParams g3(0.3, 0.7);
  CHECK_THROWS_AS(g3.evaluate(-1e-6), std::domain_error);
  CHECK_THROWS_AS(g3.evaluate(1.0 + 1e-6), std::domain_error);
  // Within tolerance the argument is clamped, not rejected.
  CHECK(g3.evaluate(-1e-13) == 0.0);
  CHECK(g3.evaluate(1.0 + 1e-13) == doctest::Approx(1.0));
}
