#include <stdexcept>
#include <cmath>

#include <doctest.h>

#include "wlde/waves.hpp"

using namespace wlde;

namespace {

LatticeConfig left_origin_line(int nx) {
  LatticeConfig c = LatticeConfig::line(nx);
  c.origin_x = 0;  // positions in raw site units
  return c;
}

// Rigidly translating ramp: v(x, t) = clamp(1 - slope * (x - c t)).
Trajectory translating_front(int nx, int generations, double speed,
                             double slope = 0.1) {
  Trajectory traj;
  traj.config = left_origin_line(nx);
  traj.stride = 1;
  traj.generations = generations;
  for (int t = 0; t <= generations; ++t) {
    LatticeField f;
    f.generation = t;
    f.values.resize(std::size_t(nx));
    for (int i = 0; i < nx; ++i) {
      const double u = 1.0 - slope * (i - speed * t - 10.0);
      f.values[std::size_t(i)] = std::clamp(u, 0.0, 1.0);
    }
    traj.fields.push_back(std::move(f));
  }
  return traj;
}

}  // namespace

TEST_CASE("front position interpolates the rightmost crossing") {
  const LatticeConfig config = left_origin_line(20);
  LatticeField field;
  field.values.assign(20, 0.0);
  for (int i = 0; i <= 9; ++i) field.values[std::size_t(i)] = 1.0;
  CHECK(front_position(config, field, 0.5) == doctest::Approx(9.5));

  // Homogeneous fields have no crossing.
  LatticeField flat;
  flat.values.assign(20, 0.7);
  CHECK_FALSE(front_position(config, flat, 0.5).has_value());
  CHECK_THROWS_AS(front_position(config, field, 0.0), std::invalid_argument);
}

TEST_CASE("local speed conventions") {
  // Homogeneous fixed point: zero by convention.
  Trajectory fixed;
  fixed.config = left_origin_line(16);
  fixed.stride = 1;
  fixed.generations = 1;
  for (int t = 0; t < 2; ++t) {
    LatticeField f;
    f.generation = t;
    f.values.assign(16, 0.42);
    fixed.fields.push_back(std::move(f));
  }
  CHECK(local_speed(fixed, 5, 0) == doctest::Approx(0.0));

  // Flat in space but changing in time: undefined.
  fixed.fields[1].values.assign(16, 0.5);
  CHECK_FALSE(local_speed(fixed, 5, 0).has_value());

  // Rigid translation at one cell per generation.
  const auto traj = translating_front(64, 4, 1.0);
  const auto c = local_speed(traj, 20, 1);
  REQUIRE(c.has_value());
  CHECK(*c == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("asymptotic speed of a synthetic front is exact") {
  const auto traj = translating_front(512, 120, 1.0);
  const auto est = asymptotic_speed(traj, 0.5, 0.25);
  CHECK_FALSE(est.died);
  CHECK(est.c_star == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(est.residual <= 1e-9);
  CHECK(est.method == "front-regression");
}

TEST_CASE("a sub-threshold release dies with speed zero") {
  WaveExperimentConfig cfg{LatticeConfig::line(128),
                           GrowthParams::from_allee(0.8, 0.4)};
  cfg.delta = 0.3;
  cfg.kernel = KernelSpec::gaussian(1.0);
  cfg.release_amplitude = 0.2;  // below the Allee threshold
  cfg.generations = 120;
  const auto run = run_wave_experiment(cfg);
  CHECK(run.speed.died);
  CHECK(run.speed.c_star == 0.0);
}

TEST_CASE("established fronts advance monotonically after burn-in") {
  WaveExperimentConfig cfg{LatticeConfig::line(400),
                           GrowthParams::from_allee(0.8, 0.4)};
  cfg.delta = 0.4;
  cfg.kernel = KernelSpec::gaussian(1.0);
  cfg.generations = 200;
  const auto run = run_wave_experiment(cfg);
  const int burn_in = 50;  // first 25%
  for (std::size_t t = burn_in; t + 1 < run.front.position.size(); ++t) {
    REQUIRE(run.front.valid[t]);
    CHECK(run.front.position[t + 1] >= run.front.position[t] - 1e-9);
  }
}

TEST_CASE("regression and difference-quotient speeds agree on light tails") {
  for (const auto& nk :
       {NamedKernel{"gaussian", KernelSpec::gaussian(1.0), 0},
        NamedKernel{"uniform", KernelSpec::uniform(), 1}}) {
    WaveExperimentConfig cfg{LatticeConfig::line(400),
                             GrowthParams::from_allee(0.8, 0.4)};
    cfg.delta = 0.4;
    cfg.kernel = nk.spec;
    cfg.kernel_radius = nk.radius;
    cfg.generations = 400;
    const auto run = run_wave_experiment(cfg);
    REQUIRE_FALSE(run.speed.died);
    double sum = 0.0;
    int count = 0;
    for (int t = run.speed.window_begin; t < run.speed.window_end; ++t) {
      const double c = run.speed.c_series[std::size_t(t)];
      if (!std::isnan(c)) {
        sum += c;
        ++count;
      }
    }
    REQUIRE(count >= 20);
    const double quotient_mean = sum / count;
    CHECK(std::abs(quotient_mean - run.speed.c_star) <=
          0.10 * std::abs(run.speed.c_star));
  }
}

TEST_CASE("wrap guard aborts when the front nears the boundary") {
  WaveExperimentConfig cfg{LatticeConfig::line(96),
                           GrowthParams::from_allee(0.8, 0.2)};
  cfg.delta = 0.5;
  cfg.kernel = KernelSpec::gaussian(2.0);
  cfg.generations = 300;  // plenty of time to reach the edge
  CHECK_THROWS_AS(run_wave_experiment(cfg), std::runtime_error);
  cfg.guard_wrap = false;
  CHECK_NOTHROW(run_wave_experiment(cfg));
}

TEST_CASE("single-point sweep matches a direct run") {
  WaveExperimentConfig base{LatticeConfig::line(256),
                            GrowthParams::from_allee(0.8, 0.4)};
  base.delta = 0.4;
  base.kernel = KernelSpec::gaussian(1.0);
  base.generations = 150;
  const std::vector<NamedKernel> kernels = {
      {"gaussian", KernelSpec::gaussian(1.0), 0}};
  const auto rows = wave_speed_sweep(SweepAxis::delta, {0.4}, base, kernels);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].error.empty());
  const auto direct = run_wave_experiment(base);
  CHECK(rows[0].c_star == doctest::Approx(direct.speed.c_star));

  CHECK_THROWS_AS(wave_speed_sweep(SweepAxis::delta, {}, base, kernels),
                  std::invalid_argument);
}

TEST_CASE("sweep records cell failures inline and continues") {
  WaveExperimentConfig base{LatticeConfig::line(96),
                            GrowthParams::from_allee(0.8, 0.3)};
  base.delta = 0.5;
  base.kernel = KernelSpec::gaussian(1.0);
  base.generations = 260;
  const std::vector<NamedKernel> kernels = {
      {"gaussian", KernelSpec::gaussian(2.0), 0},  // hits the wrap guard
      {"uniform", KernelSpec::uniform(), 1}};
  const auto rows =
      wave_speed_sweep(SweepAxis::allee, {0.2, 0.45}, base, kernels, 2);
  REQUIRE(rows.size() == 4);
  // The fast low-threshold gaussian cell trips the guard on this narrow
  // lattice; the slower cells complete.
  CHECK_FALSE(rows[0].error.empty());
  CHECK(rows[3].error.empty());
}

TEST_CASE("kernel bank carries the four tabulated families") {
  const auto bank = matched_kernel_bank(1.0, 400);
  REQUIRE(bank.size() == 4);
  CHECK(bank[0].name == "cauchy");
  CHECK(bank[0].spec.scale == doctest::Approx(1.0));
  CHECK(bank[0].radius == 199);
  CHECK(bank[1].name == "powerlaw");
  CHECK(bank[2].name == "gaussian");
  CHECK(bank[3].name == "uniform");
  CHECK(bank[3].radius == 1);
  CHECK_THROWS_AS(matched_kernel_bank(0.0, 400), std::invalid_argument);
}
