#include <stdexcept>
#include <cmath>

#include <doctest.h>

#include "wlde/optimize.hpp"

using namespace wlde;

namespace {

// Cheap bistable setting with a low threshold: a pulse slightly above it
// nucleates, one below decays.
OptimizeConfig cheap_config() {
  OptimizeConfig config{LatticeConfig::line(128, 0.25),
                        GrowthParams(0.2, 0.9)};
  config.delta = 0.2;
  config.kernel = KernelSpec::laplace(4.0);
  config.half_width = 0.5;
  config.generations = 150;
  config.horizon = 150;
  config.beta = 0.9;
  config.a_lo = 0.05;
  config.a_hi = 1.0;
  config.metric = SuccessMetric::center;
  return config;
}

Trajectory run_release(const OptimizeConfig& config, double amplitude) {
  ReleaseProfile release{config.shape, amplitude, config.half_width, 0.0, 0.0};
  const auto kernel = discretize(
      config.kernel, 1,
      config.kernel_radius > 0
          ? config.kernel_radius
          : default_truncation_radius(config.kernel, config.lattice.nx));
  return simulate(config.lattice, release, config.growth,
                  DispersalSetting(config.delta), kernel, config.generations);
}

}  // namespace

TEST_CASE("invasion success statistics") {
  Trajectory traj;
  traj.config = LatticeConfig::line(32);
  traj.stride = 1;
  traj.generations = 0;
  LatticeField ones;
  ones.values.assign(32, 1.0);
  traj.fields.push_back(ones);
  CHECK(invasion_success(traj, 0.9, SuccessMetric::mean));
  CHECK(invasion_success(traj, 0.9, SuccessMetric::center));
  CHECK(invasion_success(traj, 0.9, SuccessMetric::min_interior));

  traj.fields.back().values.assign(32, 0.0);
  CHECK_FALSE(invasion_success(traj, 0.9, SuccessMetric::mean));

  // Saturated center, empty edges: the statistics disagree by design.
  for (int i = 10; i < 22; ++i) traj.fields.back().values[std::size_t(i)] = 1.0;
  CHECK(invasion_success(traj, 0.9, SuccessMetric::center));
  CHECK_FALSE(invasion_success(traj, 0.9, SuccessMetric::mean));
  CHECK_FALSE(invasion_success(traj, 0.9, SuccessMetric::min_interior));
}

TEST_CASE("acm bisection brackets and re-verifies the flip") {
  OptimizeConfig config = cheap_config();
  config.l_grid = {0.5};
  const auto result = acm_optimize(config);
  CHECK(result.found);
  CHECK(result.criterion == "ACM");
  CHECK(result.l_star == 0.5);
  CHECK(result.a_star > config.growth.allee_threshold());
  CHECK(result.cost == doctest::Approx(2.0 * result.a_star * 0.5));
  // The success predicate flips across [a* - tau, a* + tau].
  CHECK(invasion_success(run_release(config, result.a_star), config.beta,
                         config.metric));
  CHECK_FALSE(invasion_success(run_release(config, result.a_star - config.tau_a),
                               config.beta, config.metric));
}

TEST_CASE("acm reports bracket errors") {
  // No invasion is possible when even a_hi stays below the threshold.
  OptimizeConfig config = cheap_config();
  config.l_grid = {0.5};
  config.a_hi = 0.15;  // below the Allee threshold 2/9
  CHECK_THROWS_AS(acm_optimize(config), bracket_error);

  // Success already at a_lo is likewise a mis-specified interval.
  OptimizeConfig wide = cheap_config();
  wide.l_grid = {4.0};
  wide.a_lo = 0.9;
  CHECK_THROWS_AS(acm_optimize(wide), bracket_error);
}

TEST_CASE("acm minimizes cost over the half-width grid") {
  OptimizeConfig config = cheap_config();
  config.l_grid = default_l_grid();
  REQUIRE(config.l_grid.size() == 8);
  CHECK(config.l_grid.front() == doctest::Approx(0.25));
  CHECK(config.l_grid.back() == doctest::Approx(4.0));
  const auto result = acm_optimize(config);
  CHECK(result.found);
  // The chosen cell's cost must match its own (a*, L*).
  CHECK(result.cost == doctest::Approx(2.0 * result.a_star * result.l_star));
}

TEST_CASE("mcm finds the first modality switch") {
  OptimizeConfig config = cheap_config();
  config.outbreak_size = 1;
  const auto result = mcm_optimize(config);
  CHECK(result.found);
  CHECK(result.criterion == "MCM");
  CHECK(result.outbreak_size == 1);
  CHECK(result.a_star > config.a_lo);
  CHECK(result.a_star < config.a_hi);
  CHECK(result.cost == doctest::Approx(2.0 * result.a_star * config.half_width));
  REQUIRE_FALSE(result.scan_trace.empty());
  // The reported amplitude was observed bimodal during the search.
  bool seen = false;
  for (const auto& [a, modes] : result.scan_trace) {
    if (a == result.a_star && modes == 2) seen = true;
  }
  CHECK(seen);

  // MCM a* is nondecreasing in the outbreak size.
  OptimizeConfig k2 = config;
  k2.outbreak_size = 2;
  const auto result2 = mcm_optimize(k2);
  CHECK(result2.found);
  CHECK(result2.a_star >= result.a_star);
}

TEST_CASE("mcm reports a meaningful not-found") {
  OptimizeConfig config = cheap_config();
  config.a_hi = 0.12;  // decay regime: the curve stays unimodal
  const auto result = mcm_optimize(config);
  CHECK_FALSE(result.found);
  CHECK(result.note == "no bimodal regime in [a_lo, a_hi]");
}

TEST_CASE("profile comparison preserves the release-mass ordering") {
  OptimizeConfig config = cheap_config();
  config.half_width = 2.0;
  const std::vector<ProfileShape> shapes = {
      ProfileShape::pulse, ProfileShape::quadratic, ProfileShape::triangular};
  const auto results = critical_amplitude_by_profile(shapes, config);
  REQUIRE(results.size() == 3);
  for (const auto& r : results) CHECK(r.found);
  CHECK(results[0].a_star <= results[1].a_star);
  CHECK(results[1].a_star <= results[2].a_star);

  // A single profile reduces to mcm_optimize.
  const auto single = critical_amplitude_by_profile({ProfileShape::pulse}, config);
  OptimizeConfig direct = config;
  direct.shape = ProfileShape::pulse;
  CHECK(single[0].a_star == doctest::Approx(mcm_optimize(direct).a_star));
}

TEST_CASE("comparison table completes cells independently") {
  CompareGrid empty{cheap_config()};
  const auto none = compare_table(empty);
  CHECK(none.mcm.empty());
  CHECK(none.acm.empty());

  CompareGrid grid{cheap_config()};
  grid.kernels = {{"laplace", KernelSpec::laplace(4.0)},
                  {"gaussian", KernelSpec::gaussian(4.0)}};
  grid.profiles = {ProfileShape::pulse};
  grid.outbreak_sizes = {1};
  grid.threads = 1;
  const auto serial = compare_table(grid);
  REQUIRE(serial.mcm.size() == 2);
  REQUIRE(serial.acm.size() == 2);
  CHECK(serial.mcm[0].result.found);
  CHECK(serial.acm[0].result.found);

  grid.threads = 4;
  const auto parallel = compare_table(grid);
  for (std::size_t i = 0; i < serial.mcm.size(); ++i) {
    CHECK(serial.mcm[i].result.a_star == parallel.mcm[i].result.a_star);
  }
  for (std::size_t i = 0; i < serial.acm.size(); ++i) {
    CHECK(serial.acm[i].result.a_star == parallel.acm[i].result.a_star);
  }
}
