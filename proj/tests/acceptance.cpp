// Acceptance suite: one test case per criterion, each printing a
// [PASS]/[FAIL] line.  Tolerances and thresholds are pinned here.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include <doctest.h>

#include "wlde/outbreak.hpp"
#include "wlde/runner.hpp"
#include "wlde/stability.hpp"
#include "wlde/waves.hpp"

using namespace wlde;
namespace fs = std::filesystem;

namespace {

struct PassLine {
  const char* text;
  bool passed = false;
  ~PassLine() {
    std::printf("[%s] %s\n", passed ? "PASS" : "FAIL", text);
    std::fflush(stdout);
  }
};

double fd_derivative(const GrowthParams& g, double v, double h = 1e-6) {
  return (g.evaluate(v + h) - g.evaluate(v - h)) / (2.0 * h);
}

std::vector<double> enumerate_pmf(const std::vector<double>& p) {
  const int m = int(p.size());
  std::vector<double> pmf(static_cast<std::size_t>(m) + 1, 0.0);
  for (uint64_t mask = 0; mask < (uint64_t(1) << m); ++mask) {
    double prob = 1.0;
    int successes = 0;
    for (int j = 0; j < m; ++j) {
      if (mask & (uint64_t(1) << j)) {
        prob *= p[std::size_t(j)];
        ++successes;
      } else {
        prob *= 1.0 - p[std::size_t(j)];
      }
    }
    pmf[std::size_t(successes)] += prob;
  }
  return pmf;
}

// Frozen traveling-wave study configuration (the fig 3-6 analogs).
WaveExperimentConfig wave_config(int nx, double delta, double allee,
                                 int generations) {
  WaveExperimentConfig cfg{LatticeConfig::line(nx),
                           GrowthParams::from_allee(0.8, allee)};
  cfg.delta = delta;
  cfg.generations = generations;
  return cfg;
}

std::map<std::string, SpeedEstimate> bank_speeds(int nx, double delta,
                                                 double allee,
                                                 int generations) {
  std::map<std::string, SpeedEstimate> out;
  for (const auto& nk : matched_kernel_bank(1.0, nx)) {
    WaveExperimentConfig cfg = wave_config(nx, delta, allee, generations);
    cfg.kernel = nk.spec;
    cfg.kernel_radius = nk.radius;
    out[nk.name] = run_wave_experiment(cfg).speed;
  }
  return out;
}

}  // namespace

TEST_CASE("criterion 01: fixed-point suite") {
  PassLine line{"criterion 1: fixed-point and derivative suite"};
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double s_h = 0.1 + 0.85 * unif(rng);
    const double s_f = s_h * (0.05 + 0.9 * unif(rng));
    const GrowthParams g(s_f, s_h);
    REQUIRE(std::abs(g.evaluate(0.0)) <= 1e-12);
    REQUIRE(std::abs(g.evaluate(1.0) - 1.0) <= 1e-12);
    const double a = g.allee_threshold();
    REQUIRE(std::abs(g.evaluate(a) - a) <= 1e-12);
    const double v = 0.01 + 0.98 * unif(rng);
    const double fd = fd_derivative(g, v);
    REQUIRE(std::abs(g.derivative(v) - fd) <= 1e-6 * std::abs(fd));
  }
  line.passed = true;
}

TEST_CASE("criterion 02: stability concordance") {
  PassLine line{"criterion 2: Theorem-1 verdicts match perturbation runs"};
  const LatticeConfig lattice = LatticeConfig::line(64);
  const GridShape grid = lattice.shape();
  const uint64_t seed = 0x5eed;

  struct FamilyScales {
    KernelFamily family;
    std::vector<double> scales;  // radius for uniform
  };
  const std::vector<FamilyScales> bank = {
      {KernelFamily::cauchy, {0.5, 1.0, 2.0}},
      {KernelFamily::power_law, {2.5, 3.0, 4.0}},
      {KernelFamily::gaussian, {0.5, 1.0, 2.0}},
      {KernelFamily::uniform, {1.0, 2.0, 3.0}},
  };
  const std::vector<GrowthParams> params = {GrowthParams(0.3, 0.7),
                                            GrowthParams(0.2, 0.9)};

  for (const auto& fam : bank) {
    for (double scale : fam.scales) {
      DiscreteKernel kernel =
          fam.family == KernelFamily::uniform
              ? discretize(KernelSpec::uniform(), 1, int(scale))
              : discretize(KernelSpec{fam.family, scale}, 1,
                           default_truncation_radius(
                               KernelSpec{fam.family, scale}, lattice.nx));
      for (double delta : {0.1, 0.5, 0.9}) {
        for (const GrowthParams& growth : params) {
          for (double fp : growth.fixed_points()) {
            const auto report = classify(fp, growth, kernel, delta, grid);
            const auto outcome = verify_by_perturbation(
                fp, growth, kernel, delta, lattice, 1e-4, 200, seed);
            if (fp == 0.0 || fp == 1.0) {
              REQUIRE(report.verdict == StabilityVerdict::las);
              REQUIRE(outcome == PerturbationOutcome::decays);
            } else {
              REQUIRE(report.verdict == StabilityVerdict::uns);
              REQUIRE(outcome == PerturbationOutcome::grows);
            }
          }
        }
      }
    }
  }
  line.passed = true;
}

TEST_CASE("criterion 03: Allee threshold behavior") {
  PassLine line{"criterion 3: homogeneous states split at the threshold"};
  const LatticeConfig lattice = LatticeConfig::line(64);
  const GrowthParams growth = GrowthParams::from_allee(0.8, 0.4);
  const DispersalSetting dispersal(0.3);
  const std::vector<KernelSpec> kernels = {
      KernelSpec::cauchy(1.0), KernelSpec::power_law(3.0),
      KernelSpec::gaussian(1.0), KernelSpec::uniform(), KernelSpec::laplace(1.0)};

  for (const auto& spec : kernels) {
    const auto kernel =
        discretize(spec, 1, default_truncation_radius(spec, lattice.nx));
    for (bool above : {false, true}) {
      const double a = above ? 0.42 : 0.38;
      const double target = above ? 1.0 : 0.0;
      LatticeField field;
      field.values.assign(std::size_t(lattice.sites()), a);
      const auto traj =
          simulate_from(lattice, field, growth, dispersal, kernel, 500);
      double prev = 1.0;
      for (const auto& f : traj.fields) {
        double dist = 0.0;
        for (double v : f.values) dist = std::max(dist, std::abs(v - target));
        REQUIRE(dist <= prev + 1e-12);
        prev = dist;
      }
      REQUIRE(prev <= 1e-6);
    }
  }
  line.passed = true;
}

TEST_CASE("criterion 04: traveling-wave profiles") {
  PassLine line{"criterion 4: monotone fronts at t=150, Cauchy farthest"};
  const int nx = 512, snapshot = 150;  // width >= 400
  std::map<std::string, double> fronts;
  for (const auto& nk : matched_kernel_bank(1.0, nx)) {
    WaveExperimentConfig cfg = wave_config(nx, 0.1, 0.4, 200);
    cfg.kernel = nk.spec;
    cfg.kernel_radius = nk.radius;
    const auto run = run_wave_experiment(cfg);
    const LatticeField& field = run.trajectory.at_generation(snapshot);
    const auto pos = front_position(cfg.lattice, field, 0.5);
    REQUIRE(pos.has_value());
    fronts[nk.name] = *pos;

    // The profile connects ~1 behind the front to ~0 ahead of it.
    const int center = cfg.lattice.origin_x;
    REQUIRE(field.values[std::size_t(center)] >= 0.95);
    REQUIRE(field.values[std::size_t(nx - 1)] <= 0.05);

    // Monotone on the right half outside a 5-cell interface band.
    const int front_site = int(std::floor(*pos / cfg.lattice.spacing)) +
                           cfg.lattice.origin_x;
    for (int i = center; i + 1 < nx; ++i) {
      if (std::abs(i - front_site) <= 2 || std::abs(i + 1 - front_site) <= 2) {
        continue;
      }
      REQUIRE(field.values[std::size_t(i) + 1] <=
              field.values[std::size_t(i)] + 1e-6);
    }
  }
  REQUIRE(fronts.at("cauchy") > fronts.at("gaussian"));
  line.passed = true;
}

TEST_CASE("criterion 05: wave-speed ordering, delta growth, wave death") {
  PassLine line{"criterion 5: speed ordering, delta monotonicity, wave death"};

  // Ordering and magnitudes under the matched bank (the fig 6 analog).
  const auto speeds = bank_speeds(600, 0.4, 0.4, 300);
  const double c = speeds.at("cauchy").c_star;
  const double p = speeds.at("powerlaw").c_star;
  const double g = speeds.at("gaussian").c_star;
  const double u = speeds.at("uniform").c_star;
  REQUIRE(c > p);
  REQUIRE(p > g);
  REQUIRE(g > u);
  REQUIRE(c >= 0.5 * 0.1);
  REQUIRE(c <= 2.0 * 0.1);
  REQUIRE(p >= 0.5 * 0.06);
  REQUIRE(p <= 2.0 * 0.06);
  REQUIRE(g >= 0.5 * 0.05);
  REQUIRE(g <= 2.0 * 0.05);
  REQUIRE(u >= 0.5 * 0.04);
  REQUIRE(u <= 2.0 * 0.04);

  // Speeds do not decrease with the dispersing fraction (fig 4).
  const std::vector<double> deltas = {0.01, 0.05, 0.09, 0.13,
                                      0.17, 0.21, 0.25, 0.30};
  std::map<std::string, double> previous;
  for (double delta : deltas) {
    const auto row = bank_speeds(600, delta, 0.4, 300);
    for (const auto& [name, est] : row) {
      if (previous.count(name)) {
        REQUIRE(est.c_star >= previous[name] - 1e-3);
      }
      previous[name] = est.c_star;
    }
  }

  // Strong thresholds kill the wave (fig 5); the heavy tail holds on at
  // least as long as the light one.
  const std::vector<double> allees = {0.16, 0.22, 0.28, 0.34,
                                      0.40, 0.46, 0.70};
  std::map<std::string, double> a_crit;
  for (const auto& nk : matched_kernel_bank(1.0, 800)) {
    double last_positive = -1.0;
    bool seen_death = false;
    for (double allee : allees) {
      WaveExperimentConfig cfg = wave_config(800, 0.3, allee, 300);
      cfg.kernel = nk.spec;
      cfg.kernel_radius = nk.radius;
      const auto run = run_wave_experiment(cfg);
      if (!run.speed.died && run.speed.c_star > 1e-4) {
        REQUIRE_FALSE(seen_death);  // positive speeds precede the collapse
        last_positive = allee;
      }
      if (run.speed.died) seen_death = true;
    }
    REQUIRE(last_positive > 0.0);
    REQUIRE(seen_death);
    a_crit[nk.name] = last_positive;
  }
  REQUIRE(a_crit.at("cauchy") >= a_crit.at("gaussian"));
  line.passed = true;
}

TEST_CASE("criterion 06: Poisson-binomial oracle and Le Cam bound") {
  PassLine line{"criterion 6: exact PMF vs enumeration; Le Cam bound"};
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + int(rng() % 12);
    std::vector<double> p(static_cast<std::size_t>(m));
    for (double& q : p) q = unif(rng);
    const auto fast = poisson_binomial_pmf(p);
    const auto slow = enumerate_pmf(p);
    for (std::size_t k = 0; k < fast.size(); ++k) {
      REQUIRE(std::abs(fast[k] - slow[k]) <= 1e-12);
    }
  }
  std::uniform_real_distribution<double> small(0.0, 0.08);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 5 + int(rng() % 80);
    std::vector<double> p(static_cast<std::size_t>(m));
    double lambda = 0.0, bound = 0.0;
    for (double& q : p) {
      q = small(rng);
      lambda += q;
      bound += q * q;
    }
    const auto pb = poisson_binomial_pmf(p);
    double tv = 0.0, poisson_mass = 0.0;
    for (std::size_t k = 0; k < pb.size(); ++k) {
      const double pk = poisson_pmf(lambda, int(k));
      poisson_mass += pk;
      tv += std::abs(pb[k] - pk);
    }
    tv = 0.5 * (tv + (1.0 - poisson_mass));
    REQUIRE(tv <= bound + 1e-12);
  }
  line.passed = true;
}

TEST_CASE("criterion 07: modality shift of the outbreak curve") {
  PassLine line{"criterion 7: unimodal at a=0.2, bimodal at a=0.5"};
  const LatticeConfig lattice = LatticeConfig::line(400);
  const GrowthParams growth(0.3, 0.7);
  const DispersalSetting dispersal(0.5);
  for (const auto& spec : {KernelSpec::gaussian(1.0), KernelSpec::laplace(1.0)}) {
    const auto kernel =
        discretize(spec, 1, default_truncation_radius(spec, lattice.nx));
    auto curve_at = [&](double amplitude) {
      ReleaseProfile release{ProfileShape::pulse, amplitude, 2.0, 0.0, 0.0};
      const auto traj =
          simulate(lattice, release, growth, dispersal, kernel, 400);
      return outbreak_curve(traj, 1, OutbreakMethod::poisson, 400);
    };
    const auto low = curve_at(0.2);
    REQUIRE(low.modality.count == 1);
    const auto high = curve_at(0.5);
    REQUIRE(high.modality.count == 2);
    REQUIRE(high.modality.peak_sites[0] < lattice.origin_x);
    REQUIRE(high.modality.peak_sites[1] > lattice.origin_x);
  }
  line.passed = true;
}

TEST_CASE("criterion 08: MCM release-profile ordering") {
  PassLine line{"criterion 8: pulse < quadratic < triangular near 0.25/0.29/0.33"};
  OptimizeConfig config{LatticeConfig::line(1600, 0.25), GrowthParams(0.3, 0.7)};
  config.delta = 0.5;
  config.kernel = KernelSpec::laplace(4.0);  // b of one length unit
  config.half_width = 2.0;
  config.generations = 400;
  config.horizon = 400;
  config.outbreak_size = 1;
  const auto results = critical_amplitude_by_profile(
      {ProfileShape::pulse, ProfileShape::quadratic, ProfileShape::triangular},
      config);
  REQUIRE(results.size() == 3);
  for (const auto& r : results) REQUIRE(r.found);
  REQUIRE(results[0].a_star < results[1].a_star);
  REQUIRE(results[1].a_star < results[2].a_star);
  REQUIRE(std::abs(results[0].a_star - 0.250) <= 0.05);
  REQUIRE(std::abs(results[1].a_star - 0.290) <= 0.05);
  REQUIRE(std::abs(results[2].a_star - 0.330) <= 0.05);
  line.passed = true;
}

TEST_CASE("criterion 09: release-cost comparison table") {
  PassLine line{"criterion 9: table-4 values and orderings"};
  const auto table = compare_table(table4_compare_grid(2));

  auto mcm = [&](const std::string& kernel, ProfileShape profile,
                 int k) -> const OptimumResult& {
    for (const auto& cell : table.mcm) {
      if (cell.kernel == kernel && cell.profile == profile &&
          cell.outbreak_size == k) {
        return cell.result;
      }
    }
    FAIL("missing MCM cell");
    return table.mcm.front().result;
  };
  auto acm = [&](const std::string& kernel,
                 ProfileShape profile) -> const OptimumResult& {
    for (const auto& cell : table.acm) {
      if (cell.kernel == kernel && cell.profile == profile) {
        return cell.result;
      }
    }
    FAIL("missing ACM cell");
    return table.acm.front().result;
  };

  const std::map<std::string, std::vector<double>> pulse_targets = {
      {"laplace", {0.200, 0.290, 0.340, 0.360}},
      {"gaussian", {0.200, 0.290, 0.330, 0.360}}};
  const std::map<std::string, double> acm_targets = {{"laplace", 0.395},
                                                     {"gaussian", 0.390}};

  for (const auto& [kernel, targets] : pulse_targets) {
    for (int k = 1; k <= 4; ++k) {
      const auto& cell = mcm(kernel, ProfileShape::pulse, k);
      REQUIRE(cell.found);
      REQUIRE(std::abs(cell.a_star - targets[std::size_t(k) - 1]) <= 0.05);
    }
    const auto& acm_cell = acm(kernel, ProfileShape::pulse);
    REQUIRE(acm_cell.found);
    REQUIRE(std::abs(acm_cell.a_star - acm_targets.at(kernel)) <= 0.05);

    // Orderings hold exactly: monotone in k, pulse <= quadratic <=
    // triangular, and MCM below ACM for the pulse at k=1.
    for (ProfileShape shape :
         {ProfileShape::pulse, ProfileShape::quadratic, ProfileShape::triangular}) {
      for (int k = 1; k < 4; ++k) {
        REQUIRE(mcm(kernel, shape, k).a_star <=
                mcm(kernel, shape, k + 1).a_star);
      }
    }
    for (int k = 1; k <= 4; ++k) {
      REQUIRE(mcm(kernel, ProfileShape::pulse, k).a_star <=
              mcm(kernel, ProfileShape::quadratic, k).a_star);
      REQUIRE(mcm(kernel, ProfileShape::quadratic, k).a_star <=
              mcm(kernel, ProfileShape::triangular, k).a_star);
    }
    REQUIRE(mcm(kernel, ProfileShape::pulse, 1).a_star <= acm_cell.a_star);
  }
  line.passed = true;
}

TEST_CASE("criterion 10: reproduction is deterministic") {
  PassLine line{"criterion 10: repeated table4 runs hash identically"};
  auto slurp = [](const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };
  const fs::path a = fs::temp_directory_path() / "wlde_accept_t4_a";
  const fs::path b = fs::temp_directory_path() / "wlde_accept_t4_b";
  fs::remove_all(a);
  fs::remove_all(b);
  RunOptions options;
  options.threads = 2;
  run_reproduce("table4", a, options);
  run_reproduce("table4", b, options);
  REQUIRE(slurp(a / "manifest.json") == slurp(b / "manifest.json"));
  REQUIRE(slurp(a / "table4.csv") == slurp(b / "table4.csv"));
  REQUIRE_FALSE(slurp(a / "table4.csv").empty());
  line.passed = true;
}
