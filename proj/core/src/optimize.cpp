#include "wlde/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace wlde {

std::string to_string(SuccessMetric metric) {
  switch (metric) {
    case SuccessMetric::mean: return "mean";
    case SuccessMetric::min_interior: return "min_interior";
    case SuccessMetric::center: return "center";
  }
  return "?";
}

SuccessMetric success_metric_from_string(const std::string& name) {
  if (name == "mean") return SuccessMetric::mean;
  if (name == "min_interior" || name == "min") return SuccessMetric::min_interior;
  if (name == "center") return SuccessMetric::center;
  throw std::invalid_argument("optimize: unknown success metric '" + name + "'");
}

void OptimizeConfig::validate() const {
  lattice.validate();
  if (!(a_lo > 0.0 && a_lo < a_hi && a_hi <= 1.0)) {
    throw std::invalid_argument("optimize: requires 0 < a_lo < a_hi <= 1");
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("optimize: beta must lie in (0,1)");
  }
  if (!(tau_a > 0.0 && delta_a > 0.0)) {
    throw std::invalid_argument("optimize: tolerances must be positive");
  }
  if (generations < 1) {
    throw std::invalid_argument("optimize: generations must be >= 1");
  }
}

std::vector<double> default_l_grid() {
  std::vector<double> grid(8);
  for (int i = 0; i < 8; ++i) grid[std::size_t(i)] = 0.25 + i * (4.0 - 0.25) / 7.0;
  return grid;
}

bool invasion_success(const Trajectory& trajectory, double beta,
                      SuccessMetric metric) {
  const auto& v = trajectory.final_field().values;
  switch (metric) {
    case SuccessMetric::mean: {
      double sum = 0.0;
      for (double x : v) sum += x;
      return sum / double(v.size()) >= beta;
    }
    case SuccessMetric::min_interior: {
      // Central 80% of each axis.
      const LatticeConfig& c = trajectory.config;
      double lo = 1.0;
      const int x0 = c.nx / 10, x1 = c.nx - c.nx / 10;
      const int y0 = c.dimension == 2 ? c.ny / 10 : 0;
      const int y1 = c.dimension == 2 ? c.ny - c.ny / 10 : 1;
      for (int i = x0; i < x1; ++i) {
        for (int j = y0; j < y1; ++j) {
          lo = std::min(lo, v[std::size_t(i) * c.ny + j]);
        }
      }
      return lo >= beta;
    }
    case SuccessMetric::center: {
      const LatticeConfig& c = trajectory.config;
      return v[std::size_t(c.origin_x) * c.ny + c.origin_y] >= beta;
    }
  }
  return false;
}

namespace {

Trajectory simulate_release(const OptimizeConfig& config, ProfileShape shape,
                            double amplitude, double half_width) {
  ReleaseProfile release;
  release.shape = shape;
  release.amplitude = amplitude;
  release.half_width = half_width;
  release.center_x = 0.0;
  release.center_y = 0.0;
  const int radius =
      config.kernel_radius > 0
          ? config.kernel_radius
          : default_truncation_radius(config.kernel, config.lattice.nx);
  const DiscreteKernel kernel =
      discretize(config.kernel, config.lattice.dimension, radius);
  return simulate(config.lattice, release, config.growth,
                  DispersalSetting(config.delta), kernel, config.generations);
}

double profile_cost(ProfileShape shape, double amplitude, double half_width) {
  ReleaseProfile p;
  p.shape = shape;
  p.amplitude = amplitude;
  p.half_width = half_width;
  return p.cost();
}

}  // namespace

OptimumResult acm_optimize(const OptimizeConfig& config) {
  config.validate();
  const std::vector<double> grid =
      config.l_grid.empty() ? std::vector<double>{config.half_width}
                            : config.l_grid;

  auto succeeds = [&](double a, double l) {
    return invasion_success(simulate_release(config, config.shape, a, l),
                            config.beta, config.metric);
  };

  OptimumResult best;
  best.criterion = "ACM";
  std::string failures;
  for (double l : grid) {
    if (succeeds(config.a_lo, l)) {
      failures += "L=" + std::to_string(l) + ": success at a_lo; ";
      continue;
    }
    if (!succeeds(config.a_hi, l)) {
      failures += "L=" + std::to_string(l) + ": failure at a_hi; ";
      continue;
    }
    double lo = config.a_lo, hi = config.a_hi;
    int iterations = 0;
    while (hi - lo > config.tau_a) {
      const double mid = 0.5 * (lo + hi);
      if (succeeds(mid, l)) {
        hi = mid;
      } else {
        lo = mid;
      }
      ++iterations;
    }
    // Post-condition: success flips across [a* - tau, a* + tau].
    const double a_star = hi;
    if (!succeeds(std::min(config.a_hi, a_star + config.tau_a), l) ||
        succeeds(std::max(config.a_lo, a_star - config.tau_a), l)) {
      failures += "L=" + std::to_string(l) + ": bisection flip check failed; ";
      continue;
    }
    const double cost = profile_cost(config.shape, a_star, l);
    if (!best.found || cost < best.cost ||
        (cost == best.cost && l < best.l_star)) {
      best.found = true;
      best.a_star = a_star;
      best.l_star = l;
      best.cost = cost;
      best.iterations = iterations;
    }
  }
  if (!best.found) {
    throw bracket_error("optimize: ACM interval [" + std::to_string(config.a_lo) +
                        ", " + std::to_string(config.a_hi) +
                        "] brackets no half-width cell (" + failures + ")");
  }
  best.note = failures;
  return best;
}

namespace {

int mode_count_at(const OptimizeConfig& config, ProfileShape shape, double a) {
  const Trajectory traj =
      simulate_release(config, shape, a, config.half_width);
  const int horizon =
      config.horizon > 0 ? std::min(config.horizon, config.generations)
                         : config.generations;
  const OutbreakCurve curve = outbreak_curve(
      traj, config.outbreak_size, OutbreakMethod::poisson, horizon,
      config.epsilon_fix, {}, config.prominence, config.min_separation);
  return curve.modality.count;
}

}  // namespace

OptimumResult mcm_optimize(const OptimizeConfig& config) {
  config.validate();
  OptimumResult result;
  result.criterion = "MCM";
  result.outbreak_size = config.outbreak_size;
  result.l_star = config.half_width;

  double last_unimodal = config.a_lo;
  bool have_switch = false;
  double first_bimodal = config.a_hi;
  for (double a = config.a_lo; a <= config.a_hi + 1e-12; a += config.delta_a) {
    const double clamped = std::min(a, config.a_hi);
    const int modes = mode_count_at(config, config.shape, clamped);
    result.scan_trace.emplace_back(clamped, modes);
    ++result.iterations;
    if (modes == 2) {
      have_switch = true;
      first_bimodal = clamped;
      break;
    }
    last_unimodal = clamped;
    if (clamped == config.a_hi) break;
  }
  if (!have_switch) {
    result.found = false;
    result.note = "no bimodal regime in [a_lo, a_hi]";
    return result;
  }

  // Refine the first switch between the bracketing scan points.
  double lo = last_unimodal, hi = first_bimodal;
  if (hi > lo) {
    while (hi - lo > config.tau_a) {
      const double mid = 0.5 * (lo + hi);
      const int modes = mode_count_at(config, config.shape, mid);
      result.scan_trace.emplace_back(mid, modes);
      ++result.iterations;
      if (modes == 2) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }
  result.found = true;
  result.a_star = hi;
  result.cost = profile_cost(config.shape, result.a_star, result.l_star);
  return result;
}

std::vector<OptimumResult> critical_amplitude_by_profile(
    const std::vector<ProfileShape>& shapes, const OptimizeConfig& config) {
  std::vector<OptimumResult> results;
  results.reserve(shapes.size());
  for (ProfileShape shape : shapes) {
    OptimizeConfig cell = config;
    cell.shape = shape;
    results.push_back(mcm_optimize(cell));
  }
  return results;
}

ComparisonTable compare_table(const CompareGrid& grid) {
  ComparisonTable table;
  if (grid.kernels.empty() || grid.profiles.empty()) return table;
  if (!grid.kernel_radii.empty() &&
      grid.kernel_radii.size() != grid.kernels.size()) {
    throw std::invalid_argument(
        "optimize: kernel_radii must parallel kernels when given");
  }

  const std::size_t n_mcm =
      grid.kernels.size() * grid.profiles.size() * grid.outbreak_sizes.size();
  const std::size_t n_acm = grid.kernels.size() * grid.profiles.size();
  table.mcm.resize(n_mcm);
  table.acm.resize(n_acm);

  auto config_for = [&](std::size_t kernel_index) {
    OptimizeConfig config = grid.base;
    config.kernel = grid.kernels[kernel_index].second;
    config.kernel_radius =
        grid.kernel_radii.empty() ? 0 : grid.kernel_radii[kernel_index];
    return config;
  };

  auto run_cell = [&](std::size_t index) {
    if (index < n_mcm) {
      const std::size_t ks = grid.outbreak_sizes.size();
      const std::size_t ps = grid.profiles.size();
      const std::size_t ik = index / (ps * ks);
      const std::size_t ip = (index / ks) % ps;
      const std::size_t io = index % ks;
      CompareMcmCell& cell = table.mcm[index];
      cell.kernel = grid.kernels[ik].first;
      cell.profile = grid.profiles[ip];
      cell.outbreak_size = grid.outbreak_sizes[io];
      try {
        OptimizeConfig config = config_for(ik);
        config.shape = cell.profile;
        config.outbreak_size = cell.outbreak_size;
        cell.result = mcm_optimize(config);
      } catch (const std::exception& e) {
        cell.result.criterion = "MCM";
        cell.result.found = false;
        cell.result.note = e.what();
      }
    } else {
      const std::size_t j = index - n_mcm;
      const std::size_t ps = grid.profiles.size();
      const std::size_t ik = j / ps;
      const std::size_t ip = j % ps;
      CompareAcmCell& cell = table.acm[j];
      cell.kernel = grid.kernels[ik].first;
      cell.profile = grid.profiles[ip];
      try {
        OptimizeConfig config = config_for(ik);
        config.shape = cell.profile;
        cell.result = acm_optimize(config);
      } catch (const std::exception& e) {
        cell.result.criterion = "ACM";
        cell.result.found = false;
        cell.result.note = e.what();
      }
    }
  };

  const std::size_t cells = n_mcm + n_acm;
  if (grid.threads <= 1) {
    for (std::size_t i = 0; i < cells; ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int n = std::min<int>(grid.threads, int(cells));
    pool.reserve(std::size_t(n));
    for (int i = 0; i < n; ++i) {
      pool.emplace_back([&]() {
        for (std::size_t j = next.fetch_add(1); j < cells;
             j = next.fetch_add(1)) {
          run_cell(j);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  return table;
}

}  // namespace wlde
