#include "wlde/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wlde {

std::string to_string(StabilityVerdict verdict) {
  switch (verdict) {
    case StabilityVerdict::las: return "LAS";
    case StabilityVerdict::uns: return "UNS";
    case StabilityVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(PerturbationOutcome outcome) {
  switch (outcome) {
    case PerturbationOutcome::decays: return "decays";
    case PerturbationOutcome::grows: return "grows";
    case PerturbationOutcome::inconclusive: return "inconclusive";
  }
  return "?";
}

double spectral_factor(const DiscreteKernel& kernel, double delta,
                       const GridShape& grid) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("stability: delta must lie in (0,1]");
  }
  const auto amplitudes = transform_numeric(kernel, grid);
  double sup = 0.0;
  for (const auto& amp : amplitudes) {
    sup = std::max(sup, std::abs((1.0 - delta) + delta * amp));
  }
  return sup;
}

StabilityReport classify(double fixed_point, const GrowthParams& growth,
                         const DiscreteKernel& kernel, double delta,
                         const GridShape& grid, double margin) {
  const auto fps = growth.fixed_points();
  const bool known = std::any_of(fps.begin(), fps.end(), [&](double v) {
    return std::abs(v - fixed_point) <= 1e-9;
  });
  if (!known) {
    throw std::invalid_argument(
        "stability: classify expects one of the three fixed points");
  }

  StabilityReport report;
  report.fixed_point = fixed_point;
  report.slope = growth.derivative(fixed_point);
  report.spectral_factor = spectral_factor(kernel, delta, grid);
  report.criterion_value = std::abs(report.slope) * report.spectral_factor;
  report.margin = margin;
  report.grid = grid;
  if (report.criterion_value < 1.0 - margin) {
    report.verdict = StabilityVerdict::las;
  } else if (report.criterion_value > 1.0 + margin) {
    report.verdict = StabilityVerdict::uns;
  } else {
    report.verdict = StabilityVerdict::inconclusive;
  }
  return report;
}

namespace {

// splitmix64; keeps the perturbation reproducible across platforms.
uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double uniform_pm1(uint64_t& state) {
  return 2.0 * (double(splitmix64(state) >> 11) * 0x1.0p-53) - 1.0;
}

}  // namespace

PerturbationOutcome verify_by_perturbation(double fixed_point,
                                           const GrowthParams& growth,
                                           const DiscreteKernel& kernel,
                                           double delta,
                                           const LatticeConfig& config,
                                           double epsilon, int generations,
                                           uint64_t seed) {
  if (!(epsilon >= 0.0 && epsilon <= 1e-3)) {
    throw std::invalid_argument("stability: epsilon must lie in [0, 1e-3]");
  }
  config.validate();

  LatticeField state;
  state.values.resize(std::size_t(config.sites()));
  uint64_t rng = seed ^ 0x5851f42d4c957f2dull;
  double initial_dev = 0.0;
  for (double& v : state.values) {
    v = std::clamp(fixed_point + epsilon * uniform_pm1(rng), 0.0, 1.0);
    initial_dev = std::max(initial_dev, std::abs(v - fixed_point));
  }
  if (initial_dev == 0.0) return PerturbationOutcome::inconclusive;

  const DispersalSetting dispersal(delta);
  for (int t = 0; t < generations; ++t) {
    state = step(config, state, growth, dispersal, kernel);
    double dev = 0.0;
    for (double v : state.values) dev = std::max(dev, std::abs(v - fixed_point));
    if (dev <= initial_dev / 10.0) return PerturbationOutcome::decays;
    if (dev >= initial_dev * 10.0) return PerturbationOutcome::grows;
  }
  return PerturbationOutcome::inconclusive;
}

std::vector<PhasePortraitPoint> phase_portrait(const GrowthParams& growth,
                                               int resolution) {
  if (resolution < 10) {
    throw std::invalid_argument("stability: phase portrait resolution must be >= 10");
  }
  std::vector<double> vs;
  vs.reserve(std::size_t(resolution) + 4);
  for (int i = 0; i <= resolution; ++i) {
    vs.push_back(double(i) / resolution);
  }
  for (double fp : growth.fixed_points()) vs.push_back(fp);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());

  const auto fps = growth.fixed_points();
  std::vector<PhasePortraitPoint> points;
  points.reserve(vs.size());
  for (double v : vs) {
    PhasePortraitPoint p;
    p.v = v;
    p.dv = growth.evaluate(v) - v;
    p.fixed_point = std::any_of(fps.begin(), fps.end(), [&](double fp) {
      return v == fp;
    });
    points.push_back(p);
  }
  return points;
}

}  // namespace wlde
