#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "wlde/kernels.hpp"
#include "wlde/lattice.hpp"
#include "wlde/optimize.hpp"
#include "wlde/outbreak.hpp"
#include "wlde/waves.hpp"

namespace wlde {

/// Schema or range violation in an experiment config; path() names the
/// offending field as "section.key".
class config_error : public std::runtime_error {
 public:
  config_error(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Fully resolved experiment configuration.  Parsed from an INI-style
/// file ([section] headers, key = value lines, '#'/';' comments); unknown
/// sections or keys are rejected, all defaults are materialized.
struct ExperimentConfig {
  // growth: either (s_f, s_h) or (s_h, allee)
  double s_f = 0.0;
  double s_h = 0.0;

  // kernel
  KernelFamily kernel_family = KernelFamily::gaussian;
  double kernel_scale = 1.0;
  int kernel_radius = 0;  // 0: default truncation policy

  // dispersal
  double delta = 0.2;
  std::string delta_file;  // per-site deltas, one value per line

  // lattice
  int dimension = 1;
  int nx = 400;
  int ny = 1;
  double spacing = 1.0;
  Boundary boundary = Boundary::periodic;

  // profile
  ProfileShape shape = ProfileShape::pulse;
  double amplitude = 0.3;
  double half_width = 2.0;
  double center = 0.0;

  // simulate
  int generations = 200;
  int stride = 1;

  // stability
  double stability_margin = 1e-9;
  double perturb_epsilon = 1e-4;
  int perturb_generations = 200;
  int portrait_resolution = 1000;

  // waves
  double wave_level = 0.5;
  double wave_tail_fraction = 0.25;
  double wave_amplitude = 0.8;
  double wave_half_width = 10.0;
  double wave_bank_scale = 1.0;
  int wave_generations = 200;
  bool wave_guard_wrap = true;
  std::string sweep_axis;             // empty: single run of the config kernel
  std::vector<double> sweep_values;

  // outbreak
  std::vector<int> outbreak_sizes = {1};
  OutbreakMethod outbreak_method = OutbreakMethod::poisson;
  int outbreak_horizon = 400;
  double epsilon_fix = 1e-10;
  double geometric_q = 0.0;  // 0: per-site estimate
  int geometric_m_max = 0;   // 0: minimal depth for the tail bound
  std::vector<double> outbreak_amplitudes = {0.2, 0.3, 0.4, 0.5};
  double prominence = 0.05;
  int min_separation = 3;

  // optimize
  std::string criterion = "both";  // acm | mcm | both
  double beta = 0.9;
  double a_lo = 0.05;
  double a_hi = 1.0;
  double tau_a = 1e-3;
  double delta_a = 5e-3;
  std::vector<double> l_grid;         // ACM; empty = default 8-point grid
  double optimize_half_width = 0.5;   // MCM L
  SuccessMetric metric = SuccessMetric::mean;
  std::vector<int> optimize_sizes = {1, 2, 3, 4};

  // compare ("family" or "family:scale" entries)
  std::vector<std::string> compare_kernels = {"laplace:1", "gaussian:1"};
  std::vector<ProfileShape> compare_profiles = {
      ProfileShape::pulse, ProfileShape::quadratic, ProfileShape::triangular};

  // run
  uint64_t seed = 0x77e1de01u;

  // Typed views (validated on construction of the config).
  GrowthParams growth() const;
  KernelSpec kernel_spec() const;
  LatticeConfig lattice() const;
  ReleaseProfile profile() const;
  DispersalSetting dispersal() const;  // loads delta_file when set
  OptimizeConfig optimize_config() const;
  WaveExperimentConfig wave_config() const;

  /// Canonical INI text with every key materialized; identical configs
  /// produce identical text (the basis of the manifest config hash).
  std::string resolved_ini() const;
};

ExperimentConfig parse_config(const std::filesystem::path& file);
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::filesystem::path& base_dir = ".");

}  // namespace wlde
