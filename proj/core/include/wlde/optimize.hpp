#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wlde/growth.hpp"
#include "wlde/kernels.hpp"
#include "wlde/lattice.hpp"
#include "wlde/outbreak.hpp"

namespace wlde {

/// Raised when the ACM search interval does not bracket the invasion
/// threshold (success at a_lo or failure at a_hi): a mis-specified
/// interval or a non-invadable regime.
class bracket_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How the asymptotic invasion constraint is read off the final field.
/// The limit "v -> 1 everywhere" is operationalized at finite horizon by
/// a threshold beta on a field statistic; the spatial mean is the default
/// (monotone in the release amplitude, so bisection is rigorous).
enum class SuccessMetric { mean, min_interior, center };

std::string to_string(SuccessMetric metric);
SuccessMetric success_metric_from_string(const std::string& name);

struct OptimizeConfig {
  LatticeConfig lattice;
  GrowthParams growth;
  double delta = 0.2;
  KernelSpec kernel;
  int kernel_radius = 0;  // 0: default truncation policy
  ProfileShape shape = ProfileShape::pulse;
  double half_width = 0.5;      // MCM L; also ACM L when l_grid is empty
  std::vector<double> l_grid;   // ACM outer loop; cost minimized over it
  double a_lo = 0.05;
  double a_hi = 1.0;
  double beta = 0.9;
  int generations = 200;  // N_t
  int horizon = 0;        // outbreak horizon, 0 = generations
  int outbreak_size = 1;  // k (MCM)
  double tau_a = 1e-3;
  double delta_a = 5e-3;
  double epsilon_fix = 1e-10;
  double prominence = 0.05;
  int min_separation = 3;
  SuccessMetric metric = SuccessMetric::mean;

  void validate() const;
};

/// Default ACM half-width grid: 8 values spanning [0.25, 4].
std::vector<double> default_l_grid();

struct OptimumResult {
  std::string criterion;  // "ACM" or "MCM"
  int outbreak_size = 0;  // k, MCM only
  bool found = false;
  double a_star = 0.0;
  double l_star = 0.0;
  double cost = 0.0;
  int iterations = 0;
  std::string note;
  std::vector<std::pair<double, int>> scan_trace;  // MCM: (a, mode count)
};

/// True when the chosen statistic of the final field is >= beta.
bool invasion_success(const Trajectory& trajectory, double beta,
                      SuccessMetric metric = SuccessMetric::mean);

/// Asymptotic-constraint minimization: bisection on the amplitude per
/// half-width (success must be bracketed by [a_lo, a_hi]), then the
/// cost-minimizing (a*, L*) over the grid.  Throws bracket_error when no
/// grid cell brackets.
OptimumResult acm_optimize(const OptimizeConfig& config);

/// Modality-constraint minimization: ascending amplitude scan; a* is the
/// first amplitude whose outbreak-size curve turns bimodal, refined by
/// local bisection between the last unimodal and first bimodal scan
/// points.  found=false when no bimodal regime exists in the interval (a
/// meaningful negative result).
OptimumResult mcm_optimize(const OptimizeConfig& config);

/// MCM a* per release shape under a shared configuration.
std::vector<OptimumResult> critical_amplitude_by_profile(
    const std::vector<ProfileShape>& shapes, const OptimizeConfig& config);

struct CompareGrid {
  OptimizeConfig base;
  std::vector<std::pair<std::string, KernelSpec>> kernels;
  std::vector<int> kernel_radii;  // parallel to kernels; 0 = auto
  std::vector<ProfileShape> profiles;
  std::vector<int> outbreak_sizes;
  int threads = 1;
};

struct CompareMcmCell {
  std::string kernel;
  ProfileShape profile = ProfileShape::pulse;
  int outbreak_size = 0;
  OptimumResult result;
};

struct CompareAcmCell {
  std::string kernel;
  ProfileShape profile = ProfileShape::pulse;
  OptimumResult result;
};

/// MCM a*/cost per (kernel x profile x k) and ACM a*/cost per
/// (kernel x profile).  Per-cell failures are recorded in the cell note;
/// the table always completes.  Deterministic regardless of thread count.
struct ComparisonTable {
  std::vector<CompareMcmCell> mcm;
  std::vector<CompareAcmCell> acm;
};

ComparisonTable compare_table(const CompareGrid& grid);

}  // namespace wlde
