#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wlde/growth.hpp"
#include "wlde/kernels.hpp"
#include "wlde/lattice.hpp"

namespace wlde {

/// Level-crossing front positions, one per stored generation, in lattice
/// coordinates.  valid marks generations where an interior crossing exists.
struct FrontTrack {
  double level = 0.5;
  std::vector<double> position;
  std::vector<char> valid;
};

/// Wave-speed estimate.  c_star comes from a least-squares line through
/// the tail of the front track (the pointwise difference quotient is noisy
/// near flat regions, so the regression is the primary estimator);
/// c_series carries the per-generation difference-quotient speeds at the
/// front, NaN where undefined.
struct SpeedEstimate {
  double c_star = 0.0;
  double residual = 0.0;
  bool died = false;
  int window_begin = 0;
  int window_end = 0;
  std::string method = "front-regression";
  std::vector<double> c_series;
};

/// Rightmost interpolated crossing where the profile passes from above to
/// below the level; nullopt when no crossing exists.  1D only.
std::optional<double> front_position(const LatticeConfig& config,
                                     const LatticeField& field, double level);

/// Leftmost crossing from below to above the level (the mirror front of a
/// centered release); used by the wrap guard.
std::optional<double> rear_front_position(const LatticeConfig& config,
                                          const LatticeField& field,
                                          double level);

/// Difference-quotient speed -h * (v(x,t+1) - v(x,t)) / (v(x+1,t) - v(x,t)).
/// Returns 0 by convention when the site sits at a fixed point (both
/// differences below eps_grad), nullopt when only the gradient vanishes.
std::optional<double> local_speed(const Trajectory& trajectory, int site,
                                  int generation, double eps_grad = 1e-9);

FrontTrack track_front(const Trajectory& trajectory, double level);

/// Fits the front track tail.  If the front has vanished by the final
/// generation the wave died: c_star = 0 with the died flag set (a
/// meaningful result, not an error).  Otherwise requires >= 20 valid
/// fronts in the tail window.
SpeedEstimate asymptotic_speed(const Trajectory& trajectory, double level,
                               double tail_fraction = 0.25);

/// One wave experiment: a pulse release (amplitude above the Allee
/// threshold over >= 10 cells) centered on a wide periodic 1D lattice;
/// the rightward front is tracked.
struct WaveExperimentConfig {
  LatticeConfig lattice;
  GrowthParams growth;
  double delta = 0.1;
  KernelSpec kernel;
  int kernel_radius = 0;  // 0: default truncation policy
  double release_amplitude = 0.8;
  double release_half_width = 10.0;
  int generations = 200;
  double level = 0.5;
  double tail_fraction = 0.25;
  // Abort when either front comes within 2x the kernel's 99%-mass radius
  // of the boundary (wrap-around would contaminate the measurement).
  bool guard_wrap = true;
};

struct WaveRun {
  Trajectory trajectory;
  FrontTrack front;
  SpeedEstimate speed;
  int guard_radius = 0;
};

WaveRun run_wave_experiment(const WaveExperimentConfig& config);

/// The four tabulated families at a common nominal scale for cross-family
/// comparisons: cauchy gamma = scale, gaussian sigma = scale, uniform
/// half-width = round(scale), power-law exponent fixed at 2.7 (a tail
/// between Cauchy and the light-tailed families; the family carries no
/// independent length scale).
struct NamedKernel {
  std::string name;
  KernelSpec spec;
  int radius = 0;  // 0: default truncation policy
};

std::vector<NamedKernel> matched_kernel_bank(double scale, int grid_extent);

enum class SweepAxis { delta, allee, initial_amplitude };

std::string to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(const std::string& name);

struct SweepRow {
  double axis_value = 0.0;
  std::string kernel;
  double c_star = 0.0;
  bool died = false;
  double residual = 0.0;
  std::string error;  // nonempty when this cell failed
};

/// One asymptotic speed per (axis value x kernel).  Cell failures are
/// recorded inline and the sweep continues.  Cells are independent; the
/// result order is deterministic.
std::vector<SweepRow> wave_speed_sweep(SweepAxis axis,
                                       const std::vector<double>& values,
                                       const WaveExperimentConfig& base,
                                       const std::vector<NamedKernel>& kernels,
                                       int threads = 1);

}  // namespace wlde
