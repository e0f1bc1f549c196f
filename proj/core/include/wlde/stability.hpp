#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wlde/growth.hpp"
#include "wlde/kernels.hpp"
#include "wlde/lattice.hpp"

namespace wlde {

enum class StabilityVerdict { las, uns, inconclusive };

std::string to_string(StabilityVerdict verdict);

/// Spectral stability test around a spatially homogeneous fixed point:
/// the linearization has eigenvalues f'(v*) [(1-delta) + delta K_hat(k)],
/// one per DFT mode of the configured grid.  LAS when the sup of their
/// moduli is below 1, UNS above; a margin band around 1 reports
/// inconclusive.
struct StabilityReport {
  double fixed_point = 0.0;
  double slope = 0.0;            // f'(v*)
  double spectral_factor = 0.0;  // sup_k |(1-delta) + delta K_hat(k)|
  double criterion_value = 0.0;  // |f'(v*)| * spectral_factor
  StabilityVerdict verdict = StabilityVerdict::inconclusive;
  double margin = 1e-9;
  GridShape grid;
};

/// sup over all DFT modes of |(1-delta) + delta K_hat(k)|.  Every
/// normalized kernel attains K_hat(0) = 1, so this is exactly 1 for the
/// kernels used here; scanning the full mode lattice (a superset of the
/// positive modes) can only tighten the sup.
double spectral_factor(const DiscreteKernel& kernel, double delta,
                       const GridShape& grid);

/// Classifies one of the three fixed points of the growth map.
StabilityReport classify(double fixed_point, const GrowthParams& growth,
                         const DiscreteKernel& kernel, double delta,
                         const GridShape& grid, double margin = 1e-9);

enum class PerturbationOutcome { decays, grows, inconclusive };

std::string to_string(PerturbationOutcome outcome);

/// Empirical cross-check: perturbs the homogeneous state v* by an i.i.d.
/// zero-mean field of amplitude epsilon (clamped to [0,1]), runs the
/// update and reports whether the max deviation shrinks or grows by 10x
/// within the given number of generations.  Deterministic for a fixed
/// seed.
PerturbationOutcome verify_by_perturbation(double fixed_point,
                                           const GrowthParams& growth,
                                           const DiscreteKernel& kernel,
                                           double delta,
                                           const LatticeConfig& config,
                                           double epsilon, int generations,
                                           uint64_t seed);

struct PhasePortraitPoint {
  double v = 0.0;
  double dv = 0.0;  // f(v) - v
  bool fixed_point = false;
};

/// Homogeneous-state phase portrait (V, f(V) - V) on a uniform grid over
/// [0,1]; dispersal cancels for homogeneous states, so delta only tags
/// the output.  The three fixed points are inserted and flagged.
std::vector<PhasePortraitPoint> phase_portrait(const GrowthParams& growth,
                                               int resolution);

}  // namespace wlde
