#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wlde/growth.hpp"
#include "wlde/kernels.hpp"

namespace wlde {

/// Finite 1D/2D lattice.  Site i has coordinate x = (i - origin) * spacing;
/// simulations on paper-scale domains use spacing 1 and origin at the
/// domain center.
struct LatticeConfig {
  int dimension = 1;
  int nx = 0;
  int ny = 1;
  double spacing = 1.0;
  Boundary boundary = Boundary::periodic;
  int origin_x = 0;
  int origin_y = 0;

  GridShape shape() const { return {dimension, nx, ny}; }
  int sites() const { return nx * ny; }
  double coordinate_x(int i) const { return (i - origin_x) * spacing; }
  double coordinate_y(int j) const { return (j - origin_y) * spacing; }

  void validate() const;
  static LatticeConfig line(int nx, double spacing = 1.0,
                            Boundary boundary = Boundary::periodic);
  static LatticeConfig plane(int nx, int ny, double spacing = 1.0,
                             Boundary boundary = Boundary::periodic);
};

/// Infection-frequency state v_i(t); values row major over (x, y).
struct LatticeField {
  std::vector<double> values;
  int generation = 0;
};

enum class ProfileShape { pulse, triangular, quadratic };

std::string to_string(ProfileShape shape);
ProfileShape profile_shape_from_string(const std::string& name);

/// Parametric initial release v_0 with amplitude a and half-width L
/// (length units), centered at a lattice coordinate:
///   pulse       a                    on |x| < L
///   triangular  a (1 - |x|/L)        on |x| < L
///   quadratic   a (1 - x^2/L^2)      on |x| < L
/// Closed-form costs (the integral of v_0): 2aL, aL and 4aL/3.
struct ReleaseProfile {
  ProfileShape shape = ProfileShape::pulse;
  double amplitude = 0.0;
  double half_width = 0.0;
  double center_x = 0.0;
  double center_y = 0.0;

  void validate() const;
  double value_at_distance(double r) const;
  double cost() const;
};

/// Dispersing fraction: a single delta shared by every site, or a
/// per-site array (the general form of the update).  The stability and
/// wave analyses require the constant form.
class DispersalSetting {
 public:
  explicit DispersalSetting(double delta);
  explicit DispersalSetting(std::vector<double> per_site);

  bool is_constant() const { return per_site_.empty(); }
  double constant() const;
  double at(std::size_t i) const {
    return per_site_.empty() ? delta_ : per_site_[i];
  }
  const std::vector<double>& per_site() const { return per_site_; }

 private:
  double delta_ = 0.0;
  std::vector<double> per_site_;
};

/// Stored simulation history.  Fields are kept every `stride` generations
/// plus the final one; stride 1 keeps everything (required by the front
/// tracking and outbreak analyses).
struct Trajectory {
  LatticeConfig config;
  int stride = 1;
  int generations = 0;  // total generations simulated (fields span 0..T)
  std::vector<LatticeField> fields;

  bool has_generation(int t) const;
  const LatticeField& at_generation(int t) const;
  const LatticeField& final_field() const { return fields.back(); }
};

struct SimulateOptions {
  int stride = 1;
  // Memory guard: stored values (fields x sites) must stay below this.
  std::size_t max_stored_values = std::size_t(1) << 27;
};

/// Samples the release profile at site coordinates, clamped to [0,1].
LatticeField init_field(const LatticeConfig& config,
                        const ReleaseProfile& profile);

/// One generation of the update
///   v_i(t+1) = (1 - delta_i) f(v_i(t)) + sum_j delta_j K_ij f(v_j(t)).
/// With constant delta and a mass-1 kernel the result stays in [0,1];
/// the output is clamped, which also covers the per-site-delta form.
LatticeField step(const LatticeConfig& config, const LatticeField& field,
                  const GrowthParams& growth, const DispersalSetting& dispersal,
                  const DiscreteKernel& kernel);

/// Runs T generations; deterministic (identical inputs give bit-identical
/// trajectories).  Throws std::length_error if the stored history would
/// exceed options.max_stored_values.
Trajectory simulate(const LatticeConfig& config, const ReleaseProfile& profile,
                    const GrowthParams& growth,
                    const DispersalSetting& dispersal,
                    const DiscreteKernel& kernel, int generations,
                    const SimulateOptions& options = {});

/// Same, starting from an arbitrary initial field.
Trajectory simulate_from(const LatticeConfig& config, LatticeField initial,
                         const GrowthParams& growth,
                         const DispersalSetting& dispersal,
                         const DiscreteKernel& kernel, int generations,
                         const SimulateOptions& options = {});

}  // namespace wlde
