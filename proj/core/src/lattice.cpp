#include "wlde/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wlde {

void LatticeConfig::validate() const {
  if (dimension != 1 && dimension != 2) {
    throw std::invalid_argument("lattice: dimension must be 1 or 2");
  }
  if (nx < 8 || (dimension == 2 && ny < 8)) {
    throw std::invalid_argument("lattice: extents must be >= 8");
  }
  if (dimension == 1 && ny != 1) {
    throw std::invalid_argument("lattice: ny must be 1 for a 1D lattice");
  }
  if (!(spacing > 0.0)) {
    throw std::invalid_argument("lattice: spacing must be positive");
  }
  if (origin_x < 0 || origin_x >= nx ||
      (dimension == 2 && (origin_y < 0 || origin_y >= ny))) {
    throw std::invalid_argument("lattice: origin outside the grid");
  }
}

LatticeConfig LatticeConfig::line(int nx, double spacing, Boundary boundary) {
  LatticeConfig c;
  c.dimension = 1;
  c.nx = nx;
  c.ny = 1;
  c.spacing = spacing;
  c.boundary = boundary;
  c.origin_x = nx / 2;
  c.validate();
  return c;
}

LatticeConfig LatticeConfig::plane(int nx, int ny, double spacing,
                                   Boundary boundary) {
  LatticeConfig c;
  c.dimension = 2;
  c.nx = nx;
  c.ny = ny;
  c.spacing = spacing;
  c.boundary = boundary;
  c.origin_x = nx / 2;
  c.origin_y = ny / 2;
  c.validate();
  return c;
}

std::string to_string(ProfileShape shape) {
  switch (shape) {
    case ProfileShape::pulse: return "pulse";
    case ProfileShape::triangular: return "triangular";
    case ProfileShape::quadratic: return "quadratic";
  }
  return "?";
}

ProfileShape profile_shape_from_string(const std::string& name) {
  if (name == "pulse") return ProfileShape::pulse;
  if (name == "triangular") return ProfileShape::triangular;
  if (name == "quadratic") return ProfileShape::quadratic;
  throw std::invalid_argument("profile: unknown shape '" + name + "'");
}

void ReleaseProfile::validate() const {
  if (!(amplitude > 0.0 && amplitude <= 1.0)) {
    throw std::invalid_argument("profile: amplitude must lie in (0,1]");
  }
  if (!(half_width > 0.0)) {
    throw std::invalid_argument("profile: half-width must be positive");
  }
}

// Support is the closed interval |x| <= L, matching the cost integrals.
double ReleaseProfile::value_at_distance(double r) const {
  r = std::abs(r);
  if (r > half_width) return 0.0;
  switch (shape) {
    case ProfileShape::pulse:
      return amplitude;
    case ProfileShape::triangular:
      return amplitude * (1.0 - r / half_width);
    case ProfileShape::quadratic:
      return amplitude * (1.0 - r * r / (half_width * half_width));
  }
  return 0.0;
}

double ReleaseProfile::cost() const {
  validate();
  switch (shape) {
    case ProfileShape::pulse:
      return 2.0 * amplitude * half_width;
    case ProfileShape::triangular:
      return amplitude * half_width;
    case ProfileShape::quadratic:
      return 4.0 * amplitude * half_width / 3.0;
  }
  return 0.0;
}

DispersalSetting::DispersalSetting(double delta) : delta_(delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("dispersal: delta must lie in (0,1]");
  }
}

DispersalSetting::DispersalSetting(std::vector<double> per_site)
    : per_site_(std::move(per_site)) {
  if (per_site_.empty()) {
    throw std::invalid_argument("dispersal: per-site array is empty");
  }
  for (double d : per_site_) {
    if (!(d >= 0.0 && d <= 1.0)) {
      throw std::invalid_argument("dispersal: per-site deltas must lie in [0,1]");
    }
  }
}

double DispersalSetting::constant() const {
  if (!is_constant()) {
    throw std::logic_error("dispersal: constant delta requested from per-site form");
  }
  return delta_;
}

bool Trajectory::has_generation(int t) const {
  if (t < 0 || t > generations) return false;
  if (t == generations) return true;
  return t % stride == 0;
}

const LatticeField& Trajectory::at_generation(int t) const {
  if (!has_generation(t)) {
    throw std::out_of_range("trajectory: generation " + std::to_string(t) +
                            " not stored");
  }
  if (t == generations) return fields.back();
  return fields[std::size_t(t / stride)];
}

LatticeField init_field(const LatticeConfig& config,
                        const ReleaseProfile& profile) {
  config.validate();
  profile.validate();

  // Support must fit inside the lattice extent.
  const double x_lo = config.coordinate_x(0);
  const double x_hi = config.coordinate_x(config.nx - 1);
  if (profile.center_x - profile.half_width < x_lo - 0.5 * config.spacing ||
      profile.center_x + profile.half_width > x_hi + 0.5 * config.spacing) {
    throw std::invalid_argument("profile: support exceeds the lattice extent");
  }
  if (config.dimension == 2) {
    const double y_lo = config.coordinate_y(0);
    const double y_hi = config.coordinate_y(config.ny - 1);
    if (profile.center_y - profile.half_width < y_lo - 0.5 * config.spacing ||
        profile.center_y + profile.half_width > y_hi + 0.5 * config.spacing) {
      throw std::invalid_argument("profile: support exceeds the lattice extent");
    }
  }

  LatticeField field;
  field.generation = 0;
  field.values.resize(std::size_t(config.sites()));
  for (int i = 0; i < config.nx; ++i) {
    const double dx = config.coordinate_x(i) - profile.center_x;
    if (config.dimension == 1) {
      field.values[std::size_t(i)] =
          std::clamp(profile.value_at_distance(dx), 0.0, 1.0);
    } else {
      for (int j = 0; j < config.ny; ++j) {
        const double dy = config.coordinate_y(j) - profile.center_y;
        const double r = std::hypot(dx, dy);
        field.values[std::size_t(i) * config.ny + j] =
            std::clamp(profile.value_at_distance(r), 0.0, 1.0);
      }
    }
  }
  return field;
}

LatticeField step(const LatticeConfig& config, const LatticeField& field,
                  const GrowthParams& growth, const DispersalSetting& dispersal,
                  const DiscreteKernel& kernel) {
  const std::size_t sites = std::size_t(config.sites());
  if (field.values.size() != sites) {
    throw std::invalid_argument("lattice: field size mismatch with config");
  }
  if (!dispersal.is_constant() && dispersal.per_site().size() != sites) {
    throw std::invalid_argument("lattice: per-site delta size mismatch");
  }

  std::vector<double> grown(sites);
  for (std::size_t i = 0; i < sites; ++i) {
    grown[i] = growth.evaluate(field.values[i]);
  }

  LatticeField next;
  next.generation = field.generation + 1;
  next.values.resize(sites);
  if (dispersal.is_constant()) {
    const double delta = dispersal.constant();
    const auto moved = convolve(grown, config.shape(), config.boundary, kernel);
    for (std::size_t i = 0; i < sites; ++i) {
      next.values[i] =
          std::clamp((1.0 - delta) * grown[i] + delta * moved[i], 0.0, 1.0);
    }
  } else {
    std::vector<double> dispersing(sites);
    for (std::size_t i = 0; i < sites; ++i) {
      dispersing[i] = dispersal.at(i) * grown[i];
    }
    const auto moved =
        convolve(dispersing, config.shape(), config.boundary, kernel);
    for (std::size_t i = 0; i < sites; ++i) {
      next.values[i] = std::clamp(
          (1.0 - dispersal.at(i)) * grown[i] + moved[i], 0.0, 1.0);
    }
  }
  return next;
}

namespace {

Trajectory run_simulation(const LatticeConfig& config, LatticeField initial,
                          const GrowthParams& growth,
                          const DispersalSetting& dispersal,
                          const DiscreteKernel& kernel, int generations,
                          const SimulateOptions& options) {
  if (generations < 0) {
    throw std::invalid_argument("simulate: generations must be >= 0");
  }
  if (options.stride < 1) {
    throw std::invalid_argument("simulate: stride must be >= 1");
  }
  const std::size_t stored_fields =
      std::size_t(generations / options.stride) + 2;
  if (stored_fields * std::size_t(config.sites()) > options.max_stored_values) {
    throw std::length_error(
        "simulate: stored history exceeds the memory budget; "
        "increase the stride or the budget");
  }

  Trajectory traj;
  traj.config = config;
  traj.stride = options.stride;
  traj.generations = generations;
  traj.fields.reserve(stored_fields);
  traj.fields.push_back(std::move(initial));

  LatticeField current = traj.fields.front();
  for (int t = 1; t <= generations; ++t) {
    current = step(config, current, growth, dispersal, kernel);
    if (t % options.stride == 0 || t == generations) {
      traj.fields.push_back(current);
    }
  }
  return traj;
}

}  // namespace

Trajectory simulate(const LatticeConfig& config, const ReleaseProfile& profile,
                    const GrowthParams& growth,
                    const DispersalSetting& dispersal,
                    const DiscreteKernel& kernel, int generations,
                    const SimulateOptions& options) {
  return run_simulation(config, init_field(config, profile), growth, dispersal,
                        kernel, generations, options);
}

Trajectory simulate_from(const LatticeConfig& config, LatticeField initial,
                         const GrowthParams& growth,
                         const DispersalSetting& dispersal,
                         const DiscreteKernel& kernel, int generations,
                         const SimulateOptions& options) {
  config.validate();
  return run_simulation(config, std::move(initial), growth, dispersal, kernel,
                        generations, options);
}

}  // namespace wlde
