#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace wlde {

enum class KernelFamily { cauchy, power_law, gaussian, uniform, laplace };

std::string to_string(KernelFamily family);
KernelFamily kernel_family_from_string(std::string_view name);

/// Analytic dispersal-kernel family with its scale parameter, measured in
/// lattice-spacing units.  Uniform carries no scale: its extent is the
/// truncation radius chosen at discretization time.
struct KernelSpec {
  KernelFamily family = KernelFamily::gaussian;
  double scale = 1.0;  // gamma (cauchy, power_law), sigma (gaussian), b (laplace)

  static KernelSpec cauchy(double gamma);
  static KernelSpec power_law(double gamma);
  static KernelSpec gaussian(double sigma);
  static KernelSpec uniform();
  static KernelSpec laplace(double b);
};

struct GridShape {
  int dimension = 1;  // 1 or 2
  int nx = 0;
  int ny = 1;         // 1 when dimension == 1

  int sites() const { return nx * ny; }
};

enum class Boundary { periodic, absorbing };

/// Truncated, renormalized lattice kernel.  Weights live on the offset box
/// [-radius, radius]^d (row major over (m, n)), are symmetric under offset
/// negation and sum to exactly 1.
class DiscreteKernel {
 public:
  DiscreteKernel(int dimension, int radius, std::vector<double> weights,
                 double captured_mass);

  int dimension() const { return dimension_; }
  int radius() const { return radius_; }
  int side() const { return 2 * radius_ + 1; }

  double weight(int m) const;          // 1D
  double weight(int m, int n) const;   // 2D
  const std::vector<double>& weights() const { return weights_; }

  // Pre-normalization mass captured inside the truncation box, evaluated
  // with the analytic density prefactors.
  double captured_mass() const { return captured_mass_; }

  // Smallest radius r <= radius() whose box captures at least the given
  // fraction of the (normalized) weight mass.
  int mass_radius(double fraction) const;

  // Discrete standard deviation along one axis (center of mass is 0 by
  // symmetry).
  double standard_deviation() const;

 private:
  int dimension_;
  int radius_;
  std::vector<double> weights_;
  double captured_mass_;
};

/// Samples the analytic density at integer offsets inside the box of the
/// given radius and renormalizes to total mass 1 (assumption A1 on the
/// finite lattice).  Throws if the pre-normalization mass is below 0.5
/// (truncation too aggressive for the tail), except for power_law (whose
/// normalization constant is left unspecified by the analytic form) and
/// uniform (constant density).
DiscreteKernel discretize(const KernelSpec& spec, int dimension,
                          int truncation_radius);

/// Default truncation policy: ceil(8*scale) for light tails (gaussian,
/// laplace), capped by grid_extent/2; grid_extent/2 for the heavy-tailed
/// families so the tail is kept; 2 for uniform (a 5-site box).
int default_truncation_radius(const KernelSpec& spec, int grid_extent);

/// Evaluates the tabulated closed-form DFT of the analytic family at an
/// integer mode vector.  mode and grid_sizes have one entry per dimension.
/// The laplace entry is the discrete-time transform of the two-sided
/// exponential, normalized to 1 at mode zero.  Where these expressions
/// disagree with transform_numeric, the numeric path is authoritative.
std::complex<double> transform_closed_form(const KernelSpec& spec,
                                           const std::vector<int>& mode,
                                           const std::vector<int>& grid_sizes);

/// Exact DFT of the kernel embedded (circularly shifted, zero padded) on
/// the grid; one amplitude per mode, row major.  Requires radius <= nx/2
/// (and ny/2 in 2D).  Mode 0 is 1 by normalization.
std::vector<std::complex<double>> transform_numeric(const DiscreteKernel& kernel,
                                                    const GridShape& grid);

/// Circular (periodic) or absorbing-renormalized convolution by direct
/// summation.  The absorbing variant renormalizes each site's effective
/// weights to the in-domain mass.
std::vector<double> convolve(const std::vector<double>& field,
                             const GridShape& grid, Boundary boundary,
                             const DiscreteKernel& kernel);

/// Spectral route for the periodic case: IDFT(DFT(field) * DFT(kernel)).
/// Agrees with the direct route to ~1e-12; the direct route is the oracle.
std::vector<double> convolve_spectral(const std::vector<double>& field,
                                      const GridShape& grid,
                                      const DiscreteKernel& kernel);

}  // namespace wlde
