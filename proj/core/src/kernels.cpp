#include "wlde/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wlde {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_spec(const KernelSpec& spec) {
  if (spec.family == KernelFamily::uniform) return;
  if (!(spec.scale > 0.0)) {
    throw std::invalid_argument("kernel: scale must be positive for " +
                                to_string(spec.family));
  }
}

// Analytic density at a squared Euclidean offset (radial families) or at
// component offsets (separable laplace), including the tabulated
// prefactors so captured_mass is meaningful.
double density_1d(const KernelSpec& spec, int m) {
  const double s = spec.scale;
  switch (spec.family) {
    case KernelFamily::cauchy:
      return s / (kPi * (s * s + double(m) * m));
    case KernelFamily::power_law:
      return std::pow(1.0 + double(m) * m, -0.5 * s);
    case KernelFamily::gaussian:
      return std::exp(-0.5 * double(m) * m / (s * s)) /
             std::sqrt(2.0 * kPi * s * s);
    case KernelFamily::uniform:
      return 1.0;
    case KernelFamily::laplace:
      return std::exp(-std::abs(double(m)) / s) / (2.0 * s);
  }
  return 0.0;
}

double density_2d(const KernelSpec& spec, int m, int n) {
  const double s = spec.scale;
  const double r2 = double(m) * m + double(n) * n;
  switch (spec.family) {
    case KernelFamily::cauchy:
      return s / (kPi * (s * s + r2));
    case KernelFamily::power_law:
      return std::pow(1.0 + r2, -0.5 * s);
    case KernelFamily::gaussian:
      return std::exp(-0.5 * r2 / (s * s)) / (2.0 * kPi * s * s);
    case KernelFamily::uniform:
      return 1.0;
    case KernelFamily::laplace:
      return std::exp(-(std::abs(double(m)) + std::abs(double(n))) / s) /
             (4.0 * s * s);
  }
  return 0.0;
}

// Naive DFT along one axis; grids here are a few hundred sites at most.
void dft_axis(std::vector<std::complex<double>>& data, int count, int stride,
              int repeats, int repeat_stride, int sign) {
  std::vector<std::complex<double>> twiddle(count);
  for (int k = 0; k < count; ++k) {
    const double angle = sign * 2.0 * kPi * k / count;
    twiddle[k] = {std::cos(angle), std::sin(angle)};
  }
  std::vector<std::complex<double>> line(count);
  for (int r = 0; r < repeats; ++r) {
    std::complex<double>* base = data.data() + std::size_t(r) * repeat_stride;
    for (int k = 0; k < count; ++k) {
      std::complex<double> acc = 0.0;
      for (int m = 0; m < count; ++m) {
        acc += base[std::size_t(m) * stride] * twiddle[int64_t(k) * m % count];
      }
      line[k] = acc;
    }
    for (int k = 0; k < count; ++k) base[std::size_t(k) * stride] = line[k];
  }
}

std::vector<std::complex<double>> dft_grid(
    const std::vector<std::complex<double>>& input, const GridShape& grid,
    int sign) {
  std::vector<std::complex<double>> data = input;
  if (grid.dimension == 1) {
    dft_axis(data, grid.nx, 1, 1, 0, sign);
  } else {
    // Row major (x, y): index = x * ny + y.
    dft_axis(data, grid.ny, 1, grid.nx, grid.ny, sign);  // along y
    dft_axis(data, grid.nx, grid.ny, grid.ny, 1, sign);  // along x
  }
  return data;
}

int wrap(int i, int n) {
  if (i < 0) return i + n;
  if (i >= n) return i - n;
  return i;
}

}  // namespace

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::cauchy: return "cauchy";
    case KernelFamily::power_law: return "powerlaw";
    case KernelFamily::gaussian: return "gaussian";
    case KernelFamily::uniform: return "uniform";
    case KernelFamily::laplace: return "laplace";
  }
  return "?";
}

KernelFamily kernel_family_from_string(std::string_view name) {
  if (name == "cauchy") return KernelFamily::cauchy;
  if (name == "powerlaw" || name == "power_law" || name == "power-law")
    return KernelFamily::power_law;
  if (name == "gaussian") return KernelFamily::gaussian;
  if (name == "uniform") return KernelFamily::uniform;
  if (name == "laplace" || name == "laplacian") return KernelFamily::laplace;
  throw std::invalid_argument("kernel: unknown family '" + std::string(name) +
                              "'");
}

KernelSpec KernelSpec::cauchy(double gamma) {
  KernelSpec s{KernelFamily::cauchy, gamma};
  validate_spec(s);
  return s;
}

KernelSpec KernelSpec::power_law(double gamma) {
  KernelSpec s{KernelFamily::power_law, gamma};
  validate_spec(s);
  return s;
}

KernelSpec KernelSpec::gaussian(double sigma) {
  KernelSpec s{KernelFamily::gaussian, sigma};
  validate_spec(s);
  return s;
}

KernelSpec KernelSpec::uniform() { return KernelSpec{KernelFamily::uniform, 0.0}; }

KernelSpec KernelSpec::laplace(double b) {
  KernelSpec s{KernelFamily::laplace, b};
  validate_spec(s);
  return s;
}

DiscreteKernel::DiscreteKernel(int dimension, int radius,
                               std::vector<double> weights,
                               double captured_mass)
    : dimension_(dimension),
      radius_(radius),
      weights_(std::move(weights)),
      captured_mass_(captured_mass) {
  if (dimension_ != 1 && dimension_ != 2) {
    throw std::invalid_argument("kernel: dimension must be 1 or 2");
  }
  const std::size_t expected = dimension_ == 1
                                   ? std::size_t(side())
                                   : std::size_t(side()) * side();
  if (weights_.size() != expected) {
    throw std::invalid_argument("kernel: weight array size mismatch");
  }
}

double DiscreteKernel::weight(int m) const {
  return weights_[std::size_t(m + radius_)];
}

double DiscreteKernel::weight(int m, int n) const {
  return weights_[std::size_t(m + radius_) * side() + (n + radius_)];
}

int DiscreteKernel::mass_radius(double fraction) const {
  for (int r = 0; r <= radius_; ++r) {
    double mass = 0.0;
    if (dimension_ == 1) {
      for (int m = -r; m <= r; ++m) mass += weight(m);
    } else {
      for (int m = -r; m <= r; ++m)
        for (int n = -r; n <= r; ++n) mass += weight(m, n);
    }
    if (mass >= fraction) return r;
  }
  return radius_;
}

double DiscreteKernel::standard_deviation() const {
  double var = 0.0;
  if (dimension_ == 1) {
    for (int m = -radius_; m <= radius_; ++m) var += double(m) * m * weight(m);
  } else {
    for (int m = -radius_; m <= radius_; ++m)
      for (int n = -radius_; n <= radius_; ++n)
        var += double(m) * m * weight(m, n);  // marginal along x
  }
  return std::sqrt(var);
}

DiscreteKernel discretize(const KernelSpec& spec, int dimension,
                          int truncation_radius) {
  validate_spec(spec);
  if (dimension != 1 && dimension != 2) {
    throw std::invalid_argument("kernel: dimension must be 1 or 2");
  }
  if (truncation_radius < 1) {
    throw std::invalid_argument("kernel: truncation radius must be >= 1");
  }
  if (spec.family == KernelFamily::power_law && !(spec.scale > dimension)) {
    throw std::invalid_argument(
        "kernel: power-law exponent must exceed the lattice dimension");
  }

  const int r = truncation_radius;
  const int side = 2 * r + 1;
  std::vector<double> w;
  double mass = 0.0;
  if (dimension == 1) {
    w.resize(std::size_t(side));
    for (int m = -r; m <= r; ++m) {
      const double d = density_1d(spec, m);
      w[std::size_t(m + r)] = d;
      mass += d;
    }
  } else {
    w.resize(std::size_t(side) * side);
    for (int m = -r; m <= r; ++m) {
      for (int n = -r; n <= r; ++n) {
        const double d = density_2d(spec, m, n);
        w[std::size_t(m + r) * side + (n + r)] = d;
        mass += d;
      }
    }
  }

  const bool mass_meaningful = spec.family != KernelFamily::power_law &&
                               spec.family != KernelFamily::uniform;
  if (mass_meaningful && mass < 0.5) {
    throw std::invalid_argument(
        "kernel: truncation radius " + std::to_string(r) +
        " captures mass " + std::to_string(mass) +
        " < 0.5 for family " + to_string(spec.family));
  }
  for (double& x : w) x /= mass;
  return DiscreteKernel(dimension, r, std::move(w), mass);
}

int default_truncation_radius(const KernelSpec& spec, int grid_extent) {
  const int half = std::max(1, grid_extent / 2);
  switch (spec.family) {
    case KernelFamily::cauchy:
    case KernelFamily::power_law:
      return half;
    case KernelFamily::uniform:
      return std::min(half, 2);
    case KernelFamily::gaussian:
    case KernelFamily::laplace:
      return std::min(half, std::max(1, int(std::ceil(8.0 * spec.scale))));
  }
  return half;
}

std::complex<double> transform_closed_form(const KernelSpec& spec,
                                           const std::vector<int>& mode,
                                           const std::vector<int>& grid_sizes) {
  validate_spec(spec);
  if (mode.empty() || mode.size() > 2 || mode.size() != grid_sizes.size()) {
    throw std::invalid_argument("kernel: mode/grid_sizes must have 1 or 2 entries");
  }
  for (std::size_t i = 0; i < mode.size(); ++i) {
    if (mode[i] < 0 || mode[i] >= grid_sizes[i]) {
      throw std::invalid_argument("kernel: mode component outside [0, grid size)");
    }
  }
  const int k = mode[0];
  const int l = mode.size() == 2 ? mode[1] : 0;
  const double m_size = grid_sizes[0];
  const double n_size = mode.size() == 2 ? grid_sizes[1] : 1.0;
  const double s = spec.scale;

  switch (spec.family) {
    case KernelFamily::cauchy: {
      // As tabulated: no grid normalization of the mode.
      const double r = std::sqrt(double(k) * k + double(l) * l);
      return std::exp(-2.0 * kPi * s * r) / (1.0 + std::exp(-2.0 * kPi * s));
    }
    case KernelFamily::power_law: {
      const double u = double(k) / m_size;
      const double v = double(l) / n_size;
      return std::pow(1.0 + u * u + v * v, -0.5 * s);
    }
    case KernelFamily::gaussian: {
      const double u = double(k) / m_size;
      const double v = double(l) / n_size;
      return std::exp(-2.0 * kPi * kPi * s * s * (u * u + v * v));
    }
    case KernelFamily::uniform: {
      if (k == 0 && l == 0) return 1.0;
      // Dirichlet-ratio form of the tabulated expression; sin(pi k)
      // vanishes at integer modes, so this is ~0 for k or l nonzero.
      const std::complex<double> j(0.0, 1.0);
      auto axis = [&](int q, double size) -> std::complex<double> {
        if (q == 0) return size;
        return std::exp(-kPi * j * (double(q) / size)) * std::sin(kPi * q) /
               std::sin(kPi * q / size);
      };
      return axis(k, m_size) * axis(l, n_size) / (m_size * n_size);
    }
    case KernelFamily::laplace: {
      // Discrete-time transform of a^|m| with a = exp(-1/b), normalized
      // to 1 at mode zero; product over axes in 2D.
      const double a = std::exp(-1.0 / s);
      auto axis = [&](int q, double size) {
        const double c = std::cos(2.0 * kPi * q / size);
        return (1.0 - a) * (1.0 - a) / (1.0 - 2.0 * a * c + a * a);
      };
      double out = axis(k, m_size);
      if (mode.size() == 2) out *= axis(l, n_size);
      return out;
    }
  }
  return 0.0;
}

std::vector<std::complex<double>> transform_numeric(const DiscreteKernel& kernel,
                                                    const GridShape& grid) {
  if ((grid.dimension == 1) != (kernel.dimension() == 1)) {
    throw std::invalid_argument("kernel: dimension mismatch with grid");
  }
  if (kernel.radius() > grid.nx / 2 ||
      (grid.dimension == 2 && kernel.radius() > grid.ny / 2)) {
    throw std::invalid_argument(
        "kernel: truncation radius exceeds half the grid extent");
  }
  const int r = kernel.radius();
  if (grid.dimension == 1) {
    const int n = grid.nx;
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      std::complex<double> acc = 0.0;
      for (int m = -r; m <= r; ++m) {
        const double angle = -2.0 * kPi * k * m / n;
        acc += kernel.weight(m) *
               std::complex<double>(std::cos(angle), std::sin(angle));
      }
      out[std::size_t(k)] = acc;
    }
    return out;
  }

  const int nx = grid.nx, ny = grid.ny;
  const int side = kernel.side();
  // Two-stage contraction: partial[l][m] = sum_n w(m,n) e_y(l,n).
  std::vector<std::complex<double>> partial(std::size_t(ny) * side);
  for (int l = 0; l < ny; ++l) {
    for (int m = -r; m <= r; ++m) {
      std::complex<double> acc = 0.0;
      for (int n = -r; n <= r; ++n) {
        const double angle = -2.0 * kPi * l * n / ny;
        acc += kernel.weight(m, n) *
               std::complex<double>(std::cos(angle), std::sin(angle));
      }
      partial[std::size_t(l) * side + (m + r)] = acc;
    }
  }
  std::vector<std::complex<double>> out(std::size_t(nx) * ny);
  for (int k = 0; k < nx; ++k) {
    for (int l = 0; l < ny; ++l) {
      std::complex<double> acc = 0.0;
      for (int m = -r; m <= r; ++m) {
        const double angle = -2.0 * kPi * k * m / nx;
        acc += partial[std::size_t(l) * side + (m + r)] *
               std::complex<double>(std::cos(angle), std::sin(angle));
      }
      out[std::size_t(k) * ny + l] = acc;
    }
  }
  return out;
}

std::vector<double> convolve(const std::vector<double>& field,
                             const GridShape& grid, Boundary boundary,
                             const DiscreteKernel& kernel) {
  if ((grid.dimension == 1) != (kernel.dimension() == 1)) {
    throw std::invalid_argument("kernel: dimension mismatch with field");
  }
  if (field.size() != std::size_t(grid.sites())) {
    throw std::invalid_argument("kernel: field size mismatch with grid");
  }
  const int r = kernel.radius();
  std::vector<double> out(field.size(), 0.0);

  if (grid.dimension == 1) {
    const int n = grid.nx;
    if (boundary == Boundary::periodic) {
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int m = -r; m <= r; ++m) {
          acc += kernel.weight(m) * field[std::size_t(wrap(i - m, n))];
        }
        out[std::size_t(i)] = acc;
      }
    } else {
      for (int i = 0; i < n; ++i) {
        double acc = 0.0, wsum = 0.0;
        for (int m = -r; m <= r; ++m) {
          const int j = i - m;
          if (j < 0 || j >= n) continue;
          const double w = kernel.weight(m);
          acc += w * field[std::size_t(j)];
          wsum += w;
        }
        out[std::size_t(i)] = acc / wsum;
      }
    }
    return out;
  }

  const int nx = grid.nx, ny = grid.ny;
  if (boundary == Boundary::periodic) {
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j) {
        double acc = 0.0;
        for (int m = -r; m <= r; ++m) {
          const int x = wrap(i - m, nx);
          for (int n2 = -r; n2 <= r; ++n2) {
            const int y = wrap(j - n2, ny);
            acc += kernel.weight(m, n2) * field[std::size_t(x) * ny + y];
          }
        }
        out[std::size_t(i) * ny + j] = acc;
      }
    }
  } else {
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j) {
        double acc = 0.0, wsum = 0.0;
        for (int m = -r; m <= r; ++m) {
          const int x = i - m;
          if (x < 0 || x >= nx) continue;
          for (int n2 = -r; n2 <= r; ++n2) {
            const int y = j - n2;
            if (y < 0 || y >= ny) continue;
            const double w = kernel.weight(m, n2);
            acc += w * field[std::size_t(x) * ny + y];
            wsum += w;
          }
        }
        out[std::size_t(i) * ny + j] = acc / wsum;
      }
    }
  }
  return out;
}

std::vector<double> convolve_spectral(const std::vector<double>& field,
                                      const GridShape& grid,
                                      const DiscreteKernel& kernel) {
  if (field.size() != std::size_t(grid.sites())) {
    throw std::invalid_argument("kernel: field size mismatch with grid");
  }
  const auto amps = transform_numeric(kernel, grid);
  std::vector<std::complex<double>> data(field.begin(), field.end());
  data = dft_grid(data, grid, -1);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= amps[i];
  data = dft_grid(data, grid, +1);
  std::vector<double> out(field.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = data[i].real() / double(grid.sites());
  }
  return out;
}

}  // namespace wlde
