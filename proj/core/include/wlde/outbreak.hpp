#pragma once

#include <span>
#include <string>
#include <vector>

#include "wlde/lattice.hpp"

namespace wlde {

/// First generation t at which a site's frequency stops changing,
/// |v(t+1) - v(t)| <= epsilon_fix; censored at the trajectory horizon when
/// that never happens.  (Exact equality, as in the defining minimum, never
/// triggers in floating point.)
struct FixationResult {
  int time = 0;
  bool censored = false;
};

FixationResult detect_fixation(const Trajectory& trajectory, int site,
                               double epsilon_fix = 1e-10);

/// Exact Poisson-binomial PMF over {0..m} for independent Bernoulli
/// successes with the given probabilities, by iterative convolution
/// (O(m^2)); sums to 1 within 1e-12.
std::vector<double> poisson_binomial_pmf(std::span<const double> p);

/// Poisson point mass e^-lambda lambda^k / k!, evaluated in log space.
double poisson_pmf(double lambda, int k);

/// Truncated geometric mixture of conditional Poisson-binomial PMFs,
///   P(Y=k) ~= sum_{m=0..m_max} P(Y=k | N=m) (1-q)^m q,
/// where the conditional law uses the first m entries of the series.
/// Requires the neglected tail mass (1-q)^(m_max+1) < 1e-9 and
/// m_max <= series length; throws when the bound is unreachable.
double geometric_mixture_probability(std::span<const double> p_series, double q,
                                     int k, int m_max);

/// Minimal truncation depth meeting the 1e-9 geometric tail bound.
int geometric_mixture_depth(double q);

struct ModeReport {
  int count = 0;
  std::vector<int> peak_sites;
  std::vector<double> peak_values;
};

/// Counts strict local maxima that survive prominence filtering: a peak
/// must exceed the highest saddle connecting it to a taller peak by
/// prominence * (global max), and peaks closer than min_separation cells
/// keep only the tallest.  Operates on the raw curve, no smoothing.
ModeReport count_modes(std::span<const double> curve, double prominence = 0.05,
                       int min_separation = 3);

enum class OutbreakMethod { poisson_binomial, poisson, geometric_mixture };

std::string to_string(OutbreakMethod method);
OutbreakMethod outbreak_method_from_string(const std::string& name);

struct GeometricOptions {
  double q = 0.0;   // <= 0: per-site estimate 1 / (1 + N_i)
  int m_max = 0;    // <= 0: minimal depth meeting the tail bound
};

/// Spatial outbreak-size curve: per site, the probability that exactly k
/// infection events occur before fixation, with the per-generation
/// frequencies p_it = v(t, x_i) truncated at min(N_i, horizon).
struct OutbreakCurve {
  int k = 0;
  OutbreakMethod method = OutbreakMethod::poisson;
  std::vector<double> probability;  // per site
  std::vector<double> lambda;       // per-site truncated sum of p_it
  std::vector<int> fixation_time;
  std::vector<char> censored;
  ModeReport modality;
};

OutbreakCurve outbreak_curve(const Trajectory& trajectory, int k,
                             OutbreakMethod method, int horizon,
                             double epsilon_fix = 1e-10,
                             const GeometricOptions& geometric = {},
                             double prominence = 0.05, int min_separation = 3);

}  // namespace wlde
