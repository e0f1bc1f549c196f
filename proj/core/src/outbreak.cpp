#include "wlde/outbreak.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wlde {

FixationResult detect_fixation(const Trajectory& trajectory, int site,
                               double epsilon_fix) {
  if (trajectory.stride != 1 || trajectory.fields.size() < 2) {
    throw std::invalid_argument(
        "outbreak: fixation detection needs a stride-1 trajectory of length >= 2");
  }
  if (site < 0 || site >= trajectory.config.sites()) {
    throw std::out_of_range("outbreak: site outside the lattice");
  }
  for (int t = 0; t + 1 < int(trajectory.fields.size()); ++t) {
    const double now = trajectory.fields[std::size_t(t)].values[std::size_t(site)];
    const double next =
        trajectory.fields[std::size_t(t) + 1].values[std::size_t(site)];
    if (std::abs(next - now) <= epsilon_fix) return {t, false};
  }
  return {trajectory.generations, true};
}

std::vector<double> poisson_binomial_pmf(std::span<const double> p) {
  for (double q : p) {
    if (!(q >= 0.0 && q <= 1.0)) {
      throw std::invalid_argument("outbreak: probabilities must lie in [0,1]");
    }
  }
  std::vector<double> pmf(p.size() + 1, 0.0);
  pmf[0] = 1.0;
  std::size_t used = 0;
  for (double q : p) {
    ++used;
    for (std::size_t k = used; k >= 1; --k) {
      pmf[k] = pmf[k] * (1.0 - q) + pmf[k - 1] * q;
    }
    pmf[0] *= (1.0 - q);
  }
  return pmf;
}

double poisson_pmf(double lambda, int k) {
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("outbreak: lambda must be >= 0");
  }
  if (k < 0) return 0.0;
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(k * std::log(lambda) - lambda - std::lgamma(double(k) + 1.0));
}

int geometric_mixture_depth(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::invalid_argument("outbreak: q must lie in (0,1)");
  }
  // smallest m with (1-q)^(m+1) < 1e-9
  const int depth = int(std::ceil(std::log(1e-9) / std::log1p(-q))) - 1;
  return std::max(depth, 0);
}

double geometric_mixture_probability(std::span<const double> p_series, double q,
                                     int k, int m_max) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::invalid_argument("outbreak: q must lie in (0,1)");
  }
  if (k < 0 || m_max < 0) {
    throw std::invalid_argument("outbreak: k and m_max must be >= 0");
  }
  if (std::pow(1.0 - q, double(m_max) + 1.0) >= 1e-9) {
    throw std::invalid_argument(
        "outbreak: geometric tail mass bound 1e-9 unreachable at m_max=" +
        std::to_string(m_max) + " for q=" + std::to_string(q));
  }
  if (m_max > int(p_series.size())) {
    throw std::invalid_argument(
        "outbreak: m_max exceeds the available p-series length (" +
        std::to_string(p_series.size()) + ")");
  }

  // Grow the conditional PMF one Bernoulli factor at a time; the m-th
  // term conditions on exactly the first m probabilities.
  std::vector<double> pmf(std::size_t(m_max) + 1, 0.0);
  pmf[0] = 1.0;
  double total = (k == 0) ? q : 0.0;  // m = 0 term
  double weight = q;
  for (int m = 1; m <= m_max; ++m) {
    const double p = p_series[std::size_t(m) - 1];
    for (std::size_t j = std::size_t(m); j >= 1; --j) {
      pmf[j] = pmf[j] * (1.0 - p) + pmf[j - 1] * p;
    }
    pmf[0] *= (1.0 - p);
    weight *= (1.0 - q);
    if (k <= m) total += pmf[std::size_t(k)] * weight;
  }
  return total;
}

namespace {

struct Peak {
  int site = 0;       // representative index (plateau center)
  int lo = 0, hi = 0; // plateau extent
  double value = 0.0;
};

// Strict local maxima with plateau handling: a run of equal values is a
// peak when both neighbors of the run are strictly lower (or absent).
std::vector<Peak> find_peaks(std::span<const double> curve) {
  const int n = int(curve.size());
  std::vector<Peak> peaks;
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && curve[std::size_t(j) + 1] == curve[std::size_t(i)]) ++j;
    const bool left_ok = (i == 0) || curve[std::size_t(i) - 1] < curve[std::size_t(i)];
    const bool right_ok = (j == n - 1) || curve[std::size_t(j) + 1] < curve[std::size_t(i)];
    const bool whole_curve = (i == 0 && j == n - 1);  // flat curve: no mode
    if (left_ok && right_ok && !whole_curve && curve[std::size_t(i)] > 0.0) {
      peaks.push_back({(i + j) / 2, i, j, curve[std::size_t(i)]});
    }
    i = j + 1;
  }
  return peaks;
}

}  // namespace

ModeReport count_modes(std::span<const double> curve, double prominence,
                       int min_separation) {
  if (curve.size() < 5) {
    throw std::invalid_argument("outbreak: mode counting needs >= 5 samples");
  }
  const double global_max = *std::max_element(curve.begin(), curve.end());
  ModeReport report;
  if (!(global_max > 0.0)) return report;

  const auto peaks = find_peaks(curve);
  std::vector<Peak> prominent;
  for (const Peak& peak : peaks) {
    // Walk each way until terrain rises above the peak, tracking the
    // lowest point passed; the higher of the two saddles keys the
    // prominence.  A side that never reaches taller terrain does not
    // bound it.
    double key_saddle = -1.0;
    bool bounded = false;
    for (int dir = -1; dir <= 1; dir += 2) {
      double lowest = peak.value;
      bool taller = false;
      for (int idx = (dir < 0 ? peak.lo - 1 : peak.hi + 1);
           idx >= 0 && idx < int(curve.size()); idx += dir) {
        const double v = curve[std::size_t(idx)];
        if (v > peak.value) {
          taller = true;
          break;
        }
        lowest = std::min(lowest, v);
      }
      if (taller) {
        bounded = true;
        key_saddle = std::max(key_saddle, lowest);
      }
    }
    if (!bounded || peak.value - key_saddle >= prominence * global_max) {
      prominent.push_back(peak);
    }
  }

  // Enforce separation, keeping taller peaks first.
  std::vector<Peak> kept;
  std::vector<Peak> by_height = prominent;
  std::stable_sort(by_height.begin(), by_height.end(),
                   [](const Peak& a, const Peak& b) { return a.value > b.value; });
  for (const Peak& candidate : by_height) {
    const bool clear = std::none_of(kept.begin(), kept.end(), [&](const Peak& k) {
      return std::abs(k.site - candidate.site) < min_separation;
    });
    if (clear) kept.push_back(candidate);
  }
  std::sort(kept.begin(), kept.end(),
            [](const Peak& a, const Peak& b) { return a.site < b.site; });

  report.count = int(kept.size());
  for (const Peak& peak : kept) {
    report.peak_sites.push_back(peak.site);
    report.peak_values.push_back(peak.value);
  }
  return report;
}

std::string to_string(OutbreakMethod method) {
  switch (method) {
    case OutbreakMethod::poisson_binomial: return "poisson-binomial";
    case OutbreakMethod::poisson: return "poisson";
    case OutbreakMethod::geometric_mixture: return "geometric-mixture";
  }
  return "?";
}

OutbreakMethod outbreak_method_from_string(const std::string& name) {
  if (name == "poisson-binomial" || name == "poisson_binomial")
    return OutbreakMethod::poisson_binomial;
  if (name == "poisson") return OutbreakMethod::poisson;
  if (name == "geometric-mixture" || name == "geometric_mixture")
    return OutbreakMethod::geometric_mixture;
  throw std::invalid_argument("outbreak: unknown method '" + name + "'");
}

OutbreakCurve outbreak_curve(const Trajectory& trajectory, int k,
                             OutbreakMethod method, int horizon,
                             double epsilon_fix,
                             const GeometricOptions& geometric,
                             double prominence, int min_separation) {
  if (k < 0) throw std::invalid_argument("outbreak: k must be >= 0");
  if (horizon < 1 || horizon > trajectory.generations) {
    throw std::invalid_argument(
        "outbreak: horizon must lie in [1, trajectory generations]");
  }
  if (trajectory.stride != 1) {
    throw std::invalid_argument("outbreak: needs a stride-1 trajectory");
  }

  const int sites = trajectory.config.sites();
  OutbreakCurve curve;
  curve.k = k;
  curve.method = method;
  curve.probability.resize(std::size_t(sites));
  curve.lambda.resize(std::size_t(sites));
  curve.fixation_time.resize(std::size_t(sites));
  curve.censored.resize(std::size_t(sites));

  std::vector<double> series;
  series.reserve(std::size_t(horizon));
  for (int site = 0; site < sites; ++site) {
    const FixationResult fix = detect_fixation(trajectory, site, epsilon_fix);
    curve.fixation_time[std::size_t(site)] = fix.time;
    curve.censored[std::size_t(site)] = fix.censored;

    const int length = std::min(fix.time, horizon);
    series.clear();
    for (int t = 0; t < length; ++t) {
      series.push_back(
          trajectory.fields[std::size_t(t)].values[std::size_t(site)]);
    }
    const double lambda = std::accumulate(series.begin(), series.end(), 0.0);
    curve.lambda[std::size_t(site)] = lambda;

    switch (method) {
      case OutbreakMethod::poisson:
        curve.probability[std::size_t(site)] = poisson_pmf(lambda, k);
        break;
      case OutbreakMethod::poisson_binomial: {
        if (k > length) {
          curve.probability[std::size_t(site)] = 0.0;
        } else {
          curve.probability[std::size_t(site)] =
              poisson_binomial_pmf(series)[std::size_t(k)];
        }
        break;
      }
      case OutbreakMethod::geometric_mixture: {
        if (geometric.q <= 0.0 && fix.time == 0) {
          // Already at a fixed point: certain immediate fixation.
          curve.probability[std::size_t(site)] = (k == 0) ? 1.0 : 0.0;
          break;
        }
        const double q =
            geometric.q > 0.0 ? geometric.q : 1.0 / (1.0 + fix.time);
        const int depth =
            geometric.m_max > 0 ? geometric.m_max : geometric_mixture_depth(q);
        // The mixture ranges over hypothetical fixation times, so it
        // draws on the series up to the full horizon.
        std::vector<double> full(static_cast<std::size_t>(horizon));
        for (int t = 0; t < horizon; ++t) {
          full[std::size_t(t)] =
              trajectory.fields[std::size_t(t)].values[std::size_t(site)];
        }
        curve.probability[std::size_t(site)] =
            geometric_mixture_probability(full, q, k, depth);
        break;
      }
    }
  }
  curve.modality = count_modes(curve.probability, prominence, min_separation);
  return curve;
}

}  // namespace wlde
