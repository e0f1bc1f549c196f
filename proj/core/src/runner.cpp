#include "wlde/runner.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "wlde/io.hpp"
#include "wlde/stability.hpp"

namespace wlde {

namespace {

std::string short_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string csv_field(double v) { return format_double(v); }

// ---------------------------------------------------------------------
// Constants of the bundled studies.  Kernel scales, release geometry and
// sweep grids are frozen here and echoed into every manifest.

namespace repro {

// Traveling-wave experiments (phase portrait aside, all 1D).
constexpr double kWaveSh = 0.8;
constexpr double kWaveAllee = 0.4;
constexpr double kWaveBankScale = 1.0;  // common nominal kernel scale, cells
constexpr int kWaveNx = 600;
constexpr int kWaveGenerations = 300;
constexpr double kWaveAmplitude = 0.8;
constexpr double kWaveHalfWidth = 10.0;

constexpr int kFig3Nx = 400;
constexpr int kFig3Generations = 200;
constexpr int kFig3Snapshot = 150;
constexpr double kFig3Delta = 0.1;

constexpr double kFig6Delta = 0.4;
const std::vector<double> kFig6Amplitudes = {0.6, 0.8, 0.95};

const std::vector<double> kFig4Deltas = {0.01, 0.05, 0.09, 0.13,
                                         0.17, 0.21, 0.25, 0.30};
constexpr double kFig5Delta = 0.3;
// Grid skips the pinned-but-alive band (~0.5-0.65); the final value
// sits beyond every family's collapse threshold.
const std::vector<double> kFig5Allees = {0.16, 0.22, 0.28, 0.34,
                                         0.40, 0.46, 0.70};

// Outbreak-size figures (Gaussian, then Laplace).
constexpr double kOutbreakSf = 0.3;
constexpr double kOutbreakSh = 0.7;
constexpr double kOutbreakDelta = 0.5;
constexpr double kOutbreakHalfWidth = 2.0;
constexpr int kOutbreakNx = 400;
constexpr int kOutbreakHorizon = 400;
const std::vector<int> kOutbreakSizes = {1, 3, 10, 25};
const std::vector<double> kOutbreakAmplitudes = {0.2, 0.3, 0.4, 0.5};

// Release-profile comparison (fig 9): the same dynamics on a sub-unit
// grid, where the three profile shapes are resolved inside |x| <= 2.
constexpr int kProfileNx = 1600;
constexpr double kProfileSpacing = 0.25;
constexpr double kProfileKernelScale = 4.0;  // cells; one length unit

// Release-cost comparison (table 4 scale).  The comparison runs on a
// sub-unit grid (N_x sites at spacing 0.25, so kernel scales of one
// length unit are four cells); the asymptotic constraint is read at the
// release site, since no wave can fill the domain mean within N_t.
constexpr double kTableSf = 0.2;
constexpr double kTableSh = 0.9;
constexpr double kTableDelta = 0.2;
constexpr double kTableBeta = 0.9;
constexpr int kTableNx = 400;
constexpr int kTableNt = 200;
constexpr double kTableSpacing = 0.25;
constexpr double kTableKernelScale = 4.0;  // cells; one length unit
constexpr double kTableHalfWidth = 0.5;    // MCM release half-width

}  // namespace repro

// ---------------------------------------------------------------------
// CSV builders.

std::string trajectory_csv(const Trajectory& traj, const std::string& hash) {
  std::ostringstream out;
  write_trajectory_csv(out, traj, hash);
  return out.str();
}

std::string trajectory_binary(const Trajectory& traj) {
  std::ostringstream out(std::ios::binary);
  write_trajectory_wlde1(out, traj);
  return out.str();
}

std::string profile_snapshot_csv(const LatticeConfig& lattice,
                                 const LatticeField& field) {
  std::ostringstream out;
  out << "site,x,v\n";
  for (int i = 0; i < lattice.nx; ++i) {
    out << i << ',' << csv_field(lattice.coordinate_x(i)) << ','
        << csv_field(field.values[std::size_t(i)]) << "\n";
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows,
                      const std::string& axis_name) {
  std::ostringstream out;
  out << axis_name << ",kernel,c_star,died,residual,error\n";
  for (const SweepRow& row : rows) {
    out << csv_field(row.axis_value) << ',' << row.kernel << ','
        << csv_field(row.c_star) << ',' << (row.died ? 1 : 0) << ','
        << csv_field(row.residual) << ',' << row.error << "\n";
  }
  return out.str();
}

std::string front_track_csv(const WaveRun& run) {
  std::ostringstream out;
  out << "generation,position,valid,c_t\n";
  for (std::size_t t = 0; t < run.front.position.size(); ++t) {
    out << t << ',' << csv_field(run.front.position[t]) << ','
        << int(run.front.valid[t]) << ',';
    const double c = t < run.speed.c_series.size()
                         ? run.speed.c_series[t]
                         : std::numeric_limits<double>::quiet_NaN();
    out << (std::isnan(c) ? "nan" : csv_field(c)) << "\n";
  }
  return out.str();
}

std::string outbreak_csv(const LatticeConfig& lattice,
                         const OutbreakCurve& curve) {
  std::ostringstream out;
  out << "site,x,P\n";
  for (int i = 0; i < lattice.nx; ++i) {
    out << i << ',' << csv_field(lattice.coordinate_x(i)) << ','
        << csv_field(curve.probability[std::size_t(i)]) << "\n";
  }
  return out.str();
}

std::string phase_portrait_csv(const std::vector<PhasePortraitPoint>& points,
                               double delta) {
  std::ostringstream out;
  out << "# delta=" << format_double(delta)
      << " (dispersal cancels for homogeneous states)\n";
  out << "v,dv,fixed_point\n";
  for (const PhasePortraitPoint& p : points) {
    out << csv_field(p.v) << ',' << csv_field(p.dv) << ','
        << (p.fixed_point ? 1 : 0) << "\n";
  }
  return out.str();
}

std::string optimum_csv(const std::vector<OptimumResult>& results,
                        const std::vector<std::string>& labels) {
  std::ostringstream out;
  out << "label,criterion,k,found,a_star,l_star,cost,iterations,note\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const OptimumResult& r = results[i];
    out << labels[i] << ',' << r.criterion << ',' << r.outbreak_size << ','
        << (r.found ? 1 : 0) << ',' << csv_field(r.a_star) << ','
        << csv_field(r.l_star) << ',' << csv_field(r.cost) << ','
        << r.iterations << ',' << r.note << "\n";
  }
  return out.str();
}

std::string compare_csv(const ComparisonTable& table) {
  std::ostringstream out;
  out << "kernel,profile,k,mcm_a,mcm_cost,mcm_found,acm_a,acm_cost,acm_found,"
         "note\n";
  for (const CompareMcmCell& cell : table.mcm) {
    const CompareAcmCell* acm = nullptr;
    for (const CompareAcmCell& candidate : table.acm) {
      if (candidate.kernel == cell.kernel && candidate.profile == cell.profile) {
        acm = &candidate;
        break;
      }
    }
    out << cell.kernel << ',' << to_string(cell.profile) << ','
        << cell.outbreak_size << ',' << csv_field(cell.result.a_star) << ','
        << csv_field(cell.result.cost) << ',' << (cell.result.found ? 1 : 0)
        << ',';
    if (acm && acm->result.found) {
      out << csv_field(acm->result.a_star) << ',' << csv_field(acm->result.cost)
          << ",1,";
    } else {
      out << ",,0,";
    }
    std::string note = cell.result.note;
    if (acm && !acm->result.note.empty()) {
      note += (note.empty() ? "" : " | ") + acm->result.note;
    }
    for (char& ch : note) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    out << note << "\n";
  }
  return out.str();
}

std::string compare_text(const ComparisonTable& table) {
  std::ostringstream out;
  out << "kernel      profile      k    MCM a*    ACM a*    MCM cost  ACM cost\n";
  out << "--------------------------------------------------------------------\n";
  char line[160];
  for (const CompareMcmCell& cell : table.mcm) {
    const CompareAcmCell* acm = nullptr;
    for (const CompareAcmCell& candidate : table.acm) {
      if (candidate.kernel == cell.kernel && candidate.profile == cell.profile) {
        acm = &candidate;
        break;
      }
    }
    std::snprintf(line, sizeof(line),
                  "%-11s %-12s %-4d %-9.3f %-9.3f %-9.3f %-9.3f\n",
                  cell.kernel.c_str(), to_string(cell.profile).c_str(),
                  cell.outbreak_size, cell.result.a_star,
                  acm && acm->result.found ? acm->result.a_star : std::nan(""),
                  cell.result.cost,
                  acm && acm->result.found ? acm->result.cost : std::nan(""));
    out << line;
  }
  return out.str();
}

// ---------------------------------------------------------------------
// Subcommand bodies.  Each fills the writer and the metadata map.

using Metadata = std::map<std::string, std::string>;

void run_simulate(const ExperimentConfig& config, ArtifactWriter& writer,
                  Metadata& meta) {
  const LatticeConfig lattice = config.lattice();
  const int radius = config.kernel_radius > 0
                         ? config.kernel_radius
                         : default_truncation_radius(config.kernel_spec(),
                                                     lattice.nx);
  const DiscreteKernel kernel =
      discretize(config.kernel_spec(), lattice.dimension, radius);
  SimulateOptions options;
  options.stride = config.stride;
  const Trajectory traj =
      simulate(lattice, config.profile(), config.growth(), config.dispersal(),
               kernel, config.generations, options);
  const std::string hash = fnv1a64_hex(config.resolved_ini());
  writer.write_text("trajectory.csv", trajectory_csv(traj, hash));
  writer.write_text("trajectory.wlde1", trajectory_binary(traj));
  meta["kernel_radius"] = std::to_string(radius);
  meta["kernel_captured_mass"] = format_double(kernel.captured_mass());
}

void require_constant_delta(const ExperimentConfig& config) {
  if (!config.delta_file.empty()) {
    throw config_error("dispersal.delta_file",
                       "this analysis requires a constant delta");
  }
}

void run_stability(const ExperimentConfig& config, ArtifactWriter& writer,
                   Metadata& meta, uint64_t seed) {
  require_constant_delta(config);
  const LatticeConfig lattice = config.lattice();
  const GrowthParams growth = config.growth();
  const int radius = config.kernel_radius > 0
                         ? config.kernel_radius
                         : default_truncation_radius(config.kernel_spec(),
                                                     lattice.nx);
  const DiscreteKernel kernel =
      discretize(config.kernel_spec(), lattice.dimension, radius);

  nlohmann::json report;
  report["kernel"] = to_string(config.kernel_family);
  report["kernel_scale"] = config.kernel_scale;
  report["kernel_radius"] = radius;
  report["delta"] = config.delta;
  report["margin"] = config.stability_margin;
  nlohmann::json points = nlohmann::json::array();
  for (double fp : growth.fixed_points()) {
    const StabilityReport r = classify(fp, growth, kernel, config.delta,
                                       lattice.shape(), config.stability_margin);
    const PerturbationOutcome outcome = verify_by_perturbation(
        fp, growth, kernel, config.delta, lattice, config.perturb_epsilon,
        config.perturb_generations, seed);
    points.push_back({{"fixed_point", r.fixed_point},
                      {"slope", r.slope},
                      {"spectral_factor", r.spectral_factor},
                      {"criterion_value", r.criterion_value},
                      {"verdict", to_string(r.verdict)},
                      {"perturbation", to_string(outcome)}});
  }
  report["fixed_points"] = points;
  writer.write_text("stability.json", report.dump(2) + "\n");

  const auto portrait = phase_portrait(growth, config.portrait_resolution);
  writer.write_text("phase_portrait.csv",
                    phase_portrait_csv(portrait, config.delta));
  meta["perturbation_seed"] = std::to_string(seed);
}

void run_wavespeed(const ExperimentConfig& config, ArtifactWriter& writer,
                   Metadata& meta, int threads) {
  require_constant_delta(config);
  WaveExperimentConfig base = config.wave_config();

  if (config.sweep_axis.empty()) {
    const WaveRun run = run_wave_experiment(base);
    std::vector<SweepRow> rows(1);
    rows[0].axis_value = config.delta;
    rows[0].kernel = to_string(config.kernel_family);
    rows[0].c_star = run.speed.c_star;
    rows[0].died = run.speed.died;
    rows[0].residual = run.speed.residual;
    writer.write_text("wavespeed.csv", sweep_csv(rows, "delta"));
    writer.write_text("front_track.csv", front_track_csv(run));
    meta["guard_radius"] = std::to_string(run.guard_radius);
    return;
  }

  const SweepAxis axis = sweep_axis_from_string(config.sweep_axis);
  if (config.sweep_values.empty()) {
    throw config_error("waves.values", "sweep requires a nonempty value list");
  }
  const auto bank = matched_kernel_bank(config.wave_bank_scale, base.lattice.nx);
  std::string bank_desc;
  for (const NamedKernel& k : bank) {
    bank_desc += k.name + " scale=" + short_double(k.spec.scale) +
                 " radius=" + std::to_string(k.radius) + "; ";
  }
  meta["kernel_bank"] = bank_desc;
  meta["bank_scale"] = short_double(config.wave_bank_scale);
  const auto rows =
      wave_speed_sweep(axis, config.sweep_values, base, bank, threads);
  writer.write_text("wavespeed.csv", sweep_csv(rows, config.sweep_axis));
}

void run_outbreak(const ExperimentConfig& config, ArtifactWriter& writer,
                  Metadata& meta) {
  require_constant_delta(config);
  const LatticeConfig lattice = config.lattice();
  const GrowthParams growth = config.growth();
  const int radius = config.kernel_radius > 0
                         ? config.kernel_radius
                         : default_truncation_radius(config.kernel_spec(),
                                                     lattice.nx);
  const DiscreteKernel kernel =
      discretize(config.kernel_spec(), lattice.dimension, radius);
  const DispersalSetting dispersal(config.delta);

  GeometricOptions geometric{config.geometric_q, config.geometric_m_max};
  nlohmann::json summary = nlohmann::json::array();
  for (double a : config.outbreak_amplitudes) {
    ReleaseProfile release = config.profile();
    release.amplitude = a;
    const Trajectory traj = simulate(lattice, release, growth, dispersal,
                                     kernel, config.outbreak_horizon);
    for (int k : config.outbreak_sizes) {
      const OutbreakCurve curve = outbreak_curve(
          traj, k, config.outbreak_method, config.outbreak_horizon,
          config.epsilon_fix, geometric, config.prominence,
          config.min_separation);
      const std::string name =
          "outbreak_k" + std::to_string(k) + "_a" + short_double(a) + ".csv";
      writer.write_text(name, outbreak_csv(lattice, curve));
      nlohmann::json entry;
      entry["k"] = k;
      entry["amplitude"] = a;
      entry["modes"] = curve.modality.count;
      nlohmann::json peaks = nlohmann::json::array();
      for (std::size_t i = 0; i < curve.modality.peak_sites.size(); ++i) {
        peaks.push_back(
            {{"site", curve.modality.peak_sites[i]},
             {"x", lattice.coordinate_x(curve.modality.peak_sites[i])},
             {"value", curve.modality.peak_values[i]}});
      }
      entry["peaks"] = peaks;
      summary.push_back(entry);
    }
  }
  nlohmann::json doc;
  doc["method"] = to_string(config.outbreak_method);
  doc["horizon"] = config.outbreak_horizon;
  doc["epsilon_fix"] = config.epsilon_fix;
  doc["curves"] = summary;
  writer.write_text("outbreak_summary.json", doc.dump(2) + "\n");
  meta["q_estimator"] =
      config.geometric_q > 0.0 ? short_double(config.geometric_q)
                               : "per-site 1/(1+N_i)";
}

void run_optimize(const ExperimentConfig& config, ArtifactWriter& writer,
                  Metadata& meta) {
  require_constant_delta(config);
  OptimizeConfig base = config.optimize_config();
  std::vector<OptimumResult> results;
  std::vector<std::string> labels;

  if (config.criterion == "acm" || config.criterion == "both") {
    results.push_back(acm_optimize(base));
    labels.push_back("acm");
  }
  if (config.criterion == "mcm" || config.criterion == "both") {
    for (int k : config.optimize_sizes) {
      OptimizeConfig cell = base;
      cell.outbreak_size = k;
      results.push_back(mcm_optimize(cell));
      labels.push_back("mcm_k" + std::to_string(k));
    }
  }
  writer.write_text("optimize.csv", optimum_csv(results, labels));

  std::ostringstream text;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const OptimumResult& r = results[i];
    text << labels[i] << ": ";
    if (r.found) {
      text << "a*=" << short_double(r.a_star) << " L*=" << short_double(r.l_star)
           << " cost=" << short_double(r.cost);
    } else {
      text << "not found (" << r.note << ")";
    }
    text << "\n";
  }
  writer.write_text("optimize.txt", text.str());
  meta["success_metric"] = to_string(config.metric);
}

CompareGrid compare_grid_from(const ExperimentConfig& config, int threads) {
  CompareGrid grid{config.optimize_config()};
  grid.base.half_width = config.optimize_half_width;
  for (const std::string& entry : config.compare_kernels) {
    const auto colon = entry.find(':');
    const KernelFamily family =
        kernel_family_from_string(entry.substr(0, colon));
    const double scale =
        colon == std::string::npos ? 1.0 : std::stod(entry.substr(colon + 1));
    grid.kernels.emplace_back(to_string(family), KernelSpec{family, scale});
  }
  grid.profiles = config.compare_profiles;
  grid.outbreak_sizes = config.optimize_sizes;
  grid.threads = threads;
  return grid;
}

void run_compare(const ExperimentConfig& config, ArtifactWriter& writer,
                 Metadata& meta, int threads) {
  require_constant_delta(config);
  const ComparisonTable table = compare_table(compare_grid_from(config, threads));
  writer.write_text("compare.csv", compare_csv(table));
  writer.write_text("compare.txt", compare_text(table));
  meta["success_metric"] = to_string(config.metric);
  meta["mcm_half_width"] = short_double(config.optimize_half_width);
}

// ---------------------------------------------------------------------
// Reproduction targets.

ExperimentConfig wave_base_config() {
  ExperimentConfig c;
  c.s_h = repro::kWaveSh;
  c.s_f = repro::kWaveAllee * repro::kWaveSh;
  c.kernel_family = KernelFamily::cauchy;
  c.nx = repro::kWaveNx;
  c.wave_generations = repro::kWaveGenerations;
  c.wave_amplitude = repro::kWaveAmplitude;
  c.wave_half_width = repro::kWaveHalfWidth;
  c.wave_bank_scale = repro::kWaveBankScale;
  return c;
}

void reproduce_fig2(ArtifactWriter& writer, const std::string& prefix,
                    Metadata& meta) {
  const GrowthParams growth(0.3, 0.7);
  const auto portrait = phase_portrait(growth, 1000);
  writer.write_text(prefix + "fig2_phase_portrait.csv",
                    phase_portrait_csv(portrait, 0.6));
  meta["fig2"] = "s_f=0.3 s_h=0.7 delta=0.6";
}

void reproduce_fig3(ArtifactWriter& writer, const std::string& prefix,
                    Metadata& meta) {
  ExperimentConfig base = wave_base_config();
  base.nx = repro::kFig3Nx;
  base.delta = repro::kFig3Delta;
  base.wave_generations = repro::kFig3Generations;

  const auto bank = matched_kernel_bank(repro::kWaveBankScale, base.nx);
  std::string fronts;
  for (const NamedKernel& named : bank) {
    WaveExperimentConfig cell = base.wave_config();
    cell.kernel = named.spec;
    cell.kernel_radius = named.radius;
    const WaveRun run = run_wave_experiment(cell);
    const LatticeField& snapshot =
        run.trajectory.at_generation(repro::kFig3Snapshot);
    writer.write_text(prefix + "fig3_profile_" + named.name + ".csv",
                      profile_snapshot_csv(cell.lattice, snapshot));
    const auto pos = front_position(cell.lattice, snapshot, cell.level);
    fronts += named.name + "=" +
              (pos ? short_double(*pos) : std::string("none")) + "; ";
  }
  meta["fig3_fronts_t150"] = fronts;
  meta["fig3"] = "s_h=0.8 A=0.4 delta=0.1 nx=400 t=150";
}

void reproduce_fig4(ArtifactWriter& writer, const std::string& prefix,
                    Metadata& meta, int threads) {
  ExperimentConfig base = wave_base_config();
  base.delta = repro::kFig4Deltas.front();
  const auto bank = matched_kernel_bank(repro::kWaveBankScale, base.nx);
  const auto rows = wave_speed_sweep(SweepAxis::delta, repro::kFig4Deltas,
                                     base.wave_config(), bank, threads);
  writer.write_text(prefix + "fig4_speed_vs_delta.csv", sweep_csv(rows, "delta"));
  meta["fig4"] = "A=0.4 s_h=0.8 delta in [0.01,0.3]";
}

void reproduce_fig5(ArtifactWriter& writer, const std::string& prefix,
                    Metadata& meta, int threads) {
  ExperimentConfig base = wave_base_config();
  base.delta = repro::kFig5Delta;
  const auto bank = matched_kernel_bank(repro::kWaveBankScale, base.nx);
  const auto rows = wave_speed_sweep(SweepAxis::allee, repro::kFig5Allees,
                                     base.wave_config(), bank, threads);
  writer.write_text(prefix + "fig5_speed_vs_allee.csv", sweep_csv(rows, "allee"));
  meta["fig5"] = "delta=0.3, A swept; large A kills the wave";
}

void reproduce_fig6(ArtifactWriter& writer, const std::string& prefix,
                    Metadata& meta, int threads) {
  ExperimentConfig base = wave_base_config();
  base.delta = repro::kFig6Delta;
  const auto bank = matched_kernel_bank(repro::kWaveBankScale, base.nx);
  const auto rows =
      wave_speed_sweep(SweepAxis::initial_amplitude, repro::kFig6Amplitudes,
                       base.wave_config(), bank, threads);
  writer.write_text(prefix + "fig6_cstar.csv",
                    sweep_csv(rows, "initial_amplitude"));

  // c(t) traces for the default release, one per kernel.
  std::ostringstream ct;
  ct << "kernel,generation,c_t,front_position\n";
  for (const NamedKernel& named : bank) {
    WaveExperimentConfig cell = base.wave_config();
    cell.kernel = named.spec;
    cell.kernel_radius = named.radius;
    const WaveRun run = run_wave_experiment(cell);
    for (std::size_t t = 0; t < run.speed.c_series.size(); ++t) {
      const double c = run.speed.c_series[t];
      ct << named.name << ',' << t << ','
         << (std::isnan(c) ? "nan" : csv_field(c)) << ',';
      if (run.front.valid[t]) {
        ct << csv_field(run.front.position[t]);
      } else {
        ct << "nan";
      }
      ct << "\n";
    }
  }
  writer.write_text(prefix + "fig6_ct.csv", ct.str());
  meta["fig6"] = "A=0.4 s_h=0.8 delta=0.1, releases " +
                 [] {
                   std::string s;
                   for (double a : repro::kFig6Amplitudes)
                     s += short_double(a) + " ";
                   return s;
                 }();
}

ExperimentConfig outbreak_base_config(KernelFamily family) {
  ExperimentConfig c;
  c.s_f = repro::kOutbreakSf;
  c.s_h = repro::kOutbreakSh;
  c.delta = repro::kOutbreakDelta;
  c.kernel_family = family;
  c.kernel_scale = 1.0;
  c.nx = repro::kOutbreakNx;
  c.half_width = repro::kOutbreakHalfWidth;
  c.outbreak_horizon = repro::kOutbreakHorizon;
  c.outbreak_sizes = repro::kOutbreakSizes;
  c.outbreak_amplitudes = repro::kOutbreakAmplitudes;
  return c;
}

void reproduce_outbreak_figure(ArtifactWriter& writer,
                               const std::string& prefix, Metadata& meta,
                               const std::string& tag, KernelFamily family) {
  const ExperimentConfig config = outbreak_base_config(family);
  const LatticeConfig lattice = config.lattice();
  const GrowthParams growth = config.growth();
  const DiscreteKernel kernel = discretize(
      config.kernel_spec(), 1,
      default_truncation_radius(config.kernel_spec(), lattice.nx));
  const DispersalSetting dispersal(config.delta);

  nlohmann::json summary = nlohmann::json::array();
  for (double a : config.outbreak_amplitudes) {
    ReleaseProfile release = config.profile();
    release.amplitude = a;
    const Trajectory traj = simulate(lattice, release, growth, dispersal,
                                     kernel, config.outbreak_horizon);
    for (int k : config.outbreak_sizes) {
      const OutbreakCurve curve =
          outbreak_curve(traj, k, OutbreakMethod::poisson,
                         config.outbreak_horizon, config.epsilon_fix);
      writer.write_text(prefix + tag + "_k" + std::to_string(k) + "_a" +
                            short_double(a) + ".csv",
                        outbreak_csv(lattice, curve));
      summary.push_back({{"k", k},
                         {"amplitude", a},
                         {"modes", curve.modality.count}});
    }
  }
  nlohmann::json doc;
  doc["kernel"] = to_string(family);
  doc["parameters"] = "s_f=0.3 s_h=0.7 delta=0.5 pulse L=2 horizon=400";
  doc["curves"] = summary;
  writer.write_text(prefix + tag + "_summary.json", doc.dump(2) + "\n");
  meta[tag] = "kernel=" + to_string(family);
}

void reproduce_fig9(ArtifactWriter& writer, const std::string& prefix,
                    Metadata& meta) {
  ExperimentConfig base = outbreak_base_config(KernelFamily::laplace);
  base.nx = repro::kProfileNx;
  base.spacing = repro::kProfileSpacing;
  base.kernel_scale = repro::kProfileKernelScale;
  OptimizeConfig config = base.optimize_config();
  config.half_width = repro::kOutbreakHalfWidth;
  config.generations = repro::kOutbreakHorizon;
  config.horizon = repro::kOutbreakHorizon;
  config.outbreak_size = 1;

  const std::vector<ProfileShape> shapes = {
      ProfileShape::pulse, ProfileShape::quadratic, ProfileShape::triangular};
  const auto results = critical_amplitude_by_profile(shapes, config);
  std::vector<std::string> labels;
  for (ProfileShape s : shapes) labels.push_back(to_string(s));
  writer.write_text(prefix + "fig9_mcm_profiles.csv",
                    optimum_csv(results, labels));

  // Outbreak curve at each profile's critical amplitude.
  const LatticeConfig lattice = base.lattice();
  const DiscreteKernel kernel = discretize(
      base.kernel_spec(), 1,
      default_truncation_radius(base.kernel_spec(), lattice.nx));
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    if (!results[i].found) continue;
    ReleaseProfile release;
    release.shape = shapes[i];
    release.amplitude = results[i].a_star;
    release.half_width = config.half_width;
    const Trajectory traj =
        simulate(lattice, release, base.growth(), DispersalSetting(base.delta),
                 kernel, repro::kOutbreakHorizon);
    const OutbreakCurve curve =
        outbreak_curve(traj, 1, OutbreakMethod::poisson,
                       repro::kOutbreakHorizon, base.epsilon_fix);
    writer.write_text(prefix + "fig9_curve_" + labels[i] + ".csv",
                      outbreak_csv(lattice, curve));
  }
  meta["fig9"] = "laplace b=1, L=2, k=1, MCM per release profile";
}

ExperimentConfig table4_config() {
  ExperimentConfig c;
  c.s_f = repro::kTableSf;
  c.s_h = repro::kTableSh;
  c.delta = repro::kTableDelta;
  c.kernel_family = KernelFamily::laplace;
  c.kernel_scale = repro::kTableKernelScale;
  c.nx = repro::kTableNx;
  c.spacing = repro::kTableSpacing;
  c.generations = repro::kTableNt;
  c.beta = repro::kTableBeta;
  c.outbreak_horizon = repro::kTableNt;
  c.optimize_half_width = repro::kTableHalfWidth;
  c.metric = SuccessMetric::center;
  c.compare_kernels = {"laplace:4", "gaussian:4"};
  c.optimize_sizes = {1, 2, 3, 4};
  return c;
}

void reproduce_table4(ArtifactWriter& writer, const std::string& prefix,
                      Metadata& meta, int threads) {
  const ExperimentConfig config = table4_config();
  const ComparisonTable table = compare_table(table4_compare_grid(threads));
  writer.write_text(prefix + "table4.csv", compare_csv(table));
  writer.write_text(prefix + "table4.txt", compare_text(table));
  meta["table4"] =
      "delta=0.2 s_f=0.2 s_h=0.9 beta=0.9 nx=400 nt=200, MCM half-width 0.5";
  meta["success_metric"] = to_string(config.metric);
}

}  // namespace

std::vector<std::string> reproduce_targets() {
  return {"fig2", "fig3", "fig4", "fig5", "fig6",
          "fig7", "fig8", "fig9", "table4"};
}

CompareGrid table4_compare_grid(int threads) {
  return compare_grid_from(table4_config(), threads);
}

RunResult run_reproduce(const std::string& target,
                        const std::filesystem::path& out_dir,
                        const RunOptions& options) {
  ArtifactWriter writer(out_dir);
  Metadata meta;
  meta["threads"] = std::to_string(options.threads);

  auto dispatch = [&](const std::string& name, const std::string& prefix) {
    if (name == "fig2") {
      reproduce_fig2(writer, prefix, meta);
    } else if (name == "fig3") {
      reproduce_fig3(writer, prefix, meta);
    } else if (name == "fig4") {
      reproduce_fig4(writer, prefix, meta, options.threads);
    } else if (name == "fig5") {
      reproduce_fig5(writer, prefix, meta, options.threads);
    } else if (name == "fig6") {
      reproduce_fig6(writer, prefix, meta, options.threads);
    } else if (name == "fig7") {
      reproduce_outbreak_figure(writer, prefix, meta, "fig7",
                                KernelFamily::gaussian);
    } else if (name == "fig8") {
      reproduce_outbreak_figure(writer, prefix, meta, "fig8",
                                KernelFamily::laplace);
    } else if (name == "fig9") {
      reproduce_fig9(writer, prefix, meta);
    } else if (name == "table4") {
      reproduce_table4(writer, prefix, meta, options.threads);
    } else {
      throw config_error("reproduce", "unknown target '" + name + "'");
    }
  };

  try {
    if (target == "all") {
      for (const std::string& name : reproduce_targets()) {
        dispatch(name, name + "/");
      }
    } else {
      dispatch(target, "");
    }
  } catch (const std::exception& e) {
    writer.write_manifest("reproduce " + target, "", meta, true, e.what());
    throw;
  }

  RunResult result;
  result.manifest = writer.write_manifest("reproduce " + target, "", meta);
  result.artifacts = writer.entries();
  return result;
}

RunResult run_subcommand(const std::string& subcommand,
                         const ExperimentConfig& config,
                         const std::filesystem::path& out_dir,
                         const RunOptions& options) {
  ExperimentConfig effective = config;
  if (options.seed != 0) effective.seed = options.seed;

  ArtifactWriter writer(out_dir);
  Metadata meta;
  meta["threads"] = std::to_string(options.threads);
  meta["seed"] = std::to_string(effective.seed);

  try {
    if (subcommand == "simulate") {
      run_simulate(effective, writer, meta);
    } else if (subcommand == "stability") {
      run_stability(effective, writer, meta, effective.seed);
    } else if (subcommand == "wavespeed") {
      run_wavespeed(effective, writer, meta, options.threads);
    } else if (subcommand == "outbreak") {
      run_outbreak(effective, writer, meta);
    } else if (subcommand == "optimize") {
      run_optimize(effective, writer, meta);
    } else if (subcommand == "compare") {
      run_compare(effective, writer, meta, options.threads);
    } else {
      throw config_error("subcommand", "unknown subcommand '" + subcommand + "'");
    }
  } catch (const std::exception& e) {
    writer.write_manifest(subcommand, effective.resolved_ini(), meta, true,
                          e.what());
    throw;
  }

  RunResult result;
  result.manifest =
      writer.write_manifest(subcommand, effective.resolved_ini(), meta);
  result.artifacts = writer.entries();
  return result;
}

}  // namespace wlde
