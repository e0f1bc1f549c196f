#include "wlde/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "wlde/io.hpp"

namespace wlde {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"growth", {"s_f", "s_h", "allee"}},
      {"kernel", {"family", "scale", "radius"}},
      {"dispersal", {"delta", "delta_file"}},
      {"lattice", {"dimension", "nx", "ny", "spacing", "boundary"}},
      {"profile", {"shape", "amplitude", "half_width", "center"}},
      {"simulate", {"generations", "stride"}},
      {"stability", {"margin", "epsilon", "generations", "resolution"}},
      {"waves",
       {"level", "tail_fraction", "amplitude", "half_width", "scale",
        "generations", "guard_wrap", "axis", "values"}},
      {"outbreak",
       {"k", "method", "horizon", "epsilon_fix", "q", "m_max", "amplitudes",
        "prominence", "min_separation"}},
      {"optimize",
       {"criterion", "beta", "a_lo", "a_hi", "tau_a", "delta_a", "l_grid",
        "half_width", "metric", "k_list"}},
      {"compare", {"kernels", "profiles"}},
      {"run", {"seed"}},
  };
  return s;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

using Entries = std::map<std::string, std::string>;  // "section.key" -> value

Entries tokenize(const std::string& text) {
  Entries entries;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        throw config_error("line " + std::to_string(line_no),
                           "malformed section header '" + t + "'");
      }
      section = trim(t.substr(1, t.size() - 2));
      if (schema().find(section) == schema().end()) {
        throw config_error(section, "unknown section");
      }
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw config_error("line " + std::to_string(line_no),
                         "expected 'key = value', got '" + t + "'");
    }
    if (section.empty()) {
      throw config_error("line " + std::to_string(line_no),
                         "key outside any [section]");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const auto& keys = schema().at(section);
    if (keys.find(key) == keys.end()) {
      throw config_error(section + "." + key, "unknown key");
    }
    const std::string path = section + "." + key;
    if (entries.count(path)) {
      throw config_error(path, "duplicate key");
    }
    entries[path] = value;
  }
  return entries;
}

class Reader {
 public:
  explicit Reader(Entries entries) : entries_(std::move(entries)) {}

  bool has(const std::string& path) const { return entries_.count(path) > 0; }

  std::string str(const std::string& path, const std::string& fallback) {
    auto it = entries_.find(path);
    return it == entries_.end() ? fallback : it->second;
  }

  double number(const std::string& path, double fallback) {
    auto it = entries_.find(path);
    if (it == entries_.end()) return fallback;
    return parse_number(path, it->second);
  }

  int integer(const std::string& path, int fallback) {
    auto it = entries_.find(path);
    if (it == entries_.end()) return fallback;
    const double v = parse_number(path, it->second);
    if (v != double(int(v))) {
      throw config_error(path, "expected an integer, got '" + it->second + "'");
    }
    return int(v);
  }

  bool boolean(const std::string& path, bool fallback) {
    auto it = entries_.find(path);
    if (it == entries_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw config_error(path, "expected true/false, got '" + it->second + "'");
  }

  std::vector<std::string> list(const std::string& path) const {
    std::vector<std::string> out;
    auto it = entries_.find(path);
    if (it == entries_.end()) return out;
    std::istringstream in(it->second);
    std::string item;
    while (std::getline(in, item, ',')) {
      const std::string t = trim(item);
      if (!t.empty()) out.push_back(t);
    }
    return out;
  }

  std::vector<double> number_list(const std::string& path) {
    std::vector<double> out;
    for (const std::string& item : list(path)) {
      out.push_back(parse_number(path, item));
    }
    return out;
  }

  std::vector<int> integer_list(const std::string& path) {
    std::vector<int> out;
    for (double v : number_list(path)) {
      if (v != double(int(v))) {
        throw config_error(path, "expected integers");
      }
      out.push_back(int(v));
    }
    return out;
  }

 private:
  static double parse_number(const std::string& path, const std::string& raw) {
    try {
      std::size_t used = 0;
      const double v = std::stod(raw, &used);
      if (used != raw.size()) throw std::invalid_argument(raw);
      return v;
    } catch (const std::exception&) {
      throw config_error(path, "expected a number, got '" + raw + "'");
    }
  }

  Entries entries_;
};

template <typename Fn>
auto checked(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const config_error&) {
    throw;
  } catch (const std::exception& e) {
    throw config_error(path, e.what());
  }
}

}  // namespace

GrowthParams ExperimentConfig::growth() const {
  return checked("growth", [&] { return GrowthParams(s_f, s_h); });
}

KernelSpec ExperimentConfig::kernel_spec() const {
  return checked("kernel", [&] {
    return KernelSpec{kernel_family, kernel_scale};
  });
}

LatticeConfig ExperimentConfig::lattice() const {
  return checked("lattice", [&] {
    LatticeConfig c;
    c.dimension = dimension;
    c.nx = nx;
    c.ny = dimension == 2 ? ny : 1;
    c.spacing = spacing;
    c.boundary = boundary;
    c.origin_x = nx / 2;
    c.origin_y = dimension == 2 ? ny / 2 : 0;
    c.validate();
    return c;
  });
}

ReleaseProfile ExperimentConfig::profile() const {
  return checked("profile", [&] {
    ReleaseProfile p;
    p.shape = shape;
    p.amplitude = amplitude;
    p.half_width = half_width;
    p.center_x = center;
    p.validate();
    return p;
  });
}

DispersalSetting ExperimentConfig::dispersal() const {
  return checked("dispersal", [&] {
    if (delta_file.empty()) return DispersalSetting(delta);
    std::ifstream in(delta_file);
    if (!in) {
      throw config_error("dispersal.delta_file",
                         "cannot open '" + delta_file + "'");
    }
    std::vector<double> per_site;
    double v;
    while (in >> v) per_site.push_back(v);
    if (int(per_site.size()) != nx * (dimension == 2 ? ny : 1)) {
      throw config_error("dispersal.delta_file",
                         "expected one delta per site (" +
                             std::to_string(nx * (dimension == 2 ? ny : 1)) +
                             "), got " + std::to_string(per_site.size()));
    }
    return DispersalSetting(std::move(per_site));
  });
}

OptimizeConfig ExperimentConfig::optimize_config() const {
  OptimizeConfig c{lattice(), growth()};
  c.delta = delta;
  c.kernel = kernel_spec();
  c.kernel_radius = kernel_radius;
  c.shape = shape;
  c.half_width = optimize_half_width;
  c.l_grid = l_grid.empty() ? default_l_grid() : l_grid;
  c.a_lo = a_lo;
  c.a_hi = a_hi;
  c.beta = beta;
  c.generations = generations;
  c.horizon = outbreak_horizon;
  c.outbreak_size = optimize_sizes.empty() ? 1 : optimize_sizes.front();
  c.tau_a = tau_a;
  c.delta_a = delta_a;
  c.epsilon_fix = epsilon_fix;
  c.prominence = prominence;
  c.min_separation = min_separation;
  c.metric = metric;
  checked("optimize", [&] { c.validate(); return 0; });
  return c;
}

WaveExperimentConfig ExperimentConfig::wave_config() const {
  WaveExperimentConfig c{lattice(), growth()};
  c.delta = delta;
  c.kernel = kernel_spec();
  c.kernel_radius = kernel_radius;
  c.release_amplitude = wave_amplitude;
  c.release_half_width = wave_half_width;
  c.generations = wave_generations;
  c.level = wave_level;
  c.tail_fraction = wave_tail_fraction;
  c.guard_wrap = wave_guard_wrap;
  return c;
}

ExperimentConfig parse_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw config_error("config", "cannot open '" + file.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), file.parent_path());
}

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::filesystem::path& base_dir) {
  Reader reader(tokenize(text));
  ExperimentConfig c;

  // growth: (s_f, s_h) or (s_h, allee)
  const bool has_sf = reader.has("growth.s_f");
  const bool has_allee = reader.has("growth.allee");
  if (!reader.has("growth.s_h")) {
    throw config_error("growth.s_h", "required");
  }
  c.s_h = reader.number("growth.s_h", 0.0);
  if (has_sf == has_allee) {
    throw config_error("growth", "set exactly one of s_f or allee");
  }
  if (has_sf) {
    c.s_f = reader.number("growth.s_f", 0.0);
  } else {
    const double allee = reader.number("growth.allee", 0.0);
    if (!(allee > 0.0 && allee < 1.0)) {
      throw config_error("growth.allee", "must lie in (0,1)");
    }
    c.s_f = allee * c.s_h;
  }
  checked("growth", [&] { return GrowthParams(c.s_f, c.s_h); });

  // kernel
  if (!reader.has("kernel.family")) {
    throw config_error("kernel.family", "required");
  }
  c.kernel_family = checked("kernel.family", [&] {
    return kernel_family_from_string(reader.str("kernel.family", ""));
  });
  c.kernel_scale = reader.number("kernel.scale", c.kernel_scale);
  c.kernel_radius = reader.integer("kernel.radius", c.kernel_radius);
  if (c.kernel_radius < 0) {
    throw config_error("kernel.radius", "must be >= 0 (0 selects the default)");
  }
  checked("kernel", [&] { return c.kernel_spec(); });

  // dispersal
  c.delta = reader.number("dispersal.delta", c.delta);
  if (!(c.delta > 0.0 && c.delta <= 1.0)) {
    throw config_error("dispersal.delta", "must lie in (0,1]");
  }
  c.delta_file = reader.str("dispersal.delta_file", "");
  if (!c.delta_file.empty()) {
    c.delta_file = (base_dir / c.delta_file).string();
  }

  // lattice
  c.dimension = reader.integer("lattice.dimension", c.dimension);
  c.nx = reader.integer("lattice.nx", c.nx);
  c.ny = reader.integer("lattice.ny", c.ny);
  c.spacing = reader.number("lattice.spacing", c.spacing);
  const std::string boundary = reader.str("lattice.boundary", "periodic");
  if (boundary == "periodic") {
    c.boundary = Boundary::periodic;
  } else if (boundary == "absorbing") {
    c.boundary = Boundary::absorbing;
  } else {
    throw config_error("lattice.boundary",
                       "expected periodic or absorbing, got '" + boundary + "'");
  }
  checked("lattice", [&] { return c.lattice(); });

  // profile
  c.shape = checked("profile.shape", [&] {
    return profile_shape_from_string(reader.str("profile.shape", "pulse"));
  });
  c.amplitude = reader.number("profile.amplitude", c.amplitude);
  c.half_width = reader.number("profile.half_width", c.half_width);
  c.center = reader.number("profile.center", c.center);
  checked("profile", [&] { return c.profile(); });

  // simulate
  c.generations = reader.integer("simulate.generations", c.generations);
  if (c.generations < 0) {
    throw config_error("simulate.generations", "must be >= 0");
  }
  c.stride = reader.integer("simulate.stride", c.stride);
  if (c.stride < 1) {
    throw config_error("simulate.stride", "must be >= 1");
  }

  // stability
  c.stability_margin = reader.number("stability.margin", c.stability_margin);
  c.perturb_epsilon = reader.number("stability.epsilon", c.perturb_epsilon);
  if (!(c.perturb_epsilon > 0.0 && c.perturb_epsilon <= 1e-3)) {
    throw config_error("stability.epsilon", "must lie in (0, 1e-3]");
  }
  c.perturb_generations =
      reader.integer("stability.generations", c.perturb_generations);
  c.portrait_resolution =
      reader.integer("stability.resolution", c.portrait_resolution);
  if (c.portrait_resolution < 10) {
    throw config_error("stability.resolution", "must be >= 10");
  }

  // waves
  c.wave_level = reader.number("waves.level", c.wave_level);
  if (!(c.wave_level > 0.0 && c.wave_level < 1.0)) {
    throw config_error("waves.level", "must lie in (0,1)");
  }
  c.wave_tail_fraction =
      reader.number("waves.tail_fraction", c.wave_tail_fraction);
  c.wave_amplitude = reader.number("waves.amplitude", c.wave_amplitude);
  c.wave_half_width = reader.number("waves.half_width", c.wave_half_width);
  c.wave_bank_scale = reader.number("waves.scale", c.wave_bank_scale);
  if (!(c.wave_bank_scale > 0.0)) {
    throw config_error("waves.scale", "must be positive");
  }
  c.wave_generations = reader.integer("waves.generations", c.wave_generations);
  c.wave_guard_wrap = reader.boolean("waves.guard_wrap", c.wave_guard_wrap);
  c.sweep_axis = reader.str("waves.axis", "");
  if (!c.sweep_axis.empty()) {
    checked("waves.axis", [&] { return sweep_axis_from_string(c.sweep_axis); });
  }
  c.sweep_values = reader.number_list("waves.values");

  // outbreak
  c.outbreak_sizes = reader.has("outbreak.k") ? reader.integer_list("outbreak.k")
                                              : c.outbreak_sizes;
  for (int k : c.outbreak_sizes) {
    if (k < 0) throw config_error("outbreak.k", "sizes must be >= 0");
  }
  c.outbreak_method = checked("outbreak.method", [&] {
    return outbreak_method_from_string(reader.str("outbreak.method", "poisson"));
  });
  c.outbreak_horizon = reader.integer("outbreak.horizon", c.outbreak_horizon);
  if (c.outbreak_horizon < 1) {
    throw config_error("outbreak.horizon", "must be >= 1");
  }
  c.epsilon_fix = reader.number("outbreak.epsilon_fix", c.epsilon_fix);
  c.geometric_q = reader.number("outbreak.q", c.geometric_q);
  c.geometric_m_max = reader.integer("outbreak.m_max", c.geometric_m_max);
  if (reader.has("outbreak.amplitudes")) {
    c.outbreak_amplitudes = reader.number_list("outbreak.amplitudes");
  }
  c.prominence = reader.number("outbreak.prominence", c.prominence);
  c.min_separation =
      reader.integer("outbreak.min_separation", c.min_separation);

  // optimize
  c.criterion = reader.str("optimize.criterion", c.criterion);
  if (c.criterion != "acm" && c.criterion != "mcm" && c.criterion != "both") {
    throw config_error("optimize.criterion",
                       "expected acm, mcm or both, got '" + c.criterion + "'");
  }
  c.beta = reader.number("optimize.beta", c.beta);
  c.a_lo = reader.number("optimize.a_lo", c.a_lo);
  c.a_hi = reader.number("optimize.a_hi", c.a_hi);
  c.tau_a = reader.number("optimize.tau_a", c.tau_a);
  c.delta_a = reader.number("optimize.delta_a", c.delta_a);
  c.l_grid = reader.number_list("optimize.l_grid");
  c.optimize_half_width =
      reader.number("optimize.half_width", c.optimize_half_width);
  c.metric = checked("optimize.metric", [&] {
    return success_metric_from_string(reader.str("optimize.metric", "mean"));
  });
  if (reader.has("optimize.k_list")) {
    c.optimize_sizes = reader.integer_list("optimize.k_list");
  }
  // A zero-generation config is valid for plain simulation; the optimize
  // subcommand re-validates its own view and rejects it there.
  if (c.generations >= 1) {
    checked("optimize", [&] { return c.optimize_config(); });
  }

  // compare
  if (reader.has("compare.kernels")) {
    c.compare_kernels = reader.list("compare.kernels");
  }
  for (const std::string& entry : c.compare_kernels) {
    const auto colon = entry.find(':');
    checked("compare.kernels", [&] {
      return kernel_family_from_string(entry.substr(0, colon));
    });
    if (colon != std::string::npos) {
      try {
        (void)std::stod(entry.substr(colon + 1));
      } catch (const std::exception&) {
        throw config_error("compare.kernels",
                           "bad scale in '" + entry + "'");
      }
    }
  }
  if (reader.has("compare.profiles")) {
    c.compare_profiles.clear();
    for (const std::string& name : reader.list("compare.profiles")) {
      c.compare_profiles.push_back(checked("compare.profiles", [&] {
        return profile_shape_from_string(name);
      }));
    }
  }

  // run
  const double seed = reader.number("run.seed", double(c.seed));
  if (seed < 0 || seed != double(uint64_t(seed))) {
    throw config_error("run.seed", "must be a nonnegative integer");
  }
  c.seed = uint64_t(seed);

  return c;
}

std::string ExperimentConfig::resolved_ini() const {
  std::ostringstream out;
  const auto num = [](double v) { return format_double(v); };
  auto join_numbers = [&](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += num(v[i]);
    }
    return s;
  };
  auto join_ints = [&](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(v[i]);
    }
    return s;
  };

  out << "[growth]\n"
      << "s_f = " << num(s_f) << "\n"
      << "s_h = " << num(s_h) << "\n\n";
  out << "[kernel]\n"
      << "family = " << to_string(kernel_family) << "\n"
      << "scale = " << num(kernel_scale) << "\n"
      << "radius = " << kernel_radius << "\n\n";
  out << "[dispersal]\n"
      << "delta = " << num(delta) << "\n";
  if (!delta_file.empty()) out << "delta_file = " << delta_file << "\n";
  out << "\n[lattice]\n"
      << "dimension = " << dimension << "\n"
      << "nx = " << nx << "\n"
      << "ny = " << ny << "\n"
      << "spacing = " << num(spacing) << "\n"
      << "boundary = "
      << (boundary == Boundary::periodic ? "periodic" : "absorbing") << "\n\n";
  out << "[profile]\n"
      << "shape = " << to_string(shape) << "\n"
      << "amplitude = " << num(amplitude) << "\n"
      << "half_width = " << num(half_width) << "\n"
      << "center = " << num(center) << "\n\n";
  out << "[simulate]\n"
      << "generations = " << generations << "\n"
      << "stride = " << stride << "\n\n";
  out << "[stability]\n"
      << "margin = " << num(stability_margin) << "\n"
      << "epsilon = " << num(perturb_epsilon) << "\n"
      << "generations = " << perturb_generations << "\n"
      << "resolution = " << portrait_resolution << "\n\n";
  out << "[waves]\n"
      << "level = " << num(wave_level) << "\n"
      << "tail_fraction = " << num(wave_tail_fraction) << "\n"
      << "amplitude = " << num(wave_amplitude) << "\n"
      << "half_width = " << num(wave_half_width) << "\n"
      << "scale = " << num(wave_bank_scale) << "\n"
      << "generations = " << wave_generations << "\n"
      << "guard_wrap = " << (wave_guard_wrap ? "true" : "false") << "\n";
  if (!sweep_axis.empty()) out << "axis = " << sweep_axis << "\n";
  if (!sweep_values.empty()) out << "values = " << join_numbers(sweep_values) << "\n";
  out << "\n[outbreak]\n"
      << "k = " << join_ints(outbreak_sizes) << "\n"
      << "method = " << to_string(outbreak_method) << "\n"
      << "horizon = " << outbreak_horizon << "\n"
      << "epsilon_fix = " << num(epsilon_fix) << "\n"
      << "q = " << num(geometric_q) << "\n"
      << "m_max = " << geometric_m_max << "\n"
      << "amplitudes = " << join_numbers(outbreak_amplitudes) << "\n"
      << "prominence = " << num(prominence) << "\n"
      << "min_separation = " << min_separation << "\n\n";
  out << "[optimize]\n"
      << "criterion = " << criterion << "\n"
      << "beta = " << num(beta) << "\n"
      << "a_lo = " << num(a_lo) << "\n"
      << "a_hi = " << num(a_hi) << "\n"
      << "tau_a = " << num(tau_a) << "\n"
      << "delta_a = " << num(delta_a) << "\n"
      << "l_grid = "
      << join_numbers(l_grid.empty() ? default_l_grid() : l_grid) << "\n"
      << "half_width = " << num(optimize_half_width) << "\n"
      << "metric = " << to_string(metric) << "\n"
      << "k_list = " << join_ints(optimize_sizes) << "\n\n";
  out << "[compare]\n"
      << "kernels = ";
  for (std::size_t i = 0; i < compare_kernels.size(); ++i) {
    if (i) out << ",";
    out << compare_kernels[i];
  }
  out << "\nprofiles = ";
  for (std::size_t i = 0; i < compare_profiles.size(); ++i) {
    if (i) out << ",";
    out << to_string(compare_profiles[i]);
  }
  out << "\n\n[run]\n"
      << "seed = " << seed << "\n";
  return out.str();
}

}  // namespace wlde
