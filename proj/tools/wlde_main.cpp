// Command-line front end: experiment subcommands over a declarative config
// file, plus `reproduce` targets for the bundled figure/table studies.
//
// Exit codes: 0 success, 2 config error, 3 bracket/convergence error,
// 4 I/O error, 1 anything else.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wlde/config.hpp"
#include "wlde/runner.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  int threads = 1;
  uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
  auto* config = cmd->add_option("--config", args.config_path,
                                 "experiment config file (INI)");
  config->envname("WLDE_CONFIG");
  if (config_required) config->required();
  cmd->add_option("--out", args.out_dir, "output directory")
      ->envname("WLDE_OUT");
  cmd->add_option("--threads", args.threads, "worker threads for sweep cells")
      ->envname("WLDE_THREADS")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", args.seed,
                  "override the config seed for perturbation checks")
      ->envname("WLDE_SEED");
}

int dispatch(const std::string& name, const CommonArgs& args,
             const std::string& target) {
  wlde::RunOptions options;
  options.threads = args.threads;
  options.seed = args.seed;
  try {
    wlde::RunResult result;
    if (name == "reproduce") {
      result = wlde::run_reproduce(target, args.out_dir, options);
    } else {
      const wlde::ExperimentConfig config = wlde::parse_config(args.config_path);
      result = wlde::run_subcommand(name, config, args.out_dir, options);
    }
    std::cout << name << ": wrote " << result.artifacts.size()
              << " artifact(s); manifest at " << result.manifest.string()
              << "\n";
    return 0;
  } catch (const wlde::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const wlde::bracket_error& e) {
    std::cerr << "bracket error: " << e.what() << "\n";
    return 3;
  } catch (const wlde::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bistable lattice difference equation toolkit"};
  app.require_subcommand(1);

  const std::vector<std::string> experiment_commands = {
      "simulate", "stability", "wavespeed", "outbreak", "optimize", "compare"};
  const std::vector<std::string> descriptions = {
      "run one simulation and export the trajectory",
      "spectral stability report and phase portrait",
      "traveling-wave speeds (single run or sweep)",
      "spatial outbreak-size curves and modality",
      "ACM/MCM release-cost minimization",
      "MCM vs ACM comparison grid"};

  std::vector<CommonArgs> args(experiment_commands.size() + 1);
  std::vector<CLI::App*> commands;
  for (std::size_t i = 0; i < experiment_commands.size(); ++i) {
    CLI::App* cmd =
        app.add_subcommand(experiment_commands[i], descriptions[i]);
    add_common(cmd, args[i], /*config_required=*/true);
    commands.push_back(cmd);
  }

  std::string target = "all";
  CLI::App* reproduce = app.add_subcommand(
      "reproduce", "rebuild the bundled figure/table studies");
  reproduce->add_option("target", target,
                        "fig2..fig9, table4, or all")
      ->check(CLI::IsMember([] {
        auto t = wlde::reproduce_targets();
        t.push_back("all");
        return t;
      }()));
  add_common(reproduce, args.back(), /*config_required=*/false);

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < experiment_commands.size(); ++i) {
    if (commands[i]->parsed()) {
      return dispatch(experiment_commands[i], args[i], "");
    }
  }
  if (reproduce->parsed()) {
    return dispatch("reproduce", args.back(), target);
  }
  return 1;
}
