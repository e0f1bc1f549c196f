#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wlde/artifacts.hpp"
#include "wlde/config.hpp"

namespace wlde {

struct RunOptions {
  int threads = 1;
  uint64_t seed = 0;  // 0: keep the config seed
};

struct RunResult {
  std::filesystem::path manifest;
  std::vector<ManifestEntry> artifacts;
};

/// Experiment subcommands operating on a parsed config.  Every run writes
/// its artifacts plus a manifest.json into out_dir; reruns with the same
/// config produce byte-identical artifacts.  Errors propagate after a
/// partial manifest is written.
RunResult run_subcommand(const std::string& subcommand,
                         const ExperimentConfig& config,
                         const std::filesystem::path& out_dir,
                         const RunOptions& options = {});

/// Figure/table reproduction targets: fig2..fig9, table4, or all.
RunResult run_reproduce(const std::string& target,
                        const std::filesystem::path& out_dir,
                        const RunOptions& options = {});

std::vector<std::string> reproduce_targets();

/// The comparison grid behind the table4 target (also used by the
/// acceptance suite).
CompareGrid table4_compare_grid(int threads = 1);

}  // namespace wlde
