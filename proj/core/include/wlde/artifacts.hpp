#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace wlde {

/// I/O failure while writing artifacts (maps to exit code 4).
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ManifestEntry {
  std::string path;  // relative to the output directory
  std::size_t bytes = 0;
  std::string hash;  // fnv1a64 hex of the content
};

/// Collects every emitted file so the manifest references each one exactly
/// once.  All content is deterministic (no timestamps); the manifest hash
/// therefore repeats across identical runs.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::filesystem::path out_dir);

  const std::filesystem::path& out_dir() const { return out_dir_; }

  void write_text(const std::string& relative_path, const std::string& content);
  const std::vector<ManifestEntry>& entries() const { return entries_; }

  /// Writes manifest.json: subcommand, resolved config (hash + full text),
  /// free-form metadata notes, and the artifact list sorted by path.
  /// partial marks runs that aborted early.
  std::filesystem::path write_manifest(
      const std::string& subcommand, const std::string& resolved_config,
      const std::map<std::string, std::string>& metadata, bool partial = false,
      const std::string& error = "");

 private:
  std::filesystem::path out_dir_;
  std::vector<ManifestEntry> entries_;
};

}  // namespace wlde
