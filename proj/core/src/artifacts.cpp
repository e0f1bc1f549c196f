#include "wlde/artifacts.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "wlde/io.hpp"

namespace wlde {

ArtifactWriter::ArtifactWriter(std::filesystem::path out_dir)
    : out_dir_(std::move(out_dir)) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir_, ec);
  if (ec) {
    throw io_error("cannot create output directory '" + out_dir_.string() +
                   "': " + ec.message());
  }
}

void ArtifactWriter::write_text(const std::string& relative_path,
                                const std::string& content) {
  const std::filesystem::path full = out_dir_ / relative_path;
  if (full.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(full.parent_path(), ec);
  }
  std::ofstream out(full, std::ios::binary);
  if (!out) {
    throw io_error("cannot open '" + full.string() + "' for writing");
  }
  out.write(content.data(), std::streamsize(content.size()));
  if (!out) {
    throw io_error("short write to '" + full.string() + "'");
  }
  entries_.push_back({relative_path, content.size(), fnv1a64_hex(content)});
}

std::filesystem::path ArtifactWriter::write_manifest(
    const std::string& subcommand, const std::string& resolved_config,
    const std::map<std::string, std::string>& metadata, bool partial,
    const std::string& error) {
  nlohmann::json manifest;
  manifest["subcommand"] = subcommand;
  manifest["config_hash"] = fnv1a64_hex(resolved_config);
  manifest["config"] = resolved_config;
  manifest["hash_algorithm"] = "fnv1a64";
  manifest["partial"] = partial;
  if (!error.empty()) manifest["error"] = error;

  nlohmann::json meta = nlohmann::json::object();
  for (const auto& [key, value] : metadata) meta[key] = value;
  manifest["metadata"] = meta;

  std::vector<ManifestEntry> sorted = entries_;
  std::sort(sorted.begin(), sorted.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) {
              return a.path < b.path;
            });
  nlohmann::json files = nlohmann::json::array();
  for (const ManifestEntry& entry : sorted) {
    files.push_back({{"path", entry.path},
                     {"bytes", entry.bytes},
                     {"hash", entry.hash}});
  }
  manifest["artifacts"] = files;

  const std::filesystem::path path = out_dir_ / "manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw io_error("cannot open '" + path.string() + "' for writing");
  }
  out << manifest.dump(2) << "\n";
  return path;
}

}  // namespace wlde
