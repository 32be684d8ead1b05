#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ladder/config.hpp"
#include "ladder/errors.hpp"

namespace ladder {

inline constexpr const char* kVersion = LADDER_VERSION;
inline constexpr const char* kOutputDirEnv = "LADDER_SIM_OUT";

struct RunOptions {
  std::optional<std::filesystem::path> output_dir;  // overrides config and environment
  std::optional<unsigned> threads;
  std::optional<std::size_t> radial_nodes;
};

struct RunOutcome {
  std::filesystem::path output_dir;
  std::vector<std::filesystem::path> files;  // data files, then the manifest
};

/// Dispatches the configured experiment and writes its CSV/JSON outputs plus
/// run_manifest.json. Output directory precedence: options, config,
/// $LADDER_SIM_OUT, current directory.
RunOutcome run(const ExperimentConfig& config, const RunOptions& options = {});

/// Preset names with their headline parameters, sorted by name.
std::string presets_text();

/// 2 config, 3 numerical, 4 validity, 1 anything else.
int exit_code_for(const std::exception& e);

/// {"error": {"kind": ..., "message": ...}}
std::string error_json(const std::exception& e);

}  // namespace ladder
