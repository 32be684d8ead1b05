// ladder-sim: batch front-end for the ladder excitation simulator.
//
//   ladder-sim <experiment> --config <path> [--out <dir>] [--nodes <n>] [--threads <n>]
//   ladder-sim presets

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ladder/config.hpp"
#include "ladder/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ladder::ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-photon ladder excitation simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ladder::kVersion);

  app.add_subcommand("presets", "List built-in excitation schemes");

  std::string config_path;
  std::string out_dir;
  std::size_t nodes = 0;
  unsigned threads = 0;
  bool threads_set = false;
  for (const char* name : {"spectrum", "rabi", "coverage", "crosstalk", "effective"}) {
    auto* sub = app.add_subcommand(name, std::string("Run the ") + name + " experiment");
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--out", out_dir, "Output directory (default: config output_dir, $LADDER_SIM_OUT, .)");
    sub->add_option("--nodes", nodes, "Radial quadrature nodes")->check(CLI::Range(8, 4096));
    sub->add_option_function<unsigned>(
        "--threads", [&](unsigned n) { threads = n; threads_set = true; }, "Worker threads (0: all cores)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  auto* chosen = app.get_subcommands().front();
  if (chosen->get_name() == "presets") {
    std::cout << ladder::presets_text();
    return 0;
  }

  try {
    auto config = ladder::parse_config(read_file(config_path));
    if (ladder::to_string(config.experiment) != chosen->get_name())
      throw ladder::ConfigError("config selects experiment '" + std::string(ladder::to_string(config.experiment)) +
                                "' but the command was '" + chosen->get_name() + "'");
    ladder::RunOptions options;
    if (!out_dir.empty()) options.output_dir = out_dir;
    if (nodes) options.radial_nodes = nodes;
    if (threads_set) options.threads = threads;
    const auto outcome = ladder::run(config, options);
    for (const auto& f : outcome.files) std::cout << f.string() << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << ladder::error_json(e) << '\n';
    return ladder::exit_code_for(e);
  }
}
