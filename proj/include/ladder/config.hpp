#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ladder/scheme.hpp"
#include "ladder/spatial.hpp"

namespace ladder {

enum class Experiment { spectrum, rabi, coverage, crosstalk, effective };

std::string_view to_string(Experiment e);
Experiment experiment_from_string(std::string_view name);  // ConfigError if unknown

struct RabiGrid {
  double t_end = 1e-6;        // s
  std::size_t points = 1001;
  double r = 0.0;             // m, ignored when a cloud is given
};

struct SpectrumGrid {
  std::size_t swept_transition = 0;  // zero-based step index
  double from = 0.0;                 // rad/s, total ladder detuning
  double to = 0.0;
  double step = 0.0;
  double t_int = 0.125e-6;           // s
  double r = 0.0;                    // m

  std::vector<double> values() const;
};

struct CoverageGrid {
  std::vector<double> xi;
};

struct CrosstalkGrid {
  std::optional<double> t_end;  // s; default two on-axis pi-times
};

struct EffectiveGrid {
  double r = 0.0;         // m
  double t_end = 1e-6;    // s, analytic trace length
  std::size_t points = 1001;
};

using ExperimentGrid = std::variant<SpectrumGrid, RabiGrid, CoverageGrid, CrosstalkGrid, EffectiveGrid>;

/// Fully validated run description; all quantities in SI units.
struct ExperimentConfig {
  Experiment experiment;
  std::optional<std::string> preset_name;
  LadderScheme base_scheme;  // as written in the document
  LadderScheme scheme;       // base_scheme with beam_waist applied
  std::optional<double> beam_waist;
  std::optional<AtomCloud> cloud;
  ExperimentGrid grid;
  SpatialOptions quadrature;
  std::optional<std::string> output_dir;
};

/// Strict parse: unknown keys are rejected, errors name the JSON path.
ExperimentConfig parse_config(std::string_view document);

/// Config document with the scheme written out explicitly; parsing it gives
/// back the same ExperimentConfig.
nlohmann::json resolved_config(const ExperimentConfig& config);

nlohmann::json scheme_to_json(const LadderScheme& scheme);
LadderScheme scheme_from_json(const nlohmann::json& doc, const std::string& path = "$.scheme");

}  // namespace ladder
