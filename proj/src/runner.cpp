#include "ladder/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "ladder/effective.hpp"
#include "ladder/report.hpp"
#include "ladder/units.hpp"

namespace ladder {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json optional_number(const std::optional<double>& v, double scale = 1.0) {
  return v ? json(*v * scale) : json(nullptr);
}

fs::path resolve_output_dir(const ExperimentConfig& config, const RunOptions& options) {
  if (options.output_dir) return *options.output_dir;
  if (config.output_dir) return *config.output_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return ".";
}

struct Emitter {
  fs::path dir;
  std::vector<fs::path> files;

  void write(const std::string& name, const std::string& content) {
    const auto path = dir / name;
    write_file_atomic(path, content);
    files.push_back(path);
  }
};

void run_rabi(const ExperimentConfig& c, const SpatialOptions& q, Emitter& out) {
  const auto& g = std::get<RabiGrid>(c.grid);
  AmplitudeTrajectory traj = c.cloud ? averaged_trace(c.scheme, *c.cloud, g.t_end, g.points, q)
                                     : rabi_trace(c.scheme, g.r, g.t_end, g.points, q.propagator);
  out.write("rabi.csv", trajectory_csv(traj, c.scheme.fingerprint()));

  json summary = {{"averaged", c.cloud.has_value()}, {"fallback", traj.fallback}};
  const auto target = traj.population(traj.levels() - 1);
  try {
    const double window = std::min(g.t_end, 2.0 * std::numbers::pi / nominal_rabi(c.scheme, 0.0));
    const auto peak = locate_maximum(traj.times, target, window, false);
    summary["first_peak"] = {{"time_us", units::to_us(peak.time)}, {"height", peak.height}};
  } catch (const Error&) {
    summary["first_peak"] = nullptr;
  }
  out.write("rabi_summary.json", dump(summary));
}

void run_spectrum(const ExperimentConfig& c, const SpatialOptions& q, Emitter& out) {
  const auto& g = std::get<SpectrumGrid>(c.grid);
  const auto grid = g.values();
  const auto result = spectrum(c.scheme, g.swept_transition, grid, g.t_int, g.r, q);
  out.write("spectrum.csv", spectrum_csv(result, c.scheme.fingerprint()));

  json summary = {{"swept_transition", g.swept_transition + 1},
                  {"t_int_us", units::to_us(g.t_int)},
                  {"r_um", units::to_um(g.r)},
                  {"peak_center_mhz", optional_number(result.peak_center, 1.0 / (units::two_pi * 1e6))},
                  {"fwhm_mhz", optional_number(result.fwhm, 1.0 / (units::two_pi * 1e6))},
                  {"peak_height", result.peak_height}};
  if (c.scheme.size() == 3 && c.scheme.transition(0).detuning != 0.0) {
    const auto tp = two_photon_effective(c.scheme.transition(0).rabi_at(g.r), c.scheme.transition(1).rabi_at(g.r),
                                         c.scheme.transition(0).detuning);
    summary["predicted_light_shift_mhz"] = units::to_mhz(tp.light_shift);
  }
  out.write("spectrum.json", dump(summary));
}

void run_coverage(const ExperimentConfig& c, const SpatialOptions& q, Emitter& out) {
  const auto& g = std::get<CoverageGrid>(c.grid);
  const auto result = coverage_sweep(c.base_scheme, c.cloud->radius, g.xi, q);
  out.write("coverage.csv", coverage_csv(result, c.base_scheme.fingerprint()));
}

void run_crosstalk(const ExperimentConfig& c, const SpatialOptions& q, Emitter& out) {
  const auto& g = std::get<CrosstalkGrid>(c.grid);
  const double t_end = g.t_end ? *g.t_end : default_crosstalk_horizon(c.scheme);
  const auto result = crosstalk(c.scheme, *c.cloud, t_end, q);
  json report = result.to_json();
  report["scheme"] = c.scheme.fingerprint();
  if (c.scheme.size() == 4)
    report["validity_at_neighbor_center"] = validity_report(c.scheme, c.cloud->center_offset).to_json();
  out.write("crosstalk.json", dump(report));
}

void run_effective(const ExperimentConfig& c, Emitter& out) {
  const auto& g = std::get<EffectiveGrid>(c.grid);
  json report = {{"scheme", c.scheme.fingerprint()}, {"r_um", units::to_um(g.r)}};
  if (c.scheme.size() == 4) {
    const auto eff = adiabatic_eliminate(c.scheme, g.r);
    report["effective"] = to_json(eff);
    report["validity"] = validity_report(c.scheme, g.r).to_json();
    report["gamma_profile_per_s"] = gamma_profile(c.scheme, g.r);
    if (eff.reduced_rabi > 0.0) {
      const auto peak = first_peak_height(eff);
      report["first_peak_height"] = {
          {"exact", peak.exact}, {"linearized", peak.linearized}, {"well_resolved", peak.well_resolved}};
    }
    const auto times = uniform_grid(g.t_end, g.points);
    std::string csv = "# scheme: " + c.scheme.fingerprint() + "\nt_us,n_target_analytic\n";
    for (const double t : times)
      csv += format_number(units::to_us(t)) + ',' + format_number(analytic_population(eff, t)) + '\n';
    out.write("effective_trace.csv", csv);
  } else if (c.scheme.size() == 3) {
    const auto tp = two_photon_effective(c.scheme.transition(0).rabi_at(g.r), c.scheme.transition(1).rabi_at(g.r),
                                         c.scheme.transition(0).detuning);
    report["two_photon"] = {{"reduced_rabi_rad_s", tp.reduced_rabi},
                            {"reduced_rabi_mhz", units::to_mhz(tp.reduced_rabi)},
                            {"light_shift_rad_s", tp.light_shift},
                            {"light_shift_mhz", units::to_mhz(tp.light_shift)},
                            {"far_detuned", tp.far_detuned}};
  } else {
    throw UnsupportedSchemeError("the effective report covers three- and four-level ladders");
  }
  out.write("effective.json", dump(report));
}

}  // namespace

RunOutcome run(const ExperimentConfig& config, const RunOptions& options) {
  SpatialOptions q = config.quadrature;
  if (options.threads) q.threads = *options.threads;
  if (options.radial_nodes) {
    if (*options.radial_nodes < 8) throw ConfigError("--nodes must be at least 8");
    q.radial_nodes = *options.radial_nodes;
  }

  Emitter out{resolve_output_dir(config, options), {}};
  std::error_code ec;
  fs::create_directories(out.dir, ec);
  if (ec) throw Error("cannot create output directory " + out.dir.string() + ": " + ec.message());

  switch (config.experiment) {
    case Experiment::rabi: run_rabi(config, q, out); break;
    case Experiment::spectrum: run_spectrum(config, q, out); break;
    case Experiment::coverage: run_coverage(config, q, out); break;
    case Experiment::crosstalk: run_crosstalk(config, q, out); break;
    case Experiment::effective: run_effective(config, out); break;
  }

  ExperimentConfig effective_config = config;
  effective_config.quadrature = q;
  json outputs = json::array();
  for (const auto& f : out.files) outputs.push_back(f.filename().string());
  const json manifest = {
      {"tool", "ladder-sim"},
      {"version", kVersion},
      {"experiment", std::string(to_string(config.experiment))},
      {"preset", config.preset_name ? json(*config.preset_name) : json(nullptr)},
      {"resolved_config", resolved_config(effective_config)},
      {"quadrature",
       {{"radial_rule", "gauss-laguerre, s = 2 r^2 / a^2"},
        {"radial_nodes", q.radial_nodes},
        {"azimuthal_rule", "trapezoid"},
        {"azimuthal_nodes", q.azimuthal_nodes},
        {"time_points", q.time_points},
        {"threads", q.threads}}},
      {"propagator",
       {{"method", "eigendecomposition"},
        {"fallback", "dormand-prince 5(4)"},
        {"condition_limit", q.propagator.condition_limit},
        {"rtol", q.propagator.rtol},
        {"atol", q.propagator.atol}}},
      {"outputs", outputs}};
  out.write("run_manifest.json", dump(manifest));
  return {out.dir, out.files};
}

std::string presets_text() {
  std::string out;
  for (const auto& p : list_presets()) out += p.name + "\n    " + p.summary + "\n";
  return out;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 2;
  if (dynamic_cast<const NumericalError*>(&e)) return 3;
  if (dynamic_cast<const ValidityError*>(&e)) return 4;
  return 1;
}

std::string error_json(const std::exception& e) {
  const auto* err = dynamic_cast<const Error*>(&e);
  const json j = {{"error", {{"kind", err ? err->kind() : "internal"}, {"message", e.what()}}}};
  return j.dump();
}

}  // namespace ladder
