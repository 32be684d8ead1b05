#include "ladder/config.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "ladder/errors.hpp"
#include "ladder/units.hpp"

namespace ladder {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!ok.count(key)) fail(path + "." + key, "unknown field");
}

double number(const json& obj, const std::string& key, const std::string& path) {
  const auto& v = obj.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path + "." + key, "must be finite");
  return x;
}

double positive(const json& obj, const std::string& key, const std::string& path) {
  const double x = number(obj, key, path);
  if (!(x > 0.0)) fail(path + "." + key, "must be positive");
  return x;
}

double non_negative(const json& obj, const std::string& key, const std::string& path) {
  const double x = number(obj, key, path);
  if (x < 0.0) fail(path + "." + key, "must be non-negative");
  return x;
}

std::size_t count(const json& obj, const std::string& key, const std::string& path, std::size_t min) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min))
    fail(path + "." + key, "expected an integer >= " + std::to_string(min));
  return v.get<std::size_t>();
}

// Positive number or the string "inf".
double positive_or_inf(const json& obj, const std::string& key, const std::string& path) {
  const auto& v = obj.at(key);
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return kInf;
    fail(path + "." + key, "expected a positive number or \"inf\"");
  }
  return positive(obj, key, path);
}

// Value v in config units with to_si(v) == si exactly, so that writing a
// scheme back out and re-reading it reproduces the same doubles.
template <class ToSi>
double exact_inverse(double si, double guess, ToSi to_si) {
  if (!std::isfinite(guess) || to_si(guess) == si) return guess;
  double lo = guess, hi = guess;
  for (int i = 0; i < 16; ++i) {
    lo = std::nextafter(lo, -kInf);
    hi = std::nextafter(hi, kInf);
    if (to_si(lo) == si) return lo;
    if (to_si(hi) == si) return hi;
  }
  return guess;
}

double to_mhz_exact(double omega) { return exact_inverse(omega, units::to_mhz(omega), units::mhz); }
double to_us_exact(double t) { return exact_inverse(t, units::to_us(t), units::us); }
double to_um_exact(double x) { return exact_inverse(x, units::to_um(x), units::um); }

std::string where(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

AtomCloud parse_cloud(const json& obj, const std::string& path) {
  reject_unknown(obj, path, {"radius_um", "center_offset_um"});
  if (!obj.contains("radius_um")) fail(path + ".radius_um", "required");
  const double a = units::um(positive(obj, "radius_um", path));
  const double d = obj.contains("center_offset_um")
                       ? units::um(non_negative(obj, "center_offset_um", path))
                       : 0.0;
  return AtomCloud(a, d);
}

SpatialOptions parse_quadrature(const json* obj, const std::string& path) {
  SpatialOptions q;
  if (!obj) return q;
  reject_unknown(*obj, path, {"radial_nodes", "azimuthal_nodes", "time_points", "threads"});
  if (obj->contains("radial_nodes")) q.radial_nodes = count(*obj, "radial_nodes", path, 8);
  if (obj->contains("azimuthal_nodes")) q.azimuthal_nodes = count(*obj, "azimuthal_nodes", path, 1);
  if (obj->contains("time_points")) q.time_points = count(*obj, "time_points", path, 3);
  if (obj->contains("threads")) q.threads = static_cast<unsigned>(count(*obj, "threads", path, 0));
  return q;
}

ExperimentGrid parse_grid(Experiment e, const json* obj, const std::string& path) {
  static const json empty = json::object();
  const json& g = obj ? *obj : empty;
  switch (e) {
    case Experiment::rabi: {
      reject_unknown(g, path, {"t_end_us", "points", "r_um"});
      RabiGrid out;
      if (g.contains("t_end_us")) out.t_end = units::us(positive(g, "t_end_us", path));
      if (g.contains("points")) out.points = count(g, "points", path, 2);
      if (g.contains("r_um")) out.r = units::um(non_negative(g, "r_um", path));
      return out;
    }
    case Experiment::spectrum: {
      reject_unknown(g, path, {"swept_transition", "from_mhz", "to_mhz", "step_mhz", "t_int_us", "r_um"});
      for (const char* k : {"swept_transition", "from_mhz", "to_mhz", "step_mhz"})
        if (!g.contains(k)) fail(path + "." + k, "required");
      SpectrumGrid out;
      out.swept_transition = count(g, "swept_transition", path, 1) - 1;
      out.from = units::mhz(number(g, "from_mhz", path));
      out.to = units::mhz(number(g, "to_mhz", path));
      out.step = units::mhz(positive(g, "step_mhz", path));
      if (!(out.to > out.from)) fail(path + ".to_mhz", "must exceed from_mhz");
      if (g.contains("t_int_us")) out.t_int = units::us(positive(g, "t_int_us", path));
      if (g.contains("r_um")) out.r = units::um(non_negative(g, "r_um", path));
      return out;
    }
    case Experiment::coverage: {
      reject_unknown(g, path, {"xi"});
      if (!g.contains("xi")) fail(path + ".xi", "required");
      const auto& arr = g.at("xi");
      if (!arr.is_array() || arr.empty()) fail(path + ".xi", "expected a non-empty array");
      CoverageGrid out;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) fail(where(path + ".xi", i), "expected a number");
        const double xi = arr[i].get<double>();
        if (!std::isfinite(xi) || !(xi > 0.0)) fail(where(path + ".xi", i), "must be positive and finite");
        if (i > 0 && !(xi > out.xi.back())) fail(where(path + ".xi", i), "values must be strictly ascending");
        out.xi.push_back(xi);
      }
      return out;
    }
    case Experiment::crosstalk: {
      reject_unknown(g, path, {"t_end_us"});
      CrosstalkGrid out;
      if (g.contains("t_end_us")) out.t_end = units::us(positive(g, "t_end_us", path));
      return out;
    }
    case Experiment::effective: {
      reject_unknown(g, path, {"r_um", "t_end_us", "points"});
      EffectiveGrid out;
      if (g.contains("r_um")) out.r = units::um(non_negative(g, "r_um", path));
      if (g.contains("t_end_us")) out.t_end = units::us(positive(g, "t_end_us", path));
      if (g.contains("points")) out.points = count(g, "points", path, 2);
      return out;
    }
  }
  throw ConfigError("unhandled experiment");
}

json grid_to_json(const ExperimentGrid& grid) {
  return std::visit(
      [](const auto& g) -> json {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, RabiGrid>) {
          return {{"t_end_us", to_us_exact(g.t_end)}, {"points", g.points}, {"r_um", to_um_exact(g.r)}};
        } else if constexpr (std::is_same_v<G, SpectrumGrid>) {
          return {{"swept_transition", g.swept_transition + 1},
                  {"from_mhz", to_mhz_exact(g.from)},
                  {"to_mhz", to_mhz_exact(g.to)},
                  {"step_mhz", to_mhz_exact(g.step)},
                  {"t_int_us", to_us_exact(g.t_int)},
                  {"r_um", to_um_exact(g.r)}};
        } else if constexpr (std::is_same_v<G, CoverageGrid>) {
          return {{"xi", g.xi}};
        } else if constexpr (std::is_same_v<G, CrosstalkGrid>) {
          json out = json::object();
          if (g.t_end) out["t_end_us"] = to_us_exact(*g.t_end);
          return out;
        } else {
          return {{"r_um", to_um_exact(g.r)}, {"t_end_us", to_us_exact(g.t_end)}, {"points", g.points}};
        }
      },
      grid);
}

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::spectrum: return "spectrum";
    case Experiment::rabi: return "rabi";
    case Experiment::coverage: return "coverage";
    case Experiment::crosstalk: return "crosstalk";
    case Experiment::effective: return "effective";
  }
  return "unknown";
}

Experiment experiment_from_string(std::string_view name) {
  for (auto e : {Experiment::spectrum, Experiment::rabi, Experiment::coverage, Experiment::crosstalk,
                 Experiment::effective})
    if (to_string(e) == name) return e;
  throw ConfigError("unknown experiment '" + std::string(name) +
                    "' (expected spectrum, rabi, coverage, crosstalk or effective)");
}

std::vector<double> SpectrumGrid::values() const {
  const auto n = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = from + step * static_cast<double>(i);
  return out;
}

json scheme_to_json(const LadderScheme& scheme) {
  json levels = json::array();
  for (const auto& l : scheme.levels()) {
    json lifetime = std::isinf(l.lifetime) ? json("inf") : json(to_us_exact(l.lifetime));
    levels.push_back({{"label", l.label}, {"lifetime_us", lifetime}});
  }
  json transitions = json::array();
  for (const auto& t : scheme.transitions()) {
    json entry = {{"rabi_mhz", to_mhz_exact(t.peak_rabi)}, {"detuning_mhz", to_mhz_exact(t.detuning)}};
    if (t.waist) entry["waist_um"] = std::isinf(*t.waist) ? json("inf") : json(to_um_exact(*t.waist));
    transitions.push_back(std::move(entry));
  }
  return {{"levels", levels}, {"transitions", transitions}};
}

LadderScheme scheme_from_json(const json& doc, const std::string& path) {
  reject_unknown(doc, path, {"levels", "transitions"});
  if (!doc.contains("levels") || !doc.at("levels").is_array()) fail(path + ".levels", "expected an array");
  if (!doc.contains("transitions") || !doc.at("transitions").is_array())
    fail(path + ".transitions", "expected an array");

  std::vector<Level> levels;
  const auto& lv = doc.at("levels");
  for (std::size_t i = 0; i < lv.size(); ++i) {
    const std::string p = where(path + ".levels", i);
    reject_unknown(lv[i], p, {"label", "lifetime_us"});
    if (!lv[i].contains("lifetime_us")) fail(p + ".lifetime_us", "required");
    std::string label = "level" + std::to_string(i + 1);
    if (lv[i].contains("label")) {
      if (!lv[i].at("label").is_string()) fail(p + ".label", "expected a string");
      label = lv[i].at("label").get<std::string>();
    }
    const double tau = positive_or_inf(lv[i], "lifetime_us", p);
    levels.push_back({std::move(label), std::isinf(tau) ? kInf : units::us(tau)});
  }

  std::vector<Transition> transitions;
  const auto& tv = doc.at("transitions");
  for (std::size_t i = 0; i < tv.size(); ++i) {
    const std::string p = where(path + ".transitions", i);
    reject_unknown(tv[i], p, {"rabi_mhz", "detuning_mhz", "waist_um"});
    if (!tv[i].contains("rabi_mhz")) fail(p + ".rabi_mhz", "required");
    Transition t{units::mhz(non_negative(tv[i], "rabi_mhz", p)), 0.0, std::nullopt};
    if (tv[i].contains("detuning_mhz")) t.detuning = units::mhz(number(tv[i], "detuning_mhz", p));
    if (tv[i].contains("waist_um") && !tv[i].at("waist_um").is_null()) {
      const double w = positive_or_inf(tv[i], "waist_um", p);
      t.waist = std::isinf(w) ? kInf : units::um(w);
    }
    transitions.push_back(t);
  }
  if (levels.size() < 2) fail(path + ".levels", "a ladder needs at least two levels");
  if (transitions.size() + 1 != levels.size())
    fail(path + ".transitions", "expected " + std::to_string(levels.size() - 1) +
                                    " transitions for " + std::to_string(levels.size()) + " levels");
  return {std::move(levels), std::move(transitions)};
}

ExperimentConfig parse_config(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line:column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < document.size(); ++i) {
      if (document[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("parse error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                      ": " + e.what());
  }
  const std::string root = "$";
  reject_unknown(doc, root,
                 {"experiment", "scheme", "beam_waist_um", "cloud", "quadrature", "output_dir", "spectrum",
                  "rabi", "coverage", "crosstalk", "effective"});

  if (!doc.contains("experiment")) fail("$.experiment", "required");
  if (!doc.at("experiment").is_string()) fail("$.experiment", "expected a string");
  Experiment experiment;
  try {
    experiment = experiment_from_string(doc.at("experiment").get<std::string>());
  } catch (const ConfigError& e) {
    fail("$.experiment", e.what());
  }
  for (auto other : {Experiment::spectrum, Experiment::rabi, Experiment::coverage, Experiment::crosstalk,
                     Experiment::effective}) {
    const std::string key(to_string(other));
    if (other != experiment && doc.contains(key))
      fail("$." + key, "block belongs to a different experiment than '" + std::string(to_string(experiment)) + "'");
  }

  if (!doc.contains("scheme")) fail("$.scheme", "required");
  std::optional<std::string> preset_name;
  std::optional<LadderScheme> base;
  const auto& s = doc.at("scheme");
  if (s.is_string()) {
    preset_name = s.get<std::string>();
    try {
      base = preset(*preset_name);
    } catch (const ConfigError& e) {
      fail("$.scheme", e.what());
    }
  } else {
    base = scheme_from_json(s, "$.scheme");
  }

  std::optional<double> beam_waist;
  LadderScheme scheme = *base;
  if (doc.contains("beam_waist_um")) {
    beam_waist = units::um(positive(doc, "beam_waist_um", root));
    scheme = with_spot_radius(*base, *beam_waist);
  }

  std::optional<AtomCloud> cloud;
  if (doc.contains("cloud")) cloud = parse_cloud(doc.at("cloud"), "$.cloud");

  const std::string key(to_string(experiment));
  const json* grid_doc = doc.contains(key) ? &doc.at(key) : nullptr;
  auto grid = parse_grid(experiment, grid_doc, "$." + key);

  const json* quad_doc = doc.contains("quadrature") ? &doc.at("quadrature") : nullptr;
  auto quadrature = parse_quadrature(quad_doc, "$.quadrature");

  std::optional<std::string> output_dir;
  if (doc.contains("output_dir")) {
    if (!doc.at("output_dir").is_string()) fail("$.output_dir", "expected a string");
    output_dir = doc.at("output_dir").get<std::string>();
  }

  // Cross-field requirements.
  if (experiment == Experiment::coverage || experiment == Experiment::crosstalk) {
    if (!cloud) fail("$.cloud", "required for the " + key + " experiment");
  }
  if (experiment == Experiment::coverage && cloud->center_offset != 0.0)
    fail("$.cloud.center_offset_um", "coverage sweeps need a coaxial cloud");
  if (experiment == Experiment::crosstalk && !scheme.has_waists())
    fail("$.beam_waist_um", "crosstalk needs beam waists (beam_waist_um or per-transition waist_um)");
  if (experiment == Experiment::rabi && cloud) {
    if (cloud->center_offset != 0.0) fail("$.cloud.center_offset_um", "averaged traces need a coaxial cloud");
    if (!scheme.has_waists()) fail("$.beam_waist_um", "averaged traces need beam waists");
  }
  if (experiment == Experiment::spectrum) {
    const auto& g = std::get<SpectrumGrid>(grid);
    if (g.swept_transition >= scheme.steps())
      fail("$.spectrum.swept_transition", "must be between 1 and " + std::to_string(scheme.steps()));
    if (g.values().size() < 3) fail("$.spectrum", "grid needs at least three points");
  }

  return {experiment, preset_name, *base, scheme, beam_waist, cloud, std::move(grid), quadrature, output_dir};
}

json resolved_config(const ExperimentConfig& config) {
  const std::string key(to_string(config.experiment));
  json out = {{"experiment", key}, {"scheme", scheme_to_json(config.base_scheme)}};
  if (config.beam_waist) out["beam_waist_um"] = to_um_exact(*config.beam_waist);
  if (config.cloud)
    out["cloud"] = {{"radius_um", to_um_exact(config.cloud->radius)},
                    {"center_offset_um", to_um_exact(config.cloud->center_offset)}};
  out[key] = grid_to_json(config.grid);
  out["quadrature"] = {{"radial_nodes", config.quadrature.radial_nodes},
                       {"azimuthal_nodes", config.quadrature.azimuthal_nodes},
                       {"time_points", config.quadrature.time_points}};
  return out;
}

}  // namespace ladder
