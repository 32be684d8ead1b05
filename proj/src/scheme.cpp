#include "ladder/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "ladder/errors.hpp"
#include "ladder/units.hpp"

namespace ladder {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void append_number(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  out += buf;
}

}  // namespace

double Level::decay_rate() const { return std::isinf(lifetime) ? 0.0 : 1.0 / lifetime; }

double Transition::rabi_at(double r) const {
  if (r == 0.0 || peak_rabi == 0.0) return peak_rabi;
  if (!waist) throw ConfigError("beam waist is unset; only r = 0 can be evaluated");
  if (std::isinf(*waist)) return peak_rabi;
  const double x = r / *waist;
  return peak_rabi * std::exp(-x * x);
}

LadderScheme::LadderScheme(std::vector<Level> levels, std::vector<Transition> transitions)
    : levels_(std::move(levels)), transitions_(std::move(transitions)) {
  if (levels_.size() < 2) throw ConfigError("a ladder needs at least two levels");
  if (transitions_.size() + 1 != levels_.size())
    throw ConfigError("ladder with " + std::to_string(levels_.size()) + " levels needs " +
                      std::to_string(levels_.size() - 1) + " transitions, got " +
                      std::to_string(transitions_.size()));
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    const double tau = levels_[j].lifetime;
    if (std::isnan(tau) || !(tau > 0.0))
      throw ConfigError("levels[" + std::to_string(j) + "].lifetime must be positive");
  }
  for (std::size_t j = 0; j < transitions_.size(); ++j) {
    const auto& t = transitions_[j];
    const std::string where = "transitions[" + std::to_string(j) + "]";
    if (!std::isfinite(t.peak_rabi) || t.peak_rabi < 0.0)
      throw ConfigError(where + ".rabi must be finite and non-negative");
    if (!std::isfinite(t.detuning)) throw ConfigError(where + ".detuning must be finite");
    if (t.waist && (std::isnan(*t.waist) || !(*t.waist > 0.0)))
      throw ConfigError(where + ".waist must be positive");
  }
}

double LadderScheme::total_detuning() const {
  double sum = 0.0;
  for (const auto& t : transitions_) sum += t.detuning;
  return sum;
}

bool LadderScheme::has_waists() const {
  return std::all_of(transitions_.begin(), transitions_.end(),
                     [](const Transition& t) { return t.waist.has_value(); });
}

LadderScheme LadderScheme::with_waists(std::span<const double> waists) const {
  if (waists.size() != transitions_.size())
    throw ConfigError("expected " + std::to_string(transitions_.size()) + " waists");
  auto t = transitions_;
  for (std::size_t j = 0; j < t.size(); ++j) t[j].waist = waists[j];
  return {levels_, std::move(t)};
}

LadderScheme LadderScheme::with_detuning(std::size_t step, double detuning) const {
  auto t = transitions_;
  t.at(step).detuning = detuning;
  return {levels_, std::move(t)};
}

LadderScheme LadderScheme::with_rabi(std::size_t step, double peak_rabi) const {
  auto t = transitions_;
  t.at(step).peak_rabi = peak_rabi;
  return {levels_, std::move(t)};
}

LadderScheme LadderScheme::with_lifetime(std::size_t level, double lifetime) const {
  auto l = levels_;
  l.at(level).lifetime = lifetime;
  return {std::move(l), transitions_};
}

std::string LadderScheme::fingerprint() const {
  std::string out = "N=" + std::to_string(size());
  out += " tau_us=[";
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    if (j) out += ';';
    if (std::isinf(levels_[j].lifetime))
      out += "inf";
    else
      append_number(out, units::to_us(levels_[j].lifetime));
  }
  out += "] rabi_mhz=[";
  for (std::size_t j = 0; j < transitions_.size(); ++j) {
    if (j) out += ';';
    append_number(out, units::to_mhz(transitions_[j].peak_rabi));
  }
  out += "] detuning_mhz=[";
  for (std::size_t j = 0; j < transitions_.size(); ++j) {
    if (j) out += ';';
    append_number(out, units::to_mhz(transitions_[j].detuning));
  }
  out += "] waist_um=[";
  for (std::size_t j = 0; j < transitions_.size(); ++j) {
    if (j) out += ';';
    const auto& w = transitions_[j].waist;
    if (!w)
      out += "unset";
    else if (std::isinf(*w))
      out += "inf";
    else
      append_number(out, units::to_um(*w));
  }
  out += ']';
  return out;
}

AtomCloud::AtomCloud(double radius_, double center_offset_)
    : radius(radius_), center_offset(center_offset_) {
  if (std::isnan(radius) || !(radius > 0.0)) throw ConfigError("cloud radius must be positive");
  if (!std::isfinite(center_offset) || center_offset < 0.0)
    throw ConfigError("cloud center offset must be finite and non-negative");
}

LadderScheme preset_three_photon() {
  using namespace units;
  // Lifetimes are written in microseconds, the unit of the config format, so
  // that a preset survives a round trip through it unchanged.
  return {{{"5s1/2", kInf}, {"5p3/2", us(0.0262)}, {"6s1/2", us(0.045)}, {"70p3/2", us(190.0)}},
          {{mhz(126.5), 0.0, std::nullopt},
           {ghz(4.0), 0.0, std::nullopt},
           {mhz(126.5), 0.0, std::nullopt}}};
}

LadderScheme preset_two_photon() {
  using namespace units;
  constexpr double omega1_mhz = 160.0;
  constexpr double omega2_mhz = 50.0;
  constexpr double delta1_mhz = 1000.0;
  // Two-photon resonance including the on-axis ac Stark shift of both ends.
  constexpr double light_shift_mhz =
      (omega2_mhz * omega2_mhz - omega1_mhz * omega1_mhz) / (4.0 * delta1_mhz);
  return {{{"5s1/2", kInf}, {"6p3/2", us(0.12)}, {"70s1/2", us(152.0)}},
          {{mhz(omega1_mhz), mhz(delta1_mhz), std::nullopt},
           {mhz(omega2_mhz), mhz(-delta1_mhz + light_shift_mhz), std::nullopt}}};
}

std::vector<PresetInfo> list_presets() {
  std::vector<PresetInfo> out{
      {"three_photon_rb87",
       "5s1/2 -> 5p3/2 -> 6s1/2 -> 70p3/2; Omega1 = Omega3 = 2pi x 126.5 MHz, Omega2 = 2pi x 4 "
       "GHz, resonant; three-photon Rabi frequency 2pi x 4.0 MHz (Rabi-oscillation and "
       "coverage figures, three-photon panels)"},
      {"two_photon_rb87",
       "5s1/2 -> 6p3/2 -> 70s1/2; Omega1 = 2pi x 160 MHz, Omega2 = 2pi x 50 MHz, delta1 = 2pi "
       "x 1 GHz, light-shift compensated; two-photon Rabi frequency 2pi x 4.0 MHz "
       "(Rabi-oscillation and coverage figures, two-photon panels)"},
  };
  std::sort(out.begin(), out.end(),
            [](const PresetInfo& a, const PresetInfo& b) { return a.name < b.name; });
  return out;
}

LadderScheme preset(std::string_view name) {
  if (name == "three_photon_rb87") return preset_three_photon();
  if (name == "two_photon_rb87") return preset_two_photon();
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::array<double, 3> waists_for_uniform_rabi(const LadderScheme& scheme, double w) {
  if (scheme.steps() != 3)
    throw UnsupportedSchemeError("uniform-Rabi waists need a three-step ladder, got " +
                                 std::to_string(scheme.steps()) + " steps");
  if (std::isnan(w) || !(w > 0.0)) throw ConfigError("waist must be positive");
  return {w, w / std::numbers::sqrt2, w};
}

LadderScheme with_spot_radius(const LadderScheme& scheme, double w) {
  if (scheme.steps() == 3) {
    const auto ws = waists_for_uniform_rabi(scheme, w);
    return scheme.with_waists(ws);
  }
  if (std::isnan(w) || !(w > 0.0)) throw ConfigError("waist must be positive");
  const std::vector<double> ws(scheme.steps(), w);
  return scheme.with_waists(ws);
}

}  // namespace ladder
