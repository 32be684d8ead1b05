#include "ladder/effective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ladder/errors.hpp"

namespace ladder {

namespace {

void require_four_levels(const LadderScheme& scheme, const char* what) {
  if (scheme.size() != 4)
    throw UnsupportedSchemeError(std::string(what) + " needs a four-level ladder, got " +
                                 std::to_string(scheme.size()) + " levels");
}

// gamma_bar * Omega_j / (Omega2 * Omega_k); zero when the step is undriven.
double gamma_ratio(double gamma_bar, double omega_j, double omega_k, double omega2) {
  if (omega_j == 0.0) return 0.0;
  return gamma_bar * omega_j / (omega2 * omega_k);
}

}  // namespace

double EffectiveTwoLevel::generalized_rabi() const {
  return std::hypot(reduced_rabi, three_photon_detuning);
}

EffectiveTwoLevel adiabatic_eliminate(const LadderScheme& scheme, double r) {
  require_four_levels(scheme, "adiabatic elimination");
  const double o1 = scheme.transition(0).rabi_at(r);
  const double o2 = scheme.transition(1).rabi_at(r);
  const double o3 = scheme.transition(2).rabi_at(r);
  if (o2 == 0.0) throw NumericalError("adiabatic elimination undefined: middle-step Rabi frequency is zero");

  EffectiveTwoLevel eff{};
  eff.gamma_bar = 0.5 * (scheme.level(1).decay_rate() + scheme.level(2).decay_rate());
  const double tau4_rate = scheme.level(3).decay_rate();
  const double s1 = (o1 / o2) * (o1 / o2);
  const double s3 = (o3 / o2) * (o3 / o2);
  eff.reduced_rabi = o1 * o3 / o2;
  eff.three_photon_detuning = scheme.total_detuning();
  eff.gamma1 = eff.gamma_bar * s1;
  eff.gamma4 = eff.gamma_bar * s3 + tau4_rate;
  eff.decay_total = eff.gamma_bar * (s1 + s3) + tau4_rate;
  return eff;
}

double analytic_population(const EffectiveTwoLevel& eff, double t) {
  if (std::isnan(t) || t < 0.0) throw ConfigError("time must be non-negative");
  const double wbar = eff.generalized_rabi();
  if (wbar == 0.0) return 0.0;
  const double amp = (eff.reduced_rabi * eff.reduced_rabi) / (2.0 * wbar * wbar);
  return amp * (1.0 - std::cos(wbar * t)) * std::exp(-0.5 * eff.decay_total * t);
}

TwoPhotonEffective two_photon_effective(double omega1, double omega2, double delta1) {
  if (delta1 == 0.0) throw NumericalError("two-photon model undefined at zero intermediate detuning");
  return {omega1 * omega2 / (2.0 * delta1), (omega2 * omega2 - omega1 * omega1) / (4.0 * delta1),
          std::abs(delta1) > 10.0 * std::max(omega1, omega2)};
}

PeakHeight first_peak_height(const EffectiveTwoLevel& eff) {
  if (eff.reduced_rabi == 0.0) throw NumericalError("no Rabi oscillation: reduced Rabi frequency is zero");
  const double x = eff.decay_total * std::numbers::pi / (2.0 * eff.reduced_rabi);
  return {std::exp(-x), 1.0 - x, eff.reduced_rabi >= 10.0 * eff.decay_total};
}

ValidityReport validity_report(const LadderScheme& scheme, double r) {
  require_four_levels(scheme, "validity report");
  const double o1 = scheme.transition(0).rabi_at(r);
  const double o2 = scheme.transition(1).rabi_at(r);
  const double o3 = scheme.transition(2).rabi_at(r);
  const double gamma_bar = 0.5 * (scheme.level(1).decay_rate() + scheme.level(2).decay_rate());
  const double inf = std::numeric_limits<double>::infinity();
  const auto ratio = [inf](double num, double den) {
    if (num == 0.0) return 0.0;
    return den == 0.0 ? inf : num / den;
  };

  ValidityReport rep{};
  rep.rabi1_over_rabi2 = ratio(o1, o2);
  rep.rabi3_over_rabi2 = ratio(o3, o2);
  rep.detuning_over_rabi2 = ratio(std::abs(scheme.total_detuning()), o2);
  if (o2 == 0.0) {
    rep.gamma1_over_rabi = o1 == 0.0 ? 0.0 : inf;
    rep.gamma4_over_rabi = o3 == 0.0 ? 0.0 : inf;
  } else {
    rep.gamma1_over_rabi = o3 == 0.0 && o1 != 0.0 ? inf : gamma_ratio(gamma_bar, o1, o3, o2);
    rep.gamma4_over_rabi = o1 == 0.0 && o3 != 0.0 ? inf : gamma_ratio(gamma_bar, o3, o1, o2);
  }
  rep.elimination_valid = rep.rabi1_over_rabi2 < kValidityThreshold &&
                          rep.rabi3_over_rabi2 < kValidityThreshold &&
                          rep.gamma1_over_rabi < kValidityThreshold &&
                          rep.gamma4_over_rabi < kValidityThreshold &&
                          rep.detuning_over_rabi2 < kValidityThreshold;
  return rep;
}

nlohmann::json ValidityReport::to_json() const {
  const auto num = [](double v) -> nlohmann::json {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json("inf");
  };
  return {{"rabi1_over_rabi2", num(rabi1_over_rabi2)},
          {"rabi3_over_rabi2", num(rabi3_over_rabi2)},
          {"gamma1_over_rabi", num(gamma1_over_rabi)},
          {"gamma4_over_rabi", num(gamma4_over_rabi)},
          {"detuning_over_rabi2", num(detuning_over_rabi2)},
          {"threshold", kValidityThreshold},
          {"elimination_valid", elimination_valid}};
}

double nominal_rabi(const LadderScheme& scheme, double r) {
  switch (scheme.size()) {
    case 2:
      return scheme.transition(0).rabi_at(r);
    case 3:
      return std::abs(two_photon_effective(scheme.transition(0).rabi_at(r),
                                           scheme.transition(1).rabi_at(r),
                                           scheme.transition(0).detuning)
                          .reduced_rabi);
    case 4: {
      const double o2 = scheme.transition(1).rabi_at(r);
      if (o2 == 0.0) throw NumericalError("middle-step Rabi frequency is zero");
      return scheme.transition(0).rabi_at(r) * scheme.transition(2).rabi_at(r) / o2;
    }
    default:
      throw UnsupportedSchemeError("no multi-photon Rabi estimate for " +
                                   std::to_string(scheme.size()) + "-level ladders");
  }
}

nlohmann::json to_json(const EffectiveTwoLevel& eff) {
  return {{"reduced_rabi_rad_s", eff.reduced_rabi},
          {"three_photon_detuning_rad_s", eff.three_photon_detuning},
          {"gamma1_per_s", eff.gamma1},
          {"gamma4_per_s", eff.gamma4},
          {"gamma_bar_per_s", eff.gamma_bar},
          {"decay_total_per_s", eff.decay_total},
          {"generalized_rabi_rad_s", eff.generalized_rabi()}};
}

}  // namespace ladder
