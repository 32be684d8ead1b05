#pragma once

#include <nlohmann/json.hpp>

#include "ladder/scheme.hpp"

namespace ladder {

/// Effective two-level model of a four-level ladder with a strong middle step,
/// obtained by adiabatically eliminating the two intermediate amplitudes.
struct EffectiveTwoLevel {
  double reduced_rabi;           // Omega = Omega1 Omega3 / Omega2, rad/s
  double three_photon_detuning;  // delta1 + delta2 + delta3, rad/s
  double gamma1;                 // ground-state loss rate, 1/s
  double gamma4;                 // Rydberg-state loss rate, 1/s
  double gamma_bar;              // (1/tau2 + 1/tau3) / 2, 1/s
  double decay_total;            // envelope decay constant Gamma, 1/s

  double generalized_rabi() const;  // sqrt(Omega^2 + detuning^2)
};

/// Two-photon Rabi frequency and differential light shift far from the
/// intermediate resonance.
struct TwoPhotonEffective {
  double reduced_rabi;  // Omega1 Omega2 / (2 delta1)
  double light_shift;   // (Omega2^2 - Omega1^2) / (4 delta1)
  bool far_detuned;     // |delta1| > 10 max(Omega1, Omega2)
};

struct PeakHeight {
  double exact;       // exp(-Gamma pi / (2 Omega))
  double linearized;  // 1 - pi Gamma / (2 Omega)
  bool well_resolved; // Omega >= 10 Gamma
};

/// Ratios that must be small for the elimination to hold.
struct ValidityReport {
  double rabi1_over_rabi2;
  double rabi3_over_rabi2;
  double gamma1_over_rabi;  // intermediate-state part of gamma1 over Omega
  double gamma4_over_rabi;  // intermediate-state part of gamma4 over Omega
  double detuning_over_rabi2;
  bool elimination_valid;

  nlohmann::json to_json() const;
};

inline constexpr double kValidityThreshold = 0.1;

/// Throws UnsupportedSchemeError unless the ladder has four levels and
/// NumericalError when the local middle-step coupling vanishes.
EffectiveTwoLevel adiabatic_eliminate(const LadderScheme& scheme, double r);

/// Rydberg population of the effective model started in the ground state:
/// (Omega^2 / 2 Omegabar^2) (1 - cos(Omegabar t)) exp(-Gamma t / 2).
double analytic_population(const EffectiveTwoLevel& eff, double t);

TwoPhotonEffective two_photon_effective(double omega1, double omega2, double delta1);

/// Height of the first Rabi maximum for a resonant effective model.
PeakHeight first_peak_height(const EffectiveTwoLevel& eff);

ValidityReport validity_report(const LadderScheme& scheme, double r);

/// Multi-photon Rabi frequency of the ladder at radius r: Omega1 for two
/// levels, the two-photon formula for three, the reduced three-photon
/// frequency for four.
double nominal_rabi(const LadderScheme& scheme, double r = 0.0);

nlohmann::json to_json(const EffectiveTwoLevel& eff);

}  // namespace ladder
