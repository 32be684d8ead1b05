#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ladder {

/// One atomic level of the ladder. The lifetime may be +infinity (no decay).
struct Level {
  std::string label;
  double lifetime;  // s

  double decay_rate() const;  // 1/lifetime, 0 for an infinite lifetime
  bool operator==(const Level&) const = default;
};

/// One laser step coupling level j to level j+1.
///
/// `peak_rabi` is the Rabi frequency at the beam center and `waist` the 1/e^2
/// radius of the Rabi-frequency profile, Omega(r) = Omega * exp(-r^2 / w^2).
/// An unset waist may only be evaluated on axis; an infinite waist is a
/// uniform (wide) beam.
struct Transition {
  double peak_rabi;  // rad/s
  double detuning;   // rad/s, signed
  std::optional<double> waist;  // m

  double rabi_at(double r) const;
  bool operator==(const Transition&) const = default;
};

/// Validated excitation ladder: N >= 2 levels, N-1 transitions. Level 0 is the
/// initial state, the last level is the target (Rydberg) state.
class LadderScheme {
 public:
  LadderScheme(std::vector<Level> levels, std::vector<Transition> transitions);

  std::size_t size() const { return levels_.size(); }
  std::size_t steps() const { return transitions_.size(); }
  const std::vector<Level>& levels() const { return levels_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  const Level& level(std::size_t j) const { return levels_.at(j); }
  const Transition& transition(std::size_t j) const { return transitions_.at(j); }

  /// Sum of all step detunings (the multi-photon detuning).
  double total_detuning() const;
  bool has_waists() const;

  LadderScheme with_waists(std::span<const double> waists) const;
  LadderScheme with_detuning(std::size_t step, double detuning) const;
  LadderScheme with_rabi(std::size_t step, double peak_rabi) const;
  LadderScheme with_lifetime(std::size_t level, double lifetime) const;

  /// Short stable text identifying every parameter, used in output headers.
  std::string fingerprint() const;

  bool operator==(const LadderScheme&) const = default;

 private:
  std::vector<Level> levels_;
  std::vector<Transition> transitions_;
};

/// Transverse Gaussian distribution of the atom position.
struct AtomCloud {
  double radius;               // m, 1/e^2 probability radius
  double center_offset = 0.0;  // m, displacement from the beam axis

  AtomCloud(double radius, double center_offset = 0.0);
  bool operator==(const AtomCloud&) const = default;
};

/// 5s -> 5p3/2 -> 6s1/2 -> 70p3/2 in 87Rb with a strong middle step.
LadderScheme preset_three_photon();

/// 5s -> 6p3/2 -> 70s1/2 in 87Rb, 1 GHz intermediate detuning, second step
/// detuned so that the on-axis light shift is compensated.
LadderScheme preset_two_photon();

struct PresetInfo {
  std::string name;
  std::string summary;
};

/// Sorted by name.
std::vector<PresetInfo> list_presets();
LadderScheme preset(std::string_view name);

/// Waists (w, w/sqrt(2), w) that make Omega1(r)Omega3(r)/Omega2(r) independent
/// of r. Throws UnsupportedSchemeError unless the scheme has three steps.
std::array<double, 3> waists_for_uniform_rabi(const LadderScheme& scheme, double w);

/// Beam waists used for a spot radius w: the uniform-Rabi arrangement for a
/// three-step ladder, all steps equal to w otherwise.
LadderScheme with_spot_radius(const LadderScheme& scheme, double w);

}  // namespace ladder
