#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ladder/effective.hpp"
#include "ladder/errors.hpp"
#include "ladder/propagator.hpp"
#include "ladder/scheme.hpp"
#include "ladder/spatial.hpp"
#include "ladder/units.hpp"

using namespace ladder;
using doctest::Approx;

TEST_CASE("on-axis decay constant of the three-photon preset") {
  const auto eff = adiabatic_eliminate(preset_three_photon(), 0.0);
  CHECK(eff.decay_total == Approx(6.56e4).epsilon(0.02));
  CHECK(eff.reduced_rabi == Approx(units::mhz(126.5 * 126.5 / 4000)));
  CHECK(eff.gamma_bar == Approx(0.5 * (1 / 26.2e-9 + 1 / 45e-9)));
  CHECK(eff.gamma1 + eff.gamma4 == Approx(eff.decay_total));
  const auto ph = first_peak_height(eff);
  CHECK(ph.exact == Approx(0.9959).epsilon(0.0005));
  CHECK(std::abs(ph.exact - ph.linearized) < 1e-5);
  CHECK(ph.well_resolved);
}

TEST_CASE("two-photon light shift and Rabi frequency") {
  const auto tp = two_photon_effective(units::mhz(160), units::mhz(50), units::mhz(1000));
  CHECK(units::to_mhz(tp.light_shift) == Approx(-5.775));
  CHECK(units::to_mhz(tp.reduced_rabi) == Approx(4.0));
  // 1 GHz is not ten times the 160 MHz first-step drive.
  CHECK_FALSE(tp.far_detuned);
  CHECK(two_photon_effective(units::mhz(160), units::mhz(50), units::mhz(2000)).far_detuned);
  CHECK_THROWS_AS(two_photon_effective(1.0, 1.0, 0.0), NumericalError);
}

TEST_CASE("light shift is antisymmetric and homogeneous") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 100.0);
  for (int i = 0; i < 100; ++i) {
    const double a = units::mhz(u(rng)), b = units::mhz(u(rng)), d = units::mhz(10 * u(rng));
    const double s = two_photon_effective(a, b, d).light_shift;
    CHECK(two_photon_effective(b, a, d).light_shift == Approx(-s));
    CHECK(two_photon_effective(2 * a, 2 * b, d).light_shift == Approx(4 * s));
    CHECK(two_photon_effective(a, b, -d).light_shift == Approx(-s));
  }
}

TEST_CASE("effective population is symmetric in the detuning") {
  auto s = preset_three_photon();
  for (const double d : {0.5, 2.0, 7.0}) {
    const auto plus = adiabatic_eliminate(s.with_detuning(1, units::mhz(d)), 0.0);
    const auto minus = adiabatic_eliminate(s.with_detuning(1, units::mhz(-d)), 0.0);
    for (const double t : {0.05e-6, 0.1e-6, 0.3e-6})
      CHECK(analytic_population(plus, t) == Approx(analytic_population(minus, t)).epsilon(1e-14));
  }
}

TEST_CASE("validity report for the preset") {
  const auto v = validity_report(preset_three_photon(), 0.0);
  CHECK(v.rabi1_over_rabi2 == Approx(0.0316).epsilon(0.01));
  CHECK(v.rabi3_over_rabi2 == Approx(0.0316).epsilon(0.01));
  CHECK(v.elimination_valid);
  CHECK(v.to_json().contains("elimination_valid"));

  const auto focused = with_spot_radius(preset_three_photon(), 2e-6);
  const auto off = validity_report(focused, 5e-6);
  CHECK(off.rabi1_over_rabi2 == Approx(126.5 / 4000 * std::exp(25.0 / 4)).epsilon(1e-10));
  CHECK(off.rabi1_over_rabi2 == Approx(16.4).epsilon(0.01));
  CHECK_FALSE(off.elimination_valid);
}

TEST_CASE("vanishing outer couplings give zero ratios") {
  const auto s = preset_three_photon().with_rabi(0, 0.0).with_rabi(2, 0.0);
  const auto v = validity_report(s, 0.0);
  CHECK(v.rabi1_over_rabi2 == 0.0);
  CHECK(v.rabi3_over_rabi2 == 0.0);
  CHECK(v.gamma1_over_rabi == 0.0);
  CHECK(v.gamma4_over_rabi == 0.0);
  CHECK(v.elimination_valid);
}

TEST_CASE("elimination error cases") {
  CHECK_THROWS_AS(adiabatic_eliminate(preset_three_photon().with_rabi(1, 0.0), 0.0), NumericalError);
  CHECK_THROWS_AS(adiabatic_eliminate(preset_two_photon(), 0.0), UnsupportedSchemeError);
  const auto zero = adiabatic_eliminate(preset_three_photon().with_rabi(0, 0.0), 0.0);
  CHECK_THROWS_AS(first_peak_height(zero), NumericalError);
}

TEST_CASE("analytic and full populations agree on axis") {
  const auto s = preset_three_photon();
  const auto eff = adiabatic_eliminate(s, 0.0);
  const auto tr = rabi_trace(s, 0.0, 1e-6, 4001);
  const auto deviation = [&](double t_max) {
    double worst = 0.0;
    for (std::size_t i = 0; i < tr.size() && tr.times[i] <= t_max; ++i)
      worst = std::max(worst, std::abs(tr.populations(static_cast<Eigen::Index>(i), 3) - analytic_population(eff, tr.times[i])));
    return worst;
  };
  CHECK(deviation(0.5e-6) < 0.01);
  // The full period is longer by O((Omega1/Omega2)^2); over 1 us the phase
  // drift lifts the deviation to about 0.011.
  CHECK(deviation(1e-6) < 0.012);
  const auto n4 = tr.population(3);
  const auto first = locate_maximum(tr.times, n4, 0.25e-6, true).time;
  std::vector<double> late_t(tr.times.begin() + 3000, tr.times.end());
  std::vector<double> late_n(n4.begin() + 3000, n4.end());
  const auto fourth = locate_maximum(late_t, late_n, 1e-6, true).time;
  const double period = (fourth - first) / 3;
  CHECK(period > 0.25e-6);
  CHECK(period == Approx(0.25e-6).epsilon(0.002));
  // Intermediate levels stay nearly empty.
  CHECK(tr.populations.col(1).maxCoeff() < 0.01);
  CHECK(tr.populations.col(2).maxCoeff() < 0.01);
}

TEST_CASE("nominal Rabi frequency by ladder length") {
  const double inf = std::numeric_limits<double>::infinity();
  const LadderScheme two({{"g", inf}, {"e", inf}}, {{3.0, 0.0, std::nullopt}});
  CHECK(nominal_rabi(two) == 3.0);
  CHECK(nominal_rabi(preset_two_photon()) == Approx(units::mhz(4.0)));
  CHECK(nominal_rabi(preset_three_photon()) == Approx(units::mhz(126.5 * 126.5 / 4000)));
}
