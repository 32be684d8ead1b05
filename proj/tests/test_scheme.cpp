#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "ladder/config.hpp"
#include "ladder/effective.hpp"
#include "ladder/errors.hpp"
#include "ladder/scheme.hpp"
#include "ladder/units.hpp"

using namespace ladder;
using doctest::Approx;

TEST_CASE("three-photon preset carries the quoted parameters") {
  const auto s = preset_three_photon();
  REQUIRE(s.size() == 4);
  CHECK(units::to_mhz(s.transition(0).peak_rabi) == Approx(126.5));
  CHECK(units::to_mhz(s.transition(1).peak_rabi) == Approx(4000.0));
  CHECK(units::to_mhz(s.transition(2).peak_rabi) == Approx(126.5));
  for (const auto& t : s.transitions()) {
    CHECK(t.detuning == 0.0);
    CHECK_FALSE(t.waist.has_value());
  }
  CHECK(std::isinf(s.level(0).lifetime));
  CHECK(s.level(1).lifetime == Approx(26.2e-9));
  CHECK(s.level(2).lifetime == Approx(45e-9));
  CHECK(s.level(3).lifetime == Approx(190e-6));
  // 126.5^2 / 4000 MHz
  CHECK(units::to_mhz(nominal_rabi(s)) == Approx(4.0006).epsilon(1e-4));
}

TEST_CASE("two-photon preset carries the quoted parameters") {
  const auto s = preset_two_photon();
  REQUIRE(s.size() == 3);
  CHECK(units::to_mhz(s.transition(0).peak_rabi) == Approx(160.0));
  CHECK(units::to_mhz(s.transition(1).peak_rabi) == Approx(50.0));
  CHECK(units::to_mhz(s.transition(0).detuning) == Approx(1000.0));
  CHECK(s.level(1).lifetime == Approx(120e-9));
  CHECK(s.level(2).lifetime == Approx(152e-6));
  // Second step sits on the light-shifted two-photon resonance.
  CHECK(units::to_mhz(s.total_detuning()) == Approx((50.0 * 50.0 - 160.0 * 160.0) / 4000.0));
  CHECK(units::to_mhz(nominal_rabi(s)) == Approx(4.0));
}

TEST_CASE("construction validates counts and physical values") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(LadderScheme({{"g", inf}}, {}), ConfigError);
  CHECK_THROWS_AS(LadderScheme({{"g", inf}, {"e", 1e-6}}, {}), ConfigError);
  CHECK_THROWS_AS(LadderScheme({{"g", inf}, {"e", 1e-6}}, {{1.0, 0.0, {}}, {1.0, 0.0, {}}}), ConfigError);
  CHECK_THROWS_AS(LadderScheme({{"g", inf}, {"e", -1e-6}}, {{1.0, 0.0, {}}}), ConfigError);
  CHECK_THROWS_AS(LadderScheme({{"g", inf}, {"e", 0.0}}, {{1.0, 0.0, {}}}), ConfigError);
  CHECK_THROWS_AS(LadderScheme({{"g", inf}, {"e", 1e-6}}, {{-1.0, 0.0, {}}}), ConfigError);
  CHECK_THROWS_AS(LadderScheme({{"g", inf}, {"e", 1e-6}}, {{1.0, 0.0, 0.0}}), ConfigError);
  CHECK_NOTHROW(LadderScheme({{"g", inf}, {"e", inf}}, {{0.0, 0.0, inf}}));
  CHECK_THROWS_AS(AtomCloud(0.0), ConfigError);
  CHECK_THROWS_AS(AtomCloud(1e-6, -1e-6), ConfigError);
}

TEST_CASE("local Rabi frequency follows the Gaussian profile") {
  const Transition t{1.0, 0.0, 2e-6};
  CHECK(t.rabi_at(0.0) == 1.0);
  CHECK(t.rabi_at(2e-6) == Approx(std::exp(-1.0)));
  const Transition unset{1.0, 0.0, std::nullopt};
  CHECK(unset.rabi_at(0.0) == 1.0);
  CHECK_THROWS_AS(unset.rabi_at(1e-6), ConfigError);
  const Transition wide{1.0, 0.0, std::numeric_limits<double>::infinity()};
  CHECK(wide.rabi_at(5e-6) == 1.0);
}

TEST_CASE("uniform-Rabi waists") {
  const auto s = preset_three_photon();
  const auto w1 = waists_for_uniform_rabi(s, 1e-6);
  CHECK(w1[0] == Approx(1e-6));
  CHECK(w1[1] == Approx(0.7071e-6).epsilon(1e-4));
  CHECK(w1[2] == Approx(1e-6));
  const auto w2 = waists_for_uniform_rabi(s, 2e-6);
  CHECK(w2[1] == Approx(1.4142e-6).epsilon(1e-4));

  CHECK_THROWS_AS(waists_for_uniform_rabi(preset_two_photon(), 1e-6), UnsupportedSchemeError);
  CHECK_THROWS_AS(waists_for_uniform_rabi(s, 0.0), ConfigError);

  SUBCASE("reduced Rabi frequency is position independent") {
    const double w = 1.5e-6;
    const auto focused = with_spot_radius(s, w);
    const double on_axis = nominal_rabi(focused, 0.0);
    for (const double r : {0.5 * w, w, 2.0 * w})
      CHECK(std::abs(nominal_rabi(focused, r) / on_axis - 1.0) < 1e-14);
  }

  SUBCASE("product profile equals middle profile on a grid") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> wdist(0.2e-6, 20e-6);
    for (int trial = 0; trial < 20; ++trial) {
      const double w = wdist(rng);
      const auto ws = waists_for_uniform_rabi(s, w);
      for (int i = 0; i <= 40; ++i) {
        const double r = 3.0 * w * i / 40.0;
        const double outer = std::exp(-r * r / (ws[0] * ws[0])) * std::exp(-r * r / (ws[2] * ws[2]));
        const double middle = std::exp(-r * r / (ws[1] * ws[1]));
        CHECK(outer == Approx(middle).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("spot radius on a two-step ladder sets equal waists") {
  const auto s = with_spot_radius(preset_two_photon(), 2e-6);
  CHECK(*s.transition(0).waist == 2e-6);
  CHECK(*s.transition(1).waist == 2e-6);
}

TEST_CASE("presets are listed sorted and resolvable") {
  const auto p = list_presets();
  REQUIRE(p.size() == 2);
  CHECK(p[0].name == "three_photon_rb87");
  CHECK(p[1].name == "two_photon_rb87");
  for (const auto& info : p) CHECK_NOTHROW(preset(info.name));
  CHECK_THROWS_AS(preset("cesium"), ConfigError);
}

TEST_CASE("scheme survives a round trip through the config format") {
  for (const auto& s : {preset_three_photon(), preset_two_photon(), with_spot_radius(preset_three_photon(), 2e-6)}) {
    const auto back = scheme_from_json(scheme_to_json(s));
    CHECK(back == s);
  }
  // Randomized schemes built from config-unit values.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(u(rng) * 4);
    std::vector<Level> levels{{"g", std::numeric_limits<double>::infinity()}};
    for (std::size_t j = 1; j < n; ++j) levels.push_back({"l" + std::to_string(j), units::us(1e-3 + 500 * u(rng))});
    std::vector<Transition> ts;
    for (std::size_t j = 0; j + 1 < n; ++j)
      ts.push_back({units::mhz(5000 * u(rng)), units::mhz(200 * (u(rng) - 0.5)),
                    u(rng) < 0.3 ? std::nullopt : std::optional<double>(units::um(0.1 + 10 * u(rng)))});
    const LadderScheme s(levels, ts);
    CHECK(scheme_from_json(scheme_to_json(s)) == s);
  }
}
