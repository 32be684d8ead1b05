#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "ladder/config.hpp"
#include "ladder/errors.hpp"
#include "ladder/scheme.hpp"

using namespace ladder;
using doctest::Approx;

namespace {

std::string error_of(const std::string& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

const char* kExplicit = R"({
  "experiment": "rabi",
  "scheme": {
    "levels": [
      {"label": "5s", "lifetime_us": "inf"},
      {"label": "5p", "lifetime_us": 0.0262},
      {"label": "6s", "lifetime_us": 0.045},
      {"label": "ns", "lifetime_us": 190}
    ],
    "transitions": [
      {"rabi_mhz": 126.5, "detuning_mhz": 0},
      {"rabi_mhz": 4000, "detuning_mhz": 0},
      {"rabi_mhz": 126.5, "detuning_mhz": 0}
    ]
  },
  "rabi": {"t_end_us": 0.5, "points": 11}
})";

}  // namespace

TEST_CASE("preset name expands to the full scheme") {
  const auto c = parse_config(R"({"experiment": "rabi", "scheme": "three_photon_rb87"})");
  CHECK(c.experiment == Experiment::rabi);
  CHECK(c.preset_name == "three_photon_rb87");
  CHECK(c.scheme.fingerprint() == preset_three_photon().fingerprint());
  const auto& g = std::get<RabiGrid>(c.grid);
  CHECK(g.points == 1001);
}

TEST_CASE("explicit scheme converts config units") {
  const auto c = parse_config(kExplicit);
  CHECK(c.scheme.transition(0).peak_rabi == Approx(2 * std::numbers::pi * 126.5e6));
  CHECK(c.scheme.level(1).lifetime == Approx(26.2e-9));
  CHECK(std::isinf(c.scheme.level(0).lifetime));
  CHECK(c.scheme.level(1).label == "5p");
  CHECK(c.scheme.fingerprint() == preset_three_photon().fingerprint());
  const auto& g = std::get<RabiGrid>(c.grid);
  CHECK(g.t_end == Approx(0.5e-6));
  CHECK(g.points == 11);
}

TEST_CASE("beam waist applies uniform-Rabi waists") {
  const auto c = parse_config(R"({"experiment": "coverage", "scheme": "three_photon_rb87",
      "beam_waist_um": 2, "cloud": {"radius_um": 1}, "coverage": {"xi": [1, 2, 4]}})");
  CHECK(*c.scheme.transition(1).waist == Approx(std::sqrt(2.0) * 1e-6));
  CHECK_FALSE(c.base_scheme.has_waists());
  CHECK(std::get<CoverageGrid>(c.grid).xi.size() == 3);
}

TEST_CASE("configuration errors name the offending field") {
  CHECK(error_of(R"({"scheme": "three_photon_rb87"})").find("$.experiment") != std::string::npos);
  CHECK(error_of(R"({"experiment": "rabi", "scheme": "three_photon_rb87", "colour": 1})")
            .find("$.colour") != std::string::npos);
  CHECK(error_of(R"({"experiment": "warp", "scheme": "three_photon_rb87"})").find("$.experiment") !=
        std::string::npos);
  CHECK(error_of(R"({"experiment": "rabi", "scheme": "cesium"})").find("$.scheme") != std::string::npos);

  std::string negative = kExplicit;
  negative.replace(negative.find("0.0262"), 6, "-1.0");
  CHECK(error_of(negative).find("$.scheme.levels[1].lifetime_us") != std::string::npos);

  std::string zero_waist = kExplicit;
  const std::string middle = R"("rabi_mhz": 4000, "detuning_mhz": 0)";
  zero_waist.replace(zero_waist.find(middle), middle.size(), middle + R"(, "waist_um": 0)");
  CHECK(error_of(zero_waist).find("$.scheme.transitions[1].waist_um") != std::string::npos);

  const auto parse = error_of("{\n  \"experiment\": \"rabi\",\n  \"scheme\": ,\n}");
  CHECK(parse.find("line 3") != std::string::npos);

  CHECK(error_of(R"({"experiment": "rabi", "scheme": "three_photon_rb87", "spectrum": {}})")
            .find("$.spectrum") != std::string::npos);
  CHECK(error_of(R"({"experiment": "coverage", "scheme": "three_photon_rb87", "coverage": {"xi": [1]}})")
            .find("$.cloud") != std::string::npos);
  CHECK(error_of(R"({"experiment": "crosstalk", "scheme": "three_photon_rb87", "cloud": {"radius_um": 1, "center_offset_um": 5}})")
            .find("waist") != std::string::npos);
  CHECK(error_of(R"({"experiment": "spectrum", "scheme": "three_photon_rb87",
      "spectrum": {"swept_transition": 4, "from_mhz": -1, "to_mhz": 1, "step_mhz": 0.5}})")
            .find("swept_transition") != std::string::npos);
  CHECK(error_of(R"({"experiment": "coverage", "scheme": "three_photon_rb87", "cloud": {"radius_um": 1},
      "coverage": {"xi": [2, 1]}})").find("$.coverage.xi[1]") != std::string::npos);
}

TEST_CASE("spectrum grid values") {
  const auto c = parse_config(R"({"experiment": "spectrum", "scheme": "three_photon_rb87",
      "spectrum": {"swept_transition": 3, "from_mhz": -1, "to_mhz": 1, "step_mhz": 0.5}})");
  const auto& g = std::get<SpectrumGrid>(c.grid);
  CHECK(g.swept_transition == 2);
  const auto v = g.values();
  REQUIRE(v.size() == 5);
  CHECK(v.front() == Approx(-2 * std::numbers::pi * 1e6));
  CHECK(v.back() == Approx(2 * std::numbers::pi * 1e6));
}

TEST_CASE("resolved config parses back to itself") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const char* experiments[] = {"rabi", "effective", "spectrum", "coverage", "crosstalk"};
  for (int trial = 0; trial < 100; ++trial) {
    nlohmann::json doc;
    const std::string e = experiments[trial % 5];
    doc["experiment"] = e;
    doc["scheme"] = trial % 2 ? "three_photon_rb87" : "two_photon_rb87";
    doc["beam_waist_um"] = 0.5 + 10 * u(rng);
    doc["cloud"] = {{"radius_um", 0.1 + 3 * u(rng)}, {"center_offset_um", e == "crosstalk" ? 1 + 5 * u(rng) : 0.0}};
    doc["quadrature"] = {{"radial_nodes", 8 + trial % 40}, {"threads", trial % 3}};
    if (e == "rabi") doc["rabi"] = {{"t_end_us", 0.1 + u(rng)}, {"points", 3 + trial}};
    if (e == "effective") doc["effective"] = {{"r_um", 2 * u(rng)}, {"t_end_us", 0.1 + u(rng)}};
    if (e == "spectrum")
      doc["spectrum"] = {{"swept_transition", 1 + trial % 2}, {"from_mhz", -10 * u(rng) - 1},
                         {"to_mhz", 10 * u(rng) + 1}, {"step_mhz", 0.1 + 0.3 * u(rng)}, {"t_int_us", 0.01 + u(rng)}};
    if (e == "coverage") doc["coverage"] = {{"xi", {0.5 + u(rng), 2 + u(rng), 5 + u(rng)}}};
    if (e == "crosstalk") doc["crosstalk"] = {{"t_end_us", 0.05 + u(rng)}};

    const auto first = parse_config(doc.dump());
    const auto resolved = resolved_config(first);
    const auto second = parse_config(resolved.dump());
    CAPTURE(doc.dump());
    CHECK(resolved_config(second) == resolved);
    CHECK(second.scheme == first.scheme);
    CHECK(second.cloud->radius == first.cloud->radius);
  }
}
