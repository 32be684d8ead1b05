#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ladder/errors.hpp"
#include "ladder/quadrature.hpp"
#include "ladder/spatial.hpp"
#include "oracles.hpp"

using namespace ladder;
using doctest::Approx;

TEST_CASE("Gauss-Laguerre reproduces the moments k!") {
  for (const std::size_t n : {8u, 16u, 32u, 64u}) {
    const auto q = gauss_laguerre(n);
    REQUIRE(q.size() == n);
    double factorial = 1.0;
    // Exact up to degree 2n - 1; the tiny far-tail weights limit high moments.
    for (std::size_t k = 0; k < std::min<std::size_t>(2 * n, 15); ++k) {
      if (k > 0) factorial *= static_cast<double>(k);
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) sum += q.weights[i] * std::pow(q.nodes[i], static_cast<double>(k));
      CAPTURE(n);
      CAPTURE(k);
      CHECK(sum == Approx(factorial).epsilon(1e-9));
    }
    for (std::size_t i = 1; i < n; ++i) CHECK(q.nodes[i] > q.nodes[i - 1]);
  }
  CHECK_THROWS(gauss_laguerre(0));
}

TEST_CASE("cloud quadrature integrates the density") {
  const AtomCloud cloud(1.3e-6);
  const auto q = cloud_quadrature(cloud, 32);
  double total = 0.0, second = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    total += q.weights[i];
    second += q.weights[i] * q.nodes[i] * q.nodes[i];
  }
  CHECK(total == Approx(1.0).epsilon(1e-12));
  // <r^2> = a^2 / 2 for the 1/e^2 radius a.
  CHECK(second == Approx(1.3e-6 * 1.3e-6 / 2).epsilon(1e-10));
}

TEST_CASE("density normalization and shape") {
  const AtomCloud cloud(1e-6);
  const double norm = oracle::simpson(
      [&](double r) { return atom_density(r, cloud) * 2 * std::numbers::pi * r; }, 0.0, 8e-6, 4000);
  CHECK(std::abs(norm - 1.0) < 1e-10);
  CHECK(atom_density(1e-6, cloud) == Approx(atom_density(0.0, cloud) * std::exp(-2.0)));
  CHECK(atom_density(0.0, cloud) * 1e-12 == Approx(0.6366).epsilon(1e-4));
  CHECK_THROWS_AS(atom_density(-1.0, cloud), ConfigError);
  CHECK_THROWS_AS(atom_density(0.0, AtomCloud(1e-6, 1e-6)), ConfigError);
}

TEST_CASE("atom spot estimate") {
  CHECK(estimate_atom_spot(10e-6, 10e-6, 1e-3) == Approx(1e-6));
  CHECK(estimate_atom_spot(3e-6, 1e-4, 1e-4) == Approx(3e-6));
  CHECK(estimate_atom_spot(10e-6, 2.5e-6, 1e-3) == Approx(0.5e-6));
  CHECK_THROWS_AS(estimate_atom_spot(0.0, 1.0, 1.0), ConfigError);
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(100, 3,
                               [](std::size_t i) {
                                 if (i == 42) throw NumericalError("boom");
                               }),
                  NumericalError);
}
