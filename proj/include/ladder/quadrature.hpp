#pragma once

#include <cstddef>
#include <vector>

#include "ladder/scheme.hpp"

namespace ladder {

/// Nodes and weights of an averaging rule; weights sum to one.
struct RadialQuadrature {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Laguerre rule for integrals of f(s) e^{-s} over [0, inf),
/// nodes ascending (Golub-Welsch).
RadialQuadrature gauss_laguerre(std::size_t n);

/// Radial rule for averaging over a coaxial Gaussian atom cloud. The density
/// (2/pi a^2) exp(-2 r^2/a^2) maps to the Laguerre weight under s = 2 r^2/a^2,
/// so node k sits at r = a sqrt(s_k / 2).
RadialQuadrature cloud_quadrature(const AtomCloud& cloud, std::size_t n);

/// Run fn(i) for i in [0, n) on up to `threads` workers (0: hardware
/// concurrency). Each index is processed exactly once; callers write results
/// into per-index slots so the outcome does not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn);

}  // namespace ladder

#include "ladder/detail/parallel.hpp"
