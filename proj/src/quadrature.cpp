#include "ladder/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "ladder/errors.hpp"

namespace ladder {

RadialQuadrature gauss_laguerre(std::size_t n) {
  if (n == 0) throw ConfigError("quadrature needs at least one node");
  const auto m = static_cast<Eigen::Index>(n);
  // Jacobi matrix of the monic Laguerre recurrence: a_k = 2k + 1, b_k = k.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    jacobi(k, k) = 2.0 * static_cast<double>(k) + 1.0;
    if (k + 1 < m) {
      jacobi(k, k + 1) = static_cast<double>(k + 1);
      jacobi(k + 1, k) = static_cast<double>(k + 1);
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  if (es.info() != Eigen::Success) throw NumericalError("Gauss-Laguerre eigensolver failed");

  RadialQuadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (Eigen::Index k = 0; k < m; ++k) {
    q.nodes[static_cast<std::size_t>(k)] = es.eigenvalues()[k];
    const double v0 = es.eigenvectors()(0, k);
    q.weights[static_cast<std::size_t>(k)] = v0 * v0;  // mu_0 = 1
  }
  return q;
}

RadialQuadrature cloud_quadrature(const AtomCloud& cloud, std::size_t n) {
  auto q = gauss_laguerre(n);
  for (auto& s : q.nodes) s = cloud.radius * std::sqrt(0.5 * s);
  return q;
}

}  // namespace ladder
