#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "ladder/scheme.hpp"

namespace ladder {

/// Constant-coefficient rotating-frame Hamiltonian (rad/s).
///
/// Tridiagonal: H(j, j+1) = H(j+1, j) = Omega_j(r)/2 and
/// H(j, j) = -sum_{k<j} delta_k - i/(2 tau_j).
struct RotatingFrameHamiltonian {
  Eigen::MatrixXcd matrix;

  Eigen::Index dimension() const { return matrix.rows(); }
  /// Largest |H(j, j+1)| times two, i.e. the fastest local Rabi frequency.
  double max_rabi() const;
};

/// Level amplitudes sampled on a time grid. Row i of `amplitudes` and
/// `populations` belongs to `times[i]`. Spatially averaged traces carry
/// populations only.
struct AmplitudeTrajectory {
  std::vector<double> times;        // s
  Eigen::MatrixXcd amplitudes;      // times x levels, may be empty
  Eigen::MatrixXd populations;      // times x levels
  bool fallback = false;            // true when the ODE integrator was used

  std::size_t size() const { return times.size(); }
  Eigen::Index levels() const { return populations.cols(); }
  double norm(std::size_t i) const { return populations.row(static_cast<Eigen::Index>(i)).sum(); }
  /// Population of `level` over time.
  std::vector<double> population(Eigen::Index level) const;
};

struct PropagatorOptions {
  /// Eigenvector-matrix condition number above which propagation falls back
  /// to the adaptive integrator.
  double condition_limit = 1e8;
  double rtol = 1e-10;
  double atol = 1e-12;
  bool force_ode = false;
};

RotatingFrameHamiltonian build_hamiltonian(const LadderScheme& scheme, double r);

/// C(t) = exp(-i H t) C(0) via eigendecomposition; falls back to the adaptive
/// Runge-Kutta integrator for an ill-conditioned eigenbasis.
AmplitudeTrajectory propagate(const RotatingFrameHamiltonian& h, const Eigen::VectorXcd& initial,
                              std::span<const double> times, const PropagatorOptions& options = {});

/// Same contract as propagate(), always integrating dC/dt = -i H C with the
/// Dormand-Prince 5(4) integrator.
AmplitudeTrajectory propagate_ode(const RotatingFrameHamiltonian& h,
                                  const Eigen::VectorXcd& initial, std::span<const double> times,
                                  const PropagatorOptions& options = {});

/// Ground-state start, uniform grid of n_points over [0, t_end].
AmplitudeTrajectory rabi_trace(const LadderScheme& scheme, double r, double t_end,
                               std::size_t n_points, const PropagatorOptions& options = {});

std::vector<double> uniform_grid(double t_end, std::size_t n_points);
Eigen::VectorXcd ground_state(Eigen::Index dimension);

}  // namespace ladder
