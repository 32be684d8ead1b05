#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>

namespace ladder {

struct OdeSettings {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = 0.0;  // 0: unbounded
  double initial_step = 0.0;  // 0: automatic
  std::size_t max_steps = 50'000'000;
};

/// dy/dt = f(t, y) for a complex state vector.
using ComplexRhs = std::function<void(double, const Eigen::VectorXcd&, Eigen::VectorXcd&)>;

/// Adaptive Dormand-Prince 5(4) integration from times.front() through every
/// entry of `times` (ascending). Row i of the result holds y(times[i]); the
/// integrator lands exactly on each output time.
Eigen::MatrixXcd integrate_dopri(const ComplexRhs& rhs, const Eigen::VectorXcd& y0, double t0,
                                 std::span<const double> times, const OdeSettings& settings);

}  // namespace ladder
