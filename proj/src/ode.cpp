#include "ladder/ode.hpp"

#include <algorithm>
#include <cmath>

#include "ladder/errors.hpp"

namespace ladder {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// Difference between the 5th- and 4th-order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

double error_norm(const Eigen::VectorXcd& err, const Eigen::VectorXcd& y0,
                  const Eigen::VectorXcd& y1, const OdeSettings& s) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double scale = s.atol + s.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double q = std::abs(err[i]) / scale;
    sum += q * q;
  }
  return std::sqrt(sum / static_cast<double>(err.size()));
}

double initial_step(const ComplexRhs& f, double t0, const Eigen::VectorXcd& y0,
                    const Eigen::VectorXcd& f0, const OdeSettings& s) {
  const auto scaled_norm = [&](const Eigen::VectorXcd& v) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double q = std::abs(v[i]) / (s.atol + s.rtol * std::abs(y0[i]));
      sum += q * q;
    }
    return std::sqrt(sum / static_cast<double>(v.size()));
  };
  const double d0 = scaled_norm(y0);
  const double d1 = scaled_norm(f0);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  if (s.max_step > 0) h0 = std::min(h0, s.max_step);
  Eigen::VectorXcd y1 = y0 + h0 * f0;
  Eigen::VectorXcd f1(y0.size());
  f(t0 + h0, y1, f1);
  const double d2 = scaled_norm(f1 - f0) / h0;
  const double h1 = std::max(d1, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                              : std::pow(0.01 / std::max(d1, d2), 1.0 / 5);
  double h = std::min(100 * h0, h1);
  if (s.max_step > 0) h = std::min(h, s.max_step);
  return h;
}

}  // namespace

Eigen::MatrixXcd integrate_dopri(const ComplexRhs& f, const Eigen::VectorXcd& y0, double t0,
                                 std::span<const double> times, const OdeSettings& s) {
  const Eigen::Index n = y0.size();
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(times.size()), n);
  if (times.empty()) return out;

  Eigen::VectorXcd y = y0, ynew(n), tmp(n), err(n);
  Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  double t = t0;
  f(t, y, k1);
  double h = s.initial_step > 0 ? s.initial_step : initial_step(f, t, y, k1, s);
  std::size_t steps = 0;

  for (std::size_t idx = 0; idx < times.size(); ++idx) {
    const double target = times[idx];
    if (target < t) throw NumericalError("output times must be ascending");
    while (t < target) {
      if (++steps > s.max_steps) throw NumericalError("ODE integrator exceeded step budget");
      if (s.max_step > 0) h = std::min(h, s.max_step);
      double hs = h;
      bool last = false;
      if (t + hs >= target || target - (t + hs) < 1e-12 * std::abs(target)) {
        hs = target - t;
        last = true;
      }

      tmp = y + hs * (a21 * k1);
      f(t + c2 * hs, tmp, k2);
      tmp = y + hs * (a31 * k1 + a32 * k2);
      f(t + c3 * hs, tmp, k3);
      tmp = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
      f(t + c4 * hs, tmp, k4);
      tmp = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      f(t + c5 * hs, tmp, k5);
      tmp = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      f(t + hs, tmp, k6);
      ynew = y + hs * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
      f(t + hs, ynew, k7);
      err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      const double en = error_norm(err, y, ynew, s);
      if (!std::isfinite(en)) throw NumericalError("ODE integrator produced non-finite state");
      const double factor = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      if (en <= 1.0) {
        t = last ? target : t + hs;
        y = ynew;
        k1 = k7;  // first-same-as-last
        // A step shortened to hit an output time does not shrink the proposal.
        h = last ? std::max(h, hs * factor) : hs * factor;
      } else {
        h = hs * factor;
        if (h <= std::abs(t) * 1e-15) throw NumericalError("ODE integrator step size underflow");
      }
    }
    out.row(static_cast<Eigen::Index>(idx)) = y.transpose();
  }
  return out;
}

}  // namespace ladder
