#include "ladder/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "ladder/errors.hpp"
#include "ladder/ode.hpp"

namespace ladder {

using cd = std::complex<double>;

namespace {

void check_inputs(const RotatingFrameHamiltonian& h, const Eigen::VectorXcd& initial,
                  std::span<const double> times) {
  if (h.dimension() == 0 || h.matrix.cols() != h.dimension())
    throw ConfigError("Hamiltonian must be a non-empty square matrix");
  if (initial.size() != h.dimension())
    throw ConfigError("initial state dimension does not match the Hamiltonian");
  if (initial.squaredNorm() > 1.0 + 1e-12) throw ConfigError("initial state norm exceeds one");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0)
      throw ConfigError("times must be finite and non-negative");
    if (i > 0 && times[i] < times[i - 1]) throw ConfigError("times must be ascending");
  }
}

AmplitudeTrajectory make_trajectory(std::span<const double> times, Eigen::MatrixXcd amplitudes,
                                    bool fallback) {
  AmplitudeTrajectory out;
  out.times.assign(times.begin(), times.end());
  out.populations = amplitudes.cwiseAbs2();
  out.amplitudes = std::move(amplitudes);
  out.fallback = fallback;
  return out;
}

}  // namespace

double RotatingFrameHamiltonian::max_rabi() const {
  double m = 0.0;
  for (Eigen::Index j = 0; j + 1 < dimension(); ++j) m = std::max(m, 2.0 * std::abs(matrix(j, j + 1)));
  return m;
}

std::vector<double> AmplitudeTrajectory::population(Eigen::Index level) const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = populations(static_cast<Eigen::Index>(i), level);
  return out;
}

RotatingFrameHamiltonian build_hamiltonian(const LadderScheme& scheme, double r) {
  if (!std::isfinite(r) || r < 0.0) throw ConfigError("radial position must be finite and >= 0");
  const auto n = static_cast<Eigen::Index>(scheme.size());
  RotatingFrameHamiltonian h{Eigen::MatrixXcd::Zero(n, n)};
  double cumulative = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j > 0) cumulative += scheme.transition(static_cast<std::size_t>(j - 1)).detuning;
    const double gamma = scheme.level(static_cast<std::size_t>(j)).decay_rate();
    h.matrix(j, j) = cd(-cumulative, -0.5 * gamma);
  }
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    const double half = 0.5 * scheme.transition(static_cast<std::size_t>(j)).rabi_at(r);
    h.matrix(j, j + 1) = half;
    h.matrix(j + 1, j) = half;
  }
  return h;
}

AmplitudeTrajectory propagate(const RotatingFrameHamiltonian& h, const Eigen::VectorXcd& initial,
                              std::span<const double> times, const PropagatorOptions& options) {
  check_inputs(h, initial, times);
  if (options.force_ode) return propagate_ode(h, initial, times, options);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(h.matrix, true);
  if (es.info() != Eigen::Success) return propagate_ode(h, initial, times, options);
  const Eigen::MatrixXcd& v = es.eigenvectors();
  const Eigen::VectorXcd& lambda = es.eigenvalues();

  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  const double cond = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
  if (!(cond <= options.condition_limit)) return propagate_ode(h, initial, times, options);

  const Eigen::VectorXcd coef = v.fullPivLu().solve(initial);
  Eigen::MatrixXcd amps(static_cast<Eigen::Index>(times.size()), h.dimension());
  Eigen::VectorXcd phased(h.dimension());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    for (Eigen::Index k = 0; k < lambda.size(); ++k)
      phased[k] = std::exp(cd(0.0, -1.0) * lambda[k] * t) * coef[k];
    amps.row(static_cast<Eigen::Index>(i)) = (v * phased).transpose();
  }
  return make_trajectory(times, std::move(amps), false);
}

AmplitudeTrajectory propagate_ode(const RotatingFrameHamiltonian& h,
                                  const Eigen::VectorXcd& initial, std::span<const double> times,
                                  const PropagatorOptions& options) {
  check_inputs(h, initial, times);
  OdeSettings settings;
  settings.rtol = options.rtol;
  settings.atol = options.atol;
  const double t_end = times.empty() ? 0.0 : times.back();
  double ceiling = t_end > 0.0 ? t_end / 100.0 : 0.0;
  if (const double m = h.max_rabi(); m > 0.0)
    ceiling = ceiling > 0.0 ? std::min(ceiling, 1.0 / (10.0 * m)) : 1.0 / (10.0 * m);
  settings.max_step = ceiling;

  const Eigen::MatrixXcd minus_i_h = cd(0.0, -1.0) * h.matrix;
  const ComplexRhs rhs = [&minus_i_h](double, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
    dy.noalias() = minus_i_h * y;
  };
  auto amps = integrate_dopri(rhs, initial, 0.0, times, settings);
  return make_trajectory(times, std::move(amps), true);
}

std::vector<double> uniform_grid(double t_end, std::size_t n_points) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be positive");
  if (n_points < 2) throw ConfigError("a time grid needs at least two points");
  std::vector<double> out(n_points);
  const double step = t_end / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) out[i] = step * static_cast<double>(i);
  out.back() = t_end;
  return out;
}

Eigen::VectorXcd ground_state(Eigen::Index dimension) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dimension);
  c[0] = 1.0;
  return c;
}

AmplitudeTrajectory rabi_trace(const LadderScheme& scheme, double r, double t_end,
                               std::size_t n_points, const PropagatorOptions& options) {
  const auto times = uniform_grid(t_end, n_points);
  const auto h = build_hamiltonian(scheme, r);
  return propagate(h, ground_state(h.dimension()), times, options);
}

}  // namespace ladder
