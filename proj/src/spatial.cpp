#include "ladder/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ladder/effective.hpp"
#include "ladder/errors.hpp"

namespace ladder {

namespace {

constexpr double kPi = std::numbers::pi;

struct Node {
  double r;
  double weight;
};

std::vector<Node> coaxial_nodes(const AtomCloud& cloud, std::size_t n) {
  if (n < 1) throw ConfigError("radial_nodes must be positive");
  const auto q = cloud_quadrature(cloud, n);
  std::vector<Node> nodes(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) nodes[k] = {q.nodes[k], q.weights[k]};
  return nodes;
}

// Polar rule centered on a displaced cloud: Gauss-Laguerre in radius times a
// trapezoid in azimuth. The beam sees each node at |d + x|.
std::vector<Node> displaced_nodes(const AtomCloud& cloud, std::size_t n_radial,
                                  std::size_t n_azimuthal) {
  if (n_azimuthal < 1) throw ConfigError("azimuthal_nodes must be positive");
  const auto q = cloud_quadrature(cloud, n_radial);
  const double d = cloud.center_offset;
  std::vector<Node> nodes;
  nodes.reserve(q.size() * n_azimuthal);
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double rho = q.nodes[k];
    for (std::size_t m = 0; m < n_azimuthal; ++m) {
      const double phi = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(n_azimuthal);
      const double r2 = d * d + rho * rho + 2.0 * d * rho * std::cos(phi);
      nodes.push_back({std::sqrt(std::max(0.0, r2)),
                       q.weights[k] / static_cast<double>(n_azimuthal)});
    }
  }
  return nodes;
}

// Weighted population average over nodes; the reduction runs in node order.
Eigen::MatrixXd average_populations(const LadderScheme& scheme, const std::vector<Node>& nodes,
                                    std::span<const double> times, const SpatialOptions& opt,
                                    bool* any_fallback = nullptr) {
  std::vector<Eigen::MatrixXd> per_node(nodes.size());
  std::vector<char> fell_back(nodes.size(), 0);
  const Eigen::VectorXcd c0 = ground_state(static_cast<Eigen::Index>(scheme.size()));
  parallel_for(nodes.size(), opt.threads, [&](std::size_t k) {
    const auto h = build_hamiltonian(scheme, nodes[k].r);
    auto traj = propagate(h, c0, times, opt.propagator);
    fell_back[k] = traj.fallback ? 1 : 0;
    per_node[k] = std::move(traj.populations);
  });
  Eigen::MatrixXd sum =
      Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(times.size()),
                            static_cast<Eigen::Index>(scheme.size()));
  for (std::size_t k = 0; k < nodes.size(); ++k) sum += nodes[k].weight * per_node[k];
  if (any_fallback)
    *any_fallback = std::any_of(fell_back.begin(), fell_back.end(), [](char c) { return c != 0; });
  return sum;
}

std::vector<double> last_column(const Eigen::MatrixXd& m) {
  std::vector<double> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) out[static_cast<std::size_t>(i)] = m(i, m.cols() - 1);
  return out;
}

// Fastest frequency in the on-axis Hamiltonian; sets the fine search step so
// the small fast ripple on top of the slow oscillation is resolved.
double fast_scale(const LadderScheme& scheme) {
  const auto h = build_hamiltonian(scheme, 0.0);
  double m = h.max_rabi();
  for (Eigen::Index j = 0; j < h.dimension(); ++j) m = std::max(m, std::abs(h.matrix(j, j).real()));
  return m;
}

// Coarse search on a uniform grid over [0, window_end], then a fine uniform
// grid around the coarse maximum, then parabolic refinement.
PeakEstimate search_peak(const LadderScheme& scheme, const std::vector<Node>& nodes,
                         double window_end, bool require_interior, const SpatialOptions& opt) {
  const auto coarse = uniform_grid(window_end, std::max<std::size_t>(opt.time_points, 3));
  const auto coarse_values = last_column(average_populations(scheme, nodes, coarse, opt));
  const auto first = locate_maximum(coarse, coarse_values, window_end, require_interior);
  const double h = coarse[1] - coarse[0];
  if (!require_interior && first.time >= window_end) return first;

  const double half_width = std::max(2.0 * h, 0.01 * window_end);
  const double lo = std::max(0.0, first.time - half_width);
  const double hi = std::min(window_end, first.time + half_width);
  const double scale = fast_scale(scheme);
  double step = h / 8.0;
  if (scale > 0.0) step = std::min(step, kPi / (8.0 * scale));
  const auto count = static_cast<std::size_t>(
      std::clamp(std::ceil((hi - lo) / step), 8.0, 8000.0)) + 1;
  std::vector<double> fine(count);
  for (std::size_t i = 0; i < count; ++i)
    fine[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  const auto fine_values = last_column(average_populations(scheme, nodes, fine, opt));
  // The fine window may end before window_end; only the global edge counts.
  auto refined = locate_maximum(fine, fine_values, hi, false);
  if (require_interior && refined.time >= window_end)
    throw NumericalError("degenerate dynamics: no interior maximum before 2 pi / Omega");
  if (refined.height < first.height) return first;
  return refined;
}

// Vertex of the parabola through three samples, clamped to the bracket.
PeakEstimate parabolic_vertex(double x0, double x1, double x2, double y0, double y1, double y2) {
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curvature = (d12 - d01) / (x2 - x0);
  if (!(curvature < 0.0)) return {x1, y1};
  const double slope = d01 - curvature * (x0 - x1);  // derivative at x1
  const double dx = std::clamp(-slope / (2.0 * curvature), x0 - x1, x2 - x1);
  return {x1 + dx, y1 + slope * dx + curvature * dx * dx};
}

void require_coaxial(const AtomCloud& cloud) {
  if (cloud.center_offset != 0.0)
    throw ConfigError("this operation needs a cloud centered on the beam axis");
}

bool has_uniform_rabi_waists(const LadderScheme& scheme) {
  if (scheme.steps() != 3 || !scheme.has_waists()) return false;
  const double w1 = *scheme.transition(0).waist;
  const double w2 = *scheme.transition(1).waist;
  const double w3 = *scheme.transition(2).waist;
  if (std::isinf(w1) || std::isinf(w2) || std::isinf(w3))
    return std::isinf(w1) && std::isinf(w2) && std::isinf(w3);
  const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::abs(b); };
  return close(w1, w3) && close(w2 * std::numbers::sqrt2, w1);
}

}  // namespace

PeakEstimate locate_maximum(std::span<const double> times, std::span<const double> values,
                            double window_end, bool require_interior) {
  if (times.size() != values.size()) throw ConfigError("times and values differ in length");
  std::size_t best = times.size();
  std::size_t last = times.size();
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] <= 0.0 || times[i] > window_end) continue;
    last = i;
    if (best == times.size() || values[i] > values[best]) best = i;
  }
  if (best == times.size()) throw NumericalError("no samples inside the search window");
  if (!(values[best] > 0.0)) throw NumericalError("degenerate dynamics: no population maximum");
  if (best == last || best == 0 || best + 1 >= times.size()) {
    if (require_interior && best == last)
      throw NumericalError("degenerate dynamics: maximum at the end of the search window");
    return {times[best], values[best]};
  }
  return parabolic_vertex(times[best - 1], times[best], times[best + 1], values[best - 1],
                          values[best], values[best + 1]);
}

double atom_density(double r, const AtomCloud& cloud) {
  if (std::isnan(r) || r < 0.0) throw ConfigError("radius must be non-negative");
  require_coaxial(cloud);
  const double a2 = cloud.radius * cloud.radius;
  return 2.0 / (kPi * a2) * std::exp(-2.0 * r * r / a2);
}

double estimate_atom_spot(double w0, double temperature, double trap_depth) {
  if (!(w0 > 0.0) || !(temperature > 0.0) || !(trap_depth > 0.0))
    throw ConfigError("trap waist, temperature and depth must be positive");
  return w0 * std::sqrt(temperature / trap_depth);
}

double gamma_profile(const LadderScheme& scheme, double r) {
  if (scheme.size() != 4)
    throw UnsupportedSchemeError("Gamma(r) is defined for four-level ladders");
  if (has_uniform_rabi_waists(scheme) && r > 0.0) {
    const double o1 = scheme.transition(0).peak_rabi;
    const double o2 = scheme.transition(1).peak_rabi;
    const double o3 = scheme.transition(2).peak_rabi;
    if (o2 == 0.0) throw NumericalError("middle-step Rabi frequency is zero");
    const double w = *scheme.transition(0).waist;
    const double growth = std::isinf(w) ? 1.0 : std::exp(2.0 * r * r / (w * w));
    const double inter = (o1 * o1 + o3 * o3) / (2.0 * o2 * o2) *
                         (scheme.level(1).decay_rate() + scheme.level(2).decay_rate());
    return inter * growth + scheme.level(3).decay_rate();
  }
  return adiabatic_eliminate(scheme, r).decay_total;
}

AmplitudeTrajectory averaged_trace(const LadderScheme& scheme, const AtomCloud& cloud,
                                   double t_end, std::size_t n_points,
                                   const SpatialOptions& options) {
  require_coaxial(cloud);
  if (options.radial_nodes < 8) throw ConfigError("averaging needs at least 8 radial nodes");
  AmplitudeTrajectory out;
  out.times = uniform_grid(t_end, n_points);
  const auto nodes = coaxial_nodes(cloud, options.radial_nodes);
  out.populations = average_populations(scheme, nodes, out.times, options, &out.fallback);
  return out;
}

PeakEstimate averaged_first_peak(const LadderScheme& scheme, const AtomCloud& cloud,
                                 const SpatialOptions& options) {
  require_coaxial(cloud);
  if (options.radial_nodes < 8) throw ConfigError("averaging needs at least 8 radial nodes");
  const double omega = nominal_rabi(scheme, 0.0);
  if (!(omega > 0.0)) throw NumericalError("degenerate dynamics: multi-photon Rabi frequency is zero");
  const auto nodes = coaxial_nodes(cloud, options.radial_nodes);
  return search_peak(scheme, nodes, 2.0 * kPi / omega, true, options);
}

double averaged_a1_numeric(const LadderScheme& scheme, const AtomCloud& cloud,
                           const SpatialOptions& options) {
  return averaged_first_peak(scheme, cloud, options).height;
}

double averaged_a1_analytic(const LadderScheme& scheme, const AtomCloud& cloud) {
  require_coaxial(cloud);
  if (!has_uniform_rabi_waists(scheme))
    throw UnsupportedSchemeError(
        "analytic A1 needs a three-step ladder with uniform-Rabi waists (w, w/sqrt2, w)");
  const auto eff = adiabatic_eliminate(scheme, 0.0);
  if (eff.reduced_rabi == 0.0) throw NumericalError("no Rabi oscillation: reduced Rabi frequency is zero");
  const double w = *scheme.transition(0).waist;
  const double prefactor = kPi / (2.0 * eff.reduced_rabi);
  const double rydberg = scheme.level(3).decay_rate();
  if (std::isinf(w)) return 1.0 - prefactor * eff.decay_total;
  const double xi = w / cloud.radius;
  if (xi <= kMinAnalyticCoverage)
    throw ValidityError("analytic A1 diverges near w/a = 1 (got " + std::to_string(xi) +
                        "); use the numeric average");
  const double xi2 = xi * xi;
  return 1.0 - prefactor * (eff.decay_total * xi2 / (xi2 - 1.0) - rydberg / (xi2 - 1.0));
}

double averaged_envelope_a1(const LadderScheme& scheme, const AtomCloud& cloud,
                            std::size_t radial_nodes) {
  require_coaxial(cloud);
  const auto eff = adiabatic_eliminate(scheme, 0.0);
  if (eff.reduced_rabi == 0.0) throw NumericalError("no Rabi oscillation: reduced Rabi frequency is zero");
  const double t_pi = kPi / eff.reduced_rabi;
  const auto q = cloud_quadrature(cloud, radial_nodes);
  double sum = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k)
    sum += q.weights[k] * std::exp(-0.5 * gamma_profile(scheme, q.nodes[k]) * t_pi);
  return sum;
}

CoverageSweepResult coverage_sweep(const LadderScheme& scheme, double cloud_radius,
                                   std::span<const double> xi_values,
                                   const SpatialOptions& options) {
  if (xi_values.empty()) throw ConfigError("coverage sweep needs at least one xi value");
  for (std::size_t i = 0; i < xi_values.size(); ++i) {
    if (!(xi_values[i] > 0.0) || !std::isfinite(xi_values[i]))
      throw ConfigError("xi values must be positive and finite");
    if (i > 0 && !(xi_values[i] > xi_values[i - 1]))
      throw ConfigError("xi values must be strictly ascending");
  }
  const AtomCloud cloud(cloud_radius);
  CoverageSweepResult out;
  out.xi_values.assign(xi_values.begin(), xi_values.end());
  for (const double xi : xi_values) {
    const auto focused = with_spot_radius(scheme, xi * cloud_radius);
    out.a1_numeric.push_back(averaged_a1_numeric(focused, cloud, options));
    if (xi > kMinAnalyticCoverage && has_uniform_rabi_waists(focused))
      out.a1_analytic.emplace_back(averaged_a1_analytic(focused, cloud));
    else
      out.a1_analytic.emplace_back(std::nullopt);
  }
  return out;
}

double default_crosstalk_horizon(const LadderScheme& scheme) {
  const double omega = nominal_rabi(scheme, 0.0);
  if (!(omega > 0.0)) throw NumericalError("multi-photon Rabi frequency is zero");
  return 2.0 * kPi / omega;
}

CrosstalkResult crosstalk(const LadderScheme& scheme, const AtomCloud& neighbor, double t_end,
                          const SpatialOptions& options) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be positive");
  const auto nodes = displaced_nodes(neighbor, options.radial_nodes, options.azimuthal_nodes);
  const auto peak = search_peak(scheme, nodes, t_end, false, options);
  return {peak.height, peak.time, t_end, options.radial_nodes, options.azimuthal_nodes, neighbor};
}

nlohmann::json CrosstalkResult::to_json() const {
  return {{"max_population", max_population},
          {"time_of_max_us", time_of_max * 1e6},
          {"t_end_us", t_end * 1e6},
          {"neighbor",
           {{"radius_um", neighbor.radius * 1e6}, {"center_offset_um", neighbor.center_offset * 1e6}}},
          {"grid",
           {{"radial", "gauss-laguerre"},
            {"radial_nodes", radial_nodes},
            {"azimuthal", "trapezoid"},
            {"azimuthal_nodes", azimuthal_nodes},
            {"total_nodes", radial_nodes * azimuthal_nodes}}}};
}

SpectrumResult spectrum(const LadderScheme& scheme, std::size_t swept_transition,
                        std::span<const double> detuning_grid, double t_int, double r,
                        const SpatialOptions& options) {
  if (swept_transition >= scheme.steps()) throw ConfigError("swept transition out of range");
  if (!(t_int > 0.0) || !std::isfinite(t_int)) throw ConfigError("interaction time must be positive");
  if (detuning_grid.size() < 3) throw ConfigError("spectrum grid needs at least three points");
  for (std::size_t i = 1; i < detuning_grid.size(); ++i)
    if (!(detuning_grid[i] > detuning_grid[i - 1]))
      throw ConfigError("spectrum grid must be strictly ascending");

  const double others = scheme.total_detuning() - scheme.transition(swept_transition).detuning;
  SpectrumResult out;
  out.detunings.assign(detuning_grid.begin(), detuning_grid.end());
  out.populations.resize(detuning_grid.size());
  const double times[] = {t_int};
  const auto target = static_cast<Eigen::Index>(scheme.size() - 1);
  parallel_for(detuning_grid.size(), options.threads, [&](std::size_t i) {
    const auto detuned = scheme.with_detuning(swept_transition, detuning_grid[i] - others);
    const auto h = build_hamiltonian(detuned, r);
    const auto traj = propagate(h, ground_state(h.dimension()), times, options.propagator);
    out.populations[i] = traj.populations(0, target);
  });

  const auto& p = out.populations;
  const auto best = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
  out.peak_height = p[best];
  if (p[best] <= 1e-12) return out;  // flat spectrum: nothing to center
  if (best == 0 || best + 1 == p.size())
    throw NumericalError("shift unresolved: spectrum maximum lies on the grid edge");

  const auto& g = out.detunings;
  const auto vertex = parabolic_vertex(g[best - 1], g[best], g[best + 1], p[best - 1], p[best],
                                       p[best + 1]);
  out.peak_center = vertex.time;
  out.peak_height = vertex.height;

  const double half = 0.5 * out.peak_height;
  std::optional<double> left, right;
  for (std::size_t i = best; i-- > 0;) {
    if (p[i] < half) {
      left = g[i] + (half - p[i]) * (g[i + 1] - g[i]) / (p[i + 1] - p[i]);
      break;
    }
  }
  for (std::size_t i = best + 1; i < p.size(); ++i) {
    if (p[i] < half) {
      right = g[i - 1] + (p[i - 1] - half) * (g[i] - g[i - 1]) / (p[i - 1] - p[i]);
      break;
    }
  }
  if (left && right) out.fwhm = *right - *left;
  return out;
}

}  // namespace ladder
