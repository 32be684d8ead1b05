#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "ladder/propagator.hpp"
#include "ladder/quadrature.hpp"
#include "ladder/scheme.hpp"

namespace ladder {

struct SpatialOptions {
  std::size_t radial_nodes = 32;
  std::size_t azimuthal_nodes = 16;  // crosstalk only
  std::size_t time_points = 2001;    // coarse grid for peak searches
  unsigned threads = 0;              // 0: hardware concurrency
  PropagatorOptions propagator{};
};

/// Time and height of a located maximum.
struct PeakEstimate {
  double time;
  double height;
};

struct CoverageSweepResult {
  std::vector<double> xi_values;
  std::vector<double> a1_numeric;
  std::vector<std::optional<double>> a1_analytic;  // absent where xi <= 1.05
};

struct SpectrumResult {
  std::vector<double> detunings;    // total ladder detuning, rad/s
  std::vector<double> populations;  // target-level population at t_int
  std::optional<double> peak_center;  // rad/s; absent for a flat spectrum
  std::optional<double> fwhm;         // rad/s; absent when a side never halves
  double peak_height = 0.0;
};

struct CrosstalkResult {
  double max_population;
  double time_of_max;  // s
  double t_end;        // s
  std::size_t radial_nodes;
  std::size_t azimuthal_nodes;
  AtomCloud neighbor;

  nlohmann::json to_json() const;
};

/// Smallest coverage parameter accepted by the analytic A1 formula.
inline constexpr double kMinAnalyticCoverage = 1.05;

/// (2 / pi a^2) exp(-2 r^2 / a^2) for a coaxial cloud, in 1/m^2.
double atom_density(double r, const AtomCloud& cloud);

/// Atom spot radius w0 sqrt(T / U0) for a thermal atom in a trap of depth U0
/// (T and U0 in the same temperature units).
double estimate_atom_spot(double w0, double temperature, double trap_depth);

/// Envelope decay constant Gamma(r) of the four-level ladder. Uses the closed
/// form for uniform-Rabi waists and the local elimination result otherwise.
double gamma_profile(const LadderScheme& scheme, double r);

/// Cloud-averaged level populations on a uniform grid over [0, t_end].
AmplitudeTrajectory averaged_trace(const LadderScheme& scheme, const AtomCloud& cloud,
                                   double t_end, std::size_t n_points,
                                   const SpatialOptions& options = {});

/// Height of the first maximum of the cloud-averaged target population.
double averaged_a1_numeric(const LadderScheme& scheme, const AtomCloud& cloud,
                           const SpatialOptions& options = {});

/// Same search, returning the peak time as well.
PeakEstimate averaged_first_peak(const LadderScheme& scheme, const AtomCloud& cloud,
                                 const SpatialOptions& options = {});

/// Closed-form first-order A1 for a four-level ladder with uniform-Rabi
/// waists; ValidityError for coverage w/a <= 1.05.
double averaged_a1_analytic(const LadderScheme& scheme, const AtomCloud& cloud);

/// Quadrature average of the exact single-point peak height
/// exp(-Gamma(r) pi / (2 Omega)) over the cloud.
double averaged_envelope_a1(const LadderScheme& scheme, const AtomCloud& cloud,
                            std::size_t radial_nodes = 32);

/// A1 versus coverage xi = w/a at fixed cloud radius a; waists from
/// with_spot_radius(scheme, xi * a).
CoverageSweepResult coverage_sweep(const LadderScheme& scheme, double cloud_radius,
                                   std::span<const double> xi_values,
                                   const SpatialOptions& options = {});

/// Time-maximal target population of a neighbor cloud displaced from the
/// beam axis, averaged with a polar rule centered on the neighbor and the
/// full propagator at every node.
CrosstalkResult crosstalk(const LadderScheme& scheme, const AtomCloud& neighbor, double t_end,
                          const SpatialOptions& options = {});

/// Default crosstalk horizon: two on-axis pi-times, 2 pi / Omega.
double default_crosstalk_horizon(const LadderScheme& scheme);

/// Target population after t_int versus total ladder detuning. The swept step
/// absorbs the difference so that the sum of detunings equals each grid value.
/// ShiftUnresolved (NumericalError) when the maximum sits on a grid edge.
SpectrumResult spectrum(const LadderScheme& scheme, std::size_t swept_transition,
                        std::span<const double> detuning_grid, double t_int, double r,
                        const SpatialOptions& options = {});

/// Global maximum of `values` on (0, window_end], refined by a parabola
/// through the bracketing samples. With require_interior, a maximum on the
/// last sample is an error.
PeakEstimate locate_maximum(std::span<const double> times, std::span<const double> values,
                            double window_end, bool require_interior);

}  // namespace ladder
