#pragma once

#include <numbers>

// Internal units are SI: rad/s, s, m. Ordinary frequencies (MHz, GHz) are
// converted to angular frequency at the ingestion boundary only.
namespace ladder::units {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

constexpr double mhz(double v) { return two_pi * v * 1e6; }
constexpr double ghz(double v) { return two_pi * v * 1e9; }
constexpr double to_mhz(double omega) { return omega / (two_pi * 1e6); }

constexpr double us(double v) { return v * 1e-6; }
constexpr double ns(double v) { return v * 1e-9; }
constexpr double to_us(double t) { return t * 1e6; }

constexpr double um(double v) { return v * 1e-6; }
constexpr double to_um(double x) { return x * 1e6; }

}  // namespace ladder::units
