#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ladder/propagator.hpp"
#include "ladder/spatial.hpp"

namespace ladder {

/// Fixed-precision decimal text for CSV cells; identical input gives
/// identical bytes.
std::string format_number(double v);

/// Writes to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// `# scheme: <fingerprint>` line, then `t_us,n1,...,nN,norm`.
std::string trajectory_csv(const AmplitudeTrajectory& traj, std::string_view fingerprint);

/// `detuning_mhz,n_final`.
std::string spectrum_csv(const SpectrumResult& result, std::string_view fingerprint);

/// `xi,a1_numeric,a1_analytic`; the analytic cell is empty where undefined.
std::string coverage_csv(const CoverageSweepResult& result, std::string_view fingerprint);

}  // namespace ladder
