#include "ladder/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "ladder/errors.hpp"
#include "ladder/units.hpp"

namespace ladder {

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot move " + tmp.string() + " into place: " + ec.message());
}

std::string trajectory_csv(const AmplitudeTrajectory& traj, std::string_view fingerprint) {
  std::string out = "# scheme: ";
  out += fingerprint;
  out += "\nt_us";
  for (Eigen::Index j = 0; j < traj.levels(); ++j) out += ",n" + std::to_string(j + 1);
  out += ",norm\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out += format_number(units::to_us(traj.times[i]));
    for (Eigen::Index j = 0; j < traj.levels(); ++j)
      out += ',' + format_number(traj.populations(static_cast<Eigen::Index>(i), j));
    out += ',' + format_number(traj.norm(i));
    out += '\n';
  }
  return out;
}

std::string spectrum_csv(const SpectrumResult& result, std::string_view fingerprint) {
  std::string out = "# scheme: ";
  out += fingerprint;
  out += "\ndetuning_mhz,n_final\n";
  for (std::size_t i = 0; i < result.detunings.size(); ++i)
    out += format_number(units::to_mhz(result.detunings[i])) + ',' + format_number(result.populations[i]) + '\n';
  return out;
}

std::string coverage_csv(const CoverageSweepResult& result, std::string_view fingerprint) {
  std::string out = "# scheme: ";
  out += fingerprint;
  out += "\nxi,a1_numeric,a1_analytic\n";
  for (std::size_t i = 0; i < result.xi_values.size(); ++i) {
    out += format_number(result.xi_values[i]) + ',' + format_number(result.a1_numeric[i]) + ',';
    if (result.a1_analytic[i]) out += format_number(*result.a1_analytic[i]);
    out += '\n';
  }
  return out;
}

}  // namespace ladder
