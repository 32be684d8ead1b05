#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "ladder/config.hpp"
#include "ladder/effective.hpp"
#include "ladder/errors.hpp"
#include "ladder/propagator.hpp"
#include "ladder/runner.hpp"
#include "ladder/scheme.hpp"
#include "ladder/spatial.hpp"

namespace py = pybind11;
using namespace ladder;

namespace {

// JSON objects cross the boundary as text; the Python side wraps json.loads.
std::string dump(const nlohmann::json& j) { return j.dump(); }

SpatialOptions options(std::size_t radial_nodes, unsigned threads) {
  SpatialOptions o;
  o.radial_nodes = radial_nodes;
  o.threads = threads;
  return o;
}

py::tuple trace_tuple(const AmplitudeTrajectory& t) {
  return py::make_tuple(t.times, t.populations, t.fallback);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = kVersion;

  auto base = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<UnsupportedSchemeError>(m, "UnsupportedSchemeError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<ValidityError>(m, "ValidityError", PyExc_ValueError);

  py::class_<LadderScheme>(m, "LadderScheme")
      .def_property_readonly("size", &LadderScheme::size)
      .def_property_readonly("steps", &LadderScheme::steps)
      .def_property_readonly("fingerprint", &LadderScheme::fingerprint)
      .def_property_readonly("total_detuning", &LadderScheme::total_detuning)
      .def_property_readonly("has_waists", &LadderScheme::has_waists)
      .def("lifetime", [](const LadderScheme& s, std::size_t j) { return s.level(j).lifetime; })
      .def("rabi", [](const LadderScheme& s, std::size_t j, double r) { return s.transition(j).rabi_at(r); },
           py::arg("step"), py::arg("r") = 0.0)
      .def("detuning", [](const LadderScheme& s, std::size_t j) { return s.transition(j).detuning; })
      .def("with_rabi", &LadderScheme::with_rabi)
      .def("with_detuning", &LadderScheme::with_detuning)
      .def("with_lifetime", &LadderScheme::with_lifetime)
      .def("to_json", [](const LadderScheme& s) { return dump(scheme_to_json(s)); })
      .def(py::self == py::self)
      .def("__repr__", [](const LadderScheme& s) { return "<LadderScheme " + s.fingerprint() + ">"; });

  m.def("scheme_from_json", [](const std::string& text) { return scheme_from_json(nlohmann::json::parse(text)); });
  m.def("preset", &preset);
  m.def("preset_names", [] {
    std::vector<std::string> names;
    for (const auto& p : list_presets()) names.push_back(p.name);
    return names;
  });
  m.def("with_spot_radius", &with_spot_radius);
  m.def("waists_for_uniform_rabi", &waists_for_uniform_rabi);

  m.def("rabi_trace",
        [](const LadderScheme& s, double r, double t_end, std::size_t n) { return trace_tuple(rabi_trace(s, r, t_end, n)); },
        py::arg("scheme"), py::arg("r"), py::arg("t_end"), py::arg("n_points"));

  m.def("effective_model", [](const LadderScheme& s, double r) { return dump(to_json(adiabatic_eliminate(s, r))); });
  m.def("validity_report", [](const LadderScheme& s, double r) { return dump(validity_report(s, r).to_json()); });
  m.def("nominal_rabi", &nominal_rabi, py::arg("scheme"), py::arg("r") = 0.0);
  m.def("analytic_population",
        [](const LadderScheme& s, double r, double t) { return analytic_population(adiabatic_eliminate(s, r), t); });
  m.def("light_shift", [](double o1, double o2, double d1) { return two_photon_effective(o1, o2, d1).light_shift; });

  m.def("atom_density", [](double r, double a) { return atom_density(r, AtomCloud(a)); });
  m.def("gamma_profile", &gamma_profile);
  m.def("averaged_trace",
        [](const LadderScheme& s, double a, double t_end, std::size_t n, std::size_t nodes, unsigned threads) {
          return trace_tuple(averaged_trace(s, AtomCloud(a), t_end, n, options(nodes, threads)));
        },
        py::arg("scheme"), py::arg("cloud_radius"), py::arg("t_end"), py::arg("n_points"),
        py::arg("radial_nodes") = 32, py::arg("threads") = 0);
  m.def("averaged_a1_numeric",
        [](const LadderScheme& s, double a, std::size_t nodes, unsigned threads) {
          return averaged_a1_numeric(s, AtomCloud(a), options(nodes, threads));
        },
        py::arg("scheme"), py::arg("cloud_radius"), py::arg("radial_nodes") = 32, py::arg("threads") = 0);
  m.def("averaged_a1_analytic", [](const LadderScheme& s, double a) { return averaged_a1_analytic(s, AtomCloud(a)); });
  m.def("coverage_sweep",
        [](const LadderScheme& s, double a, const std::vector<double>& xi, std::size_t nodes, unsigned threads) {
          const auto r = coverage_sweep(s, a, xi, options(nodes, threads));
          return py::make_tuple(r.xi_values, r.a1_numeric, r.a1_analytic);
        },
        py::arg("scheme"), py::arg("cloud_radius"), py::arg("xi"), py::arg("radial_nodes") = 32,
        py::arg("threads") = 0);
  m.def("crosstalk",
        [](const LadderScheme& s, double a, double d, std::optional<double> t_end, std::size_t nodes, unsigned threads) {
          const double horizon = t_end ? *t_end : default_crosstalk_horizon(s);
          return dump(crosstalk(s, AtomCloud(a, d), horizon, options(nodes, threads)).to_json());
        },
        py::arg("scheme"), py::arg("cloud_radius"), py::arg("distance"), py::arg("t_end") = py::none(),
        py::arg("radial_nodes") = 32, py::arg("threads") = 0);
  m.def("spectrum",
        [](const LadderScheme& s, std::size_t step, const std::vector<double>& grid, double t_int, double r,
           unsigned threads) {
          const auto res = spectrum(s, step, grid, t_int, r, options(32, threads));
          return py::make_tuple(res.detunings, res.populations, res.peak_center, res.fwhm);
        },
        py::arg("scheme"), py::arg("swept_transition"), py::arg("detunings"), py::arg("t_int"), py::arg("r") = 0.0,
        py::arg("threads") = 0);

  m.def("run_config",
        [](const std::string& document, const std::string& output_dir) {
          RunOptions opts;
          opts.output_dir = output_dir;
          std::vector<std::string> files;
          for (const auto& f : run(parse_config(document), opts).files) files.push_back(f.string());
          return files;
        },
        py::arg("document"), py::arg("output_dir"));
}
