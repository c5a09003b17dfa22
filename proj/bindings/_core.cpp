#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chernforge/scenario.hpp"

namespace py = pybind11;
using namespace chernforge;

namespace {

py::dict report_to_dict(const Report& r) {
  py::dict d;
  d["schema"] = r.schema;
  d["artifact_version"] = r.artifact_version;
  d["scenario"] = r.scenario;
  d["resolution"] = r.resolution;
  py::dict params;
  for (const auto& [k, v] : r.params) params[py::str(k)] = v;
  d["params"] = params;
  py::list checks;
  for (const auto& c : r.checks) {
    py::dict cd;
    cd["check_id"] = c.check_id;
    cd["expected"] = c.expected;
    cd["computed"] = c.computed;
    cd["tolerance"] = c.tolerance;
    cd["mod1"] = c.mod1;
    cd["pass"] = c.pass;
    if (!c.error.empty()) cd["error"] = c.error;
    checks.append(cd);
  }
  d["checks"] = checks;
  d["pass"] = r.pass();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "characteristic forms, transgression forms and differential characters "
      "on scenario bundles";
  m.attr("__version__") = kArtifactVersion;

  m.def("list_scenarios", [] {
    py::list out;
    for (const auto& s : scenario_catalog()) {
      py::dict d;
      d["name"] = s.name;
      d["description"] = s.description;
      d["default_resolution"] = s.default_resolution;
      out.append(d);
    }
    return out;
  });

  m.def(
      "run_scenario",
      [](const std::string& name, const std::map<std::string, double>& overrides) {
        return report_to_dict(run_scenario(name, overrides));
      },
      py::arg("name"), py::arg("overrides") = std::map<std::string, double>{},
      "Run a registered scenario and return its report as a dict.");

  m.def(
      "report_json",
      [](const std::string& name, const std::map<std::string, double>& overrides) {
        return report_to_json(run_scenario(name, overrides));
      },
      py::arg("name"), py::arg("overrides") = std::map<std::string, double>{},
      "Run a scenario and return the canonical JSON report (byte-stable).");

  m.def("evaluate", &evaluate_spec, py::arg("character"), py::arg("cycle"),
        py::arg("resolution") = 0,
        "Evaluate a differential character on a cycle; value in [0, 1).");

  m.def(
      "characteristic_number",
      [](const std::string& bundle, const std::string& kind, int k,
         const std::string& cycle, int resolution) {
        const BundleWithConnection b = make_bundle(bundle, resolution);
        CharacteristicForm f;
        if (kind == "chern")
          f = chern_form(b, k);
        else if (kind == "pontryagin")
          f = pontryagin_form(b, k);
        else if (kind == "euler")
          f = euler_form(b);
        else if (kind == "power-sum")
          f = power_sum_form(b, k);
        else
          throw std::invalid_argument("unknown form kind: " + kind);
        return integrate(f.field, make_cycle(cycle, resolution)).real();
      },
      py::arg("bundle"), py::arg("kind"), py::arg("k"), py::arg("cycle"),
      py::arg("resolution") = 96,
      "Integrate a characteristic form of a registry bundle over a registry "
      "cycle.");

  m.def(
      "holonomy_trace",
      [](const std::string& bundle, const std::string& cycle, int gauge,
         int steps, int resolution) {
        const BundleWithConnection b = make_bundle(bundle, resolution);
        const GeometricCycle z = make_cycle(cycle, resolution);
        return parallel_transport(b, z, gauge, steps).trace();
      },
      py::arg("bundle"), py::arg("cycle"), py::arg("gauge") = 0,
      py::arg("steps") = 4096, py::arg("resolution") = 256,
      "Trace of the loop holonomy of a registry bundle.");
}
