#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "corona/cli.hpp"
#include "corona/error.hpp"
#include "corona/io.hpp"
#include "corona/smoothness.hpp"

namespace py = pybind11;
using namespace corona;

namespace {

ParamFamily family_of(const std::string& json_text) { return family_from_json(Json::parse(json_text)); }

py::dict cert_dict(const NormCert& c) {
  py::dict d;
  d["quantity"] = c.quantity;
  d["lo"] = c.lo;
  d["hi"] = c.hi;
  d["samples_used"] = c.samples_used;
  if (c.witness) {
    d["witness_z"] = c.witness->z;
    d["witness_s"] = c.witness->s;
  } else {
    d["witness_z"] = py::none();
    d["witness_s"] = py::none();
  }
  return d;
}

std::vector<std::vector<Complex>> coeff_lists(const std::vector<CPoly>& polys) {
  std::vector<std::vector<Complex>> out;
  for (const auto& p : polys) out.push_back(p.coeffs());
  return out;
}

std::vector<CPoly> polys_of(const std::vector<std::vector<Complex>>& lists) {
  std::vector<CPoly> out;
  for (const auto& l : lists) out.emplace_back(l.empty() ? std::vector<Complex>{Complex{}} : l);
  return out;
}

MultiIndex index_of(const std::vector<int>& a) {
  if (a.empty() || a.size() > 2) throw CoronaError(ErrorKind::domain, "multi-index must have 1 or 2 entries");
  return {a[0], a.size() > 1 ? a[1] : 0};
}

}  // namespace

PYBIND11_MODULE(_corona, m) {
  m.doc() = "Certified smooth solutions of parametrized Bezout equations on the disc";

  py::register_exception<CoronaError>(m, "CoronaError", PyExc_RuntimeError);

  py::class_<GluedSolution>(m, "Solution")
      .def_property_readonly("C0", &GluedSolution::C0)
      .def_property_readonly("order", &GluedSolution::order)
      .def_property_readonly("centers", [](const GluedSolution& g) { return g.pou().cover().centers; })
      .def_property_readonly("radius", [](const GluedSolution& g) { return g.pou().cover().radius; })
      .def_property_readonly("residual", [](const GluedSolution& g) { return cert_dict(g.residual_cert()); })
      .def_property_readonly("delta", [](const GluedSolution& g) { return cert_dict(g.diagnostics().delta_cert); })
      .def_property_readonly("sup", [](const GluedSolution& g) { return cert_dict(g.diagnostics().sup_cert); })
      .def_property_readonly("point_solutions",
                             [](const GluedSolution& g) {
                               std::vector<std::vector<std::vector<Complex>>> out;
                               for (const auto& p : g.points().solutions) out.push_back(coeff_lists(p.g));
                               return out;
                             })
      .def("g", [](const GluedSolution& g, Complex z, const SPoint& s) { return g_eval(g, z, s); })
      .def("phi", [](const GluedSolution& g, Complex z, const SPoint& s) { return phi_eval(g, z, s); })
      .def("eta", [](const GluedSolution& g, const SPoint& s) { return g.pou().eval(s); })
      .def("partial",
           [](const GluedSolution& g, Complex z, const SPoint& s, const std::vector<int>& a) {
             return g_partial(g, z, s, index_of(a));
           })
      .def("fd_check",
           [](const GluedSolution& g, Complex z, const SPoint& s, const std::vector<int>& a, double h) {
             return fd_check(g, z, s, index_of(a), h);
           })
      .def(
          "verify",
          [](const GluedSolution& g, int z_samples, int s_samples) {
            return verify_solution(g, GridOptions{z_samples, s_samples, {}}).to_json().dump();
          },
          py::arg("z_samples") = 20, py::arg("s_samples") = 20)
      .def("to_json", [](const GluedSolution& g, const std::string& name,
                         double scale) { return solution_to_json(g, name, scale).dump(2); },
           py::arg("name") = "problem", py::arg("scale") = 1.0);

  m.def("solve_json", [](const std::string& family_json, const std::string& settings_json) {
    const Json settings = Json::parse(settings_json);
    return solve(family_of(family_json), settings.is_null() ? SolverSettings{} : settings_from_json(settings));
  });
  m.def("load_solution", [](const std::filesystem::path& path) { return load_solution(path).solution; });
  m.def("delta_lower_json", [](const std::string& family_json) { return cert_dict(delta_lower(family_of(family_json))); });
  m.def("family_sup_norm_json",
        [](const std::string& family_json) { return cert_dict(family_sup_norm(family_of(family_json))); });
  m.def(
      "sup_disc", [](const std::vector<Complex>& coeffs, int samples) { return cert_dict(sup_disc(CPoly(coeffs), samples)); },
      py::arg("coeffs"), py::arg("samples") = kDefaultBoundarySamples);
  m.def("xgcd", [](const std::vector<Complex>& p, const std::vector<Complex>& q) {
    const auto r = xgcd(CPoly(p), CPoly(q));
    return py::make_tuple(r.gcd.coeffs(), r.a.coeffs(), r.b.coeffs());
  });
  m.def("solve_point", [](const std::vector<std::vector<Complex>>& f) {
    const auto sol = solve_point(polys_of(f));
    return py::make_tuple(coeff_lists(sol.g), to_string(sol.solver), cert_dict(sol.residual_cert));
  });
  m.def("run_cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "corona");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
