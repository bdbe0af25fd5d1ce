#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qlb/compressed.hpp"
#include "qlb/error.hpp"
#include "qlb/ladder.hpp"
#include "qlb/linalg.hpp"
#include "qlb/perm.hpp"
#include "qlb/poly.hpp"
#include "qlb/reductions.hpp"
#include "qlb/suites.hpp"

namespace py = pybind11;
using namespace qlb;

namespace {

// results cross the boundary as JSON text, decoded by the Python wrapper
template <class T>
std::string js(const T& v) {
  return json(v).dump();
}

Property property_for(const std::string& name, int n, int m) {
  if (name == "collision") return collision_property(n, m);
  if (name == "preimage") return preimage_property(n, m);
  throw ParameterError("unknown property '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_qlb, mod) {
  static py::exception<ParameterError> param_error(mod, "ParameterError", PyExc_ValueError);
  static py::exception<SizeError> size_error(mod, "SizeError", PyExc_MemoryError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParameterError& e) {
      param_error(e.what());
    } catch (const SizeError& e) {
      size_error(e.what());
    } catch (const Error& e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    }
  });

  mod.def("comp_bound_analytic", [](int m, int k, double eps) {
    return js(comp_lower_bound(0, m, k, eps, CompMode{true, collision_step_formula(m)}));
  }, py::arg("m"), py::arg("k"), py::arg("eps"));

  mod.def("comp_bound", [](const std::string& prop, int n, int m, double eps) {
    return js(comp_lower_bound(full_problem(n, m), property_for(prop, n, m), eps, CompMode{}));
  }, py::arg("prop"), py::arg("n"), py::arg("m"), py::arg("eps"));

  mod.def("comp_step_norm", [](const std::string& prop, int n, int m, int t) {
    return comp_step_norm(full_problem(n, m), property_for(prop, n, m), t).value;
  }, py::arg("prop"), py::arg("n"), py::arg("m"), py::arg("t"));

  mod.def("mladv_bound", [](const std::string& prop, int n, int m, double kappa, double eps) {
    Property p = property_for(prop, n, m);
    ProblemSpec spec = problem_from_property(n, m, p);
    MlaMatrix g = gamma_from_property(spec, p, kappa);
    SpaceChain chain = space_chain(InputDistribution::uniform(spec), spec);
    const double lam = g.max_eigenvalue();
    return js(mladv_lower_bound(g, chain, spec, lam, eta_for(g, lam, spec), eps));
  }, py::arg("prop"), py::arg("n"), py::arg("m"), py::arg("kappa"), py::arg("eps"));

  mod.def("reduction_check", [](const std::string& prop, int n, int m, double eps) {
    return js(reduction_factor_check(full_problem(n, m), property_for(prop, n, m), eps));
  }, py::arg("prop"), py::arg("n"), py::arg("m"), py::arg("eps"));

  mod.def("sdpt_scalars", [](double lam, double eps, double eta, int k) {
    return js(sdpt_scalar_checks(lam, eps, eta, k).report);
  }, py::arg("lam"), py::arg("eps"), py::arg("eta"), py::arg("k"));

  mod.def("approx_degree", [](const std::string& f, int n, double eps) {
    return approx_degree(BooleanFunction::parse(f, n), eps).degree;
  }, py::arg("f"), py::arg("n"), py::arg("eps"));

  mod.def("exact_degree", [](const std::string& f, int n) { return exact_degree(BooleanFunction::parse(f, n)); },
          py::arg("f"), py::arg("n"));

  mod.def("perm_success_bound", [](long long n, long long t) {
    PermBounds b = perm_success_bound(n, t);
    return py::make_tuple(b.cited, b.derived);
  }, py::arg("n"), py::arg("t"));

  mod.def("run_suite", [](const std::string& name, std::uint64_t seed) {
    SuiteOptions o;
    o.seed = seed;
    return js(run_suite(name, o));
  }, py::arg("name"), py::arg("seed") = 0);

  mod.def("suite_names", &suite_names);
}
