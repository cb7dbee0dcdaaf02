// Python bindings for the main operations. Structured reports cross the
// boundary as JSON strings; callers json.loads() them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twistpde/certify.hpp"
#include "twistpde/dirichlet.hpp"
#include "twistpde/expression.hpp"
#include "twistpde/holder.hpp"
#include "twistpde/json_io.hpp"
#include "twistpde/matrix_calculus.hpp"
#include "twistpde/radial.hpp"
#include "twistpde/spectrum.hpp"
#include "twistpde/symmetric_functions.hpp"

namespace py = pybind11;
using namespace twistpde;

namespace {

SymMatrix matrix_from_rows(int n, const std::vector<double>& rows) {
  return SymMatrix::from_rows(n, rows);
}

OperatorSpec spec_from_preset(const std::string& name, int n,
                              std::uint64_t seed) {
  return OperatorSpec::preset(name, n, seed);
}

std::string solve_to_json(const std::string& preset, int n,
                          const std::string& domain_kind, double a, double b,
                          const std::string& f_expr,
                          const std::string& phi_expr, double h) {
  OperatorSpec spec = OperatorSpec::preset(preset, n);
  ConvexDomain domain = domain_kind == "disk" ? ConvexDomain::disk(a)
                                              : ConvexDomain::ellipse(a, b);
  Expression f = Expression::parse(f_expr);
  Expression phi = Expression::parse(phi_expr);
  SpecOperator op(spec);
  SolveResult sol = solve_dirichlet(op, domain, f.fn(), phi.fn(), h);
  json j = solve_report_to_json(sol.report);
  json rows = json::array();
  for (int p = 0; p < sol.u.size(); ++p) {
    const Grid::Node& nd = sol.u.grid().node(p);
    rows.push_back(json::array({nd.x, nd.y, sol.u.value(p)}));
  }
  j["solution"] = rows;
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Twisted-type Hessian operators: symmetric-function calculus, "
            "concavity certificates, Dirichlet solver and radial oracles.";

  py::register_exception<PreconditionError>(m, "PreconditionError",
                                            PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError",
                                         PyExc_RuntimeError);

  py::class_<SymMatrix>(m, "SymMatrix")
      .def(py::init<int>(), py::arg("n"))
      .def_static("identity", &SymMatrix::identity)
      .def_static("from_rows", &matrix_from_rows, py::arg("n"),
                  py::arg("rows"))
      .def("dim", &SymMatrix::dim)
      .def("get", [](const SymMatrix& s, int i, int j) { return s(i, j); })
      .def("set", &SymMatrix::set)
      .def("det", &SymMatrix::det)
      .def("trace", &SymMatrix::trace)
      .def("to_rows", &SymMatrix::to_rows);

  py::class_<Tensor3>(m, "Tensor3")
      .def(py::init<int>(), py::arg("n"))
      .def("dim", &Tensor3::dim)
      .def("get", &Tensor3::get)
      .def("set", &Tensor3::set);

  py::class_<OperatorSpec>(m, "OperatorSpec")
      .def_static("preset", &spec_from_preset, py::arg("name"), py::arg("n"),
                  py::arg("seed") = 0)
      .def_static("from_json",
                  [](const std::string& s) {
                    return spec_from_json(json::parse(s));
                  })
      .def("to_json",
           [](const OperatorSpec& s) { return spec_to_json(s).dump(); })
      .def("dim", &OperatorSpec::dim)
      .def("value", &OperatorSpec::value)
      .def("term_value", &OperatorSpec::term_value);

  m.def("elem_sym",
        [](int k, const std::vector<double>& lam) {
          return elem_sym(k, lam);
        },
        py::arg("k"), py::arg("lam"),
        "k-th elementary symmetric polynomial");
  m.def("sigma_kB", &sigma_kB, py::arg("k"), py::arg("B"), py::arg("M"),
        "t^k coefficient of det(B + t M)");
  m.def("eigen_sym", [](const SymMatrix& M) {
    Spectrum s = eigen_sym(M);
    return py::make_tuple(s.eigenvalues, s.q);
  });
  m.def("op_gradient", &op_gradient);
  m.def("op_hessian_form", &op_hessian_form);
  m.def("cone_check", [](const OperatorSpec& spec, const SymMatrix& M,
                         double margin) {
    ConeReport r = cone_check(spec, M, margin);
    return py::make_tuple(r.inside, r.margin_attained);
  });

  m.def("check_sandwich",
        [](const std::vector<double>& values, int p) {
          SandwichResult r =
              check_sandwich(values, ScalarTransform::power_root(p));
          return sandwich_to_json(r).dump();
        },
        py::arg("values"), py::arg("p") = 2);
  m.def("sandwich_sweep_json",
        [](long samples, int m_max, int p, double y_hi, std::uint64_t seed) {
          return certificate_to_json(sandwich_sweep(
                     samples, m_max, ScalarTransform::power_root(p), y_hi,
                     seed))
              .dump();
        },
        py::arg("samples") = 10000, py::arg("m_max") = 5, py::arg("p") = 2,
        py::arg("y_hi") = 10.0, py::arg("seed") = 0);
  m.def("check_transform_concavity_json",
        [](const OperatorSpec& spec, int term, long samples,
           std::uint64_t seed) {
          return certificate_to_json(
                     check_transform_concavity(spec, term, samples, seed))
              .dump();
        });
  m.def("lemma31_form", &lemma31_form);
  m.def("lemma31_sweep_json",
        [](const OperatorSpec& spec, long samples, std::uint64_t seed) {
          return certificate_to_json(lemma31_sweep(spec, samples, seed))
              .dump();
        });

  m.def("radial_coefficient", &radial_coefficient, py::arg("n"),
        py::arg("f_const"));
  m.def("radial_polynomial", &radial_polynomial);
  m.def("reduction_identity_check", [](const std::vector<double>& lam) {
    return reduction_identity_check(lam);
  });
  m.def("counterexample_roots_json", [](int n, double c) {
    return root_report_to_json(counterexample_roots(n, c)).dump();
  });
  m.def("existence_transition", &existence_transition, py::arg("n"),
        py::arg("tol") = 1e-9);

  m.def("solve_dirichlet_json", &solve_to_json, py::arg("preset"),
        py::arg("n"), py::arg("domain_kind"), py::arg("a"), py::arg("b"),
        py::arg("f"), py::arg("phi"), py::arg("h"),
        "Solve and return the report (with node values) as JSON");
}
