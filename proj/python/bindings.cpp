#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "degeis/commands.hpp"
#include "degeis/constant_terms.hpp"
#include "degeis/que_measure.hpp"

namespace py = pybind11;
using namespace degeis;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Degenerate Eisenstein series on SL(n, Z)";
  m.attr("__version__") = code_version();

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PoleError>(m, "PoleError", PyExc_ValueError);
  py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
  py::register_exception<CertificationError>(m, "CertificationError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<EvaluatedValue>(m, "EvaluatedValue")
      .def_readonly("value", &EvaluatedValue::value)
      .def_readonly("abs_error", &EvaluatedValue::abs_error)
      .def_readonly("pole", &EvaluatedValue::pole)
      .def("__repr__", [](const EvaluatedValue& v) {
        std::ostringstream os;
        os << "EvaluatedValue(" << v.value << ", abs_error=" << v.abs_error << ")";
        return os.str();
      });

  m.def("gamma", [](cplx s) { return gamma_complex(s); }, py::arg("s"));
  m.def("log_gamma", &log_gamma, py::arg("z"));
  m.def("zeta", &riemann_zeta, py::arg("s"));
  m.def("completed_zeta", &completed_zeta, py::arg("s"));
  m.def("sigma", &sigma_complex, py::arg("m"), py::arg("w"));
  m.def("bessel_k_scaled", [](cplx nu, double x) { return bessel_k_scaled(nu, x); }, py::arg("nu"), py::arg("x"),
        "exp(pi |Im nu| / 2) K_nu(x)");
  m.def("bessel_k_scaled_alt", [](cplx nu, double x) { return bessel_k_scaled_alt(nu, x); }, py::arg("nu"),
        py::arg("x"));

  py::class_<IwasawaPoint>(m, "IwasawaPoint")
      .def(py::init<int, std::vector<double>, std::vector<double>>(), py::arg("n"), py::arg("x"), py::arg("y"))
      .def_readonly("n", &IwasawaPoint::n)
      .def_readonly("x", &IwasawaPoint::x)
      .def_readonly("y", &IwasawaPoint::y)
      .def("det", &IwasawaPoint::det)
      .def("matrix", &IwasawaPoint::matrix);
  m.def("iwasawa_decompose", &iwasawa_decompose, py::arg("g"));
  m.def("act", &act, py::arg("gamma"), py::arg("z"));
  m.def("reduce_to_fundamental", &reduce_to_fundamental, py::arg("z"));
  m.def("measure_constant", &measure_constant, py::arg("n"));

  m.def(
      "eisenstein",
      [](const IwasawaPoint& z, cplx s, int threads) {
        const SpectralParameter sp{z.n, s};
        auto pol = TruncationPolicy::for_parameter(sp);
        pol.threads = threads;
        py::gil_scoped_release release;
        return eisenstein_fourier_eval(z, sp, pol);
      },
      py::arg("z"), py::arg("s"), py::arg("threads") = 1, "E(z, s) by its Fourier expansion");
  m.def(
      "epstein",
      [](const IwasawaPoint& z, cplx s, int cutoff) {
        py::gil_scoped_release release;
        return epstein_direct(z, s, cutoff);
      },
      py::arg("z"), py::arg("s"), py::arg("cutoff") = 40, "E(z, s) by the lattice sum (Re(ns) > n + 0.2)");
  m.def("constant_term", &constant_term_formula, py::arg("z"), py::arg("s"));
  m.def("constant_square", &constant_square_formula, py::arg("z"), py::arg("s"));

  py::class_<MassResult>(m, "MassResult")
      .def_readonly("value", &MassResult::value)
      .def_readonly("std_error", &MassResult::std_error);
  m.def(
      "fundamental_domain_mass",
      [](std::int64_t samples, std::uint64_t seed, int threads) {
        py::gil_scoped_release release;
        return fundamental_domain_mass(samples, seed, threads);
      },
      py::arg("samples"), py::arg("seed") = 1, py::arg("threads") = 1);

  m.def(
      "run_command",
      [](const std::string& config_text) {
        const RunConfig cfg = RunConfig::parse(config_text);
        std::ostringstream csv, log;
        int rc;
        {
          py::gil_scoped_release release;
          rc = run_command_safely(cfg, csv, log);
        }
        return py::make_tuple(rc, csv.str(), log.str());
      },
      py::arg("config_text"), "Run a configuration; returns (exit_code, csv, log)");
  m.def("canonical_config", [](const std::string& text) { return RunConfig::parse(text).serialize(); },
        py::arg("config_text"));
}
