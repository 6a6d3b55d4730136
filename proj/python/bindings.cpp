#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "dunkl_approx/appell_family.hpp"
#include "dunkl_approx/dunkl_core.hpp"
#include "dunkl_approx/error_bounds.hpp"
#include "dunkl_approx/errors.hpp"
#include "dunkl_approx/functions.hpp"
#include "dunkl_approx/operator_engine.hpp"
#include "dunkl_approx/power_series.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace dunkl;

PYBIND11_MODULE(_core, m) {
  m.doc() = R"pbdoc(
        Dunkl-Appell positive linear operators
        --------------------------------------

        Dunkl calculus primitives, operator weights and evaluation,
        closed-form moments, and error-bound verification.
    )pbdoc";

  auto base = py::register_exception<Error>(m, "DunklError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<PositivityError>(m, "PositivityError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<TranscriptionError>(m, "TranscriptionError", base.ptr());
  py::register_exception<TruncationError>(m, "TruncationError", base.ptr());

  m.def("theta", [](std::size_t i) { return theta(i); }, py::arg("i"));

  py::class_<DunklContext>(m, "DunklContext")
      .def(py::init<double>(), py::arg("mu"))
      .def_property_readonly("mu", &DunklContext::mu)
      .def_property_readonly("operator_admissible", &DunklContext::operator_admissible)
      .def("gamma", &DunklContext::gamma, py::arg("i"), "gamma_mu(i) by the recursion")
      .def("step", &DunklContext::step, py::arg("i"), "i + 2 mu theta(i)")
      .def("__repr__", [](const DunklContext& c) { return "DunklContext(mu=" + std::to_string(c.mu()) + ")"; });

  py::class_<ExpEvaluation>(m, "ExpEvaluation")
      .def_readonly("value", &ExpEvaluation::value)
      .def_readonly("terms_used", &ExpEvaluation::terms_used)
      .def_readonly("tail_bound", &ExpEvaluation::tail_bound);

  m.def("dunkl_exp", &dunkl_exp, py::arg("ctx"), py::arg("x"), py::arg("tol") = 1e-16);
  m.def("dunkl_exp_neg_ratio", &dunkl_exp_neg_ratio, py::arg("ctx"), py::arg("y"), py::arg("tol") = 1e-16);

  py::class_<PowerSeries>(m, "PowerSeries")
      .def(py::init<DunklContext, std::vector<double>>(), py::arg("ctx"), py::arg("coeffs"))
      .def_static("dunkl_exponential", &PowerSeries::dunkl_exponential, py::arg("ctx"), py::arg("x"),
                  py::arg("degree"))
      .def_property_readonly("coeffs", [](const PowerSeries& s) {
        return std::vector<double>(s.coeffs().begin(), s.coeffs().end());
      })
      .def_property_readonly("context", &PowerSeries::context)
      .def("eval", &PowerSeries::eval, py::arg("t"))
      .def("__call__", &PowerSeries::eval, py::arg("t"))
      .def("derivative", &PowerSeries::derivative)
      .def("dunkl_derivative", &PowerSeries::dunkl_derivative)
      .def("reflect", &PowerSeries::reflect)
      .def("__mul__", [](const PowerSeries& a, const PowerSeries& b) { return a * b; })
      .def("__add__", [](const PowerSeries& a, const PowerSeries& b) { return a + b; })
      .def("__sub__", [](const PowerSeries& a, const PowerSeries& b) { return a - b; })
      .def("__len__", &PowerSeries::size);

  py::enum_<Positivity>(m, "Positivity")
      .value("proven_by_coefficients", Positivity::proven_by_coefficients)
      .value("unverified", Positivity::unverified);

  py::class_<AppellFamily>(m, "AppellFamily")
      .def_static("from_coefficients", &AppellFamily::from_coefficients, py::arg("ctx"), py::arg("coeffs"))
      .def_static("gould_hopper", &AppellFamily::gould_hopper, py::arg("ctx"), py::arg("a"), py::arg("d"),
                  py::arg("degree_cap") = 64)
      .def_property_readonly("context", &AppellFamily::context)
      .def_property_readonly("generator", &AppellFamily::generator)
      .def_property_readonly("positivity", &AppellFamily::positivity)
      .def_property_readonly("q_at_one", &AppellFamily::q_at_one)
      .def("polynomial", &AppellFamily::polynomial, py::arg("i"));

  py::class_<WeightSequence>(m, "WeightSequence")
      .def_readonly("weights", &WeightSequence::weights)
      .def_readonly("tail_mass", &WeightSequence::tail_mass)
      .def_readonly("n", &WeightSequence::n)
      .def_readonly("x", &WeightSequence::x);

  m.def(
      "weights",
      [](const AppellFamily& f, int n, double x, double tol, std::size_t cap, bool allow_unverified) {
        return weights(f, n, x, {tol, cap, allow_unverified});
      },
      py::arg("family"), py::arg("n"), py::arg("x"), py::arg("tol") = 1e-13, py::arg("cap") = 0,
      py::arg("allow_unverified") = false);

  py::class_<OperatorSpec>(m, "OperatorSpec")
      .def(py::init([](AppellFamily family, int n, double tol, std::size_t cap, bool allow_unverified) {
             return OperatorSpec{std::move(family), n, tol, cap, allow_unverified};
           }),
           py::arg("family"), py::arg("n"), py::arg("tol") = 1e-13, py::arg("cap") = 0,
           py::arg("allow_unverified") = false)
      .def_readonly("family", &OperatorSpec::family)
      .def_readonly("n", &OperatorSpec::n)
      .def_readonly("tol", &OperatorSpec::tol);

  m.def(
      "apply", [](const OperatorSpec& s, const RealFunction& f, double x) { return apply(s, f, x); },
      py::arg("spec"), py::arg("f"), py::arg("x"), "K_n^mu(f; x) by weighted summation");

  py::class_<QFunctionals>(m, "QFunctionals")
      .def_readonly("q1", &QFunctionals::q1)
      .def_readonly("q_m1", &QFunctionals::q_m1)
      .def_readonly("dq1", &QFunctionals::dq1)
      .def_readonly("dq_m1", &QFunctionals::dq_m1)
      .def_readonly("d2q1", &QFunctionals::d2q1)
      .def_readonly("lq1", &QFunctionals::lq1)
      .def_readonly("lq_m1", &QFunctionals::lq_m1)
      .def_readonly("d_lq1", &QFunctionals::d_lq1)
      .def_readonly("l_dq1", &QFunctionals::l_dq1)
      .def_readonly("llq1", &QFunctionals::llq1);
  m.def("q_functionals", &q_functionals, py::arg("family"));

  py::class_<RawMoments>(m, "RawMoments")
      .def_readonly("m0", &RawMoments::m0)
      .def_readonly("m1", &RawMoments::m1)
      .def_readonly("m2", &RawMoments::m2);
  py::enum_<MomentSource>(m, "MomentSource")
      .value("closed_form", MomentSource::closed_form)
      .value("series_summed", MomentSource::series_summed);
  py::class_<CentralMoments>(m, "CentralMoments")
      .def_readonly("omega1", &CentralMoments::omega1)
      .def_readonly("omega2", &CentralMoments::omega2)
      .def_readonly("source", &CentralMoments::source);

  m.def("moments_closed", &moments_closed, py::arg("spec"), py::arg("x"));
  m.def("moments_summed", &moments_summed, py::arg("spec"), py::arg("x"));
  m.def("central_moments", &central_moments, py::arg("spec"), py::arg("x"));
  m.def("central_moments_summed", &central_moments_summed, py::arg("spec"), py::arg("x"));

  m.def(
      "modulus1",
      [](const RealFunction& f, double delta, double window_end, double step) {
        return modulus1(f, delta, window_end, step).value;
      },
      py::arg("f"), py::arg("delta"), py::arg("window_end"), py::arg("grid_step"));
  m.def(
      "modulus2",
      [](const RealFunction& f, double s, double window_end, double step) {
        return modulus2(f, s, window_end, step).value;
      },
      py::arg("f"), py::arg("s"), py::arg("window_end"), py::arg("grid_step"));
  m.def("theorem2_bound", &theorem2_bound, py::arg("spec"), py::arg("x"), py::arg("modulus"));
  m.def("theorem3_bound", &theorem3_bound, py::arg("spec"), py::arg("x"), py::arg("M"), py::arg("beta"));
  m.def("theorem4_bound", &theorem4_bound, py::arg("spec"), py::arg("x"), py::arg("interval_end"),
        py::arg("modulus2"), py::arg("sup_norm"));

  py::class_<BoundRecord>(m, "BoundRecord")
      .def_readonly("x", &BoundRecord::x)
      .def_readonly("actual_error", &BoundRecord::actual_error)
      .def_readonly("bound", &BoundRecord::bound)
      .def_readonly("margin", &BoundRecord::margin)
      .def_readonly("flagged", &BoundRecord::flagged);
  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("records", &BoundReport::records)
      .def_readonly("min_margin", &BoundReport::min_margin)
      .def_readonly("violations", &BoundReport::violations)
      .def_readonly("analytic_modulus", &BoundReport::analytic_modulus)
      .def_property_readonly("passed", &BoundReport::passed);

  m.def(
      "verify",
      [](const OperatorSpec& spec, const std::string& function, const std::string& theorem,
         const std::vector<double>& grid, double interval_end, double modulus_scale) {
        VerifyParams params;
        params.interval_end = interval_end;
        params.modulus_scale = modulus_scale;
        return verify(spec, find_function(function), parse_theorem(theorem), grid, params);
      },
      py::arg("spec"), py::arg("function"), py::arg("theorem"), py::arg("grid"), py::arg("interval_end") = 2.0,
      py::arg("modulus_scale") = 1.0);

  m.def("function_names", [] {
    std::vector<std::string> names;
    for (const auto& e : function_registry()) names.push_back(e.name);
    return names;
  });

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
