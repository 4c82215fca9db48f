#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hopx/bisection.hpp"
#include "hopx/core.hpp"
#include "hopx/functions.hpp"
#include "hopx/instance_io.hpp"
#include "hopx/oracle.hpp"
#include "hopx/solver.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_hopx, m) {
  using namespace hopx;

  m.doc() = "Solvers for the pth-order proximal operator";

  py::register_exception<NumericalError>(m, "NumericalError",
                                         PyExc_ArithmeticError);
  py::register_exception<CapabilityError>(m, "CapabilityError",
                                          PyExc_TypeError);
  py::register_exception<VerificationError>(m, "VerificationError",
                                            PyExc_AssertionError);
  py::register_exception<StationaritySignal>(m, "StationaritySignal",
                                             PyExc_ValueError);

  py::enum_<Lambda0Strategy>(m, "Lambda0Strategy")
      .value("AUTO", Lambda0Strategy::kAuto)
      .value("ZERO", Lambda0Strategy::kZero)
      .value("GIVEN", Lambda0Strategy::kGiven);

  py::enum_<ContractionSide>(m, "ContractionSide")
      .value("ABOVE", ContractionSide::kAbove)
      .value("BELOW", ContractionSide::kBelow);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("max_iters", &SolverConfig::max_iters)
      .def_readwrite("tol", &SolverConfig::tol)
      .def_readwrite("zero_tol", &SolverConfig::zero_tol)
      .def_readwrite("lambda0_strategy", &SolverConfig::lambda0_strategy)
      .def_readwrite("lambda0", &SolverConfig::lambda0);

  py::class_<TraceRecord>(m, "TraceRecord")
      .def_readonly("iter", &TraceRecord::iter)
      .def_readonly("lambda_norm", &TraceRecord::lambda_norm)
      .def_readonly("t_k", &TraceRecord::t_k)
      .def_readonly("sigma_k", &TraceRecord::sigma_k)
      .def_readonly("objective", &TraceRecord::objective)
      .def_readonly("kkt_residual", &TraceRecord::kkt_residual)
      .def_readonly("elapsed_ms", &TraceRecord::elapsed_ms);

  py::class_<BisectionState>(m, "BisectionState")
      .def_readonly("tau0", &BisectionState::tau0)
      .def_readonly("tau1", &BisectionState::tau1)
      .def_readonly("initial_width", &BisectionState::initial_width)
      .def_readonly("t_mid", &BisectionState::t_mid)
      .def_readonly("T_mid", &BisectionState::T_mid)
      .def_readonly("widths", &BisectionState::widths);

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("x_final", &SolveReport::x_final)
      .def_readonly("lambda_final", &SolveReport::lambda_final)
      .def_readonly("iterations", &SolveReport::iterations)
      .def_readonly("converged", &SolveReport::converged)
      .def_readonly("trace", &SolveReport::trace)
      .def_readonly("bisection", &SolveReport::bisection);

  py::class_<ContractionCertificate>(m, "ContractionCertificate")
      .def_readonly("side", &ContractionCertificate::side)
      .def_readonly("factor", &ContractionCertificate::factor)
      .def_readonly("ratios", &ContractionCertificate::ratios)
      .def_readonly("terminal_error", &ContractionCertificate::terminal_error)
      .def_readonly("terminal_bound", &ContractionCertificate::terminal_bound);

  py::class_<OracleResult>(m, "OracleResult")
      .def_readonly("x_star", &OracleResult::x_star)
      .def_readonly("lambda_star", &OracleResult::lambda_star)
      .def_readonly("t_star", &OracleResult::t_star)
      .def_readonly("residual", &OracleResult::residual);

  py::class_<BisectionConfig>(m, "BisectionConfig")
      .def(py::init<>())
      .def_readwrite("tol_t", &BisectionConfig::tol_t)
      .def_readwrite("max_iters", &BisectionConfig::max_iters)
      .def_readwrite("tau_init", &BisectionConfig::tau_init);

  py::class_<ProxFunction>(m, "ProxFunction")
      .def("dim", &ProxFunction::dim)
      .def("value", &ProxFunction::value, py::arg("x"))
      .def("prox", &ProxFunction::prox, py::arg("t"), py::arg("c"))
      .def("is_smooth", &ProxFunction::is_smooth)
      .def("has_subgradient", &ProxFunction::has_subgradient)
      .def("has_conjugate_value", &ProxFunction::has_conjugate_value)
      .def("subgradient", &ProxFunction::subgradient, py::arg("x"))
      .def("conjugate_value", &ProxFunction::conjugate_value, py::arg("lam"))
      .def("kind", &ProxFunction::kind);

  py::class_<QuadraticFunction, ProxFunction>(m, "QuadraticFunction")
      .def(py::init<Matrix, Vector>(), py::arg("A"), py::arg("b"))
      .def_property_readonly("A", &QuadraticFunction::matrix)
      .def_property_readonly("b", &QuadraticFunction::linear)
      .def_property_readonly("eigenvalues", &QuadraticFunction::eigenvalues);

  py::class_<L1Norm, ProxFunction>(m, "L1Norm")
      .def(py::init<Index>(), py::arg("dim"));

  py::class_<LinearFunction, ProxFunction>(m, "LinearFunction")
      .def(py::init<Vector>(), py::arg("a"))
      .def_property_readonly("a", &LinearFunction::slope);

  py::class_<PointIndicator, ProxFunction>(m, "PointIndicator")
      .def(py::init<Vector>(), py::arg("b"))
      .def_property_readonly("b", &PointIndicator::point);

  py::class_<HopProblem>(m, "HopProblem")
      .def(py::init<const ProxFunction&, double, double, Vector>(),
           py::arg("f"), py::arg("sigma"), py::arg("p"), py::arg("c"),
           py::keep_alive<1, 2>())
      .def_property_readonly(
          "f", [](const HopProblem& pr) -> const ProxFunction& { return pr.f; },
          py::return_value_policy::reference_internal)
      .def_readonly("sigma", &HopProblem::sigma)
      .def_readonly("p", &HopProblem::p)
      .def_readonly("c", &HopProblem::c);

  m.def("ip_map", &ip_map, py::arg("x"), py::arg("p"));
  m.def("hop_objective", &hop_objective, py::arg("problem"), py::arg("x"));
  m.def("power_norm_conjugate", &power_norm_conjugate, py::arg("lam"),
        py::arg("sigma"), py::arg("p"), py::arg("c"));
  m.def("dual_objective", &dual_objective, py::arg("problem"), py::arg("lam"));
  m.def("weak_duality_gap", &weak_duality_gap, py::arg("problem"),
        py::arg("x"), py::arg("lam"));

  m.def("prox_quadratic", &prox_quadratic, py::arg("q"), py::arg("t"),
        py::arg("c"));
  m.def("prox_l1", &prox_l1, py::arg("t"), py::arg("c"));
  m.def("prox_linear", &prox_linear, py::arg("a"), py::arg("t"), py::arg("c"));
  m.def("prox_point", &prox_point, py::arg("b"), py::arg("t"), py::arg("c"));
  m.def("logsumexp_instance", &logsumexp_instance, py::arg("a_rows"),
        py::arg("b_shift"), py::arg("c"));

  m.def("solve_hop", &solve_hop, py::arg("problem"),
        py::arg("config") = SolverConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("kkt_residual", &kkt_residual, py::arg("problem"), py::arg("x"));
  m.def("check_contraction", &check_contraction, py::arg("report"),
        py::arg("lambda_star"), py::arg("p"));
  m.def("run_hoppa", &run_hoppa, py::arg("f"), py::arg("sigma"), py::arg("p"),
        py::arg("x0"), py::arg("outer_iters"), py::arg("inner_config"),
        py::call_guard<py::gil_scoped_release>());

  m.def("T_eval", &T_eval, py::arg("f"), py::arg("c"), py::arg("t"));
  m.def("find_bracket", &find_bracket, py::arg("f"), py::arg("c"),
        py::arg("sigma"), py::arg("tau_init"));
  m.def("solve_bisection_p2", &solve_bisection_p2, py::arg("f"), py::arg("c"),
        py::arg("sigma"), py::arg("config") = BisectionConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "check_T_sandwich",
      [](const ProxFunction& f, const Vector& c,
         const std::vector<std::pair<double, double>>& pairs) {
        std::string diagnostic;
        const bool ok = check_T_sandwich(f, c, pairs, &diagnostic);
        return py::make_tuple(ok, diagnostic);
      },
      py::arg("f"), py::arg("c"), py::arg("pairs"));

  m.def("oracle_quadratic_hop", &oracle_quadratic_hop, py::arg("q"),
        py::arg("sigma"), py::arg("p"), py::arg("c"), py::arg("tol") = 1e-10,
        py::call_guard<py::gil_scoped_release>());
  m.def("oracle_prox_gradient", &oracle_prox_gradient, py::arg("problem"),
        py::arg("x0"), py::arg("steps") = 100000, py::arg("eta") = 1.0,
        py::call_guard<py::gil_scoped_release>());
}
