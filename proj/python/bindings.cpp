// Copyright 2026 The stochlift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stochlift/division.hpp"
#include "stochlift/dynamics.hpp"
#include "stochlift/kernels.hpp"
#include "stochlift/lifts.hpp"
#include "stochlift/linalg.hpp"
#include "stochlift/memory.hpp"

namespace py = pybind11;
using namespace stochlift;

namespace {

py::dict cdiv_dict(const CDivisibility& c) {
  py::dict d;
  if (const auto* ok = std::get_if<CDivisible>(&c)) {
    d["verdict"] = "Divisible";
    d["route"] = ok->route;
    d["witness"] = ok->witness;
    d["factorization_residual"] = ok->factorization_residual;
  } else {
    const auto& no = std::get<CIndivisible>(c);
    d["verdict"] = "Indivisible";
    d["route"] = no.route;
    d["infeasibility"] = no.infeasibility;
    py::list vs;
    for (const auto& v : no.violations) vs.append(py::make_tuple(v.kind, v.row, v.col, v.value));
    d["violations"] = vs;
  }
  return d;
}

py::dict qdiv_dict(const QDivisibility& q) {
  py::dict d;
  if (const auto* ok = std::get_if<QDivisible>(&q)) {
    d["verdict"] = "Divisible";
    d["route"] = ok->route;
    d["witness"] = ok->witness.matrix();
    d["factorization_residual"] = ok->factorization_residual;
  } else if (const auto* no = std::get_if<QIndivisible>(&q)) {
    d["verdict"] = "Indivisible";
    d["reason"] = no->reason;
  } else {
    const auto& inc = std::get<QInconclusive>(q);
    d["verdict"] = "Inconclusive";
    d["reason"] = inc.reason;
    d["candidate"] = inc.candidate.matrix();
    d["choi_spectrum"] = inc.choi_spectrum;
  }
  return d;
}

py::dict cptp_dict(const CptpReport& r) {
  py::dict d;
  d["trace_preserving"] = r.trace_preserving;
  d["tp_residual"] = r.tp_residual;
  d["completely_positive"] = r.completely_positive;
  d["min_choi_eigenvalue"] = r.min_choi_eigenvalue;
  d["cptp"] = r.cptp();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Stochastic kernels, their operator lifts and divisibility checks";

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<NonCptpError>(m, "NonCptpError", PyExc_ValueError);

  py::class_<Tolerances>(m, "Tolerances")
      .def(py::init<>())
      .def_static("uniform", &Tolerances::uniform)
      .def_readwrite("prob", &Tolerances::prob)
      .def_readwrite("stoch", &Tolerances::stoch)
      .def_readwrite("herm", &Tolerances::herm)
      .def_readwrite("psd", &Tolerances::psd)
      .def_readwrite("tp", &Tolerances::tp);

  // Kernels.
  py::class_<KernelValidation>(m, "KernelValidation")
      .def_readonly("passed", &KernelValidation::pass)
      .def_readonly("max_negative", &KernelValidation::max_negative)
      .def_readonly("max_column_residual", &KernelValidation::max_column_residual);
  m.def("validate_kernel", &validate_kernel, py::arg("matrix"), py::arg("tol") = Tolerances{});

  py::class_<StochasticKernel>(m, "StochasticKernel")
      .def(py::init<RMat, std::optional<double>, std::optional<double>, const Tolerances&>(),
           py::arg("matrix"), py::arg("from_time") = py::none(), py::arg("to_time") = py::none(),
           py::arg("tol") = Tolerances{})
      .def_static("identity", &StochasticKernel::identity)
      .def_property_readonly("matrix", &StochasticKernel::matrix)
      .def_property_readonly("dim", &StochasticKernel::dim)
      .def("apply", [](const StochasticKernel& k, const RVec& p) {
        return k.apply(ProbabilityVector(p)).entries();
      });
  m.def("compose", &compose, py::arg("later"), py::arg("earlier"), py::arg("tol") = Tolerances{});
  m.def(
      "c_divisibility_check",
      [](const StochasticKernel& g20, const StochasticKernel& g10, double tolerance) {
        return cdiv_dict(c_divisibility_check(g20, g10, tolerance));
      },
      py::arg("gamma_20"), py::arg("gamma_10"), py::arg("tolerance") = 1e-9);

  py::class_<RateMatrix>(m, "RateMatrix")
      .def(py::init<RMat, const Tolerances&>(), py::arg("matrix"), py::arg("tol") = Tolerances{})
      .def_property_readonly("matrix", &RateMatrix::matrix);
  m.def(
      "ctmc_propagate",
      [](const RateMatrix& r, const RVec& p0, double t) {
        return ctmc_propagate(r, ProbabilityVector(p0), t).entries();
      },
      py::arg("rates"), py::arg("p0"), py::arg("t"));

  // Operator side.
  py::class_<KrausMap>(m, "KrausMap")
      .def(py::init<std::vector<CMat>>(), py::arg("operators"))
      .def_property_readonly("operators", &KrausMap::operators)
      .def_property_readonly("dim", &KrausMap::dim)
      .def_property_readonly("rank", &KrausMap::rank)
      .def_property_readonly("completeness_residual", &KrausMap::completeness_residual)
      .def("trace_preserving", &KrausMap::trace_preserving, py::arg("tol") = 1e-10);

  py::class_<SuperOperator>(m, "SuperOperator")
      .def(py::init<CMat>(), py::arg("matrix"))
      .def_static("identity", &SuperOperator::identity)
      .def_static("dephasing", &SuperOperator::dephasing)
      .def_static("unitary_conjugation", &SuperOperator::unitary_conjugation)
      .def_property_readonly("matrix", &SuperOperator::matrix)
      .def_property_readonly("dim", &SuperOperator::dim)
      .def("after", &SuperOperator::after);

  m.def("to_superoperator", [](const KrausMap& k) { return to_superoperator(k); });
  m.def("check_cptp", [](const KrausMap& k) { return cptp_dict(check_cptp(k)); });
  m.def("check_cptp", [](const SuperOperator& s) { return cptp_dict(check_cptp(s)); });
  m.def("dictionary_kernel", [](const KrausMap& k) { return dictionary_kernel(k).matrix(); });
  m.def("induced_kernel", [](const SuperOperator& s) { return induced_kernel(s).kernel; });
  m.def("canonical_lift", &canonical_lift, py::arg("gamma"));
  m.def("barandes_column_lift", [](const CMat& theta) { return barandes_column_lift(theta); });
  m.def(
      "compatibility_check",
      [](const KrausMap& k, const StochasticKernel& g, double tolerance) {
        const CompatibilityReport r = compatibility_check(k, g, {}, tolerance);
        return py::make_tuple(r.pass, r.max_residual);
      },
      py::arg("map"), py::arg("gamma"), py::arg("tolerance") = 1e-12);
  m.def(
      "q_divisibility_check",
      [](const SuperOperator& e20, const SuperOperator& e10, double tolerance) {
        return qdiv_dict(q_divisibility_check(e20, e10, tolerance));
      },
      py::arg("e_20"), py::arg("e_10"), py::arg("tolerance") = 1e-9);

  // Dynamics.
  py::class_<GkslGenerator>(m, "GkslGenerator")
      .def(py::init<CMat, std::vector<CMat>, const Tolerances&>(), py::arg("hamiltonian"),
           py::arg("jump_ops") = std::vector<CMat>{}, py::arg("tol") = Tolerances{})
      .def_property_readonly("hamiltonian", &GkslGenerator::hamiltonian)
      .def_property_readonly("jump_ops", &GkslGenerator::jump_ops);
  m.def("gksl_superoperator", &gksl_superoperator);
  m.def(
      "propagate",
      [](const GkslGenerator& g, const CMat& rho0, double t) {
        return propagate(g, DensityOperator(rho0), t).matrix();
      },
      py::arg("generator"), py::arg("rho0"), py::arg("t"));
  m.def(
      "ctmc_embedding", [](const RateMatrix& r) { return ctmc_embedding(r); }, py::arg("rates"));

  // Memory.
  m.def("mod_square", &mod_square);
  m.def("two_step_kernel", &two_step_kernel, py::arg("v"), py::arg("u"));
  m.def("one_step_indistinguishable", &one_step_indistinguishable, py::arg("u_x"), py::arg("u_y"),
        py::arg("tolerance") = 1e-12);
  m.def("dof_counts", [](std::uint64_t n, std::uint64_t mm) {
    const DofCounts c = dof_counts(n, mm);
    return py::make_tuple(c.path_law, c.unitary_lift, c.cptp_lift);
  });

  // Division events.
  m.def(
      "theorem1_check",
      [](const SuperOperator& e10, const SuperOperator& e20, double tolerance) {
        const DivisionVerdict v = theorem1_check(e10, e20, tolerance);
        py::dict d;
        d["q_divisible"] = v.q_divisible;
        d["all_diagonal_at_t1"] = v.all_diagonal_at_t1;
        d["c_divisible"] = v.c_divisible;
        d["theorem_applies"] = v.theorem_applies;
        d["factorization_residual"] = v.factorization_residual;
        d["gamma_10"] = v.gamma_10;
        d["gamma_20"] = v.gamma_20;
        return d;
      },
      py::arg("e_10"), py::arg("e_20"), py::arg("tolerance") = 1e-9);

  m.def("expm", py::overload_cast<const CMat&>(&expm));
}
