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

#include "stochlift/division.hpp"

#include <algorithm>
#include <sstream>

#include "stochlift/linalg.hpp"

namespace stochlift {

namespace {

std::string describe(const CDivisibility& c) {
  std::ostringstream os;
  if (const auto* d = std::get_if<CDivisible>(&c)) {
    os << "divisible via " << d->route << " (residual " << d->factorization_residual << ")";
  } else {
    const auto& ind = std::get<CIndivisible>(c);
    os << "indivisible via " << ind.route << " (" << ind.violations.size()
       << " violated constraints)";
  }
  return os.str();
}

StochasticKernel induced(const SuperOperator& s, double tolerance) {
  Tolerances relaxed;
  relaxed.prob = std::max(relaxed.prob, tolerance);
  relaxed.stoch = std::max(relaxed.stoch, tolerance);
  return StochasticKernel(superop_kernel_extract(s), std::nullopt, std::nullopt, relaxed);
}

// Superoperator of ρ_S ↦ Tr_E[joint(ρ_S ⊗ env_state)].
SuperOperator reduce_to_system(const CMat& joint, const CMat& env_state, Eigen::Index n_sys,
                               Eigen::Index n_env) {
  CMat s(n_sys * n_sys, n_sys * n_sys);
  for (Eigen::Index b = 0; b < n_sys; ++b) {
    for (Eigen::Index a = 0; a < n_sys; ++a) {
      CMat unit = CMat::Zero(n_sys, n_sys);
      unit(a, b) = 1.0;
      const CMat in = kron(unit, env_state);
      const CMat out = unvec(joint * vec(in), n_sys * n_env);
      s.col(a + b * n_sys) = vec(partial_trace_env(out, n_sys, n_env));
    }
  }
  return SuperOperator(std::move(s));
}

}  // namespace

DivisionVerdict theorem1_check(const SuperOperator& e_10, const SuperOperator& e_20,
                               double tolerance, const Tolerances& tol) {
  if (e_10.dim() != e_20.dim()) throw DimensionError("theorem1_check: dimensions differ");
  Tolerances local = tol;
  local.tp = std::max(tol.tp, tolerance);
  for (const auto* e : {&e_10, &e_20}) {
    const CptpReport rep = check_cptp(*e, local);
    if (!rep.cptp()) {
      std::ostringstream os;
      os << "theorem1_check: input map is not CPTP (tp residual " << rep.tp_residual
         << ", min Choi eigenvalue " << rep.min_choi_eigenvalue << ")";
      throw NonCptpError(os.str());
    }
  }
  const Eigen::Index n = e_10.dim();
  DivisionVerdict v;

  const QDivisibility q = q_divisibility_check(e_20, e_10, tolerance, tol);
  if (const auto* d = std::get_if<QDivisible>(&q)) {
    v.q_divisible = true;
    v.q_witness = d->witness;
    v.q_detail = "divisible via " + d->route;
  } else if (const auto* ind = std::get_if<QIndivisible>(&q)) {
    v.q_detail = "indivisible: " + ind->reason;
  } else {
    v.q_detail = "inconclusive: " + std::get<QInconclusive>(q).reason;
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    const CMat image = unvec(e_10.matrix() * vec(basis_projector(n, i)), n);
    v.max_off_diagonal_mass = std::max(v.max_off_diagonal_mass, off_diagonal_sum(image));
  }
  v.all_diagonal_at_t1 = v.max_off_diagonal_mass <= tolerance;

  const StochasticKernel g10 = induced(e_10, tolerance);
  const StochasticKernel g20 = induced(e_20, tolerance);
  v.gamma_10 = g10.matrix();
  v.gamma_20 = g20.matrix();

  const CDivisibility c = c_divisibility_check(g20, g10, tolerance);
  v.c_detail = describe(c);
  if (const auto* d = std::get_if<CDivisible>(&c)) {
    v.c_divisible = true;
    v.c_witness = d->witness;
  }

  v.theorem_applies = v.q_divisible && v.all_diagonal_at_t1;
  if (v.theorem_applies) {
    const RMat gt = superop_kernel_extract(*v.q_witness);
    v.factorization_residual = max_abs(RMat(v.gamma_20 - gt * v.gamma_10));
    Tolerances kt;
    kt.prob = kt.stoch = std::max(tolerance, kt.stoch);
    if (!validate_kernel(gt, kt).pass || v.factorization_residual > tolerance) {
      throw std::logic_error("theorem1_check: quantum witness does not induce a classical factorization");
    }
    v.theorem_witness = gt;
    if (!v.c_divisible) {
      v.c_divisible = true;
      v.c_witness = gt;
      v.c_detail = "divisible via the quantum witness";
    }
  }
  return v;
}

SuperOperator tensor_superoperator(const SuperOperator& a, const SuperOperator& b) {
  const Eigen::Index na = a.dim();
  const Eigen::Index nb = b.dim();
  const Eigen::Index n = na * nb;
  CMat s(n * n, n * n);
  for (Eigen::Index x = 0; x < na; ++x) {
    for (Eigen::Index xp = 0; xp < na; ++xp) {
      CMat ua = CMat::Zero(na, na);
      ua(x, xp) = 1.0;
      const CMat ia = unvec(a.matrix() * vec(ua), na);
      for (Eigen::Index y = 0; y < nb; ++y) {
        for (Eigen::Index yp = 0; yp < nb; ++yp) {
          CMat ub = CMat::Zero(nb, nb);
          ub(y, yp) = 1.0;
          const CMat ib = unvec(b.matrix() * vec(ub), nb);
          const Eigen::Index row = x * nb + y;
          const Eigen::Index col = xp * nb + yp;
          s.col(row + col * n) = vec(kron(ia, ib));
        }
      }
    }
  }
  return SuperOperator(std::move(s));
}

CMat partial_trace_env(const CMat& joint, Eigen::Index n_sys, Eigen::Index n_env) {
  if (joint.rows() != n_sys * n_env || joint.cols() != n_sys * n_env) {
    throw DimensionError("partial_trace_env: size mismatch");
  }
  CMat out = CMat::Zero(n_sys, n_sys);
  for (Eigen::Index i = 0; i < n_sys; ++i) {
    for (Eigen::Index j = 0; j < n_sys; ++j) {
      for (Eigen::Index k = 0; k < n_env; ++k) out(i, j) += joint(i * n_env + k, j * n_env + k);
    }
  }
  return out;
}

EnvironmentScenarioReport environment_division_scenario(
    const ProbabilityVector& p_env, const SuperOperator& record_interaction,
    const SuperOperator& post_system, const SuperOperator& post_env, double tolerance,
    const Tolerances& tol) {
  const Eigen::Index n_env = p_env.size();
  const Eigen::Index n_joint = record_interaction.dim();
  if (n_joint % n_env != 0) throw DimensionError("scenario: joint dimension not divisible by n_env");
  const Eigen::Index n_sys = n_joint / n_env;
  if (post_system.dim() != n_sys) throw DimensionError("scenario: post_system dimension mismatch");
  if (post_env.dim() != n_env) throw DimensionError("scenario: post_env dimension mismatch");
  Tolerances local = tol;
  local.tp = std::max(tol.tp, tolerance);
  if (!check_cptp(record_interaction, local).cptp()) {
    throw NonCptpError("scenario: record interaction is not CPTP");
  }

  EnvironmentScenarioReport report;
  const CMat env_state = p_env.entries().cast<cplx>().asDiagonal().toDenseMatrix();
  report.record_form = true;
  report.min_reduced_eigenvalue = 1.0;
  for (Eigen::Index x = 0; x < n_sys; ++x) {
    const CMat rho0 = kron(basis_projector(n_sys, x), env_state);
    const CMat rho1 = unvec(record_interaction.matrix() * vec(rho0), n_joint);
    const CMat reduced = partial_trace_env(rho1, n_sys, n_env);
    double block = 0.0;
    for (Eigen::Index r = 0; r < n_joint; ++r) {
      for (Eigen::Index c = 0; c < n_joint; ++c) {
        if (r / n_env != c / n_env) block += std::abs(rho1(r, c));
      }
    }
    const double reduced_off = off_diagonal_sum(reduced);
    const bool ok = reduced_off <= tolerance && block <= tolerance;
    report.records.push_back({x, reduced_off, block, ok});
    report.record_form = report.record_form && ok;
    report.partial_trace_residual =
        std::max(report.partial_trace_residual, std::abs(reduced.trace() - rho1.trace()));
    report.min_reduced_eigenvalue =
        std::min(report.min_reduced_eigenvalue, hermitian_eigenvalues(reduced)(0));
  }

  const SuperOperator post = tensor_superoperator(post_system, post_env);
  report.reduced_10 = reduce_to_system(record_interaction.matrix(), env_state, n_sys, n_env);
  report.reduced_20 =
      reduce_to_system(post.matrix() * record_interaction.matrix(), env_state, n_sys, n_env);
  const StochasticKernel g10 = induced(report.reduced_10, tolerance);
  const StochasticKernel g20 = induced(report.reduced_20, tolerance);
  report.gamma_10 = g10.matrix();
  report.gamma_20 = g20.matrix();

  const CDivisibility c = c_divisibility_check(g20, g10, tolerance);
  report.c_detail = describe(c);
  if (const auto* d = std::get_if<CDivisible>(&c)) {
    report.c_divisible = true;
    report.c_witness = d->witness;
  }
  return report;
}

}  // namespace stochlift
