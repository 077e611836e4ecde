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

#include "stochlift/memory.hpp"

#include <limits>
#include <sstream>

#include "stochlift/linalg.hpp"
#include "stochlift/simplex.hpp"

namespace stochlift {

namespace {

void require_unitary(const CMat& u, const char* name) {
  const double r = unitarity_residual(u);
  if (r > kUnitaryTolerance) {
    std::ostringstream os;
    os << name << " is not unitary (‖U†U − I‖ = " << r << ")";
    throw PreconditionError(os.str());
  }
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw std::overflow_error("dof_counts: count exceeds 64 bits");
  }
  return a * b;
}

}  // namespace

RMat mod_square(const CMat& u) { return mod_square_entries(u); }

bool one_step_indistinguishable(const CMat& u_x, const CMat& u_y, double tolerance) {
  require_unitary(u_x, "U_X");
  require_unitary(u_y, "U_Y");
  if (u_x.rows() != u_y.rows()) throw DimensionError("unitaries differ in dimension");
  return max_abs(RMat(mod_square(u_x) - mod_square(u_y))) <= tolerance;
}

RMat two_step_kernel(const CMat& v, const CMat& u) {
  require_unitary(v, "V");
  require_unitary(u, "U");
  if (v.rows() != u.rows()) throw DimensionError("unitaries differ in dimension");
  return mod_square(CMat(v * u));
}

RVec two_step_difference(const CMat& v, const CMat& u_x, const CMat& u_y, Eigen::Index x0,
                         double tolerance) {
  if (!one_step_indistinguishable(u_x, u_y, tolerance)) {
    throw PreconditionError("two_step_difference: U_X and U_Y are one-step distinguishable");
  }
  if (x0 < 0 || x0 >= u_x.rows()) throw DimensionError("two_step_difference: x0 out of range");
  return (two_step_kernel(v, u_x) - two_step_kernel(v, u_y)).col(x0);
}

PovmEffects::PovmEffects(std::vector<CMat> effects, const Tolerances& tol)
    : effects_(std::move(effects)) {
  if (effects_.empty()) throw DimensionError("POVM has no effects");
  const Eigen::Index n = effects_.front().rows();
  CMat sum = CMat::Zero(n, n);
  for (const CMat& e : effects_) {
    if (e.rows() != n || e.cols() != n) throw DimensionError("POVM effects differ in size");
    const double herm = hermiticity_residual(e);
    if (herm > tol.herm) throw ValidationError("POVM effect is not Hermitian", herm);
    const double min_eig = hermitian_eigenvalues(e)(0);
    if (min_eig < -tol.psd) throw ValidationError("POVM effect is not positive", -min_eig);
    sum += e;
  }
  completeness_residual_ = max_abs(CMat(sum - CMat::Identity(n, n)));
  if (completeness_residual_ > tol.tp) {
    throw ValidationError("POVM effects do not sum to the identity", completeness_residual_);
  }
}

RVec PovmEffects::probabilities(const DensityOperator& rho) const {
  RVec p(static_cast<Eigen::Index>(effects_.size()));
  for (std::size_t j = 0; j < effects_.size(); ++j) {
    p(static_cast<Eigen::Index>(j)) = (effects_[j] * rho.matrix()).trace().real();
  }
  return p;
}

PovmEffects povm_from_channel(const KrausMap& lambda_ops, const Tolerances& tol) {
  if (!lambda_ops.trace_preserving(tol.tp)) {
    throw ValidationError("povm_from_channel: channel is not trace-preserving",
                          lambda_ops.completeness_residual());
  }
  const Eigen::Index n = lambda_ops.dim();
  std::vector<CMat> effects;
  for (Eigen::Index j = 0; j < n; ++j) {
    CMat e = CMat::Zero(n, n);
    // Λ† P^j Λ = (row j of Λ)† (row j of Λ)
    for (const CMat& l : lambda_ops.operators()) e += l.row(j).adjoint() * l.row(j);
    effects.push_back(std::move(e));
  }
  return PovmEffects(std::move(effects), tol);
}

std::vector<std::vector<CMat>> povm_measurement_operators(const KrausMap& lambda_ops) {
  const Eigen::Index n = lambda_ops.dim();
  std::vector<std::vector<CMat>> out(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    for (const CMat& l : lambda_ops.operators()) {
      out[static_cast<std::size_t>(j)].push_back(basis_projector(n, j) * l);
    }
  }
  return out;
}

StochasticKernel modified_readout_kernel(const KrausMap& lambda_ops, const KrausMap& evolution,
                                         const Tolerances& tol) {
  if (lambda_ops.dim() != evolution.dim()) {
    throw DimensionError("modified_readout_kernel: dimension mismatch");
  }
  if (!lambda_ops.trace_preserving(tol.tp)) {
    throw ValidationError("modified_readout_kernel: readout channel is not trace-preserving",
                          lambda_ops.completeness_residual());
  }
  if (!evolution.trace_preserving(tol.tp)) {
    throw ValidationError("modified_readout_kernel: evolution is not trace-preserving",
                          evolution.completeness_residual());
  }
  std::vector<CMat> composed;
  for (const CMat& l : lambda_ops.operators()) {
    for (const CMat& k : evolution.operators()) composed.push_back(l * k);
  }
  return dictionary_kernel(KrausMap(std::move(composed)), tol);
}

DofCounts dof_counts(std::uint64_t n, std::uint64_t m) {
  if (n < 2) throw PreconditionError("dof_counts: N must be >= 2");
  if (m < 1) throw PreconditionError("dof_counts: m must be >= 1");
  std::uint64_t power = 1;
  for (std::uint64_t k = 0; k < m + 1; ++k) power = checked_mul(power, n);
  const std::uint64_t n2 = checked_mul(n, n);
  const std::uint64_t n4 = checked_mul(n2, n2);
  return {power - 1, checked_mul(m, n2), checked_mul(m, n4 - n2)};
}

ThreeTimeFreedom three_time_freedom(const StochasticKernel& gamma_10,
                                    const StochasticKernel& gamma_20, double tolerance) {
  if (gamma_10.dim() != gamma_20.dim()) throw DimensionError("three_time_freedom: dimension mismatch");
  const Eigen::Index n = gamma_10.dim();
  const Eigen::Index n2 = n * n;
  const Eigen::Index vars = n2 * n;
  auto index = [n, n2](Eigen::Index x2, Eigen::Index x1, Eigen::Index x0) {
    return x2 + x1 * n + x0 * n2;
  };
  const RMat& g10 = gamma_10.matrix();
  const RMat& g20 = gamma_20.matrix();

  // Rows [0, N²): Σ_{x2} p(x2|x1,x0) = 1.  Rows [N², 2N²): marginal constraint.
  RMat a = RMat::Zero(2 * n2, vars);
  RVec b = RVec::Zero(2 * n2);
  for (Eigen::Index x0 = 0; x0 < n; ++x0) {
    for (Eigen::Index x1 = 0; x1 < n; ++x1) {
      for (Eigen::Index x2 = 0; x2 < n; ++x2) {
        a(x1 + x0 * n, index(x2, x1, x0)) = 1.0;
        a(n2 + x2 + x0 * n, index(x2, x1, x0)) = g10(x1, x0);
      }
      b(x1 + x0 * n) = 1.0;
    }
    for (Eigen::Index x2 = 0; x2 < n; ++x2) b(n2 + x2 + x0 * n) = g20(x2, x0);
  }

  ThreeTimeFreedom out;
  out.constraint_rank = numerical_rank(a, 1e-10);
  out.affine_dimension = vars - out.constraint_rank;

  const lp::Result first = lp::feasible_point(a, b, tolerance);
  out.infeasibility = first.infeasibility;
  if (first.status == lp::Status::kInfeasible) return out;
  out.feasible = true;

  // A coordinate is an implicit equality x_i = 0 iff its maximum over the
  // polytope vanishes.
  std::vector<bool> can_be_positive(static_cast<std::size_t>(vars), false);
  auto mark = [&](const RVec& x) {
    for (Eigen::Index i = 0; i < vars; ++i) {
      if (x(i) > tolerance) can_be_positive[static_cast<std::size_t>(i)] = true;
    }
  };
  mark(first.x);
  for (Eigen::Index i = 0; i < vars; ++i) {
    if (can_be_positive[static_cast<std::size_t>(i)]) continue;
    RVec objective = RVec::Zero(vars);
    objective(i) = 1.0;
    const lp::Result r = lp::solve(a, b, objective, tolerance);
    if (r.status != lp::Status::kInfeasible) mark(r.x);
  }

  std::vector<Eigen::Index> forced;
  for (Eigen::Index i = 0; i < vars; ++i) {
    if (!can_be_positive[static_cast<std::size_t>(i)]) forced.push_back(i);
  }
  RMat hull(a.rows() + static_cast<Eigen::Index>(forced.size()), vars);
  hull.topRows(a.rows()) = a;
  hull.bottomRows(static_cast<Eigen::Index>(forced.size())).setZero();
  for (std::size_t k = 0; k < forced.size(); ++k) {
    hull(a.rows() + static_cast<Eigen::Index>(k), forced[k]) = 1.0;
  }
  out.solution_dimension = vars - numerical_rank(hull, 1e-10);

  const lp::Result center = lp::max_min_point(a, b, can_be_positive, tolerance);
  out.strictly_positive = forced.empty() && center.objective > tolerance;
  for (Eigen::Index x0 = 0; x0 < n; ++x0) {
    RMat cond(n, n);
    for (Eigen::Index x1 = 0; x1 < n; ++x1) {
      for (Eigen::Index x2 = 0; x2 < n; ++x2) cond(x2, x1) = center.x(index(x2, x1, x0));
    }
    out.sample_conditional.push_back(std::move(cond));
  }
  return out;
}

}  // namespace stochlift
