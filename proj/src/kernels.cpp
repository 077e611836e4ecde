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

#include "stochlift/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stochlift/linalg.hpp"
#include "stochlift/simplex.hpp"

namespace stochlift {

namespace {

void clamp_small_negatives(RMat& m, double tol) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) < 0.0 && m(i, j) >= -tol) m(i, j) = 0.0;
    }
  }
}

std::string describe(const KernelValidation& v) {
  std::ostringstream os;
  os << "not column-stochastic: max negative entry " << v.max_negative
     << ", max |column sum - 1| " << v.max_column_residual;
  return os.str();
}

}  // namespace

ProbabilityVector::ProbabilityVector(RVec entries, const Tolerances& tol)
    : entries_(std::move(entries)) {
  if (entries_.size() == 0) throw DimensionError("probability vector is empty");
  const double min_entry = entries_.minCoeff();
  if (!entries_.allFinite()) throw ValidationError("probability vector has non-finite entries", 0);
  if (min_entry < -tol.prob) {
    throw ValidationError("probability vector has a negative entry", -min_entry);
  }
  const double residual = std::abs(entries_.sum() - 1.0);
  if (residual > tol.prob) throw ValidationError("probabilities do not sum to 1", residual);
  entries_ = entries_.cwiseMax(0.0);
}

ProbabilityVector ProbabilityVector::basis(Eigen::Index n, Eigen::Index i) {
  if (i < 0 || i >= n) throw DimensionError("basis index out of range");
  RVec e = RVec::Zero(n);
  e(i) = 1.0;
  return ProbabilityVector(std::move(e));
}

ProbabilityVector ProbabilityVector::uniform(Eigen::Index n) {
  return ProbabilityVector(RVec::Constant(n, 1.0 / static_cast<double>(n)));
}

KernelValidation validate_kernel(const RMat& matrix, const Tolerances& tol) {
  if (matrix.rows() != matrix.cols()) throw DimensionError("kernel matrix must be square");
  KernelValidation v;
  if (matrix.size() == 0) throw DimensionError("kernel matrix is empty");
  if (!matrix.allFinite()) {
    v.max_negative = v.max_column_residual = std::numeric_limits<double>::infinity();
    return v;
  }
  v.max_negative = std::max(0.0, -matrix.minCoeff());
  const RVec sums = matrix.colwise().sum().transpose();
  v.max_column_residual = (sums.array() - 1.0).abs().maxCoeff();
  v.pass = v.max_negative <= tol.prob && v.max_column_residual <= tol.stoch;
  return v;
}

StochasticKernel::StochasticKernel(RMat matrix, std::optional<double> from_time,
                                   std::optional<double> to_time, const Tolerances& tol)
    : matrix_(std::move(matrix)), from_(from_time), to_(to_time) {
  const KernelValidation v = validate_kernel(matrix_, tol);
  if (!v.pass) {
    throw ValidationError(describe(v), std::max(v.max_negative, v.max_column_residual));
  }
  clamp_small_negatives(matrix_, tol.prob);
  if (from_ && to_ && *from_ == *to_) {
    const double r = max_abs(matrix_ - RMat::Identity(dim(), dim()));
    if (r > tol.stoch) throw ValidationError("kernel over an empty interval is not the identity", r);
  }
}

StochasticKernel StochasticKernel::identity(Eigen::Index n) {
  return StochasticKernel(RMat::Identity(n, n));
}

ProbabilityVector StochasticKernel::apply(const ProbabilityVector& p) const {
  if (p.size() != dim()) throw DimensionError("kernel and vector dimensions differ");
  return ProbabilityVector(matrix_ * p.entries());
}

StochasticKernel compose(const StochasticKernel& later, const StochasticKernel& earlier,
                         const Tolerances& tol) {
  if (later.dim() != earlier.dim()) throw DimensionError("compose: kernel dimensions differ");
  if (earlier.to_time() && later.from_time() && *earlier.to_time() != *later.from_time()) {
    throw PreconditionError("compose: earlier.to_time differs from later.from_time");
  }
  // Column sums of a product of stochastic matrices drift by at most N ulps
  // per factor, so revalidate with a dimension-scaled tolerance.
  Tolerances relaxed = tol;
  relaxed.stoch = tol.stoch * static_cast<double>(later.dim());
  return StochasticKernel(later.matrix() * earlier.matrix(), earlier.from_time(), later.to_time(),
                          relaxed);
}

StochasticKernel KernelFamily::kernel(double to, double from, const Tolerances& tol) const {
  if (!matrix_at) throw std::invalid_argument("kernel family has no evaluator");
  return StochasticKernel(matrix_at(to, from), from, to, tol);
}

CkFamilyReport check_ck_family(const KernelFamily& family, double tolerance) {
  if (family.grid.size() < 3) throw InsufficientDataError("check_ck_family: grid needs >= 3 times");
  if (!std::is_sorted(family.grid.begin(), family.grid.end()) ||
      std::adjacent_find(family.grid.begin(), family.grid.end()) != family.grid.end()) {
    throw PreconditionError("check_ck_family: grid must be strictly increasing");
  }
  CkFamilyReport report;
  const auto& g = family.grid;
  for (double s : g) {
    const RMat m = family.matrix_at(s, s);
    report.max_identity_residual =
        std::max(report.max_identity_residual, max_abs(m - RMat::Identity(m.rows(), m.cols())));
  }
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = a + 1; b < g.size(); ++b) {
      for (std::size_t c = b + 1; c < g.size(); ++c) {
        const RMat direct = family.matrix_at(g[c], g[a]);
        const RMat via = family.matrix_at(g[c], g[b]) * family.matrix_at(g[b], g[a]);
        if (direct.rows() != via.rows()) throw DimensionError("check_ck_family: inconsistent sizes");
        const double r = max_abs(direct - via);
        report.triples.push_back({g[a], g[b], g[c], r});
        report.max_residual = std::max(report.max_residual, r);
      }
    }
  }
  report.pass = report.max_residual <= tolerance && report.max_identity_residual <= tolerance;
  return report;
}

CDivisibility c_divisibility_check(const StochasticKernel& gamma_20,
                                   const StochasticKernel& gamma_10, double tolerance,
                                   double condition_cap) {
  if (gamma_20.dim() != gamma_10.dim()) {
    throw DimensionError("c_divisibility_check: kernel dimensions differ");
  }
  const Eigen::Index n = gamma_10.dim();
  const RMat& g10 = gamma_10.matrix();
  const RMat& g20 = gamma_20.matrix();

  if (condition_number(g10) < condition_cap) {
    // Γ̃ Γ10 = Γ20  <=>  Γ10ᵀ Γ̃ᵀ = Γ20ᵀ
    RMat w = g10.transpose().partialPivLu().solve(g20.transpose()).transpose();
    std::vector<ConstraintViolation> violations;
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (w(i, j) < -tolerance) violations.push_back({"negative_entry", i, j, w(i, j)});
      }
      const double col = w.col(j).sum() - 1.0;
      if (std::abs(col) > tolerance) violations.push_back({"column_sum", -1, j, col});
    }
    if (!violations.empty()) return CIndivisible{"inverse", std::move(violations), 0.0};
    clamp_small_negatives(w, tolerance);
    const double residual = max_abs(g20 - w * g10);
    return CDivisible{std::move(w), "inverse", residual};
  }

  // Unknown x = vec(Γ̃) (column-major, x[i + j n] = Γ̃_ij).
  const Eigen::Index rows = n + n * n;
  RMat a = RMat::Zero(rows, n * n);
  RVec b = RVec::Zero(rows);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) a(j, i + j * n) = 1.0;
    b(j) = 1.0;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index row = n + i + k * n;
      for (Eigen::Index j = 0; j < n; ++j) a(row, i + j * n) = g10(j, k);
      b(row) = g20(i, k);
    }
  }
  const lp::Result lp = lp::feasible_point(a, b, tolerance);
  RMat w = Eigen::Map<const RMat>(lp.x.data(), n, n);
  if (lp.status == lp::Status::kInfeasible) {
    std::vector<ConstraintViolation> violations;
    const RVec residual = a * lp.x - b;
    for (Eigen::Index row : lp.violated_rows) {
      if (row < n) {
        violations.push_back({"column_sum", -1, row, residual(row)});
      } else {
        const Eigen::Index idx = row - n;
        violations.push_back({"factorization", idx % n, idx / n, residual(row)});
      }
    }
    return CIndivisible{"simplex", std::move(violations), lp.infeasibility};
  }
  const double residual = max_abs(g20 - w * g10);
  return CDivisible{std::move(w), "simplex", residual};
}

RateMatrix::RateMatrix(RMat matrix, const Tolerances& tol) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw DimensionError("rate matrix must be square");
  if (!matrix_.allFinite()) throw ValidationError("rate matrix has non-finite entries", 0);
  for (Eigen::Index j = 0; j < matrix_.cols(); ++j) {
    for (Eigen::Index i = 0; i < matrix_.rows(); ++i) {
      if (i == j) continue;
      if (matrix_(i, j) < -tol.prob) {
        throw ValidationError("rate matrix has a negative off-diagonal rate", -matrix_(i, j));
      }
      matrix_(i, j) = std::max(0.0, matrix_(i, j));
    }
  }
  if (matrix_.size() > 0) {
    const double residual = matrix_.colwise().sum().cwiseAbs().maxCoeff();
    if (residual > tol.stoch) throw ValidationError("rate matrix columns do not sum to 0", residual);
  }
}

ShortTimeReport short_time_derivatives(const KernelFamily& family, double t,
                                       std::vector<double> steps) {
  if (steps.size() < 2) throw InsufficientDataError("short_time_derivatives: need >= 2 steps");
  std::sort(steps.begin(), steps.end());
  if (steps.front() <= 0.0) throw PreconditionError("short_time_derivatives: steps must be > 0");

  ShortTimeReport report;
  report.steps = steps;
  const double h = steps.front();
  report.step_used = h;

  // Kernels only exist forward in time, so the τ-derivatives at τ = t use
  // second-order one-sided stencils on t, t+h, ..., t+4h.
  std::vector<RMat> f;
  for (int k = 0; k <= 4; ++k) f.push_back(family.kernel(t + k * h, t).matrix());
  report.r_estimate = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  report.s_estimate = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (h * h);
  const RMat r_coarse = (-3.0 * f[0] + 4.0 * f[2] - f[4]) / (4.0 * h);
  report.stencil_error_estimate = max_abs(report.r_estimate - r_coarse) / 3.0;

  bool all_positive = true;
  for (double step : steps) {
    const double mass = off_diagonal_sum(family.kernel(t + step, t).matrix());
    report.leakage_mass.push_back(mass);
    if (!(mass > 0.0)) all_positive = false;
  }
  if (!all_positive) {
    report.leakage_exponent = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  double mx = 0, my = 0;
  const double count = static_cast<double>(steps.size());
  for (std::size_t k = 0; k < steps.size(); ++k) {
    mx += std::log(steps[k]);
    my += std::log(report.leakage_mass[k]);
  }
  mx /= count;
  my /= count;
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const double dx = std::log(steps[k]) - mx;
    sxy += dx * (std::log(report.leakage_mass[k]) - my);
    sxx += dx * dx;
  }
  report.leakage_exponent = sxx > 0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
  return report;
}

ProbabilityVector ctmc_propagate(const RateMatrix& rates, const ProbabilityVector& p0, double t,
                                 const Tolerances& tol) {
  if (t < 0.0) throw PreconditionError("ctmc_propagate: t must be >= 0");
  if (p0.size() != rates.dim()) throw DimensionError("ctmc_propagate: dimension mismatch");
  if (t == 0.0) return p0;
  Tolerances relaxed = tol;
  relaxed.prob = std::max(tol.prob, 1e-12);
  return ProbabilityVector(expm(RMat(t * rates.matrix())) * p0.entries(), relaxed);
}

ScalingTable dtmc_to_ctmc_scaling(const RateMatrix& rates, double t_star, double t,
                                  const std::vector<double>& epsilons, const Tolerances& tol) {
  if (t < 0.0) throw PreconditionError("dtmc_to_ctmc_scaling: t must be >= 0");
  if (t_star <= 0.0) throw PreconditionError("dtmc_to_ctmc_scaling: t_star must be > 0");
  const Eigen::Index n = rates.dim();
  const RMat target = expm(RMat(t * rates.matrix()));
  ScalingTable table;
  for (double eps : epsilons) {
    if (!(eps > 0.0)) throw PreconditionError("dtmc_to_ctmc_scaling: epsilon must be > 0");
    const double dt = eps * eps * t_star;
    const RMat step = RMat::Identity(n, n) + dt * rates.matrix();
    const KernelValidation v = validate_kernel(step, tol);
    if (!v.pass) {
      std::ostringstream os;
      os << "step kernel for epsilon " << eps << " is not stochastic; epsilon too large";
      throw ValidationError(os.str(), v.max_negative);
    }
    // t / dt is integral for the usual decimal inputs but may round just
    // below; nudge before flooring.
    const double ratio = t / dt;
    const auto n_steps = static_cast<std::uint64_t>(std::floor(ratio * (1.0 + 1e-12)));
    const RMat product = matrix_power(step, n_steps);
    table.rows.push_back({eps, n_steps, max_abs(product - target)});
  }
  std::vector<ScalingRow> sorted = table.rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const ScalingRow& x, const ScalingRow& y) { return x.epsilon > y.epsilon; });
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    const double prev = sorted[k - 1].error;
    const double cur = sorted[k].error;
    if (prev > 1e-14 ? !(cur < prev) : cur > 1e-14) table.monotone = false;
  }
  return table;
}

std::vector<TrivialityRow> theta_markov_triviality_demo(
    const std::function<CMat(double)>& theta_step, double t_minus_s,
    const std::vector<std::uint64_t>& n_values, const Tolerances& tol) {
  const CMat theta0 = theta_step(0.0);
  if (theta0.rows() != theta0.cols()) throw DimensionError("theta must be square");
  const Eigen::Index dim = theta0.rows();
  const double r0 = max_abs(theta0 - CMat::Identity(dim, dim));
  if (r0 > tol.stoch) throw PreconditionError("theta(0) is not the identity");

  std::vector<TrivialityRow> rows;
  for (std::uint64_t n : n_values) {
    if (n == 0) throw PreconditionError("theta_markov_triviality_demo: n must be >= 1");
    const double h = t_minus_s / static_cast<double>(n);
    const RMat gamma = mod_square_entries(theta_step(h));
    const KernelValidation v = validate_kernel(gamma, tol);
    if (!v.pass) throw ValidationError("[theta(h)] is not stochastic", v.max_column_residual);
    const double alpha = (1.0 - gamma.diagonal().array()).maxCoeff();
    const RMat product = matrix_power(gamma, n);
    rows.push_back({n, h, alpha, static_cast<double>(n) * alpha,
                    max_abs(product - RMat::Identity(dim, dim))});
  }
  return rows;
}

}  // namespace stochlift
