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

// Stochastic-side objects: probability vectors, column-stochastic transition
// kernels acting on column vectors from the left, kernel families and
// classical divisibility.

#ifndef STOCHLIFT_KERNELS_HPP
#define STOCHLIFT_KERNELS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stochlift/types.hpp"

namespace stochlift {

class ProbabilityVector {
 public:
  /// Validates and clamps entries in [-tol.prob, 0) to zero. Larger
  /// negativity or a sum off by more than tol.prob throws ValidationError.
  explicit ProbabilityVector(RVec entries, const Tolerances& tol = {});

  static ProbabilityVector basis(Eigen::Index n, Eigen::Index i);
  static ProbabilityVector uniform(Eigen::Index n);

  const RVec& entries() const { return entries_; }
  Eigen::Index size() const { return entries_.size(); }
  double operator[](Eigen::Index i) const { return entries_(i); }

 private:
  RVec entries_;
};

struct KernelValidation {
  bool pass = false;
  double max_negative = 0.0;         // max(0, -min entry)
  double max_column_residual = 0.0;  // max_j |Σ_i Γ_ij − 1|
};

/// Checks non-negativity (tol.prob) and unit column sums (tol.stoch).
/// Throws DimensionError for non-square input.
KernelValidation validate_kernel(const RMat& matrix, const Tolerances& tol = {});

class StochasticKernel {
 public:
  /// Throws ValidationError when the matrix is not column-stochastic; tiny
  /// negative entries within tolerance are clamped to zero.
  explicit StochasticKernel(RMat matrix, std::optional<double> from_time = std::nullopt,
                            std::optional<double> to_time = std::nullopt,
                            const Tolerances& tol = {});

  static StochasticKernel identity(Eigen::Index n);

  const RMat& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  std::optional<double> from_time() const { return from_; }
  std::optional<double> to_time() const { return to_; }

  ProbabilityVector apply(const ProbabilityVector& p) const;

 private:
  RMat matrix_;
  std::optional<double> from_;
  std::optional<double> to_;
};

/// Γ(t←s) = Γ(t←u) Γ(u←s).
StochasticKernel compose(const StochasticKernel& later, const StochasticKernel& earlier,
                         const Tolerances& tol = {});

/// Two-parameter family Γ(t←s). The callable must accept any t >= s on or
/// near the grid and return a raw matrix.
struct KernelFamily {
  std::vector<double> grid;
  std::function<RMat(double to, double from)> matrix_at;

  StochasticKernel kernel(double to, double from, const Tolerances& tol = {}) const;
};

struct CkTriple {
  double s, u, t;
  double residual;
};

struct CkFamilyReport {
  std::vector<CkTriple> triples;
  double max_residual = 0.0;
  double max_identity_residual = 0.0;  // max_s ‖Γ(s←s) − I‖
  bool pass = false;
};

/// Residual ‖Γ(t←s) − Γ(t←u)Γ(u←s)‖_max for every grid triple s<u<t.
CkFamilyReport check_ck_family(const KernelFamily& family, double tolerance);

struct ConstraintViolation {
  std::string kind;  // "negative_entry", "column_sum", "factorization"
  Eigen::Index row = -1;
  Eigen::Index col = -1;
  double value = 0.0;
};

struct CDivisible {
  RMat witness;
  std::string route;  // "inverse" or "simplex"
  double factorization_residual = 0.0;
};

struct CIndivisible {
  std::string route;
  std::vector<ConstraintViolation> violations;
  double infeasibility = 0.0;
};

using CDivisibility = std::variant<CDivisible, CIndivisible>;

inline constexpr double kDefaultConditionCap = 1e12;

/// Searches a stochastic Γ̃ with gamma_20 = Γ̃ · gamma_10. A well-conditioned
/// gamma_10 fixes Γ̃ uniquely via the inverse; otherwise a phase-1 simplex
/// decides feasibility of {Γ̃ >= 0, 1ᵀΓ̃ = 1ᵀ, Γ̃ gamma_10 = gamma_20}.
CDivisibility c_divisibility_check(const StochasticKernel& gamma_20,
                                   const StochasticKernel& gamma_10, double tolerance,
                                   double condition_cap = kDefaultConditionCap);

class RateMatrix {
 public:
  /// Off-diagonal entries must be >= -tol.prob and columns sum to zero
  /// within tol.stoch.
  explicit RateMatrix(RMat matrix, const Tolerances& tol = {});
  const RMat& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  RMat matrix_;
};

struct ShortTimeReport {
  RMat r_estimate;
  RMat s_estimate;
  double step_used = 0.0;
  // Least-squares slope of log(off-diagonal mass) against log(h); NaN when
  // some mass vanishes or fewer than two steps carry mass.
  double leakage_exponent = 0.0;
  std::vector<double> steps;
  std::vector<double> leakage_mass;  // Σ_{i≠j} Γ(t+h←t)_ij per step
  double stencil_error_estimate = 0.0;
};

/// Estimates R = ∂Γ(τ←t)/∂τ and S = ∂²Γ(τ←t)/∂τ² at τ = t from the
/// smallest step, and fits the leakage exponent over all steps.
ShortTimeReport short_time_derivatives(const KernelFamily& family, double t,
                                       std::vector<double> steps);

/// p(t) = exp(tR) p0.
ProbabilityVector ctmc_propagate(const RateMatrix& rates, const ProbabilityVector& p0, double t,
                                 const Tolerances& tol = {});

struct ScalingRow {
  double epsilon;
  std::uint64_t n_steps;
  double error;
};

struct ScalingTable {
  std::vector<ScalingRow> rows;
  bool monotone = true;  // error strictly decreasing as epsilon decreases
};

/// Raises Γ^(ε) = I + ε² t* R to the ⌊t / (ε² t*)⌋ power and compares with
/// exp(tR). Throws ValidationError when Γ^(ε) is not stochastic.
ScalingTable dtmc_to_ctmc_scaling(const RateMatrix& rates, double t_star, double t,
                                  const std::vector<double>& epsilons, const Tolerances& tol = {});

struct TrivialityRow {
  std::uint64_t n;
  double h;
  double alpha;  // max_j (1 − Γ_h,jj)
  double bound;  // n · alpha
  double product_distance;  // ‖Γ_h^n − I‖_max
};

/// For each n, splits [s, t] into n steps of h = (t−s)/n, forms
/// Γ_h = [θ(h)]_⊙ and compares the Chapman–Kolmogorov product Γ_h^n with
/// the identity.
std::vector<TrivialityRow> theta_markov_triviality_demo(
    const std::function<CMat(double)>& theta_step, double t_minus_s,
    const std::vector<std::uint64_t>& n_values, const Tolerances& tol = {});

}  // namespace stochlift

#endif  // STOCHLIFT_KERNELS_HPP
