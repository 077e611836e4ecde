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

// Phase information as path-space memory: one-step indistinguishable
// unitaries, two-step kernels, active-channel readout and parameter counts.

#ifndef STOCHLIFT_MEMORY_HPP
#define STOCHLIFT_MEMORY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "stochlift/lifts.hpp"

namespace stochlift {

inline constexpr double kUnitaryTolerance = 1e-10;

/// [U]_⊙ = U ⊙ U*.
RMat mod_square(const CMat& u);

/// True iff [U_X]_⊙ = [U_Y]_⊙ within tolerance. Both inputs must be unitary.
bool one_step_indistinguishable(const CMat& u_x, const CMat& u_y, double tolerance);

/// [V U]_⊙. Generally differs from [V]_⊙ [U]_⊙.
RMat two_step_kernel(const CMat& v, const CMat& u);

/// Column x0 of [V U_X]_⊙ − [V U_Y]_⊙; requires [U_X]_⊙ = [U_Y]_⊙.
RVec two_step_difference(const CMat& v, const CMat& u_x, const CMat& u_y, Eigen::Index x0,
                         double tolerance = kUnitaryTolerance);

class PovmEffects {
 public:
  /// Each effect Hermitian PSD; Σ E_j = I within tol.tp.
  explicit PovmEffects(std::vector<CMat> effects, const Tolerances& tol = {});

  const std::vector<CMat>& effects() const { return effects_; }
  double completeness_residual() const { return completeness_residual_; }

  /// p(j) = Tr(E_j ρ).
  RVec probabilities(const DensityOperator& rho) const;

 private:
  std::vector<CMat> effects_;
  double completeness_residual_ = 0.0;
};

/// E_j = Σ_β Λ_β† P^j Λ_β.
PovmEffects povm_from_channel(const KrausMap& lambda_ops, const Tolerances& tol = {});

/// Measurement operators M_{jβ} = P^j Λ_β, indexed [j][β].
std::vector<std::vector<CMat>> povm_measurement_operators(const KrausMap& lambda_ops);

/// Γ' = Σ_{β,α} [Λ_β K_α]_⊙.
StochasticKernel modified_readout_kernel(const KrausMap& lambda_ops, const KrausMap& evolution,
                                         const Tolerances& tol = {});

struct DofCounts {
  std::uint64_t path_law;      // N^{m+1} − 1
  std::uint64_t unitary_lift;  // m N²
  std::uint64_t cptp_lift;     // m (N⁴ − N²)
};

/// Throws PreconditionError for N < 2 or m < 1 and std::overflow_error when
/// a count exceeds 64 bits.
DofCounts dof_counts(std::uint64_t n, std::uint64_t m);

struct ThreeTimeFreedom {
  bool feasible = false;
  // Dimension of the affine hull of the feasible polytope of conditionals.
  Eigen::Index solution_dimension = 0;
  // Dimension of the affine solution set ignoring non-negativity.
  Eigen::Index affine_dimension = 0;
  Eigen::Index constraint_rank = 0;
  bool strictly_positive = false;  // a solution with every entry > 0 exists
  // conditional[x0](x2, x1) = p(x2 | x1, x0); a relative-interior sample.
  std::vector<RMat> sample_conditional;
  double infeasibility = 0.0;
};

/// Conditionals p(x2|x1,x0) with Σ_{x1} p(x2|x1,x0) Γ10(x1,x0) = Γ20(x2,x0).
ThreeTimeFreedom three_time_freedom(const StochasticKernel& gamma_10,
                                    const StochasticKernel& gamma_20, double tolerance = 1e-10);

}  // namespace stochlift

#endif  // STOCHLIFT_MEMORY_HPP
