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

#ifndef STOCHLIFT_DYNAMICS_HPP
#define STOCHLIFT_DYNAMICS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "stochlift/kernels.hpp"
#include "stochlift/lifts.hpp"

namespace stochlift {

/// L(ρ) = −i[H, ρ] + Σ_μ (L_μ ρ L_μ† − ½{L_μ†L_μ, ρ}), with ħ = 1.
class GkslGenerator {
 public:
  /// Throws ValidationError if H is not Hermitian within tol.herm.
  GkslGenerator(CMat hamiltonian, std::vector<CMat> jump_ops, const Tolerances& tol = {});

  static GkslGenerator zero(Eigen::Index n);

  const CMat& hamiltonian() const { return hamiltonian_; }
  const std::vector<CMat>& jump_ops() const { return jumps_; }
  Eigen::Index dim() const { return hamiltonian_.rows(); }

 private:
  CMat hamiltonian_;
  std::vector<CMat> jumps_;
};

SuperOperator gksl_superoperator(const GkslGenerator& gen);

/// K_0 = I − dt (iH + ½ Σ L†L), K_μ = √dt L_μ. Trace-preserving to O(dt²).
KrausMap short_time_kraus(const GkslGenerator& gen, double dt);

/// ρ(t) = unvec(exp(t S_L) vec(ρ0)).
DensityOperator propagate(const GkslGenerator& gen, const DensityOperator& rho0, double t,
                          const Tolerances& tol = {});

/// Piecewise-constant generator: generators[k] acts on [grid[k], grid[k+1]].
DensityOperator propagate_piecewise(const std::vector<GkslGenerator>& generators,
                                    const std::vector<double>& grid, const DensityOperator& rho0,
                                    const Tolerances& tol = {});

/// Jump operators √R_ij |i><j| for i ≠ j with R_ij > 0, Hamiltonian diag(h).
/// An empty `diagonal_h` means H = 0.
GkslGenerator ctmc_embedding(const RateMatrix& rates, const RVec& diagonal_h = RVec());

/// True iff L(P^i) is diagonal within tolerance for every basis projector
/// and for `samples` additional seeded random diagonal states.
bool diagonal_preservation_check(const GkslGenerator& gen, int samples, double tolerance,
                                 std::uint64_t seed = 42);

struct SuperOperatorFamily {
  std::vector<double> grid;
  std::function<CMat(double to, double from)> superop;
};

struct ChecklistEntry {
  double t;
  double s;
  double residual;
};

struct CkChecklistReport {
  std::vector<ChecklistEntry> check_a;   // ‖S(s,s) − I‖_max per grid time (t = s)
  std::vector<CMat> generators;          // L(t) per grid time
  std::vector<ChecklistEntry> check_c;   // ‖E(t,s)‖_max per grid pair t >= s
  double max_check_a = 0.0;
  double max_check_c = 0.0;
  double stencil_error_estimate = 0.0;   // Richardson estimate over h and 2h
  bool pass = false;
};

inline constexpr double kDefaultFdStep = 1e-4;
inline constexpr double kDefaultChecklistTolerance = 1e-6;

/// (A) S(s,s) = I; (B) L(t) = ∂S(τ,t)/∂τ at τ = t by central differences;
/// (C) E(t,s) = ∂S(t,s)/∂t − L(t) S(t,s) = 0. The tolerance must dominate
/// the O(fd_step²) stencil error.
CkChecklistReport ck_checklist(const SuperOperatorFamily& family, double fd_step,
                               double tolerance);

/// S(t,s) = exp((t−s) S_L).
SuperOperatorFamily gksl_family(const GkslGenerator& gen, std::vector<double> grid);

/// S(t,s) = conj(U) ⊗ U with U = exp(−iH(t−s)).
SuperOperatorFamily unitary_family(const CMat& hamiltonian, std::vector<double> grid);

enum class PairwiseLift { kCanonical, kBarandes };

/// Lifts each kernel Γ(t←s) = [θ(t−s)]_⊙, θ(τ) = exp(−iHτ), on its own: the
/// canonical lift gives ρ ↦ J(Γ diag ρ), the column lift θ Π(ρ) θ†. Neither
/// family is a CK family of channels.
SuperOperatorFamily pairwise_lift_family(const CMat& hamiltonian, PairwiseLift lift,
                                         std::vector<double> grid);

/// Central-difference estimate of ∂S(τ,t)/∂τ at τ = t.
SuperOperator generator_from_family(const SuperOperatorFamily& family, double t, double fd_step);

}  // namespace stochlift

#endif  // STOCHLIFT_DYNAMICS_HPP
