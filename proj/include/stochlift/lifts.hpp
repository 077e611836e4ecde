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

// Operator-side objects and the dictionary between stochastic kernels and
// linear maps on B(H).
//
// Conventions:
//  * vec() stacks columns, so vec(A X B) = (Bᵀ ⊗ A) vec(X).
//  * The Choi matrix of φ is Σ_ij |i><j| ⊗ φ(|i><j|).
//  * The induced kernel of φ has entries Γ_ji = Tr(P^j φ(P^i)).

#ifndef STOCHLIFT_LIFTS_HPP
#define STOCHLIFT_LIFTS_HPP

#include <string>
#include <variant>
#include <vector>

#include "stochlift/kernels.hpp"
#include "stochlift/types.hpp"

namespace stochlift {

class DensityOperator {
 public:
  /// Hermitian within tol.herm, unit trace within tol.herm, smallest
  /// eigenvalue >= -tol.psd. Throws ValidationError otherwise.
  explicit DensityOperator(CMat matrix, const Tolerances& tol = {});

  static DensityOperator basis_state(Eigen::Index n, Eigen::Index i);

  const CMat& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  CMat matrix_;
};

inline constexpr double kKrausDropNorm = 1e-14;

class KrausMap {
 public:
  /// Operators with Frobenius norm below kKrausDropNorm are dropped.
  explicit KrausMap(std::vector<CMat> operators);

  const std::vector<CMat>& operators() const { return ops_; }
  Eigen::Index dim() const { return dim_; }
  std::size_t rank() const { return ops_.size(); }

  /// ‖Σ K†K − I‖_max.
  double completeness_residual() const { return completeness_residual_; }
  bool trace_preserving(double tol = 1e-10) const { return completeness_residual_ <= tol; }

  /// Equivalent Kraus set with at most N² operators, obtained from the
  /// eigendecomposition of the Choi matrix.
  KrausMap reduced() const;

 private:
  std::vector<CMat> ops_;
  Eigen::Index dim_ = 0;
  double completeness_residual_ = 0.0;
};

/// φ(ρ) = Σ A_β ρ B_β; no positivity is implied.
class LeftRightMap {
 public:
  LeftRightMap(std::vector<CMat> left, std::vector<CMat> right);

  const std::vector<CMat>& left() const { return left_; }
  const std::vector<CMat>& right() const { return right_; }
  Eigen::Index dim() const { return dim_; }

 private:
  std::vector<CMat> left_;
  std::vector<CMat> right_;
  Eigen::Index dim_ = 0;
};

class SuperOperator {
 public:
  explicit SuperOperator(CMat matrix);

  static SuperOperator identity(Eigen::Index n);
  /// Π: keeps the diagonal of its argument.
  static SuperOperator dephasing(Eigen::Index n);
  static SuperOperator unitary_conjugation(const CMat& u);

  const CMat& matrix() const { return matrix_; }
  Eigen::Index dim() const { return dim_; }  // N, not N²

  SuperOperator after(const SuperOperator& first) const;  // this ∘ first

 private:
  CMat matrix_;
  Eigen::Index dim_ = 0;
};

class ChoiMatrix {
 public:
  explicit ChoiMatrix(const SuperOperator& s);

  const CMat& matrix() const { return matrix_; }
  const RVec& eigenvalues() const { return eigenvalues_; }
  double min_eigenvalue() const { return eigenvalues_(0); }
  /// tol_psd scaled by max(1, largest |eigenvalue|).
  bool completely_positive(double tol_psd = 1e-9) const;

 private:
  CMat matrix_;
  RVec eigenvalues_;
};

using LinearMap = std::variant<KrausMap, LeftRightMap, SuperOperator>;

Eigen::Index map_dim(const LinearMap& map);
CMat apply_map(const LinearMap& map, const CMat& x);

/// vec(J(p)) = D p: D ∈ R^{N²×N} with D_{k(i),i} = 1, k(i) = i(N+1) (0-based).
RMat injection_matrix(Eigen::Index n);
/// vec(Π(ρ)) = P vec(ρ).
RMat dephasing_projector(Eigen::Index n);

DensityOperator embed_diagonal(const ProbabilityVector& p);
DensityOperator dephase(const DensityOperator& rho);
CMat dephase(const CMat& x);

/// Diagonal of ρ as a probability vector. With require_diagonal set,
/// off-diagonal mass above `tolerance` throws PreconditionError; otherwise
/// ρ is dephased first.
ProbabilityVector readout(const DensityOperator& rho, bool require_diagonal,
                          double tolerance = 1e-10);

DensityOperator apply_kraus(const KrausMap& map, const DensityOperator& rho,
                            const Tolerances& tol = {});

struct CptpReport {
  bool trace_preserving = false;
  double tp_residual = 0.0;
  bool completely_positive = false;
  double min_choi_eigenvalue = 0.0;
  bool cptp() const { return trace_preserving && completely_positive; }
};

CptpReport check_cptp(const KrausMap& map, const Tolerances& tol = {});
CptpReport check_cptp(const SuperOperator& map, const Tolerances& tol = {});

struct InducedKernelReport {
  RMat kernel;
  KernelValidation validation;
  double max_imaginary = 0.0;  // largest |Im Γ_ji| discarded
  // LeftRightMap only: ‖Σ B_β A_β − I‖_max.
  std::optional<double> trace_condition_residual;
};

/// Γ_ji = Tr(P^j φ(P^i)). For a LeftRightMap this is Σ A_β ⊙ B_βᵀ.
InducedKernelReport induced_kernel(const LinearMap& map, const Tolerances& tol = {});

/// Γ = Σ K_β ⊙ K_β*. Throws ValidationError for non-trace-preserving maps.
StochasticKernel dictionary_kernel(const KrausMap& map, const Tolerances& tol = {});

/// K_ji = sqrt(Γ_ji) |j><i| for every Γ_ji > 0. One CPTP lift among many.
KrausMap canonical_lift(const StochasticKernel& gamma);

struct ThetaLift {
  LeftRightMap map;  // A = θ, B = θ†
  bool trace_preserving = false;  // θ unitary
  double tp_residual = 0.0;
  RMat kernel;  // [θ]_⊙
  KernelValidation validation;
};

ThetaLift theta_conjugation_lift(const CMat& theta, const Tolerances& tol = {});

/// K_β = θ P^β, β = 1..N. Requires [θ]_⊙ column-stochastic.
KrausMap barandes_column_lift(const CMat& theta, const Tolerances& tol = {});

struct CompatibilityProbe {
  RVec probe;
  double residual;  // ‖diag(φ(J(p))) − Γ p‖_max
};

struct CompatibilityReport {
  std::vector<CompatibilityProbe> probes;
  double max_residual = 0.0;
  bool pass = false;
};

/// Checks Π(φ(J(p))) = J(Γp) on each probe. An empty probe list means the
/// N basis vectors, which suffice by linearity.
CompatibilityReport compatibility_check(const LinearMap& map, const StochasticKernel& gamma,
                                        const std::vector<ProbabilityVector>& probes,
                                        double tolerance);

SuperOperator to_superoperator(const LinearMap& map);

/// Γ = Dᵀ P S D (real part).
RMat superop_kernel_extract(const SuperOperator& s);

struct QDivisible {
  SuperOperator witness;
  CptpReport cptp;
  std::string route;  // "inverse" or "pseudo-inverse"
  double factorization_residual = 0.0;
};

struct QIndivisible {
  std::string reason;
};

struct QInconclusive {
  std::string reason;
  SuperOperator candidate;
  RVec choi_spectrum;
};

using QDivisibility = std::variant<QDivisible, QIndivisible, QInconclusive>;

inline constexpr double kPinvCutoff = 1e-12;

/// Looks for a channel Ẽ with e_20 = Ẽ ∘ e_10 within the range of e_10.
QDivisibility q_divisibility_check(const SuperOperator& e_20, const SuperOperator& e_10,
                                   double tolerance, const Tolerances& tol = {},
                                   double condition_cap = kDefaultConditionCap);

}  // namespace stochlift

#endif  // STOCHLIFT_LIFTS_HPP
