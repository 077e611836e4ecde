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

#ifndef STOCHLIFT_LINALG_HPP
#define STOCHLIFT_LINALG_HPP

#include <cstdint>

#include "stochlift/types.hpp"

namespace stochlift {

/// Matrix exponential by scaling and squaring with diagonal Padé
/// approximants of degree 3, 5, 7, 9 or 13, chosen from the 1-norm of the
/// argument (Higham's 2005 backward-error bounds for double precision).
RMat expm(const RMat& a);
CMat expm(const CMat& a);

/// a^k by repeated squaring; k = 0 yields the identity.
RMat matrix_power(const RMat& a, std::uint64_t k);
CMat matrix_power(const CMat& a, std::uint64_t k);

// Column-stacking vectorization: vec(X)[i + j*n] = X(i, j).
CVec vec(const CMat& x);
CMat unvec(const CVec& v, Eigen::Index n);

CMat kron(const CMat& a, const CMat& b);
RMat kron(const RMat& a, const RMat& b);

/// Entrywise product A ⊙ conj(A), i.e. |A_ij|^2.
RMat mod_square_entries(const CMat& a);

/// 2-norm condition number; +inf for singular or empty input.
double condition_number(const RMat& a);
double condition_number(const CMat& a);

/// Singular values below `rel_cutoff * sigma_max` are treated as zero.
Eigen::Index numerical_rank(const RMat& a, double rel_cutoff);
Eigen::Index numerical_rank(const CMat& a, double rel_cutoff);
CMat pseudo_inverse(const CMat& a, double rel_cutoff);

/// Eigenvalues of the Hermitian part of `a`, ascending.
RVec hermitian_eigenvalues(const CMat& a);

double hermiticity_residual(const CMat& a);
double unitarity_residual(const CMat& u);  // ‖U†U − I‖_max
double off_diagonal_sum(const CMat& a);     // Σ_{i≠j} |a_ij|
double off_diagonal_sum(const RMat& a);

/// Basis projector |i><i| in dimension n.
CMat basis_projector(Eigen::Index n, Eigen::Index i);

}  // namespace stochlift

#endif  // STOCHLIFT_LINALG_HPP
