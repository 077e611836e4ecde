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

// Seeded random instances for tests and demos.

#ifndef STOCHLIFT_RANDOM_HPP
#define STOCHLIFT_RANDOM_HPP

#include <random>

#include "stochlift/dynamics.hpp"
#include "stochlift/kernels.hpp"
#include "stochlift/lifts.hpp"

namespace stochlift {

using Rng = std::mt19937_64;

/// Columns drawn uniformly from the simplex.
RMat random_stochastic(Eigen::Index n, Rng& rng);

/// Haar-distributed unitary (QR of a complex Gaussian matrix, phases fixed).
CMat random_unitary(Eigen::Index n, Rng& rng);

/// CPTP map with `rank` Kraus operators cut from a random isometry.
KrausMap random_kraus_channel(Eigen::Index n, Eigen::Index rank, Rng& rng);

/// Off-diagonal rates uniform in [0, scale).
RateMatrix random_rate_matrix(Eigen::Index n, double scale, Rng& rng);

/// Random Hermitian H plus `jumps` Gaussian jump operators.
GkslGenerator random_gksl_generator(Eigen::Index n, Eigen::Index jumps, Rng& rng);

DensityOperator random_density(Eigen::Index n, Rng& rng);

}  // namespace stochlift

#endif  // STOCHLIFT_RANDOM_HPP
