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

#include "stochlift/random.hpp"

#include <Eigen/QR>

namespace stochlift {

namespace {

CMat gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMat g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = cplx(normal(rng), normal(rng));
  }
  return g;
}

// Orthonormal columns from QR, with the phase of R's diagonal divided out.
CMat orthonormal_columns(const CMat& g) {
  Eigen::HouseholderQR<CMat> qr(g);
  const CMat q = qr.householderQ() * CMat::Identity(g.rows(), g.cols());
  const CMat r = qr.matrixQR();
  CMat out = q;
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) out.col(j) *= r(j, j) / mag;
  }
  return out;
}

}  // namespace

RMat random_stochastic(Eigen::Index n, Rng& rng) {
  std::exponential_distribution<double> weight(1.0);
  RMat g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = weight(rng);
    g.col(j) /= g.col(j).sum();
  }
  return g;
}

CMat random_unitary(Eigen::Index n, Rng& rng) { return orthonormal_columns(gaussian(n, n, rng)); }

KrausMap random_kraus_channel(Eigen::Index n, Eigen::Index rank, Rng& rng) {
  if (rank < 1) throw PreconditionError("random_kraus_channel: rank must be >= 1");
  const CMat v = orthonormal_columns(gaussian(n * rank, n, rng));
  std::vector<CMat> ops;
  for (Eigen::Index k = 0; k < rank; ++k) ops.push_back(v.middleRows(k * n, n));
  return KrausMap(std::move(ops));
}

RateMatrix random_rate_matrix(Eigen::Index n, double scale, Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.0, scale);
  RMat r = RMat::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != j) r(i, j) = uniform(rng);
    }
    r(j, j) = -(r.col(j).sum() - r(j, j));
  }
  return RateMatrix(std::move(r));
}

GkslGenerator random_gksl_generator(Eigen::Index n, Eigen::Index jumps, Rng& rng) {
  const CMat g = gaussian(n, n, rng);
  CMat h = 0.5 * (g + g.adjoint());
  std::vector<CMat> ops;
  for (Eigen::Index k = 0; k < jumps; ++k) ops.push_back(0.5 * gaussian(n, n, rng));
  return GkslGenerator(std::move(h), std::move(ops));
}

DensityOperator random_density(Eigen::Index n, Rng& rng) {
  const CMat g = gaussian(n, n, rng);
  CMat rho = g * g.adjoint();
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityOperator(std::move(rho));
}

}  // namespace stochlift
