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

#ifndef STOCHLIFT_TYPES_HPP
#define STOCHLIFT_TYPES_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace stochlift {

using cplx = std::complex<double>;
using RMat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

/// Numerical tolerances shared by every module. Defaults follow the library
/// conventions; the CLI `--tol` flag overrides all of them uniformly.
struct Tolerances {
  double prob = 1e-12;   // negativity allowed (and clamped) in probabilities
  double stoch = 1e-10;  // column-sum residual of stochastic matrices
  double herm = 1e-10;   // Hermiticity and unit trace of density operators
  double psd = 1e-9;     // relative floor on the smallest eigenvalue
  double tp = 1e-10;     // trace-preservation residual of channels

  static Tolerances uniform(double tol) { return {tol, tol, tol, tol, tol}; }
};

// Error hierarchy. Everything derives from std::runtime_error or
// std::invalid_argument so callers can catch broadly.

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InsufficientDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Largest absolute entry. Used as the default residual norm everywhere.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

}  // namespace stochlift

#endif  // STOCHLIFT_TYPES_HPP
