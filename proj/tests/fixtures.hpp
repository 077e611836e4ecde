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

#ifndef STOCHLIFT_TESTS_FIXTURES_HPP
#define STOCHLIFT_TESTS_FIXTURES_HPP

#include <cmath>

#include "stochlift/types.hpp"

namespace stochlift::testing {

inline RMat flip() {
  RMat g(2, 2);
  g << 0.0, 1.0, 1.0, 0.0;
  return g;
}

inline RMat mix() { return RMat::Constant(2, 2, 0.5); }

inline CMat hadamard() {
  CMat h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::sqrt(2.0);
}

inline CMat pauli_x() {
  CMat x = CMat::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  return x;
}

inline CMat pauli_z() {
  CMat z = CMat::Identity(2, 2);
  z(1, 1) = -1.0;
  return z;
}

// diag(1, i)
inline CMat phase_gate() {
  CMat d = CMat::Identity(2, 2);
  d(1, 1) = cplx(0.0, 1.0);
  return d;
}

// |a><b|
inline CMat unit(Eigen::Index n, Eigen::Index a, Eigen::Index b) {
  CMat m = CMat::Zero(n, n);
  m(a, b) = 1.0;
  return m;
}

inline RMat two_state_rates() {
  RMat r(2, 2);
  r << -1.0, 1.0, 1.0, -1.0;
  return r;
}

}  // namespace stochlift::testing

#endif  // STOCHLIFT_TESTS_FIXTURES_HPP
