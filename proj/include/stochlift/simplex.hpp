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

#ifndef STOCHLIFT_SIMPLEX_HPP
#define STOCHLIFT_SIMPLEX_HPP

#include <optional>
#include <vector>

#include "stochlift/types.hpp"

namespace stochlift::lp {

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Result {
  Status status = Status::kInfeasible;
  RVec x;                 // primal solution (valid unless infeasible)
  double objective = 0.0;
  // Sum of artificial variables left after phase 1; > tolerance means the
  // equality system has no nonnegative solution.
  double infeasibility = 0.0;
  // Rows of A whose artificial variable is still positive after phase 1.
  std::vector<Eigen::Index> violated_rows;
  int pivots = 0;
};

/// Dense two-phase simplex for
///
///   maximize c·x  subject to  A x = b,  x >= 0.
///
/// Pivoting uses Bland's rule (lowest eligible index enters, lowest basis
/// index breaks ratio ties), so the method terminates without cycling.
/// Without an objective only phase 1 runs.
Result solve(const RMat& a, const RVec& b, const std::optional<RVec>& objective,
             double tolerance);

/// Phase-1 only: find any x >= 0 with A x = b.
inline Result feasible_point(const RMat& a, const RVec& b, double tolerance) {
  return solve(a, b, std::nullopt, tolerance);
}

/// Maximize t subject to A x = b, x_i >= t for the flagged coordinates and
/// x_i = 0 for the others. Returns the optimal x and t in `objective`.
/// A positive optimum certifies a solution strictly positive on the flagged
/// coordinates.
Result max_min_point(const RMat& a, const RVec& b, const std::vector<bool>& free_coordinates,
                     double tolerance);

}  // namespace stochlift::lp

#endif  // STOCHLIFT_SIMPLEX_HPP
