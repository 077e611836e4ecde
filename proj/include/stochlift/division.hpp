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

// Division events: classical divisibility inferred from quantum
// divisibility plus diagonality of the intermediate lifted state.
//
// Tensor factors are ordered system ⊗ environment with the system index
// slow-varying: joint basis index = x * n_env + y.

#ifndef STOCHLIFT_DIVISION_HPP
#define STOCHLIFT_DIVISION_HPP

#include <optional>
#include <string>
#include <vector>

#include "stochlift/kernels.hpp"
#include "stochlift/lifts.hpp"

namespace stochlift {

class NonCptpError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DivisionVerdict {
  bool q_divisible = false;
  std::string q_detail;
  std::optional<SuperOperator> q_witness;

  bool all_diagonal_at_t1 = false;
  double max_off_diagonal_mass = 0.0;  // over basis initializations

  // Classical divisibility of the induced kernels, decided independently of
  // the quantum route.
  bool c_divisible = false;
  std::optional<RMat> c_witness;
  std::string c_detail;

  bool theorem_applies = false;
  // Set when both hypotheses hold: Γ̃ extracted from the quantum witness and
  // the residual ‖Γ20 − Γ̃ Γ10‖_max.
  std::optional<RMat> theorem_witness;
  double factorization_residual = 0.0;

  RMat gamma_10;
  RMat gamma_20;
};

/// Both maps must be CPTP (NonCptpError otherwise).
DivisionVerdict theorem1_check(const SuperOperator& e_10, const SuperOperator& e_20,
                               double tolerance, const Tolerances& tol = {});

/// Joint superoperator of φ_A ⊗ φ_B.
SuperOperator tensor_superoperator(const SuperOperator& a, const SuperOperator& b);

/// Tr_E of an operator on system ⊗ environment.
CMat partial_trace_env(const CMat& joint, Eigen::Index n_sys, Eigen::Index n_env);

struct RecordFormEntry {
  Eigen::Index system_state;
  double reduced_off_diagonal;  // off-diagonal mass of Tr_E ρ_SE(t1)
  double block_off_diagonal;    // mass between distinct system blocks
  bool record_form;
};

struct EnvironmentScenarioReport {
  bool record_form = false;
  std::vector<RecordFormEntry> records;
  SuperOperator reduced_10 = SuperOperator::identity(1);  // system lift over [t0, t1]
  SuperOperator reduced_20 = SuperOperator::identity(1);  // system lift over [t0, t2]
  RMat gamma_10;
  RMat gamma_20;
  bool c_divisible = false;
  std::optional<RMat> c_witness;  // Γ̃(t2←t1)
  std::string c_detail;
  double partial_trace_residual = 0.0;  // max |Tr ρ_S − Tr ρ_SE| seen
  double min_reduced_eigenvalue = 0.0;
};

/// ρ_SE(t0) = J(p_S) ⊗ J(p_env), interaction over [t0, t1], then the
/// product map post_system ⊗ post_env over [t1, t2]. A failed record form is
/// reported in the result rather than thrown.
EnvironmentScenarioReport environment_division_scenario(
    const ProbabilityVector& p_env, const SuperOperator& record_interaction,
    const SuperOperator& post_system, const SuperOperator& post_env, double tolerance,
    const Tolerances& tol = {});

}  // namespace stochlift

#endif  // STOCHLIFT_DIVISION_HPP
