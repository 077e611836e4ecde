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

// Prints one pass/fail line per acceptance criterion and exits nonzero when
// any criterion fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "stochlift/division.hpp"
#include "stochlift/dynamics.hpp"
#include "stochlift/kernels.hpp"
#include "stochlift/lifts.hpp"
#include "stochlift/linalg.hpp"
#include "stochlift/memory.hpp"
#include "stochlift/random.hpp"

using namespace stochlift;
using namespace stochlift::testing;

namespace {

int failures = 0;

void report(int k, bool pass, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", k, what.c_str());
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::vector<StochasticKernel> random_kernels(int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<StochasticKernel> out;
  for (int k = 0; k < count; ++k) out.emplace_back(random_stochastic(2 + k % 5, rng));
  return out;
}

void dictionary_round_trip(const std::vector<StochasticKernel>& kernels) {
  double worst = 0.0;
  for (const auto& g : kernels) {
    const RMat back = dictionary_kernel(canonical_lift(g)).matrix();
    worst = std::max(worst, max_abs(RMat(back - g.matrix())));
  }
  report(1, worst <= 1e-12, fmt("dictionary round trip on 200 kernels, max error %.3g <= 1e-12", worst));
}

void compatibility(const std::vector<StochasticKernel>& kernels) {
  double worst = 0.0;
  bool all = true;
  for (const auto& g : kernels) {
    const CompatibilityReport r = compatibility_check(canonical_lift(g), g, {}, 1e-12);
    all = all && r.pass && r.probes.size() == static_cast<std::size_t>(g.dim());
    worst = std::max(worst, r.max_residual);
  }
  report(2, all && worst <= 1e-12,
         fmt("compatibility on all basis probes, max residual %.3g <= 1e-12", worst));
}

void trace_and_stochasticity() {
  Rng rng(3);
  double worst = 0.0;
  int flagged = 0;
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index n = 2 + k % 5;
    const KrausMap map = random_kraus_channel(n, 1 + k % 4, rng);
    const InducedKernelReport good = induced_kernel(map);
    worst = std::max({worst, good.validation.max_column_residual, good.validation.max_negative});

    std::vector<CMat> scaled;
    for (const CMat& op : map.operators()) scaled.push_back(std::sqrt(1.1) * op);
    const KrausMap bad(std::move(scaled));
    const bool tp_flag = !check_cptp(bad).trace_preserving;
    const InducedKernelReport bad_kernel = induced_kernel(bad);
    if (tp_flag && !bad_kernel.validation.pass) ++flagged;
  }
  report(3, worst <= 1e-10 && flagged == 100,
         fmt("TP maps give stochastic kernels (residual %.3g <= 1e-10); %.0f/100 scaled maps flagged",
             worst, flagged));
}

void theta_leakage() {
  const cplx i_unit(0.0, 1.0);
  const CMat h = pauli_x();
  KernelFamily family{{0.0, 1.0}, [&](double to, double from) {
                        return mod_square(expm(CMat(-i_unit * (to - from) * h)));
                      }};
  const ShortTimeReport r = short_time_derivatives(family, 0.0, {1e-1, 1e-2, 1e-3, 1e-4});
  // Independent slope from the closed form mass 2 sin²h.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double step : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const double x = std::log(step);
    const double y = std::log(2.0 * std::pow(std::sin(step), 2));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double oracle = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
  report(4, std::abs(r.leakage_exponent - 2.0) <= 0.05 && std::abs(r.leakage_exponent - oracle) <= 1e-3,
         fmt("leakage slope %.4f in 2 +- 0.05 (closed-form slope %.4f)", r.leakage_exponent, oracle));
}

void triviality() {
  const cplx i_unit(0.0, 1.0);
  const CMat h = pauli_x();
  const auto rows = theta_markov_triviality_demo(
      [&](double step) { return expm(CMat(-i_unit * step * h)); }, 1.0, {10, 100, 1000, 10000});
  bool within = true;
  double lo = 1e300, hi = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    within = within && rows[k].product_distance <= rows[k].bound + 1e-12;
    if (k > 0) {
      const double f = rows[k - 1].bound / rows[k].bound;
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
  }
  report(5, within && lo >= 9.0 && hi <= 11.0,
         fmt("bound falls by factors in [%.3f, %.3f] per decade; product within bound: ", lo, hi) +
             (within ? "yes" : "no"));
}

void scaling() {
  const ScalingTable t =
      dtmc_to_ctmc_scaling(RateMatrix(two_state_rates()), 1.0, 1.0, {0.1, 0.05, 0.025});
  // Oracle: with eigenvalues 0 and −2 the error is ½|e⁻² − (1 − 2ε²)^m|.
  bool ok = t.rows.size() == 3;
  double worst_oracle = 0.0;
  std::string ratios;
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    const auto& row = t.rows[k];
    const double eps2 = row.epsilon * row.epsilon;
    const double oracle = 0.5 * std::abs(std::exp(-2.0) - std::pow(1.0 - 2.0 * eps2, double(row.n_steps)));
    worst_oracle = std::max(worst_oracle, std::abs(oracle - row.error));
    if (k > 0) {
      const double ratio = t.rows[k - 1].error / row.error;
      ok = ok && ratio >= 2.5 && ratio <= 5.5;
      ratios += fmt(" %.3f", ratio);
    }
  }
  report(6, ok && worst_oracle <= 1e-12,
         "error ratios" + ratios + " in [2.5, 5.5]" + fmt(", closed-form agreement %.2g", worst_oracle));
}

void checklist() {
  const std::vector<double> grid = {0.0, 0.4, 1.0};
  CMat decay = CMat::Zero(2, 2);
  decay(0, 1) = std::sqrt(0.5);
  const CkChecklistReport u = ck_checklist(unitary_family(pauli_x(), grid), 1e-4, 1e-6);
  const CkChecklistReport g =
      ck_checklist(gksl_family(GkslGenerator(0.5 * pauli_x(), {decay}), grid), 1e-4, 1e-6);
  const CkChecklistReport p =
      ck_checklist(pairwise_lift_family(pauli_x(), PairwiseLift::kCanonical, grid), 1e-4, 1e-6);
  const bool ok = u.pass && g.pass && u.max_check_c <= 1e-6 && g.max_check_c <= 1e-6 &&
                  p.max_check_c >= 1e-2;
  report(7, ok,
         fmt("check C residuals: unitary %.2g, GKSL %.2g, pairwise lift %.3f", u.max_check_c,
             g.max_check_c, p.max_check_c));
}

void ctmc_square() {
  Rng rng(8);
  std::uniform_real_distribution<double> time(0.1, 3.0);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Eigen::Index n = 2 + k % 5;
    const RateMatrix r = random_rate_matrix(n, 1.0, rng);
    const ProbabilityVector p0(random_stochastic(n, rng).col(0));
    const double t = time(rng);
    const ProbabilityVector lifted = readout(propagate(ctmc_embedding(r), embed_diagonal(p0), t), false);
    const ProbabilityVector direct = ctmc_propagate(r, p0, t);
    worst = std::max(worst, max_abs(RVec(lifted.entries() - direct.entries())));
  }
  report(8, worst <= 1e-10, fmt("lift-propagate-readout vs CTMC on 50 triples, max %.3g <= 1e-10", worst));
}

void diagonal_division() {
  Rng rng(9);
  std::uniform_real_distribution<double> time(0.2, 2.0);
  int applies = 0;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index n = 2 + k % 3;
    const SuperOperator s = gksl_superoperator(ctmc_embedding(random_rate_matrix(n, 1.0, rng)));
    const SuperOperator e10(expm(CMat(time(rng) * s.matrix())));
    const SuperOperator e20 = to_superoperator(random_kraus_channel(n, 1 + k % 3, rng)).after(e10);
    const DivisionVerdict v = theorem1_check(e10, e20, 1e-9);
    if (v.theorem_applies && v.c_divisible) ++applies;
    worst = std::max(worst, v.factorization_residual);
  }
  const DivisionVerdict counter = theorem1_check(SuperOperator::unitary_conjugation(hadamard()),
                                                 SuperOperator::identity(2), 1e-9);
  const CDivisibility classical = c_divisibility_check(StochasticKernel(RMat::Identity(2, 2)),
                                                       StochasticKernel(mix()), 1e-9);
  const bool counter_ok = !counter.theorem_applies && !counter.c_divisible &&
                          std::holds_alternative<CIndivisible>(classical);
  report(9, applies == 100 && worst <= 1e-8 && counter_ok,
         fmt("%.0f/100 instances factor (max residual %.3g <= 1e-8); Hadamard counter-instance ", applies,
             worst) +
             (counter_ok ? "Indivisible" : "not Indivisible"));
}

void phase_memory() {
  const CMat h = hadamard();
  const CMat dh = phase_gate() * h;
  const bool exact = (mod_square(h).array() == mod_square(dh).array()).all();
  const double e1 = max_abs(RMat(two_step_kernel(h, h) - RMat::Identity(2, 2)));
  const double e2 = max_abs(RMat(two_step_kernel(h, dh) - mix()));
  report(10, exact && e1 <= 1e-12 && e2 <= 1e-12,
         std::string("one-step kernels equal exactly: ") + (exact ? "yes" : "no") +
             fmt("; two-step errors %.2g, %.2g", e1, e2));
}

void dof() {
  bool ok = true;
  for (std::uint64_t n : {2, 3}) {
    for (std::uint64_t m : {1, 2, 3}) {
      const DofCounts c = dof_counts(n, m);
      std::uint64_t power = 1;
      for (std::uint64_t k = 0; k <= m; ++k) power *= n;
      ok = ok && c.path_law == power - 1 && c.unitary_lift == m * n * n &&
           c.cptp_lift == m * (n * n * n * n - n * n);
    }
  }
  report(11, ok, "parameter counts for (N, m) in {2,3} x {1,2,3} match the closed forms");
}

void povm() {
  Rng rng(12);
  double route = 0.0, completeness = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index n = 2 + k % 5;
    const KrausMap lambda = random_kraus_channel(n, 1 + k % 3, rng);
    const DensityOperator rho = random_density(n, rng);
    const PovmEffects e = povm_from_channel(lambda);
    const RVec via_effects = e.probabilities(rho);
    CMat out = CMat::Zero(n, n);
    for (const CMat& l : lambda.operators()) out += l * rho.matrix() * l.adjoint();
    route = std::max(route, max_abs(RVec(via_effects - out.diagonal().real())));
    completeness = std::max(completeness, e.completeness_residual());
  }
  report(12, route <= 1e-12 && completeness <= 1e-10,
         fmt("effect and channel routes agree to %.3g <= 1e-12; sum of effects within %.3g of I",
             route, completeness));
}

}  // namespace

int main() {
  const auto kernels = random_kernels(200, 1);
  dictionary_round_trip(kernels);
  compatibility(kernels);
  trace_and_stochasticity();
  theta_leakage();
  triviality();
  scaling();
  checklist();
  ctmc_square();
  diagonal_division();
  phase_memory();
  dof();
  povm();
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
