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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "stochlift/kernels.hpp"
#include "stochlift/linalg.hpp"
#include "stochlift/random.hpp"

using namespace stochlift;
using namespace stochlift::testing;

namespace {

KernelFamily semigroup_family(const RMat& r, std::vector<double> grid) {
  return {std::move(grid), [r](double to, double from) { return expm(RMat((to - from) * r)); }};
}

KernelFamily pauli_theta_family(std::vector<double> grid) {
  return {std::move(grid), [](double to, double from) {
            const double c = std::cos(to - from);
            const double s = std::sin(to - from);
            RMat g(2, 2);
            g << c * c, s * s, s * s, c * c;
            return g;
          }};
}

}  // namespace

TEST(ProbabilityVector, ClampsRoundOffAndRejectsNegativity) {
  RVec p(2);
  p << 1.0 + 5e-13, -5e-13;
  const ProbabilityVector v(p);
  EXPECT_EQ(v[1], 0.0);
  p << 1.1, -0.1;
  EXPECT_THROW(ProbabilityVector{p}, ValidationError);
  p << 0.5, 0.6;
  EXPECT_THROW(ProbabilityVector{p}, ValidationError);
}

TEST(ValidateKernel, Examples) {
  EXPECT_TRUE(validate_kernel(RMat::Identity(2, 2)).pass);
  EXPECT_TRUE(validate_kernel(mix()).pass);
  RMat bad(2, 2);
  bad << 1.2, 0.0, -0.2, 1.0;
  const KernelValidation v = validate_kernel(bad);
  EXPECT_FALSE(v.pass);
  EXPECT_NEAR(v.max_negative, 0.2, 1e-15);
  EXPECT_THROW(validate_kernel(RMat::Zero(2, 3)), DimensionError);
}

TEST(StochasticKernel, EqualTimesRequireIdentity) {
  EXPECT_NO_THROW(StochasticKernel(RMat::Identity(2, 2), 1.0, 1.0));
  EXPECT_THROW(StochasticKernel(flip(), 1.0, 1.0), ValidationError);
}

TEST(Compose, Examples) {
  const StochasticKernel id = StochasticKernel::identity(2);
  const StochasticKernel f(flip());
  const StochasticKernel m(mix());
  EXPECT_LE(max_abs(RMat(compose(id, m).matrix() - mix())), 0.0);
  EXPECT_LE(max_abs(RMat(compose(f, f).matrix() - RMat::Identity(2, 2))), 0.0);
  EXPECT_LE(max_abs(RMat(compose(m, f).matrix() - mix())), 1e-15);
  EXPECT_THROW(compose(StochasticKernel::identity(3), f), DimensionError);
  EXPECT_THROW(compose(StochasticKernel(mix(), 2.0, 3.0), StochasticKernel(mix(), 0.0, 1.0)),
               PreconditionError);
}

TEST(CkFamily, SemigroupPassesThetaFamilyFails) {
  EXPECT_TRUE(check_ck_family(semigroup_family(two_state_rates(), {0.0, 0.5, 1.0}), 1e-12).pass);
  const KernelFamily constant{{0.0, 1.0, 2.0, 3.0}, [](double, double) { return RMat::Identity(2, 2); }};
  EXPECT_TRUE(check_ck_family(constant, 0.0).pass);
  const CkFamilyReport r = check_ck_family(pauli_theta_family({0.0, 0.5, 1.0}), 1e-9);
  EXPECT_FALSE(r.pass);
  // Brute force: Γ(1←0) vs Γ(1←0.5)Γ(0.5←0).
  const RMat direct = pauli_theta_family({}).matrix_at(1.0, 0.0);
  const RMat half = pauli_theta_family({}).matrix_at(0.5, 0.0);
  EXPECT_NEAR(r.max_residual, max_abs(RMat(direct - half * half)), 1e-14);
  EXPECT_THROW(check_ck_family(KernelFamily{{0.0, 1.0}, constant.matrix_at}, 1e-9),
               InsufficientDataError);
}

TEST(CDivisibility, Examples) {
  const StochasticKernel id = StochasticKernel::identity(2);
  const auto trivial = c_divisibility_check(id, id, 1e-10);
  ASSERT_TRUE(std::holds_alternative<CDivisible>(trivial));
  EXPECT_LE(max_abs(RMat(std::get<CDivisible>(trivial).witness - RMat::Identity(2, 2))), 1e-15);

  const auto blocked = c_divisibility_check(StochasticKernel(flip()), StochasticKernel(mix()), 1e-10);
  ASSERT_TRUE(std::holds_alternative<CIndivisible>(blocked));
  EXPECT_EQ(std::get<CIndivisible>(blocked).route, "simplex");
  EXPECT_FALSE(std::get<CIndivisible>(blocked).violations.empty());

  const auto inverse = c_divisibility_check(StochasticKernel(mix()), StochasticKernel(flip()), 1e-10);
  ASSERT_TRUE(std::holds_alternative<CDivisible>(inverse));
  EXPECT_EQ(std::get<CDivisible>(inverse).route, "inverse");
  EXPECT_LE(max_abs(RMat(std::get<CDivisible>(inverse).witness - mix())), 1e-15);
}

TEST(CDivisibility, InverseWithNegativeEntriesIsIndivisible) {
  RMat g(2, 2);
  g << 0.9, 0.2, 0.1, 0.8;
  const auto r = c_divisibility_check(StochasticKernel::identity(2), StochasticKernel(g), 1e-10);
  ASSERT_TRUE(std::holds_alternative<CIndivisible>(r));
  EXPECT_EQ(std::get<CIndivisible>(r).route, "inverse");
}

TEST(CDivisibility, RecoversRandomFactorizations) {
  Rng rng(2024);
  int recovered = 0;
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index n = 2 + k % 3;
    RMat g0 = random_stochastic(n, rng);
    g0 = 0.5 * g0 + 0.5 * RMat::Identity(n, n);  // keep it well conditioned
    const RMat g = random_stochastic(n, rng);
    const auto r = c_divisibility_check(StochasticKernel(RMat(g * g0)), StochasticKernel(g0), 1e-9);
    ASSERT_TRUE(std::holds_alternative<CDivisible>(r)) << k;
    if (max_abs(RMat(std::get<CDivisible>(r).witness - g)) <= 1e-9) ++recovered;
  }
  EXPECT_EQ(recovered, 100);
}

TEST(CDivisibility, SingularIntermediateUsesSimplex) {
  Rng rng(99);
  for (int k = 0; k < 20; ++k) {
    RMat g0 = random_stochastic(3, rng);
    g0.col(2) = g0.col(1);  // rank deficient
    const RMat g = random_stochastic(3, rng);
    const auto r = c_divisibility_check(StochasticKernel(RMat(g * g0)), StochasticKernel(g0), 1e-9);
    ASSERT_TRUE(std::holds_alternative<CDivisible>(r)) << k;
    const auto& d = std::get<CDivisible>(r);
    EXPECT_EQ(d.route, "simplex");
    EXPECT_TRUE(validate_kernel(d.witness, Tolerances::uniform(1e-9)).pass);
    EXPECT_LE(max_abs(RMat(d.witness * g0 - g * g0)), 1e-9);
  }
}

TEST(CDivisibility, CkFamilyDividesAtInteriorTimes) {
  const KernelFamily fam = semigroup_family(two_state_rates(), {0.0, 0.3, 0.7, 1.0});
  for (std::size_t u = 1; u + 1 < fam.grid.size(); ++u) {
    const auto r = c_divisibility_check(fam.kernel(1.0, 0.0), fam.kernel(fam.grid[u], 0.0), 1e-9);
    EXPECT_TRUE(std::holds_alternative<CDivisible>(r));
  }
}

TEST(ShortTime, CtmcFamilyRecoversRates) {
  const RMat r = two_state_rates();
  const ShortTimeReport rep =
      short_time_derivatives(semigroup_family(r, {0.0, 1.0}), 0.0, {1e-2, 1e-3, 1e-4});
  EXPECT_EQ(rep.step_used, 1e-4);
  EXPECT_LE(max_abs(RMat(rep.r_estimate - r)), 1e-6);
  EXPECT_LE(max_abs(RMat(rep.s_estimate - r * r)), 1e-3);
  // First-order leakage: off-diagonal mass grows linearly in h.
  EXPECT_NEAR(rep.leakage_exponent, 1.0, 0.05);
}

TEST(ShortTime, ThetaFamilyLeaksAtSecondOrder) {
  const ShortTimeReport rep =
      short_time_derivatives(pauli_theta_family({0.0, 1.0}), 0.0, {1e-1, 1e-2, 1e-3, 1e-4});
  EXPECT_NEAR(rep.leakage_exponent, 2.0, 0.05);
  EXPECT_LE(max_abs(rep.r_estimate), 1e-6);
}

TEST(ShortTime, ConstantFamily) {
  const KernelFamily constant{{0.0, 1.0}, [](double, double) { return RMat::Identity(3, 3); }};
  const ShortTimeReport rep = short_time_derivatives(constant, 0.0, {1e-2, 1e-3});
  EXPECT_LE(max_abs(rep.r_estimate), 0.0);
  EXPECT_LE(max_abs(rep.s_estimate), 0.0);
  for (double m : rep.leakage_mass) EXPECT_EQ(m, 0.0);
  EXPECT_THROW(short_time_derivatives(constant, 0.0, {1e-2}), InsufficientDataError);
}

TEST(CtmcPropagate, ClosedForm) {
  const RateMatrix r(two_state_rates());
  const ProbabilityVector p0 = ProbabilityVector::basis(2, 0);
  EXPECT_LE(max_abs(RVec(ctmc_propagate(r, p0, 0.0).entries() - p0.entries())), 0.0);
  const RVec half = ctmc_propagate(r, p0, 0.5).entries();
  EXPECT_NEAR(half(0), 0.5 * (1.0 + std::exp(-1.0)), 1e-14);
  EXPECT_NEAR(half(1), 0.5 * (1.0 - std::exp(-1.0)), 1e-14);
  const RVec late = ctmc_propagate(r, p0, 20.0).entries();
  EXPECT_NEAR(late(0), 0.5, 1e-8);
  EXPECT_THROW(ctmc_propagate(r, p0, -1.0), PreconditionError);
}

TEST(RateMatrix, Validation) {
  RMat bad = two_state_rates();
  bad(0, 1) = -0.5;
  bad(1, 1) = 0.5;
  EXPECT_THROW(RateMatrix{bad}, ValidationError);
  RMat leaky = two_state_rates();
  leaky(0, 0) = -0.5;
  EXPECT_THROW(RateMatrix{leaky}, ValidationError);
}

TEST(Scaling, SecondOrderConvergence) {
  const RateMatrix r(two_state_rates());
  const ScalingTable t = dtmc_to_ctmc_scaling(r, 1.0, 1.0, {0.1, 0.05, 0.025});
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_TRUE(t.monotone);
  EXPECT_EQ(t.rows[0].n_steps, 100u);
  EXPECT_EQ(t.rows[2].n_steps, 1600u);
  // Oracle: (I + R/m)^m has eigenvalues 1 and (1 − 2/m)^m; the error is
  // |e^{-2} − (1 − 2/m)^m| / 2 on every entry.
  for (const auto& row : t.rows) {
    const double m = static_cast<double>(row.n_steps);
    EXPECT_NEAR(row.error, 0.5 * std::abs(std::exp(-2.0) - std::pow(1.0 - 2.0 / m, m)), 1e-13);
  }
  for (std::size_t k = 1; k < t.rows.size(); ++k) {
    const double ratio = t.rows[k - 1].error / t.rows[k].error;
    EXPECT_GT(ratio, 4.0 / 1.5);
    EXPECT_LT(ratio, 4.0 * 1.5);
  }
}

TEST(Scaling, TrivialCasesAndStepSizeError) {
  const RateMatrix zero(RMat::Zero(2, 2));
  for (const auto& row : dtmc_to_ctmc_scaling(zero, 1.0, 1.0, {0.1, 0.05}).rows) EXPECT_EQ(row.error, 0.0);
  const RateMatrix r(two_state_rates());
  for (const auto& row : dtmc_to_ctmc_scaling(r, 1.0, 0.0, {0.1}).rows) EXPECT_EQ(row.error, 0.0);
  EXPECT_THROW(dtmc_to_ctmc_scaling(r, 1.0, 1.0, {1.5}), ValidationError);
}

TEST(ThetaTriviality, BoundShrinksTenfoldPerDecade) {
  const cplx i(0.0, 1.0);
  const auto rows = theta_markov_triviality_demo(
      [&](double h) { return expm(CMat(-i * h * pauli_x())); }, 1.0, {10, 100, 1000});
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.alpha, std::pow(std::sin(r.h), 2), 1e-14);
    EXPECT_LE(r.product_distance, r.bound + 1e-12);
  }
  for (std::size_t k = 1; k < rows.size(); ++k) {
    EXPECT_NEAR(rows[k - 1].bound / rows[k].bound, 10.0, 0.1);
    EXPECT_LT(rows[k].product_distance, rows[k - 1].product_distance);
  }
  const auto still = theta_markov_triviality_demo(
      [](double) { return CMat(CMat::Identity(2, 2)); }, 1.0, {10, 100});
  for (const auto& r : still) {
    EXPECT_EQ(r.bound, 0.0);
    EXPECT_EQ(r.product_distance, 0.0);
  }
}
