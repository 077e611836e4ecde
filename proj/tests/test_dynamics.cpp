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

#include "fixtures.hpp"
#include "stochlift/dynamics.hpp"
#include "stochlift/linalg.hpp"
#include "stochlift/random.hpp"

using namespace stochlift;
using namespace stochlift::testing;

namespace {

GkslGenerator decay() { return GkslGenerator(CMat::Zero(2, 2), {unit(2, 0, 1)}); }

// −i[H,ρ] + Σ (LρL† − ½{L†L, ρ}) evaluated directly.
CMat lindblad_action(const GkslGenerator& g, const CMat& rho) {
  const cplx i(0.0, 1.0);
  const CMat& h = g.hamiltonian();
  CMat out = -i * (h * rho - rho * h);
  for (const CMat& l : g.jump_ops()) {
    const CMat ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

}  // namespace

TEST(Gksl, SuperoperatorMatchesDirectAction) {
  Rng rng(17);
  for (int k = 0; k < 10; ++k) {
    const Eigen::Index n = 2 + k % 3;
    const GkslGenerator g = random_gksl_generator(n, 1 + k % 3, rng);
    const SuperOperator s = gksl_superoperator(g);
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) {
        const CMat x = unit(n, a, b);
        const CMat out = unvec(s.matrix() * vec(x), n);
        EXPECT_LE(max_abs(CMat(out - lindblad_action(g, x))), 1e-12);
        EXPECT_LE(std::abs(out.trace()), 1e-12);
      }
    }
  }
}

TEST(Gksl, Examples) {
  EXPECT_EQ(max_abs(gksl_superoperator(GkslGenerator::zero(2)).matrix()), 0.0);
  const CMat out = unvec(gksl_superoperator(decay()).matrix() * vec(unit(2, 1, 1)), 2);
  EXPECT_LE(max_abs(CMat(out - (unit(2, 0, 0) - unit(2, 1, 1)))), 1e-15);
  const CMat plus = CMat::Constant(2, 2, 0.5);
  const CMat rot = unvec(gksl_superoperator(GkslGenerator(pauli_z(), {})).matrix() * vec(plus), 2);
  EXPECT_LE(std::abs(rot(0, 0)) + std::abs(rot(1, 1)), 1e-15);
  EXPECT_LE(std::abs(rot(0, 1) - cplx(0.0, -1.0)), 1e-15);
  EXPECT_LE(std::abs(rot(1, 0) - cplx(0.0, 1.0)), 1e-15);
  CMat skew = pauli_x();
  skew(0, 1) = cplx(0.0, 1.0);
  EXPECT_THROW(GkslGenerator(skew, {}), ValidationError);
}

TEST(ShortTimeKraus, FirstOrderAccurate) {
  EXPECT_EQ(short_time_kraus(GkslGenerator::zero(2), 0.1).operators().front(), CMat(CMat::Identity(2, 2)));
  EXPECT_THROW(short_time_kraus(decay(), 0.0), PreconditionError);
  const CMat rho = unit(2, 1, 1);
  const CMat l_rho = lindblad_action(decay(), rho);
  std::vector<double> logs_dt, logs_res;
  for (double dt : {1e-2, 1e-3, 1e-4}) {
    const KrausMap k = short_time_kraus(decay(), dt);
    const CMat out = apply_map(k, rho);
    const double residual = max_abs(CMat(out - rho - dt * l_rho));
    if (dt == 1e-3) EXPECT_LE(residual, 1e-5);
    EXPECT_LE(k.completeness_residual(), 2.0 * dt * dt);
    logs_dt.push_back(std::log(dt));
    logs_res.push_back(std::log(residual));
  }
  const double slope = (logs_res.back() - logs_res.front()) / (logs_dt.back() - logs_dt.front());
  EXPECT_NEAR(slope, 2.0, 0.1);
}

TEST(Propagate, DecayClosedForm) {
  const DensityOperator excited = DensityOperator::basis_state(2, 1);
  EXPECT_EQ(propagate(decay(), excited, 0.0).matrix(), excited.matrix());
  const CMat one = propagate(decay(), excited, 1.0).matrix();
  EXPECT_NEAR(one(0, 0).real(), 1.0 - std::exp(-1.0), 1e-13);
  EXPECT_NEAR(one(1, 1).real(), std::exp(-1.0), 1e-13);
  EXPECT_LE(off_diagonal_sum(one), 1e-15);
  const CMat late = propagate(decay(), excited, 30.0).matrix();
  EXPECT_LE(max_abs(CMat(late - unit(2, 0, 0))), 1e-9);
  EXPECT_THROW(propagate(decay(), excited, -1.0), PreconditionError);
}

TEST(Propagate, FiniteTimeMapsAreCptp) {
  Rng rng(23);
  for (int k = 0; k < 50; ++k) {
    const GkslGenerator g = random_gksl_generator(2 + k % 2, 2, rng);
    const CMat s = gksl_superoperator(g).matrix();
    for (double t : {0.1, 1.0, 10.0}) {
      EXPECT_TRUE(check_cptp(SuperOperator(expm(CMat(t * s)))).cptp()) << k << " " << t;
    }
  }
}

TEST(Propagate, PiecewiseMatchesSingleSegment) {
  Rng rng(29);
  const GkslGenerator g = random_gksl_generator(3, 2, rng);
  const DensityOperator rho0 = random_density(3, rng);
  const CMat whole = propagate(g, rho0, 1.0).matrix();
  const CMat pieces = propagate_piecewise({g, g, g}, {0.0, 0.2, 0.7, 1.0}, rho0).matrix();
  EXPECT_LE(max_abs(CMat(whole - pieces)), 1e-12);
  EXPECT_THROW(propagate_piecewise({g}, {0.0, 0.5, 1.0}, rho0), DimensionError);
}

TEST(CtmcEmbedding, Examples) {
  const GkslGenerator zero = ctmc_embedding(RateMatrix(RMat::Zero(2, 2)));
  EXPECT_TRUE(zero.jump_ops().empty());
  EXPECT_EQ(max_abs(gksl_superoperator(zero).matrix()), 0.0);

  const RateMatrix r(two_state_rates());
  const DensityOperator rho0 = embed_diagonal(ProbabilityVector::basis(2, 0));
  const ProbabilityVector p = readout(propagate(ctmc_embedding(r), rho0, 0.5), true, 1e-12);
  EXPECT_NEAR(p[0], 0.5 * (1.0 + std::exp(-1.0)), 1e-13);
  EXPECT_NEAR(p[1], 0.5 * (1.0 - std::exp(-1.0)), 1e-13);

  RVec h(2);
  h << 1.0, 2.0;
  const ProbabilityVector ph = readout(propagate(ctmc_embedding(r, h), rho0, 0.5), true, 1e-12);
  EXPECT_LE(max_abs(RVec(ph.entries() - p.entries())), 1e-13);
}

TEST(CtmcEmbedding, SquareClosesOnRandomInstances) {
  Rng rng(37);
  for (int k = 0; k < 30; ++k) {
    const Eigen::Index n = 2 + k % 4;
    const RateMatrix r = random_rate_matrix(n, 2.0, rng);
    const ProbabilityVector p0(random_stochastic(n, rng).col(0));
    const GkslGenerator g = ctmc_embedding(r);
    EXPECT_TRUE(diagonal_preservation_check(g, 5, 1e-12));
    const DensityOperator rho = propagate(g, embed_diagonal(p0), 0.7);
    EXPECT_LE(off_diagonal_sum(rho.matrix()), 1e-12);
    const RVec lifted = readout(rho, true, 1e-12).entries();
    EXPECT_LE(max_abs(RVec(lifted - ctmc_propagate(r, p0, 0.7).entries())), 1e-10);
  }
}

TEST(DiagonalPreservation, Examples) {
  EXPECT_TRUE(diagonal_preservation_check(GkslGenerator::zero(3), 3, 1e-12));
  EXPECT_FALSE(diagonal_preservation_check(GkslGenerator(pauli_x(), {}), 0, 1e-12));
  EXPECT_TRUE(diagonal_preservation_check(decay(), 3, 1e-12));
}

TEST(CkChecklist, UnitaryAndSemigroupFamiliesPass) {
  const std::vector<double> grid{0.0, 0.4, 1.0};
  const CkChecklistReport u = ck_checklist(unitary_family(pauli_x(), grid), 1e-4, 1e-6);
  EXPECT_TRUE(u.pass) << u.max_check_a << " " << u.max_check_c;
  const cplx i(0.0, 1.0);
  const CMat commutator = -i * (kron(CMat::Identity(2, 2), pauli_x()) - kron(CMat(pauli_x().transpose()), CMat::Identity(2, 2)));
  for (const CMat& l : u.generators) EXPECT_LE(max_abs(CMat(l - commutator)), 1e-7);

  Rng rng(41);
  for (int k = 0; k < 5; ++k) {
    const CkChecklistReport g = ck_checklist(gksl_family(random_gksl_generator(2, 2, rng), grid), 1e-4, 1e-6);
    EXPECT_TRUE(g.pass) << g.max_check_c;
  }
  const SuperOperatorFamily constant{grid, [](double, double) { return CMat(CMat::Identity(4, 4)); }};
  const CkChecklistReport c = ck_checklist(constant, 1e-4, 1e-12);
  EXPECT_TRUE(c.pass);
  for (const CMat& l : c.generators) EXPECT_EQ(max_abs(l), 0.0);
}

TEST(CkChecklist, PairwiseLiftFailsForwardEquation) {
  const std::vector<double> grid{0.0, 0.4, 1.0};
  const CkChecklistReport r =
      ck_checklist(pairwise_lift_family(pauli_x(), PairwiseLift::kCanonical, grid), 1e-4, 1e-6);
  EXPECT_FALSE(r.pass);
  EXPECT_GE(r.max_check_c, 1e-2);
  // Brute force at (t, s) = (1, 0): the candidate generator vanishes because
  // Γ(τ) is even in τ, leaving ∂S/∂t = D Γ'(1) Dᵀ with |Γ'(1)| = sin 2.
  for (const auto& e : r.check_c) {
    if (e.t == 1.0 && e.s == 0.0) EXPECT_NEAR(e.residual, std::sin(2.0), 1e-6);
  }
  const CkChecklistReport b =
      ck_checklist(pairwise_lift_family(pauli_x(), PairwiseLift::kBarandes, grid), 1e-4, 1e-6);
  EXPECT_FALSE(b.pass);
}

TEST(CkChecklist, UnevaluableFamily) {
  const SuperOperatorFamily broken{{0.0, 1.0}, [](double to, double) -> CMat {
                                     if (to > 1.0) throw std::domain_error("outside the model");
                                     return CMat::Identity(4, 4);
                                   }};
  EXPECT_THROW(ck_checklist(broken, 1e-4, 1e-6), PreconditionError);
  EXPECT_THROW(ck_checklist(SuperOperatorFamily{{0.0}, broken.superop}, 1e-4, 1e-6),
               InsufficientDataError);
}

TEST(GeneratorFromFamily, RecoversGksl) {
  const SuperOperator s = gksl_superoperator(decay());
  const SuperOperatorFamily fam = gksl_family(decay(), {0.0, 1.0});
  const double fine = max_abs(CMat(generator_from_family(fam, 0.5, 1e-4).matrix() - s.matrix()));
  EXPECT_LE(fine, 1e-6);
  // Second-order stencil: doubling the step quadruples the error.
  const double e1 = max_abs(CMat(generator_from_family(fam, 0.5, 1e-2).matrix() - s.matrix()));
  const double e2 = max_abs(CMat(generator_from_family(fam, 0.5, 2e-2).matrix() - s.matrix()));
  EXPECT_NEAR(e2 / e1, 4.0, 0.05);
  const SuperOperatorFamily constant{{0.0, 1.0}, [](double, double) { return CMat(CMat::Identity(4, 4)); }};
  EXPECT_EQ(max_abs(generator_from_family(constant, 0.0, 1e-4).matrix()), 0.0);
}
