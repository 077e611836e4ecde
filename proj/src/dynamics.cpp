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

#include "stochlift/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "stochlift/linalg.hpp"

namespace stochlift {

namespace {

CMat evaluate(const SuperOperatorFamily& family, double to, double from) {
  if (!family.superop) throw std::invalid_argument("superoperator family has no evaluator");
  try {
    CMat m = family.superop(to, from);
    if (m.rows() != m.cols()) throw DimensionError("family returned a non-square matrix");
    return m;
  } catch (const std::exception& e) {
    std::ostringstream os;
    os << "family not evaluable at (t=" << to << ", s=" << from << "): " << e.what();
    throw PreconditionError(os.str());
  }
}

CMat central_generator(const SuperOperatorFamily& family, double t, double h) {
  return (evaluate(family, t + h, t) - evaluate(family, t - h, t)) / (2.0 * h);
}

}  // namespace

GkslGenerator::GkslGenerator(CMat hamiltonian, std::vector<CMat> jump_ops, const Tolerances& tol)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jump_ops)) {
  if (hamiltonian_.rows() != hamiltonian_.cols() || hamiltonian_.size() == 0) {
    throw DimensionError("GKSL Hamiltonian must be square and non-empty");
  }
  const double herm = hermiticity_residual(hamiltonian_);
  if (herm > tol.herm) throw ValidationError("GKSL Hamiltonian is not Hermitian", herm);
  for (const CMat& l : jumps_) {
    if (l.rows() != dim() || l.cols() != dim()) {
      throw DimensionError("jump operator size differs from the Hamiltonian");
    }
  }
}

GkslGenerator GkslGenerator::zero(Eigen::Index n) { return GkslGenerator(CMat::Zero(n, n), {}); }

SuperOperator gksl_superoperator(const GkslGenerator& gen) {
  const Eigen::Index n = gen.dim();
  const CMat id = CMat::Identity(n, n);
  const cplx i_unit(0.0, 1.0);
  const CMat& h = gen.hamiltonian();
  CMat s = -i_unit * (kron(id, h) - kron(CMat(h.transpose()), id));
  for (const CMat& l : gen.jump_ops()) {
    const CMat ldl = l.adjoint() * l;
    s += kron(CMat(l.conjugate()), l) - 0.5 * kron(id, ldl) - 0.5 * kron(CMat(ldl.transpose()), id);
  }
  return SuperOperator(std::move(s));
}

KrausMap short_time_kraus(const GkslGenerator& gen, double dt) {
  if (!(dt > 0.0)) throw PreconditionError("short_time_kraus: dt must be > 0");
  const Eigen::Index n = gen.dim();
  const cplx i_unit(0.0, 1.0);
  CMat drift = i_unit * gen.hamiltonian();
  for (const CMat& l : gen.jump_ops()) drift += 0.5 * l.adjoint() * l;
  std::vector<CMat> ops;
  ops.push_back(CMat::Identity(n, n) - dt * drift);
  for (const CMat& l : gen.jump_ops()) ops.push_back(std::sqrt(dt) * l);
  return KrausMap(std::move(ops));
}

DensityOperator propagate(const GkslGenerator& gen, const DensityOperator& rho0, double t,
                          const Tolerances& tol) {
  if (t < 0.0) throw PreconditionError("propagate: t must be >= 0");
  if (rho0.dim() != gen.dim()) throw DimensionError("propagate: dimension mismatch");
  if (t == 0.0) return rho0;
  const CMat flow = expm(CMat(t * gksl_superoperator(gen).matrix()));
  CMat rho = unvec(flow * vec(rho0.matrix()), gen.dim());
  rho = 0.5 * (rho + rho.adjoint());
  return DensityOperator(std::move(rho), tol);
}

DensityOperator propagate_piecewise(const std::vector<GkslGenerator>& generators,
                                    const std::vector<double>& grid, const DensityOperator& rho0,
                                    const Tolerances& tol) {
  if (grid.size() != generators.size() + 1) {
    throw DimensionError("propagate_piecewise: need one generator per grid interval");
  }
  DensityOperator rho = rho0;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const double dt = grid[k + 1] - grid[k];
    if (dt < 0.0) throw PreconditionError("propagate_piecewise: grid must be increasing");
    rho = propagate(generators[k], rho, dt, tol);
  }
  return rho;
}

GkslGenerator ctmc_embedding(const RateMatrix& rates, const RVec& diagonal_h) {
  const Eigen::Index n = rates.dim();
  const RMat& r = rates.matrix();
  std::vector<CMat> jumps;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == j) continue;
      if (r(i, j) < 0.0) throw ValidationError("ctmc_embedding: negative off-diagonal rate", -r(i, j));
      if (r(i, j) == 0.0) continue;
      CMat l = CMat::Zero(n, n);
      l(i, j) = std::sqrt(r(i, j));
      jumps.push_back(std::move(l));
    }
  }
  CMat h = CMat::Zero(n, n);
  if (diagonal_h.size() != 0) {
    if (diagonal_h.size() != n) throw DimensionError("ctmc_embedding: Hamiltonian diagonal size");
    h.diagonal() = diagonal_h.cast<cplx>();
  }
  return GkslGenerator(std::move(h), std::move(jumps));
}

bool diagonal_preservation_check(const GkslGenerator& gen, int samples, double tolerance,
                                 std::uint64_t seed) {
  const Eigen::Index n = gen.dim();
  const SuperOperator s = gksl_superoperator(gen);
  auto image_is_diagonal = [&](const CMat& rho) {
    return off_diagonal_sum(unvec(s.matrix() * vec(rho), n)) <= tolerance;
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!image_is_diagonal(basis_projector(n, i))) return false;
  }
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> weight(1.0);
  for (int k = 0; k < samples; ++k) {
    RVec p(n);
    for (Eigen::Index i = 0; i < n; ++i) p(i) = weight(rng);
    p /= p.sum();
    if (!image_is_diagonal(p.cast<cplx>().asDiagonal().toDenseMatrix())) return false;
  }
  return true;
}

CkChecklistReport ck_checklist(const SuperOperatorFamily& family, double fd_step,
                               double tolerance) {
  if (family.grid.size() < 2) throw InsufficientDataError("ck_checklist: grid needs >= 2 times");
  if (!(fd_step > 0.0)) throw PreconditionError("ck_checklist: fd_step must be > 0");
  const auto& grid = family.grid;
  CkChecklistReport report;

  for (double s : grid) {
    const CMat m = evaluate(family, s, s);
    const double r = max_abs(CMat(m - CMat::Identity(m.rows(), m.cols())));
    report.check_a.push_back({s, s, r});
    report.max_check_a = std::max(report.max_check_a, r);
  }

  for (double t : grid) {
    const CMat l = central_generator(family, t, fd_step);
    const CMat l_coarse = central_generator(family, t, 2.0 * fd_step);
    report.stencil_error_estimate =
        std::max(report.stencil_error_estimate, max_abs(CMat(l - l_coarse)) / 3.0);
    report.generators.push_back(l);
  }

  for (std::size_t a = 0; a < grid.size(); ++a) {
    const double s = grid[a];
    for (std::size_t b = a; b < grid.size(); ++b) {
      const double t = grid[b];
      const CMat d_dt =
          (evaluate(family, t + fd_step, s) - evaluate(family, t - fd_step, s)) / (2.0 * fd_step);
      const CMat e = d_dt - report.generators[b] * evaluate(family, t, s);
      const double r = max_abs(e);
      report.check_c.push_back({t, s, r});
      report.max_check_c = std::max(report.max_check_c, r);
    }
  }
  report.pass = report.max_check_a <= tolerance && report.max_check_c <= tolerance;
  return report;
}

SuperOperatorFamily gksl_family(const GkslGenerator& gen, std::vector<double> grid) {
  const CMat s = gksl_superoperator(gen).matrix();
  return {std::move(grid), [s](double to, double from) { return expm(CMat((to - from) * s)); }};
}

SuperOperatorFamily unitary_family(const CMat& hamiltonian, std::vector<double> grid) {
  if (hermiticity_residual(hamiltonian) > Tolerances{}.herm) {
    throw ValidationError("unitary_family: Hamiltonian is not Hermitian",
                          hermiticity_residual(hamiltonian));
  }
  const cplx i_unit(0.0, 1.0);
  return {std::move(grid), [hamiltonian, i_unit](double to, double from) {
            const CMat u = expm(CMat(-i_unit * (to - from) * hamiltonian));
            return kron(CMat(u.conjugate()), u);
          }};
}

SuperOperatorFamily pairwise_lift_family(const CMat& hamiltonian, PairwiseLift lift,
                                         std::vector<double> grid) {
  const Eigen::Index n = hamiltonian.rows();
  const cplx i_unit(0.0, 1.0);
  const CMat d = injection_matrix(n).cast<cplx>();
  const CMat p = dephasing_projector(n).cast<cplx>();
  return {std::move(grid), [=](double to, double from) -> CMat {
            const CMat theta = expm(CMat(-i_unit * (to - from) * hamiltonian));
            if (lift == PairwiseLift::kCanonical) {
              return d * mod_square_entries(theta).cast<cplx>() * d.transpose();
            }
            return kron(CMat(theta.conjugate()), theta) * p;
          }};
}

SuperOperator generator_from_family(const SuperOperatorFamily& family, double t, double fd_step) {
  if (!(fd_step > 0.0)) throw PreconditionError("generator_from_family: fd_step must be > 0");
  return SuperOperator(central_generator(family, t, fd_step));
}

}  // namespace stochlift
