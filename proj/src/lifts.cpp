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

#include "stochlift/lifts.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stochlift/linalg.hpp"

namespace stochlift {

namespace {

Eigen::Index common_dim(const std::vector<CMat>& ops, const char* what) {
  if (ops.empty()) throw DimensionError(std::string(what) + ": operator list is empty");
  const Eigen::Index n = ops.front().rows();
  for (const CMat& op : ops) {
    if (op.rows() != n || op.cols() != n) {
      throw DimensionError(std::string(what) + ": operators must be square and of equal size");
    }
  }
  return n;
}

Eigen::Index superop_dim(const CMat& m) {
  if (m.rows() != m.cols()) throw DimensionError("superoperator must be square");
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(m.rows()))));
  if (n * n != m.rows()) throw DimensionError("superoperator size is not a perfect square");
  return n;
}

}  // namespace

DensityOperator::DensityOperator(CMat matrix, const Tolerances& tol) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.size() == 0) {
    throw DimensionError("density operator must be square and non-empty");
  }
  const double herm = hermiticity_residual(matrix_);
  if (herm > tol.herm) throw ValidationError("density operator is not Hermitian", herm);
  const double trace_err = std::abs(matrix_.trace() - cplx(1.0, 0.0));
  if (trace_err > tol.herm) throw ValidationError("density operator trace differs from 1", trace_err);
  const double min_eig = hermitian_eigenvalues(matrix_)(0);
  if (min_eig < -tol.psd) throw ValidationError("density operator is not positive", -min_eig);
}

DensityOperator DensityOperator::basis_state(Eigen::Index n, Eigen::Index i) {
  return DensityOperator(basis_projector(n, i));
}

KrausMap::KrausMap(std::vector<CMat> operators) {
  dim_ = common_dim(operators, "KrausMap");
  for (CMat& op : operators) {
    if (op.norm() >= kKrausDropNorm) ops_.push_back(std::move(op));
  }
  CMat sum = CMat::Zero(dim_, dim_);
  for (const CMat& k : ops_) sum += k.adjoint() * k;
  completeness_residual_ = max_abs(sum - CMat::Identity(dim_, dim_));
}

KrausMap KrausMap::reduced() const {
  if (ops_.size() <= static_cast<std::size_t>(dim_ * dim_)) return *this;
  CMat choi = CMat::Zero(dim_ * dim_, dim_ * dim_);
  for (const CMat& k : ops_) {
    const CVec v = vec(k);
    choi += v * v.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(choi);
  std::vector<CMat> out;
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda <= 1e-14 * scale) continue;
    out.push_back(std::sqrt(lambda) * unvec(es.eigenvectors().col(i), dim_));
  }
  if (out.empty()) out.push_back(CMat::Zero(dim_, dim_));
  return KrausMap(std::move(out));
}

LeftRightMap::LeftRightMap(std::vector<CMat> left, std::vector<CMat> right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (left_.size() != right_.size()) {
    throw DimensionError("LeftRightMap: left and right operator counts differ");
  }
  dim_ = common_dim(left_, "LeftRightMap");
  if (common_dim(right_, "LeftRightMap") != dim_) {
    throw DimensionError("LeftRightMap: left and right operator sizes differ");
  }
}

SuperOperator::SuperOperator(CMat matrix) : matrix_(std::move(matrix)) {
  dim_ = superop_dim(matrix_);
}

SuperOperator SuperOperator::identity(Eigen::Index n) {
  return SuperOperator(CMat::Identity(n * n, n * n));
}

SuperOperator SuperOperator::dephasing(Eigen::Index n) {
  return SuperOperator(dephasing_projector(n).cast<cplx>());
}

SuperOperator SuperOperator::unitary_conjugation(const CMat& u) {
  return SuperOperator(kron(CMat(u.conjugate()), u));
}

SuperOperator SuperOperator::after(const SuperOperator& first) const {
  if (first.dim() != dim_) throw DimensionError("superoperator composition: dimensions differ");
  return SuperOperator(matrix_ * first.matrix());
}

ChoiMatrix::ChoiMatrix(const SuperOperator& s) {
  const Eigen::Index n = s.dim();
  const CMat& m = s.matrix();
  matrix_.resize(n * n, n * n);
  // C(a + iN, b + jN) = φ(|i><j|)_ab = S(a + bN, i + jN)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
          matrix_(a + i * n, b + j * n) = m(a + b * n, i + j * n);
        }
      }
    }
  }
  eigenvalues_ = hermitian_eigenvalues(matrix_);
}

bool ChoiMatrix::completely_positive(double tol_psd) const {
  const double scale = std::max(1.0, eigenvalues_.cwiseAbs().maxCoeff());
  return min_eigenvalue() >= -tol_psd * scale &&
         hermiticity_residual(matrix_) <= 1e-10 * scale;
}

Eigen::Index map_dim(const LinearMap& map) {
  return std::visit([](const auto& m) { return m.dim(); }, map);
}

CMat apply_map(const LinearMap& map, const CMat& x) {
  const Eigen::Index n = map_dim(map);
  if (x.rows() != n || x.cols() != n) throw DimensionError("apply_map: operand size mismatch");
  if (const auto* k = std::get_if<KrausMap>(&map)) {
    CMat out = CMat::Zero(n, n);
    for (const CMat& op : k->operators()) out += op * x * op.adjoint();
    return out;
  }
  if (const auto* lr = std::get_if<LeftRightMap>(&map)) {
    CMat out = CMat::Zero(n, n);
    for (std::size_t b = 0; b < lr->left().size(); ++b) out += lr->left()[b] * x * lr->right()[b];
    return out;
  }
  const auto& s = std::get<SuperOperator>(map);
  return unvec(s.matrix() * vec(x), n);
}

RMat injection_matrix(Eigen::Index n) {
  RMat d = RMat::Zero(n * n, n);
  for (Eigen::Index i = 0; i < n; ++i) d(i * (n + 1), i) = 1.0;
  return d;
}

RMat dephasing_projector(Eigen::Index n) {
  const RMat d = injection_matrix(n);
  return d * d.transpose();
}

DensityOperator embed_diagonal(const ProbabilityVector& p) {
  return DensityOperator(p.entries().cast<cplx>().asDiagonal().toDenseMatrix());
}

CMat dephase(const CMat& x) { return x.diagonal().asDiagonal().toDenseMatrix(); }

DensityOperator dephase(const DensityOperator& rho) {
  return DensityOperator(dephase(rho.matrix()));
}

ProbabilityVector readout(const DensityOperator& rho, bool require_diagonal, double tolerance) {
  if (require_diagonal) {
    const double off = off_diagonal_sum(rho.matrix());
    if (off > tolerance) {
      std::ostringstream os;
      os << "readout: operator is not diagonal (off-diagonal mass " << off << ")";
      throw PreconditionError(os.str());
    }
  }
  Tolerances relaxed;
  relaxed.prob = std::max(relaxed.prob, 1e-10);
  return ProbabilityVector(rho.matrix().diagonal().real(), relaxed);
}

DensityOperator apply_kraus(const KrausMap& map, const DensityOperator& rho, const Tolerances& tol) {
  if (map.dim() != rho.dim()) throw DimensionError("apply_kraus: dimension mismatch");
  // A map that is not trace-preserving yields a non-unit trace, which the
  // DensityOperator constructor rejects.
  return DensityOperator(apply_map(map, rho.matrix()), tol);
}

CptpReport check_cptp(const KrausMap& map, const Tolerances& tol) {
  CptpReport r;
  r.tp_residual = map.completeness_residual();
  r.trace_preserving = r.tp_residual <= tol.tp;
  const ChoiMatrix choi(to_superoperator(map));
  r.min_choi_eigenvalue = choi.min_eigenvalue();
  r.completely_positive = true;  // any Kraus form is CP
  return r;
}

CptpReport check_cptp(const SuperOperator& map, const Tolerances& tol) {
  const Eigen::Index n = map.dim();
  CptpReport r;
  // Tr φ(X) = Tr X for all X  <=>  vec(I)ᵀ S = vec(I)ᵀ
  const CVec vid = vec(CMat::Identity(n, n));
  r.tp_residual = max_abs(CVec(map.matrix().transpose() * vid - vid));
  r.trace_preserving = r.tp_residual <= tol.tp;
  const ChoiMatrix choi(map);
  r.min_choi_eigenvalue = choi.min_eigenvalue();
  r.completely_positive = choi.completely_positive(tol.psd);
  return r;
}

InducedKernelReport induced_kernel(const LinearMap& map, const Tolerances& tol) {
  const Eigen::Index n = map_dim(map);
  InducedKernelReport report;
  CMat gamma(n, n);
  for (Eigen::Index i = 0; i < n; ++i) gamma.col(i) = apply_map(map, basis_projector(n, i)).diagonal();
  report.kernel = gamma.real();
  report.max_imaginary = max_abs(RMat(gamma.imag()));
  report.validation = validate_kernel(report.kernel, tol);
  if (const auto* lr = std::get_if<LeftRightMap>(&map)) {
    CMat sum = CMat::Zero(n, n);
    for (std::size_t b = 0; b < lr->left().size(); ++b) sum += lr->right()[b] * lr->left()[b];
    report.trace_condition_residual = max_abs(sum - CMat::Identity(n, n));
  }
  return report;
}

StochasticKernel dictionary_kernel(const KrausMap& map, const Tolerances& tol) {
  if (!map.trace_preserving(tol.tp)) {
    std::ostringstream os;
    os << "dictionary_kernel: map is not trace-preserving (residual "
       << map.completeness_residual() << ")";
    throw ValidationError(os.str(), map.completeness_residual());
  }
  RMat gamma = RMat::Zero(map.dim(), map.dim());
  for (const CMat& k : map.operators()) gamma += mod_square_entries(k);
  return StochasticKernel(std::move(gamma), std::nullopt, std::nullopt, tol);
}

KrausMap canonical_lift(const StochasticKernel& gamma) {
  const Eigen::Index n = gamma.dim();
  std::vector<CMat> ops;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = gamma.matrix()(j, i);
      if (w <= 0.0) continue;
      CMat k = CMat::Zero(n, n);
      k(j, i) = std::sqrt(w);
      ops.push_back(std::move(k));
    }
  }
  return KrausMap(std::move(ops));
}

ThetaLift theta_conjugation_lift(const CMat& theta, const Tolerances& tol) {
  if (theta.rows() != theta.cols()) throw DimensionError("theta must be square");
  ThetaLift lift{LeftRightMap({theta}, {theta.adjoint()}), false, 0.0, RMat(), {}};
  lift.tp_residual = unitarity_residual(theta);
  lift.trace_preserving = lift.tp_residual <= tol.tp;
  lift.kernel = mod_square_entries(theta);
  lift.validation = validate_kernel(lift.kernel, tol);
  return lift;
}

KrausMap barandes_column_lift(const CMat& theta, const Tolerances& tol) {
  if (theta.rows() != theta.cols()) throw DimensionError("theta must be square");
  const KernelValidation v = validate_kernel(mod_square_entries(theta), tol);
  if (!v.pass) {
    throw ValidationError("barandes_column_lift: [theta] is not column-stochastic",
                          std::max(v.max_negative, v.max_column_residual));
  }
  const Eigen::Index n = theta.rows();
  std::vector<CMat> ops;
  for (Eigen::Index b = 0; b < n; ++b) {
    CMat k = CMat::Zero(n, n);
    k.col(b) = theta.col(b);
    ops.push_back(std::move(k));
  }
  return KrausMap(std::move(ops));
}

CompatibilityReport compatibility_check(const LinearMap& map, const StochasticKernel& gamma,
                                        const std::vector<ProbabilityVector>& probes,
                                        double tolerance) {
  const Eigen::Index n = gamma.dim();
  if (map_dim(map) != n) throw DimensionError("compatibility_check: dimension mismatch");
  std::vector<RVec> inputs;
  if (probes.empty()) {
    for (Eigen::Index i = 0; i < n; ++i) inputs.push_back(RVec::Unit(n, i));
  } else {
    for (const auto& p : probes) {
      if (p.size() != n) throw DimensionError("compatibility_check: probe dimension mismatch");
      inputs.push_back(p.entries());
    }
  }
  CompatibilityReport report;
  for (const RVec& p : inputs) {
    const CMat image = apply_map(map, p.cast<cplx>().asDiagonal().toDenseMatrix());
    const CVec diff = image.diagonal() - (gamma.matrix() * p).cast<cplx>();
    const double r = max_abs(diff);
    report.probes.push_back({p, r});
    report.max_residual = std::max(report.max_residual, r);
  }
  report.pass = report.max_residual <= tolerance;
  return report;
}

SuperOperator to_superoperator(const LinearMap& map) {
  const Eigen::Index n = map_dim(map);
  CMat s = CMat::Zero(n * n, n * n);
  if (const auto* k = std::get_if<KrausMap>(&map)) {
    for (const CMat& op : k->operators()) s += kron(CMat(op.conjugate()), op);
    return SuperOperator(std::move(s));
  }
  if (const auto* lr = std::get_if<LeftRightMap>(&map)) {
    for (std::size_t b = 0; b < lr->left().size(); ++b) {
      s += kron(CMat(lr->right()[b].transpose()), lr->left()[b]);
    }
    return SuperOperator(std::move(s));
  }
  return std::get<SuperOperator>(map);
}

RMat superop_kernel_extract(const SuperOperator& s) {
  const Eigen::Index n = s.dim();
  const RMat d = injection_matrix(n);
  const RMat p = dephasing_projector(n);
  const CMat gamma = d.transpose().cast<cplx>() * p.cast<cplx>() * s.matrix() * d.cast<cplx>();
  return gamma.real();
}

QDivisibility q_divisibility_check(const SuperOperator& e_20, const SuperOperator& e_10,
                                   double tolerance, const Tolerances& tol,
                                   double condition_cap) {
  if (e_20.dim() != e_10.dim()) throw DimensionError("q_divisibility_check: dimensions differ");
  const Eigen::Index rank_10 = numerical_rank(e_10.matrix(), kPinvCutoff);
  const Eigen::Index rank_20 = numerical_rank(e_20.matrix(), kPinvCutoff);
  if (rank_10 < rank_20) {
    std::ostringstream os;
    os << "rank obstruction: rank(E_10) = " << rank_10 << " < rank(E_20) = " << rank_20;
    return QIndivisible{os.str()};
  }
  Tolerances local = tol;
  local.tp = std::max(tol.tp, tolerance);

  if (condition_number(e_10.matrix()) < condition_cap) {
    // S̃ E10 = E20  <=>  E10ᵀ S̃ᵀ = E20ᵀ
    CMat candidate =
        e_10.matrix().transpose().partialPivLu().solve(e_20.matrix().transpose()).transpose();
    SuperOperator witness(std::move(candidate));
    const CptpReport rep = check_cptp(witness, local);
    const double residual = max_abs(CMat(witness.matrix() * e_10.matrix() - e_20.matrix()));
    if (!rep.cptp()) {
      std::ostringstream os;
      os << "unique candidate is not CPTP (tp residual " << rep.tp_residual
         << ", min Choi eigenvalue " << rep.min_choi_eigenvalue << ")";
      return QIndivisible{os.str()};
    }
    return QDivisible{std::move(witness), rep, "inverse", residual};
  }

  SuperOperator candidate(e_20.matrix() * pseudo_inverse(e_10.matrix(), kPinvCutoff));
  const double residual = max_abs(CMat(candidate.matrix() * e_10.matrix() - e_20.matrix()));
  if (residual > tolerance) {
    std::ostringstream os;
    os << "E_20 does not factor through the range of E_10 (residual " << residual << ")";
    return QIndivisible{os.str()};
  }
  const CptpReport rep = check_cptp(candidate, local);
  if (rep.cptp()) return QDivisible{std::move(candidate), rep, "pseudo-inverse", residual};
  const ChoiMatrix choi(candidate);
  return QInconclusive{
      "pseudo-inverse candidate factors E_20 but is not CPTP; completions off the range of "
      "E_10 were not searched",
      std::move(candidate), choi.eigenvalues()};
}

}  // namespace stochlift
