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

#include "stochlift/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace stochlift {

namespace {

constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0,
                                           302702400.0,   30270240.0,   2162160.0,
                                           110880.0,      3960.0,       90.0,
                                           1.0};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

// Largest 1-norm for which the degree-m approximant meets unit roundoff.
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

template <typename Mat, std::size_t K>
void pade_low(const Mat& a, const std::array<double, K>& b, Mat& u, Mat& v) {
  const auto n = a.rows();
  const Mat ident = Mat::Identity(n, n);
  const Mat a2 = a * a;
  Mat u_inner = b[1] * ident;
  Mat v_acc = b[0] * ident;
  Mat power = ident;
  for (std::size_t k = 2; k < K; k += 2) {
    power = power * a2;
    v_acc += b[k] * power;
    if (k + 1 < K) u_inner += b[k + 1] * power;
  }
  u = a * u_inner;
  v = v_acc;
}

template <typename Mat>
void pade13(const Mat& a, Mat& u, Mat& v) {
  const auto& b = kPade13;
  const auto n = a.rows();
  const Mat ident = Mat::Identity(n, n);
  const Mat a2 = a * a;
  const Mat a4 = a2 * a2;
  const Mat a6 = a4 * a2;
  const Mat inner_u = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
  u = a * (inner_u + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
  const Mat inner_v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2);
  v = inner_v + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
}

template <typename Mat>
Mat expm_impl(const Mat& a) {
  if (a.rows() != a.cols()) throw DimensionError("expm: matrix must be square");
  const auto n = a.rows();
  if (n == 0) return a;
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(norm1)) throw std::domain_error("expm: non-finite input");

  Mat u, v;
  int squarings = 0;
  if (norm1 <= kTheta3) {
    pade_low(a, kPade3, u, v);
  } else if (norm1 <= kTheta5) {
    pade_low(a, kPade5, u, v);
  } else if (norm1 <= kTheta7) {
    pade_low(a, kPade7, u, v);
  } else if (norm1 <= kTheta9) {
    pade_low(a, kPade9, u, v);
  } else {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / kTheta13))));
    const Mat scaled = a / std::ldexp(1.0, squarings);
    pade13(scaled, u, v);
  }
  Mat result = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

template <typename Mat>
Mat power_impl(const Mat& a, std::uint64_t k) {
  if (a.rows() != a.cols()) throw DimensionError("matrix_power: matrix must be square");
  Mat result = Mat::Identity(a.rows(), a.cols());
  Mat base = a;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

template <typename Mat>
Mat kron_impl(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Mat>
double condition_impl(const Mat& a) {
  if (a.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (a.rows() != a.cols() || smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

template <typename Mat>
Eigen::Index rank_impl(const Mat& a, double rel_cutoff) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_cutoff * s(0)) ++r;
  }
  return r;
}

}  // namespace

RMat expm(const RMat& a) { return expm_impl(a); }
CMat expm(const CMat& a) { return expm_impl(a); }

RMat matrix_power(const RMat& a, std::uint64_t k) { return power_impl(a, k); }
CMat matrix_power(const CMat& a, std::uint64_t k) { return power_impl(a, k); }

CVec vec(const CMat& x) { return Eigen::Map<const CVec>(x.data(), x.size()); }

CMat unvec(const CVec& v, Eigen::Index n) {
  if (v.size() != n * n) throw DimensionError("unvec: length is not n^2");
  return Eigen::Map<const CMat>(v.data(), n, n);
}

CMat kron(const CMat& a, const CMat& b) { return kron_impl(a, b); }
RMat kron(const RMat& a, const RMat& b) { return kron_impl(a, b); }

RMat mod_square_entries(const CMat& a) { return a.cwiseAbs2(); }

double condition_number(const RMat& a) { return condition_impl(a); }
double condition_number(const CMat& a) { return condition_impl(a); }

Eigen::Index numerical_rank(const RMat& a, double rel_cutoff) { return rank_impl(a, rel_cutoff); }
Eigen::Index numerical_rank(const CMat& a, double rel_cutoff) { return rank_impl(a, rel_cutoff); }

CMat pseudo_inverse(const CMat& a, double rel_cutoff) {
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  RVec inv = RVec::Zero(s.size());
  if (s.size() > 0 && s(0) > 0.0) {
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(i) > rel_cutoff * s(0)) inv(i) = 1.0 / s(i);
    }
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

RVec hermitian_eigenvalues(const CMat& a) {
  const CMat h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double hermiticity_residual(const CMat& a) { return max_abs(a - a.adjoint()); }

double unitarity_residual(const CMat& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(u.adjoint() * u - CMat::Identity(u.rows(), u.cols()));
}

template <typename Mat>
double off_diagonal_impl(const Mat& a) {
  double total = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) total += std::abs(a(i, j));
    }
  }
  return total;
}

double off_diagonal_sum(const CMat& a) { return off_diagonal_impl(a); }
double off_diagonal_sum(const RMat& a) { return off_diagonal_impl(a); }

CMat basis_projector(Eigen::Index n, Eigen::Index i) {
  if (i < 0 || i >= n) throw DimensionError("basis_projector: index out of range");
  CMat p = CMat::Zero(n, n);
  p(i, i) = 1.0;
  return p;
}

}  // namespace stochlift
