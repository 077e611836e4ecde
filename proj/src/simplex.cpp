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

#include "stochlift/simplex.hpp"

#include <cmath>
#include <limits>

namespace stochlift::lp {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr int kMaxPivots = 200000;

// Tableau layout: rows 0..m-1 are constraints, row m holds reduced costs.
// Columns 0..n-1 are structural, n..n+m-1 artificial, n+m is the rhs.
class Tableau {
 public:
  Tableau(const RMat& a, const RVec& b) : m_(a.rows()), n_(a.cols()), t_(m_ + 1, n_ + m_ + 1) {
    t_.setZero();
    basis_.resize(static_cast<std::size_t>(m_));
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double sign = b(i) < 0.0 ? -1.0 : 1.0;
      t_.row(i).head(n_) = sign * a.row(i);
      t_(i, n_ + i) = 1.0;
      t_(i, rhs()) = sign * b(i);
      basis_[static_cast<std::size_t>(i)] = n_ + i;
    }
  }

  Eigen::Index rhs() const { return n_ + m_; }

  void set_phase1_costs() {
    t_.row(m_).setZero();
    for (Eigen::Index i = 0; i < m_; ++i) {
      t_.row(m_).head(n_) -= t_.row(i).head(n_);
      t_(m_, rhs()) -= t_(i, rhs());
    }
  }

  // Reduced costs for minimizing `cost` over structural columns.
  void set_costs(const RVec& cost) {
    t_.row(m_).setZero();
    t_.row(m_).head(n_) = cost.transpose();
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Eigen::Index bv = basis_[static_cast<std::size_t>(i)];
      const double cb = bv < n_ ? cost(bv) : 0.0;
      if (cb != 0.0) t_.row(m_) -= cb * t_.row(i);
    }
  }

  // Runs Bland-rule pivots until optimal or unbounded. Columns at or beyond
  // `column_limit` may not enter the basis.
  Status optimize(Eigen::Index column_limit, int& pivots) {
    while (pivots < kMaxPivots) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < column_limit; ++j) {
        if (t_(m_, j) < -kPivotEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Status::kOptimal;

      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i) {
        const double coeff = t_(i, enter);
        if (coeff <= kPivotEps) continue;
        const double ratio = t_(i, rhs()) / coeff;
        if (ratio < best - 1e-14 ||
            (std::abs(ratio - best) <= 1e-14 && leave >= 0 &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return Status::kUnbounded;
      pivot(leave, enter);
      ++pivots;
    }
    throw std::runtime_error("simplex: pivot limit exceeded");
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    t_(r, c) = 1.0;
    basis_[static_cast<std::size_t>(r)] = c;
  }

  // Pivots zero-level artificials out of the basis where a structural
  // column allows it; rows where none does are redundant and stay inert.
  void expel_artificials() {
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < n_) continue;
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (std::abs(t_(i, j)) > kPivotEps) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  double objective_value() const { return -t_(m_, rhs()); }

  RVec solution() const {
    RVec x = RVec::Zero(n_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Eigen::Index bv = basis_[static_cast<std::size_t>(i)];
      if (bv < n_) x(bv) = std::max(0.0, t_(i, rhs()));
    }
    return x;
  }

  std::vector<Eigen::Index> positive_artificial_rows(double tol) const {
    std::vector<Eigen::Index> rows;
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Eigen::Index bv = basis_[static_cast<std::size_t>(i)];
      if (bv >= n_ && t_(i, rhs()) > tol) rows.push_back(bv - n_);
    }
    return rows;
  }

  Eigen::Index structural() const { return n_; }

 private:
  Eigen::Index m_;
  Eigen::Index n_;
  RMat t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

Result solve(const RMat& a, const RVec& b, const std::optional<RVec>& objective,
             double tolerance) {
  if (a.rows() != b.size()) throw DimensionError("simplex: A and b row counts differ");
  if (objective && objective->size() != a.cols()) {
    throw DimensionError("simplex: objective length differs from column count");
  }
  Result result;
  Tableau tab(a, b);
  tab.set_phase1_costs();
  const Status phase1 = tab.optimize(tab.structural(), result.pivots);
  if (phase1 != Status::kOptimal) throw std::logic_error("simplex: phase 1 cannot be unbounded");
  result.infeasibility = tab.objective_value();
  if (result.infeasibility > tolerance) {
    result.status = Status::kInfeasible;
    result.violated_rows = tab.positive_artificial_rows(tolerance);
    result.x = tab.solution();
    return result;
  }
  tab.expel_artificials();
  result.status = Status::kOptimal;
  if (objective) {
    tab.set_costs(-*objective);
    result.status = tab.optimize(tab.structural(), result.pivots);
  }
  result.x = tab.solution();
  result.objective = objective ? objective->dot(result.x) : 0.0;
  return result;
}

Result max_min_point(const RMat& a, const RVec& b, const std::vector<bool>& free_coordinates,
                     double tolerance) {
  if (static_cast<Eigen::Index>(free_coordinates.size()) != a.cols()) {
    throw DimensionError("max_min_point: mask length differs from column count");
  }
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    if (free_coordinates[static_cast<std::size_t>(j)]) cols.push_back(j);
  }
  const auto k = static_cast<Eigen::Index>(cols.size());
  if (k == 0) {
    Result result;
    result.x = RVec::Zero(a.cols());
    result.infeasibility = b.cwiseAbs().sum();
    result.status = result.infeasibility > tolerance ? Status::kInfeasible : Status::kOptimal;
    return result;
  }
  // x_j = y_j + t on the free coordinates; the last column carries t.
  RMat lifted = RMat::Zero(a.rows(), k + 1);
  for (Eigen::Index c = 0; c < k; ++c) {
    lifted.col(c) = a.col(cols[static_cast<std::size_t>(c)]);
    lifted.col(k) += a.col(cols[static_cast<std::size_t>(c)]);
  }
  RVec objective = RVec::Zero(k + 1);
  objective(k) = 1.0;
  Result inner = solve(lifted, b, objective, tolerance);

  Result result;
  result.status = inner.status;
  result.infeasibility = inner.infeasibility;
  result.violated_rows = inner.violated_rows;
  result.pivots = inner.pivots;
  result.x = RVec::Zero(a.cols());
  if (inner.status == Status::kInfeasible) return result;
  const double t = inner.x(k);
  for (Eigen::Index c = 0; c < k; ++c) {
    result.x(cols[static_cast<std::size_t>(c)]) = inner.x(c) + t;
  }
  result.objective = t;
  return result;
}

}  // namespace stochlift::lp
