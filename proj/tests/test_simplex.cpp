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

#include "stochlift/simplex.hpp"

using namespace stochlift;

TEST(Simplex, FeasiblePointSatisfiesConstraints) {
  RMat a(2, 3);
  a << 1, 1, 1, 1, -1, 0;
  RVec b(2);
  b << 1, 0.2;
  const lp::Result r = lp::feasible_point(a, b, 1e-12);
  ASSERT_EQ(r.status, lp::Status::kOptimal);
  EXPECT_LE(max_abs(RVec(a * r.x - b)), 1e-12);
  EXPECT_GE(r.x.minCoeff(), 0.0);
}

TEST(Simplex, DetectsInfeasibility) {
  RMat a(2, 2);
  a << 1, 1, 1, 1;
  RVec b(2);
  b << 1, 2;
  const lp::Result r = lp::feasible_point(a, b, 1e-12);
  EXPECT_EQ(r.status, lp::Status::kInfeasible);
  EXPECT_GT(r.infeasibility, 0.1);
}

TEST(Simplex, NegativeRightHandSideIsInfeasible) {
  RMat a(1, 2);
  a << 1, 1;
  RVec b(1);
  b << -1;
  EXPECT_EQ(lp::feasible_point(a, b, 1e-12).status, lp::Status::kInfeasible);
}

TEST(Simplex, Maximizes) {
  // max x + 2y  s.t.  x + y + s = 4,  x + 3y + u = 6
  RMat a(2, 4);
  a << 1, 1, 1, 0, 1, 3, 0, 1;
  RVec b(2);
  b << 4, 6;
  RVec c(4);
  c << 1, 2, 0, 0;
  const lp::Result r = lp::solve(a, b, c, 1e-12);
  ASSERT_EQ(r.status, lp::Status::kOptimal);
  EXPECT_NEAR(r.objective, 5.0, 1e-12);  // x = 3, y = 1
  EXPECT_NEAR(r.x(0), 3.0, 1e-12);
  EXPECT_NEAR(r.x(1), 1.0, 1e-12);
}

TEST(Simplex, Unbounded) {
  RMat a(1, 2);
  a << 1, -1;
  RVec b(1);
  b << 1;
  RVec c(2);
  c << 1, 0;
  EXPECT_EQ(lp::solve(a, b, c, 1e-12).status, lp::Status::kUnbounded);
}

TEST(Simplex, DegenerateProblemTerminates) {
  // A classic cycling instance for the textbook pivot rule, in equality form
  // with slacks.
  RMat a(3, 7);
  a << 0.25, -8, -1, 9, 1, 0, 0,
       0.5, -12, -0.5, 3, 0, 1, 0,
       0, 0, 1, 0, 0, 0, 1;
  RVec b(3);
  b << 0, 0, 1;
  RVec c = RVec::Zero(7);
  c << 0.75, -20, 0.5, -6, 0, 0, 0;
  const lp::Result r = lp::solve(a, b, c, 1e-12);
  ASSERT_EQ(r.status, lp::Status::kOptimal);
  EXPECT_NEAR(r.objective, 1.25, 1e-10);
}

TEST(Simplex, MaxMinPointIsInterior) {
  // x1 + x2 + x3 = 1: the centre maximizes the smallest coordinate.
  RMat a = RMat::Ones(1, 3);
  RVec b = RVec::Ones(1);
  const lp::Result r = lp::max_min_point(a, b, {true, true, true}, 1e-12);
  ASSERT_EQ(r.status, lp::Status::kOptimal);
  EXPECT_NEAR(r.objective, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.x.minCoeff(), 1.0 / 3.0, 1e-12);
}
