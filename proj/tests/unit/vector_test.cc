// Copyright 2026 The drsub Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "drsub/errors.h"
#include "drsub/instances.h"
#include "drsub/vector.h"
#include "support/oracles.h"

namespace drsub {
namespace {

TEST(PointTest, ClampsOnConstruction) {
  const Point p(std::vector<double>{-0.5, 0.3, 1.7});
  EXPECT_EQ(p[0], 0.0);
  EXPECT_EQ(p[1], 0.3);
  EXPECT_EQ(p[2], 1.0);
}

TEST(PointTest, RejectsNan) {
  EXPECT_THROW(Point(std::vector<double>{0.1, std::nan("")}), NonFiniteValue);
}

TEST(PointTest, SetClamps) {
  Point p = Point::Zeros(2);
  p.Set(0, 3.0);
  p.Set(1, -1.0);
  EXPECT_EQ(p, Point(std::vector<double>{1.0, 0.0}));
}

TEST(PointTest, IndicatorAndFilled) {
  const std::vector<std::size_t> support = {0, 2};
  EXPECT_EQ(Point::Indicator(4, support), Point(std::vector<double>{1, 0, 1, 0}));
  EXPECT_EQ(Point::Filled(3, 0.25), Point(std::vector<double>{0.25, 0.25, 0.25}));
  EXPECT_EQ(Point::Ones(2), Point(std::vector<double>{1, 1}));
}

TEST(GradientTest, RejectsNonFinite) {
  EXPECT_THROW(Gradient(std::vector<double>{1.0, std::numeric_limits<double>::infinity()}),
               NonFiniteValue);
  EXPECT_THROW(Gradient(std::vector<double>{std::nan("")}), NonFiniteValue);
  EXPECT_NO_THROW(Gradient(std::vector<double>{-5.0, 1e300}));
}

TEST(VectorOpsTest, JoinExample) {
  const Point a(std::vector<double>{0.2, 0.8});
  const Point b(std::vector<double>{0.5, 0.1});
  EXPECT_EQ(Join(a, b), Point(std::vector<double>{0.5, 0.8}));
}

TEST(VectorOpsTest, MeetIdempotent) {
  const Point x(std::vector<double>{0.1, 0.9, 0.4});
  EXPECT_EQ(Meet(x, x), x);
}

TEST(VectorOpsTest, HadamardIdentityMask) {
  const Gradient g(std::vector<double>{3.0, -2.0, 0.5});
  EXPECT_EQ(Hadamard(Point::Ones(3), g), g);
  EXPECT_EQ(Hadamard(Gradient(std::vector<double>{1, 1, 1}), g), g);
}

TEST(VectorOpsTest, LengthMismatchIsDimensionError) {
  const Point a = Point::Zeros(2);
  const Point b = Point::Zeros(3);
  EXPECT_THROW(Join(a, b), DimensionError);
  EXPECT_THROW(Meet(a, b), DimensionError);
  EXPECT_THROW(Hadamard(a, b), DimensionError);
  EXPECT_THROW(Hadamard(a, Gradient(std::vector<double>{1, 2, 3})), DimensionError);
}

TEST(VectorOpsTest, InputsUnmodified) {
  const Point a(std::vector<double>{0.2, 0.8});
  const Point b(std::vector<double>{0.5, 0.1});
  const Point a_copy = a;
  const Point b_copy = b;
  (void)Join(a, b);
  (void)Meet(a, b);
  (void)Hadamard(a, b);
  EXPECT_EQ(a, a_copy);
  EXPECT_EQ(b, b_copy);
}

TEST(VectorOpsTest, LatticeProperties) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Point a(testing::RandomVec(gen, 6, 0.0, 1.0));
    const Point b(testing::RandomVec(gen, 6, 0.0, 1.0));
    EXPECT_EQ(Join(a, b), Join(b, a));
    EXPECT_EQ(Meet(a, b), Meet(b, a));
    EXPECT_EQ(Hadamard(a, b), Hadamard(b, a));
    EXPECT_TRUE(DominatedBy(Meet(a, b), a));
    EXPECT_TRUE(DominatedBy(a, Join(a, b)));
  }
}

TEST(VectorOpsTest, ComplementAndMaskedGradient) {
  const Point z(std::vector<double>{0.25, 1.0});
  EXPECT_EQ(Complement(z), Point(std::vector<double>{0.75, 0.0}));
  const Gradient g(std::vector<double>{4.0, 9.0});
  EXPECT_EQ(MaskedGradient(z, g), Gradient(std::vector<double>{3.0, 0.0}));
}

TEST(NormsTest, Examples) {
  const Norms zero = ComputeNorms(Point::Zeros(3));
  EXPECT_EQ(zero.l1, 0.0);
  EXPECT_EQ(zero.linf, 0.0);
  const Norms mixed = ComputeNorms(Point(std::vector<double>{0.25, 0.75}));
  EXPECT_DOUBLE_EQ(mixed.l1, 1.0);
  EXPECT_DOUBLE_EQ(mixed.linf, 0.75);
  const Norms ones = ComputeNorms(Point::Ones(7));
  EXPECT_DOUBLE_EQ(ones.l1, 7.0);
  EXPECT_DOUBLE_EQ(ones.linf, 1.0);
  EXPECT_DOUBLE_EQ(L1Norm(Point::Ones(7)), 7.0);
}

TEST(NormsTest, SignedValuesUseAbsoluteValue) {
  const std::vector<double> v = {-2.0, 1.0};
  const Norms n = ComputeNorms(v);
  EXPECT_DOUBLE_EQ(n.l1, 3.0);
  EXPECT_DOUBLE_EQ(n.linf, 2.0);
}

// Clamping law: evaluating a bundled oracle at a raw vector v (through the
// clamping constructor) equals evaluating at v ∧ 1.
TEST(ClampingLawTest, OracleSeesMeetWithOnes) {
  std::mt19937_64 gen(11);
  for (Family family : {Family::kNqp, Family::kDpp, Family::kCut}) {
    const auto obj = MakeObjective(GenerateInstance({family, 6, 3}));
    for (int trial = 0; trial < 10; ++trial) {
      const std::vector<double> raw = testing::RandomVec(gen, 6, 0.0, 2.0);
      std::vector<double> capped = raw;
      for (double& c : capped) c = std::min(c, 1.0);
      const Point from_raw(raw);
      EXPECT_EQ(from_raw, Meet(Point(raw), Point::Ones(6)));
      EXPECT_EQ(obj->Value(from_raw), obj->Value(Point(capped)));
    }
  }
}

}  // namespace
}  // namespace drsub
