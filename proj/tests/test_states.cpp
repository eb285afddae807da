// Copyright 2026 The qmcontrol Authors
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

#include "qmcontrol/states.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace qmc {
namespace {

const std::complex<double> I(0.0, 1.0);

TEST(Coherence, MaximallyMixedIsOrigin) {
  for (int N : {2, 3, 4}) {
    const HermitianBasis b = gellmannBasis(N);
    const CMatrix rho = CMatrix::Identity(N, N) / static_cast<double>(N);
    EXPECT_LT(toCoherence(rho, b).rho().norm(), 1e-15);
    EXPECT_LT((fromCoherence(CoherenceVector::maximallyMixed(N), b) - rho).norm(), 1e-15);
  }
}

TEST(Coherence, TwoLevelComponents) {
  const HermitianBasis b = gellmannBasis(2);
  CMatrix rho(2, 2);
  rho << 0.7, std::complex<double>(0.1, 0.2), std::complex<double>(0.1, -0.2), 0.3;
  const CoherenceVector v = toCoherence(rho, b);
  const double r2 = std::sqrt(2.0);
  EXPECT_NEAR(v.rho()(0), r2 * 0.1, 1e-15);
  EXPECT_NEAR(v.rho()(1), -r2 * 0.2, 1e-15);
  EXPECT_NEAR(v.rho()(2), (0.7 - 0.3) / r2, 1e-15);
}

TEST(Coherence, PureGroundStateAndBack) {
  const HermitianBasis b = gellmannBasis(2);
  CMatrix rho = CMatrix::Zero(2, 2);
  rho(0, 0) = 1.0;
  const CoherenceVector v = toCoherence(rho, b);
  EXPECT_LT((v.rho() - Eigen::Vector3d(0, 0, 1 / std::sqrt(2.0))).norm(), 1e-15);
  EXPECT_NEAR(purity(v), 1.0, 1e-15);
  EXPECT_LT((fromCoherence(v, b) - rho).norm(), 1e-15);
}

TEST(Coherence, RoundTripOnRandomStates) {
  for (int N : {2, 3, 4}) {
    const HermitianBasis b = gellmannBasis(N);
    for (int trial = 0; trial < 100; ++trial) {
      const CMatrix rho = test::randomDensity(N);
      const CoherenceVector v = toCoherence(rho, b);
      const CMatrix back = fromCoherence(v, b);
      EXPECT_LT((back - rho).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((toCoherence(back, b).rho() - v.rho()).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_NEAR(back.trace().real(), 1.0, 1e-12);
      EXPECT_NEAR(purity(v), (rho * rho).trace().real(), 1e-12);
      EXPECT_TRUE(v.inBall());
      EXPECT_LE(purity(v), 1.0 + 1e-9);
    }
  }
}

TEST(Coherence, RejectsNonHermitianOrWrongTrace) {
  const HermitianBasis b = gellmannBasis(2);
  CMatrix rho = CMatrix::Identity(2, 2) / 2.0;
  rho(0, 1) = 0.1;
  EXPECT_THROW(toCoherence(rho, b), InvalidArgument);
  EXPECT_THROW(toCoherence(CMatrix::Identity(2, 2), b), InvalidArgument);
  EXPECT_THROW(toCoherence(CMatrix::Identity(3, 3) / 3.0, b), InvalidArgument);
}

TEST(Coherence, HomogeneousCoordinates) {
  const CoherenceVector v(3, test::randomVector(8) * 0.1);
  EXPECT_DOUBLE_EQ(v.rho0(), 1.0 / std::sqrt(3.0));
  const Vector h = v.homogeneous();
  EXPECT_EQ(h(0), v.rho0());
  EXPECT_NEAR(v.homogeneousNormSquared(), h.squaredNorm(), 1e-15);
  const CoherenceVector back = CoherenceVector::fromHomogeneous(3, h);
  EXPECT_EQ(back.rho(), v.rho());
  Vector shifted = h;
  shifted(0) = 1.0;  // the fixed component is not read back
  EXPECT_EQ(CoherenceVector::fromHomogeneous(3, shifted).rho(), v.rho());
  EXPECT_THROW(CoherenceVector::fromHomogeneous(3, h.head(8)), InvalidArgument);
  EXPECT_THROW(CoherenceVector(2, Vector::Zero(8)), InvalidArgument);
}

TEST(Purity, Examples) {
  EXPECT_DOUBLE_EQ(purity(CoherenceVector::maximallyMixed(2)), 0.5);
  EXPECT_NEAR(purity(CoherenceVector(2, Eigen::Vector3d(0, 0, 1 / std::sqrt(2.0)))), 1.0, 1e-15);
}

TEST(Physicality, Examples) {
  const HermitianBasis b2 = gellmannBasis(2);
  const PhysicalityReport mixed = isPhysical(CoherenceVector::maximallyMixed(2), b2);
  EXPECT_TRUE(mixed.physical);
  EXPECT_NEAR(mixed.min_eigenvalue, 0.5, 1e-15);
  const PhysicalityReport surface =
      isPhysical(CoherenceVector(2, Eigen::Vector3d(0.5, 0.5, 0.0)), b2);
  EXPECT_TRUE(surface.physical);
  EXPECT_NEAR(surface.min_eigenvalue, 0.0, 1e-12);
}

TEST(Physicality, BallIsNotSufficientAboveTwoLevels) {
  // Extreme points of the ball along the last diagonal generator of N = 3.
  const HermitianBasis b = gellmannBasis(3);
  const double r = std::sqrt(1.0 - 1.0 / 3.0);
  Vector down = Vector::Zero(8);
  down(7) = -r;
  Vector up = Vector::Zero(8);
  up(7) = r;
  const CoherenceVector vd(3, down);
  const CoherenceVector vu(3, up);
  EXPECT_TRUE(vd.inBall());
  EXPECT_TRUE(vu.inBall());
  const PhysicalityReport pd = isPhysical(vd, b);
  const PhysicalityReport pu = isPhysical(vu, b);
  EXPECT_NE(pd.physical, pu.physical);
  EXPECT_NEAR(std::min(pd.min_eigenvalue, pu.min_eigenvalue), -1.0 / 3.0, 1e-12);
  EXPECT_NEAR(std::max(pd.min_eigenvalue, pu.min_eigenvalue), 0.0, 1e-12);
}

TEST(Physicality, TwoLevelBallAndPositivityCoincide) {
  const HermitianBasis b = gellmannBasis(2);
  for (int trial = 0; trial < 500; ++trial) {
    const Vector r = test::randomVector(3) * test::uniform(0.0, 1.2) / std::sqrt(2.0);
    const CoherenceVector v(2, r);
    if (std::abs(r.squaredNorm() - 0.5) < 1e-6) continue;
    EXPECT_EQ(isPhysical(v, b, 1e-9).physical, r.squaredNorm() <= 0.5 + 1e-9);
  }
}

}  // namespace
}  // namespace qmc
