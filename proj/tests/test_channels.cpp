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

#include "qmcontrol/channels.hpp"

#include "qmcontrol/dissipator.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace qmc {
namespace {

const std::complex<double> I(0.0, 1.0);

TEST(MMatrix, PrintedExamples) {
  const AffineGenerator& m12 = mMatrix(12);
  EXPECT_EQ(m12.linear(), Matrix(Eigen::Vector3d(-1, -1, 0).asDiagonal()));
  EXPECT_EQ(m12.translation().norm(), 0.0);

  const AffineGenerator& m5 = mMatrix(5);
  EXPECT_EQ(m5.linear().norm(), 0.0);
  EXPECT_EQ(m5.translation(), Vector(Eigen::Vector3d(0, 0, -2)));

  const AffineGenerator& m3 = mMatrix(3);
  Matrix rot = Matrix::Zero(3, 3);
  rot(0, 1) = -1.0;
  rot(1, 0) = 1.0;
  EXPECT_EQ(m3.linear(), rot);
  EXPECT_EQ(m3.homogeneous()(1, 2), -1.0);
  EXPECT_EQ(m3.homogeneous()(2, 1), 1.0);
}

TEST(MMatrix, IndexOutOfRange) {
  EXPECT_THROW(mMatrix(0), InvalidArgument);
  EXPECT_THROW(mMatrix(13), InvalidArgument);
}

TEST(MMatrix, EntriesAreIntegers) {
  for (int k = 1; k <= 12; ++k) {
    const Matrix h = mMatrix(k).homogeneous();
    EXPECT_EQ(h.row(0).norm(), 0.0);
    for (Eigen::Index i = 0; i < h.size(); ++i) EXPECT_EQ(h(i), std::round(h(i)));
  }
}

TEST(MMatrix, SpanIsTwelveDimensionalAndClosed) {
  std::vector<AffineGenerator> ms;
  Matrix flat(12, 12);
  for (int k = 1; k <= 12; ++k) {
    ms.push_back(mMatrix(k));
    flat.col(k - 1) = mMatrix(k).flatten();
  }
  EXPECT_EQ(test::numericalRank(flat), 12);
  const LieClosure c = closure(ms);
  EXPECT_EQ(c.dim, 12);
  EXPECT_EQ(classify(c, 3).label, AlgebraClass::GlSemidirect);
}

TEST(MMatrix, SingleEntryGksMatricesReproduceDissipativeGenerators) {
  const HermitianBasis b = gellmannBasis(2);
  for (int k = 4; k <= 12; ++k) {
    TwoLevelParams p{};
    p[static_cast<std::size_t>(k - 4)] = 1.0;
    const AffineGenerator l = assembleDissipator(gksFromTwoLevel(p), b);
    EXPECT_LT((l.homogeneous() - mMatrix(k).homogeneous()).cwiseAbs().maxCoeff(), 1e-12) << k;
  }
}

TEST(BlochHamiltonian, Examples) {
  EXPECT_LT((blochHamiltonian({0, 0, 1}) - mMatrix(3)).norm(), 1e-15);
  EXPECT_TRUE(blochHamiltonian({0, 0, 0}).isZero(0.0));
  EXPECT_LT((bracket(blochHamiltonian({1, 0, 0}), blochHamiltonian({0, 1, 0})) -
             blochHamiltonian({0, 0, 1}))
                .norm(),
            1e-15);
}

TEST(Preset, AmplitudeDamping) {
  const double g = 0.6;
  const ControlSystem s = preset({Channel::AmplitudeDamping, {{"gamma", g}}});
  ASSERT_TRUE(s.gks.has_value());
  CMatrix want(3, 3);
  want << 1.0, -I, 0.0, I, 1.0, 0.0, 0.0, 0.0, 0.0;
  want *= g / 2.0;
  EXPECT_LT((s.gks->matrix() - want).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((s.dissipator - (g / 2.0) * (mMatrix(10) + mMatrix(11) - mMatrix(5))).norm(), 1e-15);
  const PsdReport p = checkPsd(*s.gks);
  EXPECT_TRUE(p.is_psd);
  EXPECT_NEAR(p.min_eigenvalue, 0.0, 1e-12);
  ASSERT_EQ(s.controls.size(), 3u);
  for (int k = 0; k < 3; ++k) EXPECT_LT((s.controls[k] - mMatrix(k + 1)).norm(), 1e-15);
}

TEST(Preset, AmplitudeDampingWithDriftHamiltonian) {
  const ControlSystem s = preset({Channel::AmplitudeDamping, {{"gamma", 1.0}, {"h0_3", 2.5}}});
  EXPECT_LT((s.hamiltonian - 2.5 * mMatrix(3)).norm(), 1e-15);
  EXPECT_LT((s.drift() - s.hamiltonian - s.dissipator).norm(), 1e-15);
}

TEST(Preset, Depolarizing) {
  const double g = 0.4;
  const ControlSystem s = preset({Channel::Depolarizing, {{"gamma", g}}});
  EXPECT_LT((s.dissipator - (-2.0 * g) * AffineGenerator::identity(3)).norm(), 1e-15);
  const TwoLevelParams a = twoLevelFromGks(*s.gks);
  EXPECT_EQ(a[6], g);
  EXPECT_EQ(a[7], g);
  EXPECT_EQ(a[8], g);
}

TEST(Preset, PauliChannelsUseSingleDiagonalEntries) {
  const ControlSystem pf = preset({Channel::PhaseFlip, {{"a12", 0.3}}});
  EXPECT_LT((pf.dissipator - 0.3 * mMatrix(12)).norm(), 1e-15);
  EXPECT_FALSE(fixedPoint(pf.drift(), 2).has_value());
  const ControlSystem bf = preset({Channel::BitFlip, {{"a10", 0.3}}});
  EXPECT_LT((bf.dissipator - 0.3 * mMatrix(10)).norm(), 1e-15);
  const ControlSystem bp = preset({Channel::BitPhaseFlip, {{"a11", 0.3}}});
  EXPECT_LT((bp.dissipator - 0.3 * mMatrix(11)).norm(), 1e-15);
}

TEST(Preset, EveryPresetIsAdmissible) {
  for (Channel c : {Channel::Depolarizing, Channel::PhaseFlip, Channel::BitFlip,
                    Channel::BitPhaseFlip, Channel::AmplitudeDamping}) {
    const ControlSystem s = preset(defaultPreset(c));
    EXPECT_TRUE(s.admissible);
    EXPECT_TRUE(checkPsd(*s.gks).is_psd);
    EXPECT_EQ(channelFromString(toString(c)), c);
  }
}

TEST(Preset, RejectsBadParameters) {
  EXPECT_THROW(preset({Channel::Depolarizing, {{"gamma", -1.0}}}), InvalidArgument);
  EXPECT_THROW(preset({Channel::Depolarizing, {{"a12", 1.0}}}), InvalidArgument);
  EXPECT_THROW(preset({Channel::AmplitudeDamping, {{"h0_3", -1.0}}}), InvalidArgument);
  EXPECT_THROW(channelFromString("thermal"), InvalidArgument);
}

}  // namespace
}  // namespace qmc
