// Copyright 2026 The spingkp Authors
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

#include <gtest/gtest.h>

#include "spingkp/spin.hpp"

namespace spingkp {
namespace {

class SpinAlgebra : public ::testing::TestWithParam<int> {};

TEST_P(SpinAlgebra, CommutatorsAndCasimir) {
  const SpinSystem sys(GetParam());
  const Operator jx = angular_momentum(sys, Axis::kX);
  const Operator jy = angular_momentum(sys, Axis::kY);
  const Operator jz = angular_momentum(sys, Axis::kZ);
  EXPECT_LT(max_abs(jx * jy - jy * jx - kI * jz), 1e-10);
  EXPECT_LT(max_abs(jy * jz - jz * jy - kI * jx), 1e-10);
  EXPECT_LT(max_abs(jz * jx - jx * jz - kI * jy), 1e-10);
  const double j = sys.spin();
  const Operator c = jx * jx + jy * jy + jz * jz;
  EXPECT_LT(max_abs(c - j * (j + 1) * Operator::Identity(sys.dim(), sys.dim())), 1e-9);
}

TEST_P(SpinAlgebra, RaisingOperatorLowersIndex) {
  const SpinSystem sys(GetParam());
  const Operator jp = angular_momentum(sys, Axis::kPlus);
  const Operator jz = angular_momentum(sys, Axis::kZ);
  EXPECT_NEAR(jz(0, 0).real(), sys.spin(), 1e-12);
  EXPECT_LT((jp * basis_ket(sys.dim(), 0)).norm(), 1e-12);
  const Ket v = jp * basis_ket(sys.dim(), 1);
  EXPECT_NEAR(std::abs(v(0)), std::sqrt(double(sys.particles())), 1e-12);
}

TEST_P(SpinAlgebra, SqueezeAndRotationsAreUnitary) {
  const SpinSystem sys(GetParam());
  EXPECT_LT(unitarity_defect(tact_squeeze(sys, 0.7)), 1e-10);
  EXPECT_LT(unitarity_defect(oat_unitary(sys, 0.3)), 1e-10);
  EXPECT_LT(unitarity_defect(rotation(sys, bloch_direction(0.4, 1.1), 0.9)), 1e-10);
}

INSTANTIATE_TEST_SUITE_P(Sizes, SpinAlgebra, ::testing::Values(1, 4, 7, 32));

TEST(Spin, TactGeneratorFromLadderOperators) {
  const SpinSystem sys(10);
  const Operator jp = angular_momentum(sys, Axis::kPlus);
  const Operator jm = angular_momentum(sys, Axis::kMinus);
  const double z = 0.45;
  // exp(A) with A anti-Hermitian equals exp(-i (iA)).
  const Operator a = (z / (2.0 * 10)) * (jp * jp - jm * jm);
  EXPECT_LT(max_abs(tact_squeeze(sys, z) - expm_hermitian(kI * a, 1.0)), 1e-11);
}

TEST(Spin, CoherentStateMoments) {
  const SpinSystem sys(20);
  const double theta = 0.8, phi = 0.3;
  const Ket s = spin_coherent(sys, theta, phi);
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
  const Eigen::Vector3d n = bloch_direction(theta, phi);
  EXPECT_NEAR(s.dot(axis_component(sys, n) * s).real(), sys.spin(), 1e-10);
  EXPECT_NEAR(s.dot(angular_momentum(sys, Axis::kZ) * s).real(), sys.spin() * std::cos(theta), 1e-10);
}

TEST(Spin, HusimiOfCoherentStateIsNormalized) {
  const SpinSystem sys(16);
  const HusimiGrid g = husimi_q(spin_coherent(sys, 1.0, 2.0), 121, 240);
  EXPECT_NEAR(g.normalization(16), 1.0, 1e-3);
  // The maximum sits at the state direction.
  Eigen::Index i, j;
  g.q.maxCoeff(&i, &j);
  EXPECT_NEAR(g.theta[i], 1.0, 0.03);
  EXPECT_NEAR(g.phi[j], 2.0, 0.03);
}

TEST(Spin, EmbeddingMapsDickeToFock) {
  const SpinSystem sys(12);
  const Embedding e = isometry_embed(basis_ket(sys.dim(), 3), 8);
  EXPECT_EQ(e.fock.size(), 9);
  EXPECT_NEAR(std::abs(e.fock(3)), 1.0, 1e-15);
  EXPECT_NEAR(e.leaked_norm, 0.0, 1e-15);
  const Embedding cut = isometry_embed(basis_ket(sys.dim(), 10), 8);
  EXPECT_NEAR(cut.leaked_norm, 1.0, 1e-15);
}

TEST(Spin, DeMoivreLaplaceRatioTendsToOne) {
  double prev = std::abs(dml_ratio(16, 0.5 * std::sqrt(16.0)) - 1.0);
  for (int n : {64, 256, 1024}) {
    const double dev = std::abs(dml_ratio(n, 0.5 * std::sqrt(double(n))) - 1.0);
    EXPECT_LT(dev, prev);
    prev = dev;
  }
  EXPECT_LT(prev, 5e-3);
}

TEST(Spin, RejectsBadSizes) {
  EXPECT_THROW(SpinSystem(0), Error);
}

}  // namespace
}  // namespace spingkp
