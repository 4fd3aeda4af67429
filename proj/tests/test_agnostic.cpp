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
#include <numbers>

#include <gtest/gtest.h>

#include "spingkp/agnostic.hpp"

namespace spingkp {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Agnostic, ResidueIsNearestLatticeRemainder) {
  const int n = 40;
  const double s = std::sqrt(2.0 * kPi / n);
  for (int k = -3; k <= 3; ++k)
    for (double r : {-0.4 * s, 0.0, 0.3 * s}) EXPECT_NEAR(residue(k * s + r, n), r, 1e-12);
  // Inside the lattice range the remainder is at most half a spacing.
  const double reach = (std::floor(std::sqrt(n * kPi / 2.0)) + 0.5) * s;
  for (double a = -reach; a < reach; a += 0.01) EXPECT_LE(std::abs(residue(a, n)), 0.5 * s + 1e-12);
}

TEST(Agnostic, FrameOperatorIsSubnormalized) {
  const SpinSystem sys(20);
  const SyndromePovm povm = build_povm(sys, 0.8, default_povm_grid(20));
  const Operator f = povm.frame_operator();
  EXPECT_TRUE(is_hermitian(f, 1e-10));
  EXPECT_GE(min_eigenvalue(f), -1e-10);
  EXPECT_GE(min_eigenvalue(Operator::Identity(21, 21) - f), -1e-8);
}

TEST(Agnostic, PovmKetsAreRotatedParent) {
  const SpinSystem sys(16);
  const SyndromePovm povm = build_povm(sys, 0.6, 64);
  EXPECT_EQ(povm.size(), 64);
  for (int g : {0, 17, 40}) EXPECT_NEAR(povm.kets.col(g).norm(), povm.parent.norm(), 1e-12);
}

TEST(Agnostic, FramesDifferOnlyByTheirRotation) {
  const SpinSystem sys(12);
  const SyndromePovm plain = build_povm(sys, 0.5, 48);
  const SyndromePovm quarter = build_povm(sys, 0.5, 48, PovmFrame::kQuarterTurn);
  EXPECT_LT(max_abs(quarter.kets - quarter.rotation * plain.kets), 1e-12);
  EXPECT_LT(unitarity_defect(quarter.rotation), 1e-12);
}

TEST(Agnostic, RecoveryBeatsDoingNothing) {
  for (int n : {20, 40}) {
    const ShiftRecoveryPoint p = squeezed_shift_experiment(n, 0.2);
    EXPECT_GT(p.recovered, p.unrecovered) << "N=" << n;
    EXPECT_LE(p.recovered, 1.0 + 1e-10);
  }
}

TEST(Agnostic, ProbabilitiesAreConsistent) {
  const SpinSystem sys(20);
  const CodeParams anc = default_ancilla(20, 0.2);
  const Ket input = tact_squeeze(sys, anc.resolved_z()) * basis_ket(21, 0);
  const Operator err = expm_hermitian(angular_momentum(sys, Axis::kY), -0.1);
  const SyndromePovm povm = build_povm(sys, anc.resolved_z(), default_povm_grid(20));
  const AgnosticResult r = recover_q(input, err, build_code(anc), povm, RecoveryMode::kMaxProb);
  EXPECT_GT(r.total_probability, 0.0);
  EXPECT_LE(r.total_probability, 1.0 + 1e-8);
  double s = 0.0;
  for (const auto& o : r.outcomes) s += o.probability;
  EXPECT_NEAR(s, r.total_probability, 1e-10);
  EXPECT_NEAR(r.state.norm(), 1.0, 1e-12);
  EXPECT_GE(r.selected, 0);
}

}  // namespace
}  // namespace spingkp
