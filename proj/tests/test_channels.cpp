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
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spingkp/channels.hpp"

namespace spingkp {
namespace {

Operator random_density(int d, std::mt19937_64& rng) {
  const Operator a = oracle::random_gaussian(d, d, rng);
  const Operator r = a * a.adjoint();
  return r / r.trace();
}

double tp_gap(const KrausChannel& ch) {
  Operator s = Operator::Zero(ch.dim(), ch.dim());
  ch.for_each_kraus([&](const Operator& k) { s += k.adjoint() * k; });
  return opnorm(s - Operator::Identity(ch.dim(), ch.dim()));
}

TEST(Channels, AllChannelsAreTracePreserving) {
  const SpinSystem sys(12);
  EXPECT_LT(tp_gap(identity_channel(5)), 1e-14);
  for (double g : {0.0, 0.05, 0.8, 3.0}) EXPECT_LT(tp_gap(stochastic_relaxation(sys, g)), 1e-10);
  for (double s : {1e-3, 0.1, 1.0}) {
    EXPECT_LT(tp_gap(one_axis_dephasing(sys, s, Axis::kZ)), 1e-10);
    EXPECT_LT(tp_gap(isotropic_dephasing(sys, s, 21, 8, 16)), 1e-10);
  }
  EXPECT_LT(tp_gap(photon_detection(20, 0.3)), 1e-10);
}

// Kraus operators written out from the relaxation formula.
TEST(Channels, RelaxationMatchesClosedForm) {
  const int n = 4;
  const double g = 0.3;
  const SpinSystem sys(n);
  std::mt19937_64 rng(1);
  const Operator rho = random_density(n + 1, rng);
  Operator ref = Operator::Zero(n + 1, n + 1);
  for (int l = 0; l <= n; ++l) {
    Operator k = Operator::Zero(n + 1, n + 1);
    for (int m = l; m <= n; ++m) {
      // B^l |m> = sqrt(m!/(m-l)!) |m-l>, then N - 2 Jz = 2(m-l).
      const double c = std::sqrt(std::pow(1.0 - std::exp(-g), l) / std::tgamma(l + 1.0)) *
                       std::exp(-0.25 * g * 2.0 * (m - l)) *
                       std::sqrt(std::tgamma(m + 1.0) / std::tgamma(m - l + 1.0));
      k(m - l, m) = c;
    }
    ref += k * rho * k.adjoint();
  }
  EXPECT_LT(max_abs(stochastic_relaxation(sys, g).apply(rho) - ref), 1e-12);
}

TEST(Channels, ZeroStrengthIsIdentity) {
  const SpinSystem sys(6);
  std::mt19937_64 rng(2);
  const Operator rho = random_density(7, rng);
  EXPECT_LT(max_abs(stochastic_relaxation(sys, 0.0).apply(rho) - rho), 1e-12);
  EXPECT_LT(max_abs(identity_channel(7).apply(rho) - rho), 1e-15);
  EXPECT_LT(max_abs(isotropic_dephasing(sys, 1e-8).apply(rho) - rho), 1e-6);
}

TEST(Channels, DephasingIsMixedUnitaryAndUnital) {
  const SpinSystem sys(8);
  const KrausChannel ch = isotropic_dephasing(sys, 0.3, 21, 8, 16);
  ASSERT_TRUE(ch.is_mixed_unitary());
  double w = 0.0;
  ch.for_each_unitary([&](double wt, const Operator& u) {
    w += wt;
    EXPECT_LT(unitarity_defect(u), 1e-10);
  });
  EXPECT_NEAR(w, 1.0, 1e-12);
  const Operator id = Operator::Identity(9, 9);
  EXPECT_LT(max_abs(ch.apply(id) - id), 1e-10);
}

TEST(Channels, OneAxisZDephasingDampsCoherencesOnly) {
  const SpinSystem sys(6);
  const double s = 0.1;  // angle variance
  const KrausChannel ch = one_axis_dephasing(sys, s, Axis::kZ);
  std::mt19937_64 rng(3);
  const Operator rho = random_density(7, rng);
  const Operator out = ch.apply(rho);
  for (int k = 0; k < 7; ++k) {
    EXPECT_NEAR(std::abs(out(k, k) - rho(k, k)), 0.0, 1e-12);
    for (int l = 0; l < 7; ++l) {
      // Gaussian characteristic function at the Jz eigenvalue difference.
      const double damp = std::exp(-0.5 * s * (k - l) * (k - l));
      EXPECT_NEAR(std::abs(out(k, l)), damp * std::abs(rho(k, l)), 1e-9);
    }
  }
}

TEST(Channels, PhotodetectionDecaysPhotonNumber) {
  const int cutoff = 10;
  const double g = 0.4;
  Operator rho = Operator::Zero(cutoff + 1, cutoff + 1);
  rho(5, 5) = 1.0;
  const Operator out = photon_detection(cutoff, g).apply(rho);
  double mean = 0.0;
  for (int k = 0; k <= cutoff; ++k) mean += k * out(k, k).real();
  EXPECT_NEAR(mean, 5.0 * std::exp(-g), 1e-10);
}

TEST(Channels, RejectsNegativeStrength) {
  EXPECT_THROW(stochastic_relaxation(SpinSystem(4), -0.1), Error);
  EXPECT_THROW(isotropic_dephasing(SpinSystem(4), -0.1), Error);
}

}  // namespace
}  // namespace spingkp
