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

#include "spingkp/channels.hpp"
#include "spingkp/codes.hpp"
#include "spingkp/recovery.hpp"

namespace spingkp {
namespace {

CodeParams params(Family f, int n, double delta) {
  CodeParams p;
  p.family = f;
  p.n = n;
  p.delta = delta;
  return p;
}

TEST(Recovery, FidelityWithinSdpBounds) {
  const SpinSystem sys(16);
  for (Family f : all_families()) {
    const FidelityResult r = evaluate_code(params(f, 16, 0.35), stochastic_relaxation(sys, 0.2));
    EXPECT_GE(r.fidelity, 0.25 - 1e-8) << family_name(f);
    EXPECT_LE(r.fidelity, 1.0 + 1e-6) << family_name(f);
    EXPECT_LT(r.gap, 1e-6);
  }
}

TEST(Recovery, LowerBoundsNeverExceedOptimum) {
  const SpinSystem sys(16);
  for (double s : {0.01, 0.1, 0.5}) {
    const KrausChannel ch = isotropic_dephasing(sys, s, 21, 8, 16);
    for (Family f : {Family::kSpinGkp, Family::kOatGkp, Family::kCat, Family::kBinom}) {
      const OrthonormalCode code = orthonormalize(build_code(params(f, 16, 0.3)));
      const double opt = optimal_fidelity(code, ch).fidelity;
      const LowerBounds lb = mixed_unitary_lower_bounds(code, ch);
      EXPECT_LE(lb.lb2, opt + 1e-8) << family_name(f) << " sigma=" << s;
      EXPECT_LE(lb.lb3, opt + 1e-8) << family_name(f) << " sigma=" << s;
    }
  }
}

TEST(Recovery, KernelOfIdentityIsProjector) {
  const OrthonormalCode code = orthonormalize(build_code(params(Family::kSpinGkp, 16, 0.3)));
  const Operator id = Operator::Identity(17, 17);
  const QecKernelSample k = qec_kernel(code, id, id);
  EXPECT_NEAR(std::abs(k.a - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(k.b) + std::abs(k.c) + std::abs(k.d), 0.0, 1e-12);
}

TEST(Recovery, LowerBoundsAreTightWithoutNoise) {
  const OrthonormalCode code = orthonormalize(build_code(params(Family::kTactGkp, 16, 0.3)));
  const LowerBounds lb = mixed_unitary_lower_bounds(code, isotropic_dephasing(SpinSystem(16), 1e-10));
  EXPECT_NEAR(lb.lb2, 1.0, 1e-6);
}

TEST(Recovery, OptimizerBeatsItsGrid) {
  const SpinSystem sys(16);
  const KrausChannel ch = stochastic_relaxation(sys, 0.2);
  ParamBounds b = default_bounds(Family::kSpinGkp, 16);
  b.grid = 8;
  const RecoveryResult r = optimize_params(params(Family::kSpinGkp, 16, 0.3), ch, b);
  EXPECT_GT(r.params.delta, b.delta_min);
  EXPECT_LE(r.params.delta, b.delta_max);
  for (int i = 1; i <= b.grid; ++i) {
    const double d = b.delta_min + (b.delta_max - b.delta_min) * i / b.grid;
    try {
      EXPECT_GE(r.fidelity, evaluate_code(params(Family::kSpinGkp, 16, d), ch).fidelity - 1e-7);
    } catch (const Error&) {
      // parallel codewords at this delta
    }
  }
  EXPECT_NEAR(evaluate_code(r.params, ch).fidelity, r.fidelity, 1e-9);
}

TEST(Recovery, UniformFamiliesScanT) {
  const SpinSystem sys(16);
  const RecoveryResult r = optimize_params(params(Family::kUniGkp, 16, 0.3),
                                           stochastic_relaxation(sys, 0.1),
                                           default_bounds(Family::kUniGkp, 16));
  EXPECT_GE(r.params.t, 1);
  EXPECT_GT(r.fidelity, 0.25);
}

TEST(Recovery, NoRecoveryBaselineIsReproducible) {
  const OrthonormalCode code = orthonormalize(build_code(params(Family::kSpinGkp, 16, 0.3)));
  const KrausChannel ch = stochastic_relaxation(SpinSystem(16), 0.2);
  const MeanStd a = no_recovery_fidelity(code, ch, 50, 4);
  const MeanStd b = no_recovery_fidelity(code, ch, 50, 4);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_GE(a.mean, 0.0);
  EXPECT_LE(a.mean, 1.0);
}

}  // namespace
}  // namespace spingkp
