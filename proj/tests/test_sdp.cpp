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
#include "spingkp/codes.hpp"
#include "spingkp/recovery.hpp"
#include "spingkp/sdp.hpp"

namespace spingkp {
namespace {

// A random code of dimension d and a random channel with `kraus` operators.
SdpProblem random_instance(int d, int kraus, std::mt19937_64& rng) {
  const Operator basis = oracle::random_isometry(d, 2, rng);
  const Operator big = oracle::random_isometry(d * kraus, d, rng);
  std::vector<Operator> ks;
  for (int k = 0; k < kraus; ++k) ks.push_back(big.middleRows(k * d, d));
  const KrausChannel ch = KrausChannel::from_kraus(ks, {"random", d, 0.0, {}});
  return build_c_matrix(orthonormalize(Ket(basis.col(0)), Ket(basis.col(1))), ch);
}

TEST(Sdp, MatchesPrimalOracleOnRandomInstances) {
  std::mt19937_64 rng(99);
  for (int inst = 0; inst < 10; ++inst) {
    const int d = 3 + inst % 7;
    const SdpProblem prob = random_instance(d, 1 + inst % 4, rng);
    const SdpSolution s = solve(prob);
    EXPECT_LT(s.gap, 1e-6);
    EXPECT_NEAR(s.fidelity, oracle::primal_fidelity(prob.c, d, inst), 1e-4) << "instance " << inst;
  }
}

TEST(Sdp, SolutionPassesValidation) {
  std::mt19937_64 rng(5);
  const SdpProblem prob = random_instance(6, 3, rng);
  const SdpSolution s = solve(prob);
  const ValidationReport r = validate(s, prob);
  EXPECT_TRUE(r.ok()) << r.summary();
  EXPECT_NEAR(s.dual_value - s.fidelity, s.gap, 1e-12);
}

TEST(Sdp, IdentityChannelIsPerfect) {
  const OrthonormalCode code =
      orthonormalize(build_code(CodeParams{Family::kSpinGkp, 16, 5, 0.3}));
  const SdpSolution s = solve(build_c_matrix(code, identity_channel(17)));
  EXPECT_NEAR(s.fidelity, 1.0, 1e-6);
}

// The replacement channel rho -> tr(rho) I/d leaves nothing to recover.
TEST(Sdp, CompletelyDepolarizingGivesQuarter) {
  const int d = 5;
  std::vector<Operator> ks;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Operator k = Operator::Zero(d, d);
      k(i, j) = 1.0 / std::sqrt(double(d));
      ks.push_back(k);
    }
  const KrausChannel ch = KrausChannel::from_kraus(ks, {"depolarize", d, 1.0, {}});
  std::mt19937_64 rng(6);
  const Operator basis = oracle::random_isometry(d, 2, rng);
  const SdpSolution s =
      solve(build_c_matrix(orthonormalize(Ket(basis.col(0)), Ket(basis.col(1))), ch));
  EXPECT_NEAR(s.fidelity, 0.25, 1e-6);
}

TEST(Sdp, DenseAndIterativeNewtonAgree) {
  std::mt19937_64 rng(7);
  const SdpProblem prob = random_instance(9, 2, rng);
  SdpOptions dense, cg;
  dense.solver = NewtonSolver::kDense;
  cg.solver = NewtonSolver::kConjugateGradient;
  EXPECT_NEAR(solve(prob, dense).fidelity, solve(prob, cg).fidelity, 1e-6);
}

TEST(Sdp, SupportReductionPreservesValue) {
  const SpinSystem sys(24);
  const OrthonormalCode code =
      orthonormalize(build_code(CodeParams{Family::kBinom, 24, 5, 0.3}));
  const SdpProblem prob = build_c_matrix(code, stochastic_relaxation(sys, 0.2));
  SdpOptions full;
  full.reduce_support = false;
  EXPECT_NEAR(solve(prob).fidelity, solve(prob, full).fidelity, 1e-6);
}

TEST(Sdp, RejectsMalformedProblems) {
  EXPECT_THROW(SdpProblem::from_matrix(Operator::Identity(5, 5)), Error);
}

}  // namespace
}  // namespace spingkp
