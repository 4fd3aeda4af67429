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


#ifndef SPINGKP_SDP_HPP_
#define SPINGKP_SDP_HPP_

#include <string>
#include <utility>
#include <vector>

#include "spingkp/linalg.hpp"

namespace spingkp {

// maximize tr(C X) subject to X >= 0, tr_1 X = I_d, with X acting on C^2 (x) C^d
// and the qubit as the slow index.
struct SdpProblem {
  Operator c;
  int d = 0;

  static SdpProblem from_matrix(Operator c);
  // Throws unless C is Hermitian, PSD and has trace 1/2.
  void check(double trace_tol = 1e-10) const;
};

enum class NewtonSolver { kAuto, kDense, kConjugateGradient };

struct SdpOptions {
  double tol = 1e-6;
  int max_newton = 500;
  double mu_factor = 0.2;
  double mu_start = 1.0;
  // Solve on the support of tr_1 C and certify the lifted pair on the full
  // problem; falls back to the full solve when the lifted gap misses tol.
  bool reduce_support = true;
  NewtonSolver solver = NewtonSolver::kAuto;
  double trace_tol = 1e-10;
};

struct SdpStats {
  int newton_steps = 0;
  int cg_iterations = 0;
  int stages = 0;
  int solved_dim = 0;
  std::vector<double> stage_gaps;
  std::vector<double> stage_primal;
  std::vector<double> stage_dual;
};

struct SdpSolution {
  double fidelity = 0.0;  // tr(C X)
  double dual_value = 0.0;  // tr(Y)
  double gap = 0.0;
  Operator y;
  Operator x;
  SdpStats stats;
};

SdpSolution solve(const SdpProblem& problem, const SdpOptions& opts = {});

struct ValidationReport {
  std::vector<std::pair<std::string, bool>> checks;
  std::vector<double> values;
  bool ok() const;
  std::string summary() const;
};

ValidationReport validate(const SdpSolution& sol, const SdpProblem& problem, double tol = 1e-6);

}  // namespace spingkp

#endif  // SPINGKP_SDP_HPP_
