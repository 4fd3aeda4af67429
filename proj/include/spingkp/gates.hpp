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


#ifndef SPINGKP_GATES_HPP_
#define SPINGKP_GATES_HPP_

#include <optional>

#include "spingkp/codes.hpp"
#include "spingkp/spin.hpp"

namespace spingkp {

struct GateSet {
  int n = 0;
  std::optional<Operator> sum;  // exp(-2i Jx (x) Jy / N); stored only for N <= 32
  Operator f;                   // exp(+i pi Jz / 2), see f_gate
  Operator p;                   // exp(i Jx^2 / N)
  Operator stabilizer_x;        // exp(-2i sqrt(2 pi / N) Jx)
  Operator stabilizer_y;        // exp(+2i sqrt(2 pi / N) Jy)
};

// Largest N for which the two-register SUM is materialized.
inline constexpr int kMaxSumParticles = 32;

GateSet build_gates(const SpinSystem& sys);

// exp(-2i Jx (x) Jy / N) from the single-register spectra.
Operator sum_gate(const SpinSystem& sys);

// Quarter turn about z with the sign fixed by F M_t F^dag = N_{-t} and
// F N_t F^dag = M_t under [Jx, Jy] = i Jz; that is exp(+i pi Jz / 2).
Operator f_gate(const SpinSystem& sys);

// M_theta = exp(-i theta Jx), N_phi = exp(-i phi Jy).
Operator m_error(const SpinSystem& sys, double theta);
Operator n_error(const SpinSystem& sys, double phi);

struct FConjugationDefects {
  double m_to_n = 0.0;  // |F M_t F^dag - N_{-t}|
  double n_to_m = 0.0;  // |F N_t F^dag - M_t|
};

// Operator norms are spectral norms.
FConjugationDefects check_f_conjugation(const SpinSystem& sys, double theta);

struct PPropagation {
  double commute_defect = 0.0;       // |[P, M_phi]|
  double asymptotic_fidelity = 0.0;  // |<psi| (N M_{-phi})^dag P N_phi P^dag |psi>|
};

// Test state is the spin coherent state |N,0>.
PPropagation check_p_propagation(const SpinSystem& sys, double phi);

struct SumPropagation {
  double benign_m = 0.0;  // |SUM (M (x) I) SUM^dag - M (x) I|
  double benign_n = 0.0;  // |SUM (I (x) N) SUM^dag - I (x) N|
  double fanout_fidelity = 0.0;
};

// Requires N <= kMaxSumParticles.
SumPropagation check_sum_propagation(const SpinSystem& sys, double phi);

// |(Sx Sy - Sy Sx) P_code| for the orthonormalized code.
double stabilizer_commutator(const OrthonormalCode& code, const GateSet& gates);

struct MagicStateTrial {
  double fidelity = 0.0;      // with cos(pi/8)|0_L> + sin(pi/8)|1_L>
  double probability = 0.0;   // density of the selected syndrome times da
};

// Spin coherent input, one SUM-coupled syndrome round with the tactgkp_uni
// ancilla, most probable branch kept. No distillation.
MagicStateTrial magic_state_trial(const CodeParams& code);

}  // namespace spingkp

#endif  // SPINGKP_GATES_HPP_
