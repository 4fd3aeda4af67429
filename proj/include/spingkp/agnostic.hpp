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


#ifndef SPINGKP_AGNOSTIC_HPP_
#define SPINGKP_AGNOSTIC_HPP_

#include <vector>

#include "spingkp/codes.hpp"
#include "spingkp/spin.hpp"

namespace spingkp {

// Nearest-lattice remainder of a syndrome angle on the comb of spacing
// sqrt(2 pi / N), with lattice indices limited to |k| <= floor(sqrt(N pi / 2)).
double residue(double a, int n);

// Frame in which the syndrome kets are written. kHalfTurn prefixes
// exp(-i pi Jz) as printed for the rotated measurement; kQuarterTurn uses the
// F gate exp(+i pi Jz / 2), which maps Jx-type shifts onto Jy-type ones.
enum class PovmFrame { kPlain, kHalfTurn, kQuarterTurn };

struct SyndromePovm {
  int n = 0;
  double z = 0.0;
  PovmFrame frame = PovmFrame::kPlain;
  std::vector<double> a;  // uniform grid on [-pi, pi)
  double da = 0.0;
  Operator kets;       // column g is |psi_z(a_g)>, frame applied
  Operator rotation;   // the frame unitary
  Ket parent;          // squeezed vacuum before the a-rotation

  int size() const { return static_cast<int>(a.size()); }
  // sum_g da |psi_g><psi_g|; the measurement is completed by I minus this.
  Operator frame_operator() const;
};

// Grid density used when none is given: 32 ceil(sqrt(N pi / 2)), at least 4N.
int default_povm_grid(int n);

SyndromePovm build_povm(const SpinSystem& sys, double z, int n_grid,
                        PovmFrame frame = PovmFrame::kPlain);

struct SyndromeOutcome {
  double a = 0.0;
  double probability = 0.0;
  double residue = 0.0;
  double angle = 0.0;  // corrective rotation exp(+i angle Jy)
};

enum class RecoveryMode { kMaxProb, kFullAverage };

struct AgnosticResult {
  double fidelity = 0.0;
  // Sum of syndrome probabilities; the remainder sits on the completion.
  double total_probability = 0.0;
  std::vector<SyndromeOutcome> outcomes;  // grid order
  int selected = -1;                      // grid index nearest the selected syndrome
  SyndromeOutcome best;                   // most probable syndrome, refined off-grid
  Ket state;                              // normalized selected branch
};

// |+_L> of the ancilla code, normalized.
Ket logical_plus(const CodePair& ancilla);

// One recovery stage acting on error * input; fidelity is with input. In
// kMaxProb mode the grid argmax seeds a golden-section search of the
// continuous syndrome density, so the branch does not snap to the grid.
AgnosticResult recover_q(const Ket& input, const Operator& error, const CodePair& ancilla,
                         const SyndromePovm& povm, RecoveryMode mode);

// Stage with povm_q, then the same stage in the frame of povm_p; each stage
// keeps its most probable branch.
double concatenated_recovery(const Ket& input, const Operator& error, const CodePair& ancilla,
                             const SyndromePovm& povm_q, const SyndromePovm& povm_p);

// Ancilla used by the squeezed-state experiment: tactgkp_uni, T = 2.
CodeParams default_ancilla(int n, double delta);

struct ShiftRecoveryPoint {
  int n = 0;
  double recovered = 0.0;
  double unrecovered = 0.0;
};

// Squeezed vacuum at delta, error exp(i b Jy) with b = sqrt(2 pi / N) / 4,
// recovered on the most probable syndrome.
ShiftRecoveryPoint squeezed_shift_experiment(int n, double delta, int n_grid = 0);

}  // namespace spingkp

#endif  // SPINGKP_AGNOSTIC_HPP_
