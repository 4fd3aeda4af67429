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


#ifndef SPINGKP_LCU_HPP_
#define SPINGKP_LCU_HPP_

#include <cstdint>
#include <vector>

#include "spingkp/codes.hpp"
#include "spingkp/spin.hpp"

namespace spingkp {

// Unitary whose column at `home` equals alphas / |alphas|. Uniform amplitudes
// on 2T+1 levels with home = T give the DFT omega^{ij} / sqrt(2T+1), indices
// i, j running over -T..T; anything else is completed by a Householder
// reflection.
Operator make_u_prep(const Ket& alphas, int home);

enum class SelectGenerator { kJySingle, kJyJxDouble };

// Block-diagonal select unitary sum_t |t><t| (x) U_t, stored by blocks.
class SelectUnitary {
 public:
  SelectUnitary(std::vector<Operator> blocks) : blocks_(std::move(blocks)) {}

  int ancilla_dim() const { return static_cast<int>(blocks_.size()); }
  int system_dim() const { return static_cast<int>(blocks_.front().rows()); }
  const Operator& block(int i) const { return blocks_[i]; }
  // Full (ancilla (x) system) matrix; only for small sizes.
  Operator dense() const;

 private:
  std::vector<Operator> blocks_;
};

// Single: U_t = exp(2 i t sqrt(2 pi / N) Jy), t = -T..T. Double: the ancilla
// pair (t1, t2) in row-major order with U_t1 V_t2, U_t1 = exp(-2i (sqrt(2 pi) t1
// + offset) Jy / sqrt(N)) and V_t2 = exp(2i sqrt(pi / 2) t2 Jx / sqrt(N)).
// `offset` carries the logical label of grid codes and is zero otherwise.
SelectUnitary make_u_select(const SpinSystem& sys, int t, SelectGenerator gen, double offset = 0.0);

// A code as a linear combination of unitaries on a parent state.
struct LcuCircuit {
  SelectGenerator generator = SelectGenerator::kJySingle;
  int t = 0;
  Ket alphas;       // square roots of the comb weights, ancilla order
  int home = 0;     // ancilla level that U_prep starts from (t = 0)
  Operator u_prep;
  Ket parent;       // R_r(mu) |N,0> for single-ancilla codes, |N,0> otherwise
  double offset = 0.0;
};

// Throws for families that are not a comb of rotations (binom, rail, cat,
// coherent) and for the Gamma-weighted one-axis comb, whose two tooth sets
// do not share a lattice.
LcuCircuit lcu_circuit(const CodeParams& params, double mu);

struct LcuResult {
  Ket state;                 // normalized heralded system ket
  double herald_probability = 0.0;
  double fidelity = 0.0;     // against build_codeword(params, mu)
};

LcuResult lcu_prepare(const CodeParams& params, double mu);

// Runs the circuit with exp(-i eps H) on the ancilla before the select
// unitary. Identity noise when `noise` is empty.
LcuResult run_lcu(const LcuCircuit& circuit, const SpinSystem& sys, const Operator& noise,
                  const Ket& target);

// GUE sample on `dim` levels, scaled to operator norm `norm`. Seeded per
// (seed, index) so that streams never overlap.
Operator gue_sample(int dim, double norm, std::uint64_t seed, std::uint64_t index);

struct NoisyLcuSample {
  std::uint64_t seed = 0;
  double fidelity = 0.0;
  double herald_probability = 0.0;
};

struct NoisyLcuStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::vector<NoisyLcuSample> samples;
};

// Samples seeds seed, seed+1, ..., each with an independent GUE draw of norm T.
NoisyLcuStats noisy_lcu(const CodeParams& params, double mu, double epsilon, std::uint64_t seed,
                        int n_samples);

}  // namespace spingkp

#endif  // SPINGKP_LCU_HPP_
