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


#include "spingkp/gates.hpp"

#include <cmath>
#include <numbers>

#include "spingkp/agnostic.hpp"

namespace spingkp {

namespace {

constexpr double kPi = std::numbers::pi;

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

}  // namespace

Operator sum_gate(const SpinSystem& sys) {
  require(sys.particles() <= kMaxSumParticles,
          "sum_gate: two-register operators are limited to N <= 32");
  const HermitianEig x = eigh(angular_momentum(sys, Axis::kX));
  const HermitianEig y = eigh(angular_momentum(sys, Axis::kY));
  const int d = sys.dim();
  const double n = sys.particles();
  Ket phases(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) phases(i * d + j) = std::exp(-2.0 * kI * x.values(i) * y.values(j) / n);
  const Operator v = kron(x.vectors, y.vectors);
  return v * phases.asDiagonal() * v.adjoint();
}

Operator f_gate(const SpinSystem& sys) {
  return expm_hermitian(angular_momentum(sys, Axis::kZ), -0.5 * kPi);
}

Operator m_error(const SpinSystem& sys, double theta) {
  return expm_hermitian(angular_momentum(sys, Axis::kX), theta);
}

Operator n_error(const SpinSystem& sys, double phi) {
  return expm_hermitian(angular_momentum(sys, Axis::kY), phi);
}

GateSet build_gates(const SpinSystem& sys) {
  GateSet g;
  g.n = sys.particles();
  const Operator jx = angular_momentum(sys, Axis::kX);
  const Operator jy = angular_momentum(sys, Axis::kY);
  const double n = sys.particles();
  const double step = 2.0 * std::sqrt(2.0 * kPi / n);
  g.f = f_gate(sys);
  g.p = expm_hermitian(jx * jx, -1.0 / n);
  g.stabilizer_x = expm_hermitian(jx, step);
  g.stabilizer_y = expm_hermitian(jy, -step);
  if (sys.particles() <= kMaxSumParticles) g.sum = sum_gate(sys);
  return g;
}

FConjugationDefects check_f_conjugation(const SpinSystem& sys, double theta) {
  const Operator f = f_gate(sys);
  FConjugationDefects d;
  d.m_to_n = opnorm(f * m_error(sys, theta) * f.adjoint() - n_error(sys, -theta));
  d.n_to_m = opnorm(f * n_error(sys, theta) * f.adjoint() - m_error(sys, theta));
  return d;
}

PPropagation check_p_propagation(const SpinSystem& sys, double phi) {
  const Operator jx = angular_momentum(sys, Axis::kX);
  const double n = sys.particles();
  const Operator p = expm_hermitian(jx * jx, -1.0 / n);
  const Operator m = m_error(sys, phi);
  const Operator nphi = n_error(sys, phi);
  PPropagation r;
  r.commute_defect = opnorm(commutator(p, m));
  const Ket psi = basis_ket(sys.dim(), 0);
  const Ket propagated = p * nphi * p.adjoint() * psi;
  const Ket predicted = nphi * m_error(sys, -phi) * psi;
  r.asymptotic_fidelity = std::abs(predicted.dot(propagated));
  return r;
}

SumPropagation check_sum_propagation(const SpinSystem& sys, double phi) {
  const Operator sum = sum_gate(sys);
  const Operator id = Operator::Identity(sys.dim(), sys.dim());
  const Operator m = kron(m_error(sys, phi), id);
  const Operator nn = kron(id, n_error(sys, phi));
  SumPropagation r;
  r.benign_m = opnorm(sum * m * sum.adjoint() - m);
  r.benign_n = opnorm(sum * nn * sum.adjoint() - nn);
  const Ket vac = basis_ket(sys.dim(), 0);
  const Ket pair = kron(vac, vac);
  const Operator n1 = n_error(sys, phi);
  const Ket propagated = sum * kron(n1, id) * sum.adjoint() * pair;
  const Ket predicted = kron(Ket(n1 * vac), Ket(n1 * vac));
  r.fanout_fidelity = std::abs(predicted.dot(propagated));
  return r;
}

double stabilizer_commutator(const OrthonormalCode& code, const GateSet& g) {
  require(code.dim() == g.n + 1, "stabilizer_commutator: code and gate dimensions differ");
  return opnorm(commutator(g.stabilizer_x, g.stabilizer_y) * code.projector);
}

MagicStateTrial magic_state_trial(const CodeParams& params) {
  const SpinSystem sys(params.n);
  const OrthonormalCode code = orthonormalize(build_code(params));
  const Ket target = std::cos(kPi / 8.0) * code.e0 + std::sin(kPi / 8.0) * code.e1;
  const CodeParams anc = default_ancilla(params.n, params.delta);
  const SyndromePovm povm = build_povm(sys, anc.resolved_z(), default_povm_grid(params.n));
  const Ket input = basis_ket(sys.dim(), 0);
  const Operator id = Operator::Identity(sys.dim(), sys.dim());
  const AgnosticResult r = recover_q(input, id, build_code(anc), povm, RecoveryMode::kMaxProb);
  MagicStateTrial t;
  t.fidelity = std::norm(target.dot(r.state));
  t.probability = r.best.probability;
  return t;
}

}  // namespace spingkp
