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


#include "spingkp/agnostic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spingkp {

namespace {

constexpr double kPi = std::numbers::pi;

double lattice_spacing(int n) { return std::sqrt(2.0 * kPi / n); }

Operator frame_unitary(const SpinSystem& sys, PovmFrame frame) {
  const Operator jz = angular_momentum(sys, Axis::kZ);
  switch (frame) {
    case PovmFrame::kPlain:
      return Operator::Identity(sys.dim(), sys.dim());
    case PovmFrame::kHalfTurn:
      return expm_hermitian(jz, kPi);
    case PovmFrame::kQuarterTurn:
      return expm_hermitian(jz, -0.5 * kPi);
  }
  throw Error("build_povm: unknown frame");
}

// exp(-2i Jx (x) Jy / N) applied to a two-register ket stored as a matrix
// psi(i, j) with i the system index and j the ancilla index.
class SumCoupling {
 public:
  explicit SumCoupling(const SpinSystem& sys)
      : n_(sys.particles()),
        jx_(eigh(angular_momentum(sys, Axis::kX))),
        jy_(eigh(angular_momentum(sys, Axis::kY))) {}

  Operator apply(const Operator& psi) const {
    // (A (x) B) vec(psi) = A psi B^T in the row-major vec convention.
    Operator t = jx_.vectors.adjoint() * psi * jy_.vectors.conjugate();
    for (Eigen::Index i = 0; i < t.rows(); ++i)
      for (Eigen::Index j = 0; j < t.cols(); ++j)
        t(i, j) *= std::exp(-2.0 * kI * jx_.values(i) * jy_.values(j) / static_cast<double>(n_));
    return jx_.vectors * t * jy_.vectors.transpose();
  }

 private:
  int n_;
  HermitianEig jx_;
  HermitianEig jy_;
};

struct Stage {
  std::vector<SyndromeOutcome> outcomes;
  Operator branches;  // corrected, unnormalized system kets (plain frame)
  double total = 0.0;
  int best = 0;
  SyndromeOutcome refined;
};

constexpr double kGolden = 0.6180339887498949;

// One noise-agnostic stage on a system ket. The ancilla is |+_L>, the
// coupling is SUM, and the ancilla is read out with the POVM. The frame
// rotation conjugates the whole stage, so the corrective rotation is
// F exp(i R Jy) F^dag.
Stage run_stage(const Ket& noisy, const Ket& plus, const SyndromePovm& povm, bool all_branches) {
  const SpinSystem sys(povm.n);
  require(noisy.size() == sys.dim() && plus.size() == sys.dim(),
          "recover: system, ancilla and POVM dimensions differ");
  const Ket sys_in = povm.rotation.adjoint() * noisy;
  const Ket anc_in = plus;
  const Operator psi = SumCoupling(sys).apply(sys_in * anc_in.transpose());
  // Kets in the plain frame: the ancilla sees the same conjugation.
  const Operator plain = povm.rotation.adjoint() * povm.kets;
  const Operator branch = psi * plain.conjugate();  // column g: <psi_g|_anc Psi

  Stage st;
  const int g_count = povm.size();
  st.outcomes.resize(g_count);
  double best_p = -1.0;
  for (int g = 0; g < g_count; ++g) {
    SyndromeOutcome& o = st.outcomes[g];
    o.a = povm.a[g];
    o.probability = povm.da * branch.col(g).squaredNorm();
    o.residue = residue(o.a, povm.n);
    o.angle = o.residue;
    st.total += o.probability;
    if (o.probability > best_p) {
      best_p = o.probability;
      st.best = g;
    }
  }
  const PhaseGenerator jy(angular_momentum(sys, Axis::kY));
  auto correct = [&](double angle, const Ket& v) {
    // exp(+i R Jy) = exp(-i (-R) Jy)
    return Ket(povm.rotation * jy.apply(-angle, v));
  };
  if (all_branches) {
    st.branches.resize(sys.dim(), g_count);
    for (int g = 0; g < g_count; ++g)
      st.branches.col(g) = correct(st.outcomes[g].angle, std::sqrt(povm.da) * branch.col(g));
    st.refined = st.outcomes[st.best];
    return st;
  }
  // Density p(a) da at an arbitrary angle, in the plain frame.
  auto conditioned = [&](double a) { return Ket(psi * jy.apply(a, povm.parent).conjugate()); };
  auto density = [&](double a) { return povm.da * conditioned(a).squaredNorm(); };
  auto refine = [&](int g, double* p_out) {
    double lo = povm.a[g] - povm.da;
    double hi = povm.a[g] + povm.da;
    double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
    double f1 = density(x1), f2 = density(x2);
    while (hi - lo > 1e-10) {
      if (f1 >= f2) {
        hi = x2; x2 = x1; f2 = f1;
        x1 = hi - kGolden * (hi - lo); f1 = density(x1);
      } else {
        lo = x1; x1 = x2; f1 = f2;
        x2 = lo + kGolden * (hi - lo); f2 = density(x2);
      }
    }
    double a = 0.5 * (lo + hi);
    double pa = density(a);
    if (pa < st.outcomes[g].probability) {
      a = povm.a[g];
      pa = st.outcomes[g].probability;
    }
    *p_out = pa;
    return a;
  };
  // Neighbouring comb teeth can carry almost equal weight, so every strong
  // local maximum of the grid is refined, not only the grid argmax.
  std::vector<int> peaks;
  const double p_best = st.outcomes[st.best].probability;
  for (int g = 0; g < g_count; ++g) {
    const double pg = st.outcomes[g].probability;
    if (pg >= st.outcomes[(g + 1) % g_count].probability &&
        pg >= st.outcomes[(g + g_count - 1) % g_count].probability && pg >= 0.5 * p_best)
      peaks.push_back(g);
  }
  double a_star = povm.a[st.best];
  double p_star = -1.0;
  for (int g : peaks) {
    double pg = 0.0;
    const double a = refine(g, &pg);
    if (pg > p_star) {
      p_star = pg;
      a_star = a;
    }
  }
  // Keep the refined angle on the circle before computing its residue.
  a_star = std::remainder(a_star, 2.0 * kPi);
  SyndromeOutcome& r = st.refined;
  r.a = a_star;
  r.probability = density(a_star);
  r.residue = residue(a_star, povm.n);
  r.angle = r.residue;
  st.branches = correct(r.angle, std::sqrt(povm.da) * conditioned(a_star));
  return st;
}

}  // namespace

double residue(double a, int n) {
  require(n >= 1, "residue: N must be positive");
  require(std::isfinite(a) && std::abs(a) <= kPi, "residue: |a| must not exceed pi");
  const double s = lattice_spacing(n);
  const double kmax = std::floor(std::sqrt(n * kPi / 2.0));
  const double k = std::clamp(std::round(a / s), -kmax, kmax);
  return a - k * s;
}

int default_povm_grid(int n) {
  const int per_cell = 32 * static_cast<int>(std::ceil(std::sqrt(n * kPi / 2.0)));
  return std::max(per_cell, 4 * n);
}

Operator SyndromePovm::frame_operator() const {
  return da * kets * kets.adjoint();
}

SyndromePovm build_povm(const SpinSystem& sys, double z, int n_grid, PovmFrame frame) {
  require(n_grid >= 4 * sys.particles(), "build_povm: grid must have at least 4N points");
  SyndromePovm p;
  p.n = sys.particles();
  p.z = z;
  p.frame = frame;
  p.da = 2.0 * kPi / n_grid;
  p.rotation = frame_unitary(sys, frame);
  const Ket parent = tact_squeeze(sys, z) * basis_ket(sys.dim(), 0);
  const PhaseGenerator jy(angular_momentum(sys, Axis::kY));
  p.parent = parent;
  p.kets.resize(sys.dim(), n_grid);
  for (int g = 0; g < n_grid; ++g) {
    const double a = -kPi + g * p.da;
    p.a.push_back(a);
    p.kets.col(g) = p.rotation * jy.apply(a, parent);
  }
  return p;
}

Ket logical_plus(const CodePair& ancilla) {
  Ket v = ancilla.ket0 + ancilla.ket1;
  const double nrm = v.norm();
  require(nrm > 1e-12, "logical_plus: codewords cancel");
  return v / nrm;
}

AgnosticResult recover_q(const Ket& input, const Operator& error, const CodePair& ancilla,
                         const SyndromePovm& povm, RecoveryMode mode) {
  require(error.rows() == input.size() && error.cols() == input.size(),
          "recover_q: error and input dimensions differ");
  require(ancilla.ket0.size() == input.size(), "recover_q: ancilla and system dimensions differ");
  const Ket target = input / input.norm();
  const bool average = mode == RecoveryMode::kFullAverage;
  Stage st = run_stage(error * target, logical_plus(ancilla), povm, average);

  AgnosticResult res;
  res.total_probability = st.total;
  res.selected = st.best;
  res.best = st.refined;
  if (average) {
    double f = 0.0;
    for (Eigen::Index g = 0; g < st.branches.cols(); ++g)
      f += std::norm(target.dot(st.branches.col(g)));
    res.fidelity = f;
    res.state = st.branches.col(st.best).normalized();
  } else {
    res.state = st.branches.col(0).normalized();
    res.fidelity = std::norm(target.dot(res.state));
  }
  res.outcomes = std::move(st.outcomes);
  return res;
}

double concatenated_recovery(const Ket& input, const Operator& error, const CodePair& ancilla,
                             const SyndromePovm& povm_q, const SyndromePovm& povm_p) {
  require(povm_q.n == povm_p.n, "concatenated_recovery: POVMs act on different N");
  const Ket target = input / input.norm();
  const Ket plus = logical_plus(ancilla);
  const Stage q = run_stage(error * target, plus, povm_q, false);
  const Stage p = run_stage(q.branches.col(0).normalized(), plus, povm_p, false);
  return std::norm(target.dot(p.branches.col(0).normalized()));
}

CodeParams default_ancilla(int n, double delta) {
  CodeParams p;
  p.family = Family::kTactGkpUni;
  p.n = n;
  p.t = 2;
  p.delta = delta;
  return p;
}

ShiftRecoveryPoint squeezed_shift_experiment(int n, double delta, int n_grid) {
  const SpinSystem sys(n);
  const CodeParams anc = default_ancilla(n, delta);
  const double z = anc.resolved_z();
  const Ket input = tact_squeeze(sys, z) * basis_ket(sys.dim(), 0);
  const double b = lattice_spacing(n) / 4.0;
  const Operator error = expm_hermitian(angular_momentum(sys, Axis::kY), -b);
  const SyndromePovm povm = build_povm(sys, z, n_grid > 0 ? n_grid : default_povm_grid(n));
  const AgnosticResult r = recover_q(input, error, build_code(anc), povm, RecoveryMode::kMaxProb);
  ShiftRecoveryPoint pt;
  pt.n = n;
  pt.recovered = r.fidelity;
  pt.unrecovered = std::norm(input.dot(error * input));
  return pt;
}

}  // namespace spingkp
