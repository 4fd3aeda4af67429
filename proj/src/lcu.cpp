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


#include "spingkp/lcu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace spingkp {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);
const double kSqrtHalfPi = std::sqrt(0.5 * kPi);

// Square roots of weights given in log form, scaled so the largest is one.
Ket sqrt_weights(const std::vector<double>& logs) {
  const double top = *std::max_element(logs.begin(), logs.end());
  require(std::isfinite(top), "lcu: every comb weight vanished");
  Ket a(logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i)
    a(i) = std::isfinite(logs[i]) ? std::exp(0.5 * (logs[i] - top)) : 0.0;
  return a;
}

bool is_uniform(const Ket& a) {
  for (Eigen::Index i = 1; i < a.size(); ++i)
    if (std::abs(a(i) - a(0)) > 1e-14 * std::abs(a(0))) return false;
  return true;
}

}  // namespace

Operator make_u_prep(const Ket& alphas, int home) {
  const Eigen::Index n = alphas.size();
  require(n >= 1 && home >= 0 && home < n, "make_u_prep: home level outside the register");
  const double nrm = alphas.norm();
  require(nrm > 0.0, "make_u_prep: all amplitudes are zero");
  const Ket a = alphas / nrm;
  if (n % 2 == 1 && home == n / 2 && is_uniform(alphas) && std::abs(std::arg(alphas(0))) < 1e-15) {
    const int t = static_cast<int>(n / 2);
    const cplx omega = std::polar(1.0, 2.0 * kPi / n);
    Operator u(n, n);
    for (int i = -t; i <= t; ++i)
      for (int j = -t; j <= t; ++j)
        u(i + t, j + t) = std::pow(omega, i * j) / std::sqrt(double(n));
    return u;
  }
  // Reflection sending e_home to the phase-stripped target, then the phase.
  const double phase = std::arg(a(home));
  const Ket target = a * std::polar(1.0, -phase);
  Ket u = -target;
  u(home) += 1.0;
  Operator h = Operator::Identity(n, n);
  const double un = u.squaredNorm();
  if (un > 1e-30) h -= (2.0 / un) * u * u.adjoint();
  return std::polar(1.0, phase) * h;
}

Operator SelectUnitary::dense() const {
  const int a = ancilla_dim(), d = system_dim();
  require(static_cast<long long>(a) * d <= 4096, "SelectUnitary::dense: too large to materialize");
  Operator out = Operator::Zero(a * d, a * d);
  for (int i = 0; i < a; ++i) out.block(i * d, i * d, d, d) = blocks_[i];
  return out;
}

SelectUnitary make_u_select(const SpinSystem& sys, int t, SelectGenerator gen, double offset) {
  require(t >= 0, "make_u_select: T must be nonnegative");
  if (t == 0 && gen == SelectGenerator::kJySingle)
    warn("make_u_select: T = 0 gives a trivial single-ancilla circuit");
  const double root_n = std::sqrt(static_cast<double>(sys.particles()));
  const PhaseGenerator jy(angular_momentum(sys, Axis::kY));
  std::vector<Operator> blocks;
  if (gen == SelectGenerator::kJySingle) {
    // exp(2 i t sqrt(2 pi / N) Jy) = exp(-i theta Jy) at theta = -2 t sqrt(2 pi) / sqrt(N)
    for (int s = -t; s <= t; ++s) blocks.push_back(jy.unitary(-2.0 * s * kSqrt2Pi / root_n));
    return SelectUnitary(std::move(blocks));
  }
  const PhaseGenerator jx(angular_momentum(sys, Axis::kX));
  std::vector<Operator> v;
  for (int s = -t; s <= t; ++s) v.push_back(jx.unitary(-2.0 * kSqrtHalfPi * s / root_n));
  for (int s1 = -t; s1 <= t; ++s1) {
    const Operator u = jy.unitary(2.0 * (kSqrt2Pi * s1 + offset) / root_n);
    for (int s2 = -t; s2 <= t; ++s2) blocks.push_back(u * v[s2 + t]);
  }
  return SelectUnitary(std::move(blocks));
}

LcuCircuit lcu_circuit(const CodeParams& p, double mu) {
  p.validate();
  require(is_gkp_family(p.family), "lcu: family '" + std::string(family_name(p.family)) +
                                       "' is not a linear combination of rotations");
  const SpinSystem sys(p.n);
  const Ket vac = basis_ket(sys.dim(), 0);
  const double root_n = std::sqrt(static_cast<double>(p.n));
  LcuCircuit c;
  c.t = p.t;
  std::vector<double> logs;
  if (p.family == Family::kSpinGkp || p.family == Family::kUniGkp) {
    c.generator = SelectGenerator::kJyJxDouble;
    c.offset = mu * kSqrtHalfPi;
    const double half = p.family == Family::kSpinGkp ? 0.5 * p.resolved_lambda() : 0.0;
    for (int s1 = -p.t; s1 <= p.t; ++s1)
      for (int s2 = -p.t; s2 <= p.t; ++s2) {
        const double r = (2.0 * s1 + mu) * (2.0 * s1 + mu) + double(s2) * s2;
        logs.push_back(log_comb_weight(p.n, half * std::sqrt(p.n * kPi * r)));
      }
    c.parent = vac;
    c.home = static_cast<int>(logs.size() / 2);
  } else {
    c.generator = SelectGenerator::kJySingle;
    Ket squeezed;
    if (p.family == Family::kOatGkp || p.family == Family::kOatGkpUni) {
      require(p.family == Family::kOatGkpUni || p.oat_weights == OatWeights::kBinomial,
              "lcu: the Gamma-weighted one-axis comb has no single-lattice LCU form");
      squeezed = oat_unitary(sys, p.delta) * vac;
    } else {
      squeezed = tact_squeeze(sys, p.resolved_z()) * vac;
    }
    // Level s shifts by -sqrt(2 pi) s on top of the structure rotation R(mu).
    const double scale = p.resolved_lambda() * std::sqrt(kPi * p.n);
    for (int s = -p.t; s <= p.t; ++s) {
      switch (p.family) {
        case Family::kTactGkp:
          logs.push_back(log_comb_weight(p.n, scale * (0.5 * mu - s)));
          break;
        case Family::kOatGkp:
          logs.push_back(log_comb_weight(p.n, std::abs(s)));
          break;
        default:
          logs.push_back(0.0);
      }
    }
    c.parent = PhaseGenerator(angular_momentum(sys, Axis::kY)).apply(2.0 * mu * kSqrtHalfPi / root_n, squeezed);
    c.home = p.t;
  }
  c.alphas = sqrt_weights(logs);
  c.u_prep = make_u_prep(c.alphas, c.home);
  return c;
}

LcuResult run_lcu(const LcuCircuit& c, const SpinSystem& sys, const Operator& noise, const Ket& target) {
  const SelectUnitary sel = make_u_select(sys, c.t, c.generator, c.offset);
  const int a_dim = sel.ancilla_dim();
  require(c.u_prep.rows() == a_dim, "run_lcu: U_prep and select sizes differ");
  Ket anc = c.u_prep.col(c.home);
  const Ket reference = anc;
  if (noise.size() != 0) {
    require(noise.rows() == a_dim, "run_lcu: noise acts on the wrong ancilla size");
    anc = noise * anc;
  }
  // Herald on U_prep |home>: the system keeps sum_t conj(r_t) a_t U_t |parent>.
  Ket out = Ket::Zero(sys.dim());
  for (int i = 0; i < a_dim; ++i) {
    const cplx w = std::conj(reference(i)) * anc(i);
    if (w != 0.0) out += w * (sel.block(i) * c.parent);
  }
  LcuResult r;
  r.herald_probability = out.squaredNorm();
  require(r.herald_probability > 1e-300, "run_lcu: heralded branch has zero weight");
  r.state = out / std::sqrt(r.herald_probability);
  if (target.size() != 0) r.fidelity = std::norm(target.dot(r.state));
  return r;
}

LcuResult lcu_prepare(const CodeParams& params, double mu) {
  const SpinSystem sys(params.n);
  return run_lcu(lcu_circuit(params, mu), sys, Operator(), build_codeword(params, mu));
}

Operator gue_sample(int dim, double norm, std::uint64_t seed, std::uint64_t index) {
  require(dim >= 1, "gue_sample: dimension must be positive");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> g(0.0, 1.0);
  Operator a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cplx(g(rng), g(rng));
  Operator h = herm_part(a);
  const double scale = opnorm(h);
  require(scale > 0.0, "gue_sample: degenerate draw");
  return (norm / scale) * h;
}

NoisyLcuStats noisy_lcu(const CodeParams& params, double mu, double epsilon, std::uint64_t seed,
                        int n_samples) {
  require(std::isfinite(epsilon) && epsilon >= 0.0, "noisy_lcu: epsilon must be nonnegative");
  require(n_samples >= 1, "noisy_lcu: need at least one sample");
  const SpinSystem sys(params.n);
  const LcuCircuit c = lcu_circuit(params, mu);
  const Ket target = build_codeword(params, mu);
  const int a_dim = static_cast<int>(c.alphas.size());
  NoisyLcuStats st;
  st.min = std::numeric_limits<double>::infinity();
  st.max = -st.min;
  for (int k = 0; k < n_samples; ++k) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(k);
    const Operator h = gue_sample(a_dim, static_cast<double>(params.t), s, 0);
    const LcuResult r = run_lcu(c, sys, expm_hermitian(h, epsilon), target);
    st.samples.push_back({s, r.fidelity, r.herald_probability});
    st.mean += r.fidelity;
    st.min = std::min(st.min, r.fidelity);
    st.max = std::max(st.max, r.fidelity);
  }
  st.mean /= n_samples;
  return st;
}

}  // namespace spingkp
