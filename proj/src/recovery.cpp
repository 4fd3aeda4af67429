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


#include "spingkp/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace spingkp {

namespace {

// Row-major vec of a rows x cols matrix.
Ket vec(const Operator& a) {
  Ket v(a.size());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
  return v;
}

Operator block_diag2(const Operator& u) {
  const Eigen::Index d = u.rows();
  Operator out = Operator::Zero(2 * d, 2 * d);
  out.topLeftCorner(d, d) = u;
  out.bottomRightCorner(d, d) = u;
  return out;
}

constexpr double kGolden = 0.6180339887498949;

}  // namespace

SdpProblem build_c_matrix(const OrthonormalCode& code, const KrausChannel& ch) {
  const int d = code.dim();
  require(ch.dim() == d, "build_c_matrix: channel and code dimensions differ");
  const Operator s_dag = code.encoder.adjoint();
  Operator c = Operator::Zero(2 * d, 2 * d);
  if (!ch.is_mixed_unitary()) {
    ch.for_each_kraus([&](const Operator& e) {
      const Ket v = vec(0.5 * s_dag * e.adjoint());
      c.noalias() += v * v.adjoint();
    });
  } else {
    // E = sqrt(w) B D B^dag: vec(S^dag E^dag / 2) = (I (x) conj B) vec(S^dag B D^dag) / 2,
    // and the angle sum becomes an elementwise product in that basis.
    for (const auto& fr : ch.frames()) {
      const Ket b = vec(s_dag * fr.basis);
      const Operator chr = fr.characteristic().conjugate();
      Operator inner = b * b.adjoint();
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) inner.block(i * d, k * d, d, d).array() *= chr.array();
      const Operator lift = block_diag2(fr.basis.conjugate());
      c.noalias() += 0.25 * lift * inner * lift.adjoint();
    }
  }
  return SdpProblem::from_matrix(herm_part(c));
}

FidelityResult optimal_fidelity(const OrthonormalCode& code, const KrausChannel& ch,
                                const SdpOptions& opts) {
  SdpProblem prob = build_c_matrix(code, ch);
  SdpOptions o = opts;
  o.trace_tol = std::max(opts.trace_tol, 0.5 * ch.tp_defect() + 1e-10);
  SdpSolution sol = solve(prob, o);
  return {sol.fidelity, sol.gap, sol.stats};
}

double channel_fidelity(const CodePair& code, const KrausChannel& ch, double tol) {
  SdpOptions o;
  o.tol = tol;
  return optimal_fidelity(orthonormalize(code), ch, o).fidelity;
}

LowerBounds mixed_unitary_lower_bounds(const OrthonormalCode& code, const KrausChannel& ch) {
  require(ch.is_mixed_unitary(), "mixed_unitary_lower_bounds: channel is not mixed-unitary");
  const int d = code.dim();
  require(ch.dim() == d, "mixed_unitary_lower_bounds: dimension mismatch");
  // M = sum_k w_k vec(U_k S) vec(U_k S)^dag, assembled frame by frame.
  Operator m = Operator::Zero(2 * d, 2 * d);
  Operator mt = Operator::Zero(d, d);
  for (const auto& fr : ch.frames()) {
    const Ket g = vec(fr.basis.adjoint() * code.encoder);  // index k*2+i
    const Operator chr = fr.characteristic();
    Operator inner = g * g.adjoint();
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) inner.block(2 * k, 2 * l, 2, 2) *= chr(k, l);
    const Operator lift = kron(fr.basis, Operator::Identity(2, 2));
    m.noalias() += lift * inner * lift.adjoint();
    Eigen::VectorXcd avg = Eigen::VectorXcd::Zero(d);
    for (std::size_t j = 0; j < fr.angles.size(); ++j)
      for (int k = 0; k < d; ++k) avg(k) += fr.weights[j] * std::polar(1.0, -fr.angles[j] * fr.eigenvalues(k));
    mt.noalias() += fr.basis * avg.asDiagonal() * fr.basis.adjoint();
  }
  LowerBounds lb;
  lb.lb2 = 0.25 * m.squaredNorm();
  const double t = (mt * code.encoder).squaredNorm();
  lb.lb3 = 0.25 * t * t;
  return lb;
}

QecKernelSample qec_kernel(const OrthonormalCode& code, const Operator& u, const Operator& u2) {
  require(unitarity_defect(u) < 1e-8 && unitarity_defect(u2) < 1e-8,
          "qec_kernel: inputs must be unitary");
  require(u.rows() == code.dim() && u2.rows() == code.dim(), "qec_kernel: dimension mismatch");
  const Operator& p = code.projector;
  const Operator eps = p * u.adjoint() * u2 * p;
  const LogicalPaulis lp = logical_paulis(code);
  return {0.5 * (p * eps).trace(), 0.5 * (lp.x * eps).trace(), 0.5 * (lp.y * eps).trace(),
          0.5 * (lp.z * eps).trace()};
}

MeanStd no_recovery_fidelity(const OrthonormalCode& code, const KrausChannel& ch, int n_states,
                             std::uint64_t seed) {
  require(n_states >= 1, "no_recovery_fidelity: need at least one state");
  require(ch.dim() == code.dim(), "no_recovery_fidelity: dimension mismatch");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> f;
  for (int i = 0; i < n_states; ++i) {
    Eigen::Vector2cd q(cplx(normal(rng), normal(rng)), cplx(normal(rng), normal(rng)));
    q.normalize();
    const Ket psi = code.encoder * q;
    const Operator out = ch.apply(psi * psi.adjoint());
    f.push_back((psi.adjoint() * out * psi)(0, 0).real());
  }
  MeanStd r;
  for (double x : f) r.mean += x;
  r.mean /= f.size();
  for (double x : f) r.stdev += (x - r.mean) * (x - r.mean);
  r.stdev = f.size() > 1 ? std::sqrt(r.stdev / (f.size() - 1)) : 0.0;
  return r;
}

ParamBounds default_bounds(Family family, int n) {
  ParamBounds b;
  if (family == Family::kOatGkp || family == Family::kOatGkpUni) b.delta_max = 1.0 / std::sqrt(n);
  if (is_uniform_family(family)) b.t_values = {1, 2, 3, 4, 5};
  return b;
}

FidelityResult evaluate_code(const CodeParams& params, const KrausChannel& ch,
                             const SdpOptions& opts) {
  return optimal_fidelity(orthonormalize(build_code(params)), ch, opts);
}

RecoveryResult optimize_params(const CodeParams& base, const KrausChannel& ch,
                               const ParamBounds& bounds, const SdpOptions& opts) {
  require(bounds.grid >= 2 && bounds.delta_max > bounds.delta_min,
          "optimize_params: empty parameter bounds");
  RecoveryResult best;
  best.fidelity = -std::numeric_limits<double>::infinity();
  int evals = 0;

  auto eval = [&](CodeParams p) -> double {
    ++evals;
    try {
      FidelityResult r = evaluate_code(p, ch, opts);
      if (r.fidelity > best.fidelity) {
        best.fidelity = r.fidelity;
        best.gap = r.gap;
        best.stats = r.stats;
        best.params = p;
      }
      return r.fidelity;
    } catch (const Error&) {
      return -std::numeric_limits<double>::infinity();
    }
  };

  const bool has_delta = is_gkp_family(base.family) && base.family != Family::kUniGkp;
  std::vector<int> ts = bounds.t_values;
  if (ts.empty()) ts = {base.t};
  if (!is_gkp_family(base.family)) ts = {base.t};

  for (int t : ts) {
    CodeParams p = base;
    p.t = t;
    if (!has_delta) {
      eval(p);
      continue;
    }
    const double lo = bounds.delta_min, hi = bounds.delta_max;
    std::vector<double> xs, fs;
    for (int i = 0; i < bounds.grid; ++i) {
      xs.push_back(lo + (hi - lo) * (i + 1) / bounds.grid);
      p.delta = xs.back();
      fs.push_back(eval(p));
    }
    const std::size_t k = std::max_element(fs.begin(), fs.end()) - fs.begin();
    if (!std::isfinite(fs[k])) continue;
    double a = k > 0 ? xs[k - 1] : lo + 0.5 * (xs[0] - lo);
    double b = k + 1 < xs.size() ? xs[k + 1] : hi;
    auto f_at = [&](double x) {
      p.delta = x;
      return eval(p);
    };
    double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
    double f1 = f_at(x1), f2 = f_at(x2);
    while (b - a > bounds.delta_tol) {
      if (f1 >= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - kGolden * (b - a);
        f1 = f_at(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + kGolden * (b - a);
        f2 = f_at(x2);
      }
    }
  }
  require(std::isfinite(best.fidelity), "optimize_params: no admissible parameter point");
  best.evaluations = evals;
  if (ch.is_mixed_unitary())
    best.bounds = mixed_unitary_lower_bounds(orthonormalize(build_code(best.params)), ch);
  return best;
}

}  // namespace spingkp
