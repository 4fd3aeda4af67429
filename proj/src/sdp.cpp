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


#include "spingkp/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace spingkp {

namespace {

double inner(const Operator& a, const Operator& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

Operator lift(const Operator& y) {
  const Eigen::Index d = y.rows();
  Operator out = Operator::Zero(2 * d, 2 * d);
  out.topLeftCorner(d, d) = y;
  out.bottomRightCorner(d, d) = y;
  return out;
}

// Dual barrier  phi(Y) = tr Y - mu log det(I_2 (x) Y - C).
class Barrier {
 public:
  Barrier(const Operator& c, int d) : c_(c), d_(d) {}

  // Returns false when Z = I (x) Y - C is not positive definite.
  bool evaluate(const Operator& y, double mu, double* value) const {
    Eigen::LLT<Operator> llt(lift(y) - c_);
    if (llt.info() != Eigen::Success) return false;
    const Ket diag = llt.matrixLLT().diagonal();
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
      const double v = diag(i).real();
      if (!(v > 0.0)) return false;
      logdet += 2.0 * std::log(v);
    }
    *value = y.trace().real() - mu * logdet;
    return true;
  }

  // W = Z^{-1}; false if Z is not positive definite.
  bool inverse(const Operator& y, Operator* w) const {
    Eigen::LLT<Operator> llt(lift(y) - c_);
    if (llt.info() != Eigen::Success) return false;
    *w = herm_part(llt.solve(Operator::Identity(2 * d_, 2 * d_)));
    return true;
  }

 private:
  const Operator& c_;
  int d_;
};

struct Blocks {
  Operator w00, w01, w10, w11;
  explicit Blocks(const Operator& w, int d)
      : w00(w.topLeftCorner(d, d)),
        w01(w.topRightCorner(d, d)),
        w10(w.bottomLeftCorner(d, d)),
        w11(w.bottomRightCorner(d, d)) {}

  // sum_ab W_ab D W_ba
  Operator hessian(const Operator& dlt) const {
    Operator out = w00 * dlt * w00;
    out.noalias() += w11 * dlt * w11;
    out.noalias() += w01 * dlt * w10;
    out.noalias() += w10 * dlt * w01;
    return herm_part(out);
  }
};

// Block-diagonal approximation of the Hessian, inverted exactly after a
// congruence that diagonalizes W00 and W11 together.
class Preconditioner {
 public:
  Preconditioner(const Blocks& b, double mu) : mu_(mu) {
    HermitianEig s = eigh(b.w00 + b.w11);
    const double smax = s.values.cwiseAbs().maxCoeff();
    RealVector inv_sqrt(s.values.size());
    for (Eigen::Index i = 0; i < s.values.size(); ++i)
      inv_sqrt(i) = 1.0 / std::sqrt(std::max(s.values(i), 1e-15 * smax));
    const Operator s_half = s.vectors * inv_sqrt.cast<cplx>().asDiagonal() * s.vectors.adjoint();
    HermitianEig k = eigh(s_half * b.w00 * s_half);
    p_ = s_half * k.vectors;
    const Eigen::Index d = k.values.size();
    denom_.resize(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const double li = std::clamp(k.values(i), 0.0, 1.0);
      for (Eigen::Index j = 0; j < d; ++j) {
        const double lj = std::clamp(k.values(j), 0.0, 1.0);
        denom_(i, j) = 1.0 / (mu_ * std::max(li * lj + (1.0 - li) * (1.0 - lj), 1e-14));
      }
    }
  }

  Operator apply(const Operator& r) const {
    Operator g = p_.adjoint() * r * p_;
    return herm_part(p_ * g.cwiseProduct(denom_.cast<cplx>()) * p_.adjoint());
  }

 private:
  double mu_;
  Operator p_;
  Eigen::MatrixXd denom_;
};

// Orthonormal basis of Hermitian d x d matrices under tr(AB).
std::vector<Operator> hermitian_basis(int d) {
  std::vector<Operator> basis;
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    Operator e = Operator::Zero(d, d);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Operator e = Operator::Zero(d, d);
      e(i, j) = e(j, i) = r;
      basis.push_back(e);
      Operator f = Operator::Zero(d, d);
      f(i, j) = cplx(0.0, -r);
      f(j, i) = cplx(0.0, r);
      basis.push_back(f);
    }
  return basis;
}

struct BarrierResult {
  Operator y;
  Operator x;
  double primal = 0.0;
  double dual = 0.0;
  double gap = std::numeric_limits<double>::infinity();
  bool converged = false;
};

class BarrierSolver {
 public:
  BarrierSolver(const Operator& c, const SdpOptions& opts, SdpStats* stats)
      : c_(c), d_(static_cast<int>(c.rows() / 2)), opts_(opts), stats_(stats), barrier_(c_, d_) {
    dense_ = opts.solver == NewtonSolver::kDense ||
             (opts.solver == NewtonSolver::kAuto && d_ <= 16);
    if (dense_) basis_ = hermitian_basis(d_);
  }

  BarrierResult run() {
    BarrierResult res;
    const Eigen::Index d = d_;
    const double cnorm = opnorm(c_);
    Operator y = (cnorm + 1.0) * Operator::Identity(d, d);
    double mu = opts_.mu_start;
    double best_gap = std::numeric_limits<double>::infinity();
    while (stats_->newton_steps < opts_.max_newton) {
      Operator w;
      if (!center(&y, mu, &w)) break;
      ++stats_->stages;
      // Rescale mu W so that its partial trace is exactly the identity.
      Operator xt = mu * w;
      Operator m = partial_trace_first(xt, 2, d_);
      HermitianEig me = eigh(m);
      RealVector isq = me.values.cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
      Operator mh = me.vectors * isq.cast<cplx>().asDiagonal() * me.vectors.adjoint();
      Operator x = herm_part(lift(mh) * xt * lift(mh));
      const double primal = inner(c_, x);
      const double dual = y.trace().real();
      const double gap = dual - primal;
      stats_->stage_gaps.push_back(gap);
      stats_->stage_primal.push_back(primal);
      stats_->stage_dual.push_back(dual);
      if (gap < best_gap) {
        best_gap = gap;
        res.y = y;
        res.x = x;
        res.primal = primal;
        res.dual = dual;
        res.gap = gap;
      }
      if (gap < opts_.tol) {
        res.converged = true;
        return res;
      }
      mu *= opts_.mu_factor;
    }
    return res;
  }

 private:
  // Damped Newton on the barrier at fixed mu. On return *w is Z^{-1} at *y.
  bool center(Operator* y, double mu, Operator* w) {
    for (;;) {
      if (!barrier_.inverse(*y, w)) return false;
      if (stats_->newton_steps >= opts_.max_newton) return true;
      Blocks b(*w, d_);
      const Operator grad = herm_part(Operator::Identity(d_, d_) - mu * (b.w00 + b.w11));
      Operator step = dense_ ? dense_step(b, grad, mu) : cg_step(b, grad, mu);
      const double dec = -inner(grad, step);
      ++stats_->newton_steps;
      if (!(dec > 0.0)) return true;
      double f0 = 0.0;
      barrier_.evaluate(*y, mu, &f0);
      double t = 1.0;
      bool moved = false;
      for (int k = 0; k < 60; ++k, t *= 0.5) {
        double f;
        const Operator trial = *y + t * step;
        if (barrier_.evaluate(trial, mu, &f) && f <= f0 - 0.25 * t * dec) {
          *y = herm_part(trial);
          moved = true;
          break;
        }
      }
      if (!moved) return barrier_.inverse(*y, w);
      // Normalized Newton decrement of phi / mu.
      if (dec / mu < 1e-2) return barrier_.inverse(*y, w);
    }
  }

  Operator cg_step(const Blocks& b, const Operator& grad, double mu) {
    const Preconditioner pre(b, mu);
    const Operator rhs = -grad;
    Operator x = Operator::Zero(d_, d_);
    Operator r = rhs;
    Operator z = pre.apply(r);
    Operator p = z;
    double rz = inner(r, z);
    const double rz0 = rz;
    const double eta = std::min(0.1, std::sqrt(std::sqrt(rz0 / mu)));
    const int max_iter = 20 * d_ * d_ + 100;
    for (int it = 0; it < max_iter; ++it) {
      const Operator hp = mu * b.hessian(p);
      const double php = inner(p, hp);
      if (!(php > 0.0)) break;
      const double alpha = rz / php;
      x += alpha * p;
      r -= alpha * hp;
      ++stats_->cg_iterations;
      z = pre.apply(r);
      const double rz_new = inner(r, z);
      if (rz_new <= eta * eta * rz0 || rz_new <= 1e-30) break;
      p = z + (rz_new / rz) * p;
      rz = rz_new;
    }
    return herm_part(x);
  }

  Operator dense_step(const Blocks& b, const Operator& grad, double mu) {
    const std::size_t n = basis_.size();
    std::vector<Operator> images(n);
    for (std::size_t q = 0; q < n; ++q) images[q] = mu * b.hessian(basis_[q]);
    Eigen::MatrixXd h(n, n);
    Eigen::VectorXd g(n);
    for (std::size_t p = 0; p < n; ++p) {
      g(p) = -inner(basis_[p], grad);
      for (std::size_t q = 0; q < n; ++q) h(p, q) = inner(basis_[p], images[q]);
    }
    h = 0.5 * (h + h.transpose());
    Eigen::LLT<Eigen::MatrixXd> llt(h);
    Eigen::VectorXd sol;
    if (llt.info() == Eigen::Success) {
      sol = llt.solve(g);
    } else {
      sol = h.ldlt().solve(g);
    }
    Operator out = Operator::Zero(d_, d_);
    for (std::size_t p = 0; p < n; ++p) out += sol(p) * basis_[p];
    return out;
  }

  Operator c_;
  int d_;
  SdpOptions opts_;
  SdpStats* stats_;
  Barrier barrier_;
  bool dense_ = false;
  std::vector<Operator> basis_;
};

Operator compress(const Operator& c, const Operator& q) {
  const Eigen::Index d = q.rows(), r = q.cols();
  Operator qq = Operator::Zero(2 * d, 2 * r);
  qq.topLeftCorner(d, r) = q;
  qq.bottomRightCorner(d, r) = q;
  return herm_part(qq.adjoint() * c * qq);
}

}  // namespace

SdpProblem SdpProblem::from_matrix(Operator c) {
  require(c.rows() == c.cols() && c.rows() % 2 == 0 && c.rows() >= 2,
          "SdpProblem: C must be square with even dimension");
  SdpProblem p;
  p.d = static_cast<int>(c.rows() / 2);
  p.c = std::move(c);
  return p;
}

void SdpProblem::check(double trace_tol) const {
  require(c.rows() == 2 * d && c.cols() == 2 * d, "SdpProblem: C must be 2d x 2d");
  require(max_abs(c - c.adjoint()) < 1e-12, "SdpProblem: C is not Hermitian");
  require(std::abs(c.trace().real() - 0.5) < trace_tol, "SdpProblem: tr C must be 1/2");
  require(min_eigenvalue(c) >= -1e-10, "SdpProblem: C is not PSD");
}

SdpSolution solve(const SdpProblem& problem, const SdpOptions& opts) {
  problem.check(opts.trace_tol);
  require(opts.tol >= 1e-9, "solve: tolerance below 1e-9 is not supported");
  const int d = problem.d;
  const Operator c = herm_part(problem.c);
  SdpSolution sol;

  auto finish = [&](Operator x, Operator y) {
    sol.x = std::move(x);
    sol.y = std::move(y);
    sol.fidelity = inner(c, sol.x);
    sol.dual_value = sol.y.trace().real();
    sol.gap = sol.dual_value - sol.fidelity;
  };

  if (opts.reduce_support) {
    HermitianEig rb = eigh(partial_trace_first(c, 2, d));
    const double top = std::max(rb.values.maxCoeff(), 0.0);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < rb.values.size(); ++i)
      if (rb.values(i) > 1e-15 * top) keep.push_back(i);
    const int r = static_cast<int>(keep.size());
    if (r > 0 && r < d) {
      Operator q(d, r);
      for (int i = 0; i < r; ++i) q.col(i) = rb.vectors.col(keep[i]);
      BarrierSolver inner_solver(compress(c, q), opts, &sol.stats);
      sol.stats.solved_dim = r;
      BarrierResult br = inner_solver.run();
      if (br.converged) {
        const Operator proj = q * q.adjoint();
        const Operator rest = Operator::Identity(d, d) - proj;
        Operator x = Operator::Zero(2 * d, 2 * d);
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            x.block(a * d, b * d, d, d) = q * br.x.block(a * r, b * r, r, r) * q.adjoint();
        x += 0.5 * lift(rest);
        // Dual certificate: smallest shift making I (x) Y - C PSD on the full space.
        Operator y = q * br.y * q.adjoint();
        const double lam = min_eigenvalue(lift(y) - c);
        if (lam < 0.0) y += (-lam + 1e-15) * Operator::Identity(d, d);
        finish(herm_part(x), herm_part(y));
        if (sol.gap < opts.tol) return sol;
      }
      sol.stats = SdpStats{};
    }
  }

  BarrierSolver full(c, opts, &sol.stats);
  sol.stats.solved_dim = d;
  BarrierResult br = full.run();
  if (!br.converged) {
    std::ostringstream os;
    os << "solve: barrier Newton did not reach tolerance " << opts.tol << " after "
       << sol.stats.newton_steps << " Newton steps (last gap " << br.gap << ")";
    throw Error(os.str());
  }
  finish(br.x, br.y);
  return sol;
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < checks.size(); ++i)
    os << (checks[i].second ? "PASS " : "FAIL ") << checks[i].first << " (" << values[i] << ")\n";
  return os.str();
}

ValidationReport validate(const SdpSolution& sol, const SdpProblem& problem, double tol) {
  ValidationReport rep;
  auto add = [&](const std::string& name, bool pass, double value) {
    rep.checks.emplace_back(name, pass);
    rep.values.push_back(value);
  };
  const int d = problem.d;
  const double xmin = min_eigenvalue(sol.x);
  add("primal X >= -1e-9", xmin >= -1e-9, xmin);
  const double tr1 = max_abs(partial_trace_first(sol.x, 2, d) - Operator::Identity(d, d));
  add("|tr_1 X - I| < 1e-7", tr1 < 1e-7, tr1);
  const double zmin = min_eigenvalue(lift(sol.y) - problem.c);
  add("I (x) Y - C >= -1e-9", zmin >= -1e-9, zmin);
  const double primal = inner(problem.c, sol.x);
  const double dual = sol.y.trace().real();
  add("tr(C X) <= tr Y + gap", primal <= dual + sol.gap + 1e-12, dual + sol.gap - primal);
  add("gap < tol", sol.gap < tol, sol.gap);
  return rep;
}

}  // namespace spingkp
