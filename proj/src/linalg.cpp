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


#include "spingkp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <mutex>
#include <numbers>

namespace spingkp {

namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

WarningSink& sink() {
  static WarningSink s = [](const std::string& w) { std::cerr << "warning: " << w << '\n'; };
  return s;
}

}  // namespace

void set_warning_sink(WarningSink s) {
  std::lock_guard<std::mutex> lock(sink_mutex());
  sink() = s ? std::move(s) : [](const std::string&) {};
}

void warn(const std::string& what) {
  std::lock_guard<std::mutex> lock(sink_mutex());
  sink()(what);
}

Operator dagger(const Operator& a) { return a.adjoint(); }

Operator herm_part(const Operator& a) { return 0.5 * (a + a.adjoint()); }

double opnorm(const Operator& a) {
  if (a.size() == 0) return 0.0;
  // Spectral norm from the smaller Gram matrix.
  Operator g = a.rows() <= a.cols() ? Operator(a * a.adjoint())
                                    : Operator(a.adjoint() * a);
  Eigen::SelfAdjointEigenSolver<Operator> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double max_abs(const Operator& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Operator& a, double tol) {
  return a.rows() == a.cols() && max_abs(a - a.adjoint()) < tol;
}

double unitarity_defect(const Operator& u) {
  return opnorm(u.adjoint() * u -
                Operator::Identity(u.cols(), u.cols()));
}

bool is_unitary(const Operator& a, double tol) {
  return a.rows() == a.cols() && unitarity_defect(a) < tol;
}

HermitianEig eigh(const Operator& h) {
  require(h.rows() == h.cols(), "eigh: matrix not square");
  Eigen::SelfAdjointEigenSolver<Operator> es(herm_part(h));
  require(es.info() == Eigen::Success, "eigh: decomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

PhaseGenerator::PhaseGenerator(const Operator& h) : eig_(eigh(h)) {}

Operator PhaseGenerator::unitary(double t) const {
  Eigen::VectorXcd ph = (-kI * t * eig_.values.cast<cplx>()).array().exp();
  return eig_.vectors * ph.asDiagonal() * eig_.vectors.adjoint();
}

Ket PhaseGenerator::apply(double t, const Ket& v) const {
  Eigen::VectorXcd ph = (-kI * t * eig_.values.cast<cplx>()).array().exp();
  Ket c = eig_.vectors.adjoint() * v;
  return eig_.vectors * (ph.array() * c.array()).matrix();
}

Operator expm_hermitian(const Operator& h, double t) {
  return PhaseGenerator(h).unitary(t);
}

Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Ket kron(const Ket& a, const Ket& b) {
  Ket out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Operator partial_trace_first(const Operator& x, int da, int db) {
  require(x.rows() == da * db && x.cols() == da * db,
          "partial_trace_first: dimension mismatch");
  Operator out = Operator::Zero(db, db);
  for (int i = 0; i < da; ++i) out += x.block(i * db, i * db, db, db);
  return out;
}

double min_eigenvalue(const Operator& a) {
  Eigen::SelfAdjointEigenSolver<Operator> es(herm_part(a),
                                             Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double log_binomial(double n, double k) {
  if (k < 0.0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

Quadrature gauss_legendre(int n, double a, double b) {
  require(n >= 1, "gauss_legendre: need at least one node");
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    double beta = i / std::sqrt(4.0 * i * i - 1.0);
    jac(i, i - 1) = jac(i - 1, i) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  Quadrature q;
  double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    double v0 = es.eigenvectors()(0, i);
    q.nodes.push_back(mid + half * es.eigenvalues()(i));
    q.weights.push_back(2.0 * v0 * v0 * half);
  }
  return q;
}

Quadrature periodic_trapezoid(int n, double a, double period) {
  require(n >= 1, "periodic_trapezoid: need at least one node");
  Quadrature q;
  for (int i = 0; i < n; ++i) {
    q.nodes.push_back(a + period * i / n);
    q.weights.push_back(period / n);
  }
  return q;
}

}  // namespace spingkp
