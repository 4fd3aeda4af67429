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


#include "spingkp/spin.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

namespace spingkp {

SpinSystem::SpinSystem(int n) : n_(n) {
  require(n >= 1, "SpinSystem: N must be at least 1");
}

Operator angular_momentum(const SpinSystem& sys, Axis axis) {
  const int n = sys.particles();
  const int d = sys.dim();
  Operator jp = Operator::Zero(d, d);
  for (int k = 1; k <= n; ++k)
    jp(k - 1, k) = std::sqrt(static_cast<double>((n - k + 1) * k));
  switch (axis) {
    case Axis::kPlus:
      return jp;
    case Axis::kMinus:
      return jp.adjoint();
    case Axis::kX:
      return 0.5 * (jp + jp.adjoint());
    case Axis::kY:
      return (jp - jp.adjoint()) / (2.0 * kI);
    case Axis::kZ: {
      Operator jz = Operator::Zero(d, d);
      for (int k = 0; k <= n; ++k) jz(k, k) = 0.5 * n - k;
      return jz;
    }
  }
  throw Error("angular_momentum: unknown axis");
}

Operator axis_component(const SpinSystem& sys, const Eigen::Vector3d& n) {
  return n.x() * angular_momentum(sys, Axis::kX) +
         n.y() * angular_momentum(sys, Axis::kY) +
         n.z() * angular_momentum(sys, Axis::kZ);
}

Operator rotation(const SpinSystem& sys, const Eigen::Vector3d& n,
                  double theta) {
  require(std::abs(n.norm() - 1.0) < 1e-12, "rotation: axis is not a unit vector");
  return expm_hermitian(axis_component(sys, n), theta);
}

Operator tact_squeeze(const SpinSystem& sys, double z) {
  require(std::isfinite(z) && std::abs(z) <= 20.0,
          "tact_squeeze: |z| must be finite and at most 20");
  Operator jp = angular_momentum(sys, Axis::kPlus);
  Operator jm = angular_momentum(sys, Axis::kMinus);
  // The generator is i*H with H Hermitian; exp(i H) = exp(-i (-1) H).
  Operator h = (-kI * z / (2.0 * sys.particles())) * (jp * jp - jm * jm);
  return expm_hermitian(h, -1.0);
}

Operator oat_unitary(const SpinSystem& sys, double delta) {
  require(std::isfinite(delta), "oat_unitary: delta must be finite");
  Operator jx = angular_momentum(sys, Axis::kX);
  return expm_hermitian(jx * jx, delta);
}

Ket basis_ket(int dim, int k) {
  require(k >= 0 && k < dim, "basis_ket: index out of range");
  Ket v = Ket::Zero(dim);
  v(k) = 1.0;
  return v;
}

Eigen::Vector3d bloch_direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

namespace {

// Real coherent-state magnitudes sqrt(C(N,k)) cos^{N-k} sin^k in log space.
RealVector coherent_magnitudes(int n, double theta) {
  RealVector a(n + 1);
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  for (int k = 0; k <= n; ++k) {
    const int pc = n - k, ps = k;
    if ((pc > 0 && c == 0.0) || (ps > 0 && s == 0.0)) {
      a(k) = 0.0;
      continue;
    }
    double lg = 0.5 * log_binomial(n, k);
    if (pc > 0) lg += pc * std::log(std::abs(c));
    if (ps > 0) lg += ps * std::log(std::abs(s));
    double sign = ((pc % 2 == 1 && c < 0) != (ps % 2 == 1 && s < 0)) ? -1.0 : 1.0;
    a(k) = sign * std::exp(lg);
  }
  return a;
}

}  // namespace

Ket spin_coherent(const SpinSystem& sys, double theta, double phi) {
  const int n = sys.particles();
  RealVector mag = coherent_magnitudes(n, theta);
  Ket v(n + 1);
  for (int k = 0; k <= n; ++k) v(k) = mag(k) * std::polar(1.0, k * phi);
  return v;
}

double HusimiGrid::normalization(int n) const {
  // Trapezoid in theta over [0, pi], periodic sum in phi.
  const std::size_t nt = theta.size(), np = phi.size();
  if (nt < 2 || np < 1) return 0.0;
  const double dth = theta[1] - theta[0];
  const double dph = 2.0 * std::numbers::pi / np;
  double total = 0.0;
  for (std::size_t i = 0; i < nt; ++i) {
    double w = (i == 0 || i + 1 == nt) ? 0.5 : 1.0;
    total += w * std::sin(theta[i]) * q.row(i).sum();
  }
  return total * dth * dph * std::numbers::pi * (n + 1) / (4.0 * std::numbers::pi);
}

void HusimiGrid::write_csv(std::ostream& os) const {
  os << "theta,phi,q\n" << std::setprecision(12);
  for (std::size_t i = 0; i < theta.size(); ++i)
    for (std::size_t j = 0; j < phi.size(); ++j)
      os << theta[i] << ',' << phi[j] << ',' << q(i, j) << '\n';
}

namespace {

HusimiGrid husimi_from_components(const std::vector<Ket>& kets,
                                  const std::vector<double>& probs,
                                  int n_theta, int n_phi) {
  require(n_theta >= 2 && n_phi >= 1, "husimi_q: grid too small");
  const int d = static_cast<int>(kets.front().size());
  const int n = d - 1;
  HusimiGrid g;
  for (int i = 0; i < n_theta; ++i)
    g.theta.push_back(std::numbers::pi * i / (n_theta - 1));
  for (int j = 0; j < n_phi; ++j)
    g.phi.push_back(2.0 * std::numbers::pi * j / n_phi);
  // <alpha|psi> = sum_k a_k(theta) e^{-i k phi} psi_k.
  Operator phase(n_phi, d);
  for (int j = 0; j < n_phi; ++j)
    for (int k = 0; k < d; ++k) phase(j, k) = std::polar(1.0, -k * g.phi[j]);
  g.q = Eigen::MatrixXd::Zero(n_theta, n_phi);
  for (int i = 0; i < n_theta; ++i) {
    RealVector a = coherent_magnitudes(n, g.theta[i]);
    for (std::size_t c = 0; c < kets.size(); ++c) {
      Ket b = (a.cast<cplx>().array() * kets[c].array()).matrix();
      Ket amp = phase * b;
      g.q.row(i) += probs[c] * amp.cwiseAbs2().transpose();
    }
  }
  g.q /= std::numbers::pi;
  return g;
}

}  // namespace

HusimiGrid husimi_q(const Ket& state, int n_theta, int n_phi) {
  require(state.size() >= 2, "husimi_q: state dimension too small");
  return husimi_from_components({state}, {1.0}, n_theta, n_phi);
}

HusimiGrid husimi_q(const Operator& rho, int n_theta, int n_phi) {
  require(rho.rows() == rho.cols() && rho.rows() >= 2,
          "husimi_q: density matrix must be square");
  HermitianEig e = eigh(rho);
  require(e.values.minCoeff() >= -1e-9, "husimi_q: density matrix is not PSD");
  std::vector<Ket> kets;
  std::vector<double> probs;
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    if (e.values(i) <= 0.0) continue;
    kets.push_back(e.vectors.col(i));
    probs.push_back(e.values(i));
  }
  if (kets.empty()) {
    kets.push_back(Ket::Zero(rho.rows()));
    probs.push_back(0.0);
  }
  return husimi_from_components(kets, probs, n_theta, n_phi);
}

Embedding isometry_embed(const Ket& spin, int fock_cutoff) {
  require(fock_cutoff >= 0, "isometry_embed: negative cutoff");
  Embedding e;
  e.fock = Ket::Zero(fock_cutoff + 1);
  const Eigen::Index keep = std::min<Eigen::Index>(spin.size(), fock_cutoff + 1);
  e.fock.head(keep) = spin.head(keep);
  if (spin.size() > keep)
    e.leaked_norm = spin.tail(spin.size() - keep).squaredNorm();
  return e;
}

double dml_ratio(int n, double x) {
  require(n >= 1, "dml_ratio: N must be positive");
  require(std::abs(x) <= 0.5 * n, "dml_ratio: |x| exceeds N/2");
  const double lhs = std::lgamma(n + 1.0) - n * std::log(2.0) -
                     std::lgamma(0.5 * n + x + 1.0) -
                     std::lgamma(0.5 * n - x + 1.0);
  const double rhs = 0.5 * std::log(2.0 / (std::numbers::pi * n)) - 2.0 * x * x / n;
  return std::exp(lhs - rhs);
}

}  // namespace spingkp
