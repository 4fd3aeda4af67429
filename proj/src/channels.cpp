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


#include "spingkp/channels.hpp"

#include <cmath>
#include <numbers>

namespace spingkp {

namespace {

constexpr double kPi = std::numbers::pi;

// Basis B with B J_z B^dag = n.J for n at polar angle xi, azimuth phi.
Operator frame_basis(const SpinSystem& sys, const PhaseGenerator& jy, double xi, double phi) {
  const int d = sys.dim();
  Eigen::VectorXcd rz(d);
  for (int k = 0; k < d; ++k) rz(k) = std::polar(1.0, -phi * (0.5 * sys.particles() - k));
  return rz.asDiagonal() * jy.unitary(xi);
}

RealVector jz_spectrum(const SpinSystem& sys) {
  RealVector m(sys.dim());
  for (int k = 0; k < sys.dim(); ++k) m(k) = 0.5 * sys.particles() - k;
  return m;
}

Quadrature gaussian_angles(double sigma, int n_theta) {
  const double w = dephasing_window(sigma);
  Quadrature q = gauss_legendre(n_theta, -w, w);
  for (std::size_t i = 0; i < q.nodes.size(); ++i)
    q.weights[i] *= std::exp(-q.nodes[i] * q.nodes[i] / (2.0 * sigma));
  return q;
}

void normalize_frames(std::vector<RotationFrame>& frames) {
  double total = 0.0;
  for (const auto& f : frames)
    for (double w : f.weights) total += w;
  for (auto& f : frames)
    for (double& w : f.weights) w /= total;
}

}  // namespace

Operator RotationFrame::characteristic() const {
  const Eigen::Index d = eigenvalues.size();
  Operator phi = Operator::Zero(d, d);
  Eigen::VectorXcd ph(d);
  for (std::size_t j = 0; j < angles.size(); ++j) {
    for (Eigen::Index k = 0; k < d; ++k) ph(k) = std::polar(1.0, -angles[j] * eigenvalues(k));
    phi.noalias() += weights[j] * ph * ph.adjoint();
  }
  return phi;
}

Operator RotationFrame::unitary(std::size_t j) const {
  Eigen::VectorXcd ph = (-kI * angles[j] * eigenvalues.cast<cplx>()).array().exp();
  return basis * ph.asDiagonal() * basis.adjoint();
}

KrausChannel KrausChannel::from_kraus(std::vector<Operator> kraus, ChannelMeta meta) {
  require(!kraus.empty(), "KrausChannel: empty Kraus list");
  const Eigen::Index d = kraus.front().cols();
  Operator sum = Operator::Zero(d, d);
  for (const auto& k : kraus) {
    require(k.rows() == d && k.cols() == d, "KrausChannel: Kraus operators must be square and equal size");
    sum.noalias() += k.adjoint() * k;
  }
  KrausChannel ch;
  ch.kraus_ = std::move(kraus);
  meta.dim = static_cast<int>(d);
  ch.meta_ = std::move(meta);
  ch.tp_defect_ = opnorm(sum - Operator::Identity(d, d));
  return ch;
}

KrausChannel KrausChannel::from_frames(std::vector<RotationFrame> frames, ChannelMeta meta) {
  require(!frames.empty(), "KrausChannel: no rotation frames");
  const Eigen::Index d = frames.front().basis.rows();
  // Sum K^dag K = sum_f W_f B_f B_f^dag, exact for unitary bases.
  Operator sum = Operator::Zero(d, d);
  for (const auto& f : frames) {
    require(f.basis.rows() == d && f.eigenvalues.size() == d && f.angles.size() == f.weights.size(),
            "KrausChannel: inconsistent rotation frame");
    double w = 0.0;
    for (double x : f.weights) {
      require(x >= 0.0, "KrausChannel: negative mixture weight");
      w += x;
    }
    sum.noalias() += w * f.basis * f.basis.adjoint();
  }
  KrausChannel ch;
  ch.frames_ = std::move(frames);
  meta.dim = static_cast<int>(d);
  ch.meta_ = std::move(meta);
  ch.tp_defect_ = opnorm(sum - Operator::Identity(d, d));
  return ch;
}

std::size_t KrausChannel::size() const {
  if (frames_.empty()) return kraus_.size();
  std::size_t n = 0;
  for (const auto& f : frames_) n += f.angles.size();
  return n;
}

void KrausChannel::for_each_kraus(const std::function<void(const Operator&)>& f) const {
  if (frames_.empty()) {
    for (const auto& k : kraus_) f(k);
    return;
  }
  for (const auto& fr : frames_)
    for (std::size_t j = 0; j < fr.angles.size(); ++j) f(std::sqrt(fr.weights[j]) * fr.unitary(j));
}

std::vector<Operator> KrausChannel::kraus() const {
  std::vector<Operator> out;
  out.reserve(size());
  for_each_kraus([&](const Operator& k) { out.push_back(k); });
  return out;
}

void KrausChannel::for_each_unitary(const std::function<void(double, const Operator&)>& f) const {
  require(is_mixed_unitary(), "channel is not flagged mixed-unitary");
  for (const auto& fr : frames_)
    for (std::size_t j = 0; j < fr.angles.size(); ++j) f(fr.weights[j], fr.unitary(j));
}

Operator KrausChannel::apply(const Operator& rho) const {
  require(rho.rows() == dim() && rho.cols() == dim(), "apply_channel: dimension mismatch");
  Operator out = Operator::Zero(dim(), dim());
  if (frames_.empty()) {
    for (const auto& k : kraus_) out.noalias() += k * rho * k.adjoint();
    return out;
  }
  // Rotations about a shared axis act elementwise in that axis' eigenbasis.
  for (const auto& fr : frames_) {
    Operator a = fr.basis.adjoint() * rho * fr.basis;
    out.noalias() += fr.basis * a.cwiseProduct(fr.characteristic()) * fr.basis.adjoint();
  }
  return out;
}

KrausChannel identity_channel(int dim) {
  require(dim >= 1, "identity_channel: dimension must be positive");
  RotationFrame f;
  f.basis = Operator::Identity(dim, dim);
  f.eigenvalues = RealVector::Zero(dim);
  f.angles = {0.0};
  f.weights = {1.0};
  return KrausChannel::from_frames({f}, {"identity", dim, 0.0, {}});
}

namespace {

// Shared by the spin relaxation and Fock-space photodetection channels, which
// agree level by level under the Dicke-to-Fock isometry.
std::vector<Operator> lowering_kraus(int levels, double gamma) {
  const double p = -std::expm1(-gamma);
  std::vector<Operator> ks;
  const int dim = levels + 1;
  const int lmax = gamma == 0.0 ? 0 : levels;
  for (int l = 0; l <= lmax; ++l) {
    Operator k = Operator::Zero(dim, dim);
    for (int n = l; n < dim; ++n) {
      // sqrt(p^l / l! * n! / (n-l)!) e^{-gamma (n-l) / 2}
      double lg = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(n - l + 1.0) - std::lgamma(l + 1.0)) -
                  0.5 * gamma * (n - l);
      if (l > 0) lg += 0.5 * l * std::log(p);
      k(n - l, n) = std::exp(lg);
    }
    ks.push_back(std::move(k));
  }
  return ks;
}

}  // namespace

KrausChannel stochastic_relaxation(const SpinSystem& sys, double gamma) {
  require(std::isfinite(gamma) && gamma >= 0.0, "stochastic_relaxation: gamma must be >= 0");
  return KrausChannel::from_kraus(lowering_kraus(sys.particles(), gamma),
                                  {"stochastic_relaxation", sys.dim(), gamma, {}});
}

double dephasing_window(double sigma) { return std::min(kPi, 8.0 * std::sqrt(sigma)); }

KrausChannel one_axis_dephasing(const SpinSystem& sys, double sigma, Axis axis, int n_theta) {
  require(std::isfinite(sigma) && sigma > 0.0, "one_axis_dephasing: sigma must be positive");
  require(n_theta >= 21 && n_theta % 2 == 1, "one_axis_dephasing: n_theta must be odd and >= 21");
  require(axis == Axis::kX || axis == Axis::kY || axis == Axis::kZ,
          "one_axis_dephasing: axis must be x, y or z");
  const PhaseGenerator jy(angular_momentum(sys, Axis::kY));
  double xi = 0.0, phi = 0.0;
  if (axis == Axis::kX) xi = 0.5 * kPi;
  if (axis == Axis::kY) xi = 0.5 * kPi, phi = 0.5 * kPi;
  const Quadrature q = gaussian_angles(sigma, n_theta);
  std::vector<RotationFrame> frames(1);
  frames[0].basis = frame_basis(sys, jy, xi, phi);
  frames[0].eigenvalues = jz_spectrum(sys);
  frames[0].angles = q.nodes;
  frames[0].weights = q.weights;
  normalize_frames(frames);
  const char* name = axis == Axis::kX ? "dephasing_x" : axis == Axis::kY ? "dephasing_y" : "dephasing_z";
  return KrausChannel::from_frames(std::move(frames), {name, sys.dim(), sigma, {n_theta}});
}

KrausChannel isotropic_dephasing(const SpinSystem& sys, double sigma, int n_theta, int n_xi,
                                 int n_phi) {
  require(std::isfinite(sigma) && sigma > 0.0, "isotropic_dephasing: sigma must be positive");
  require(n_theta >= 21 && n_xi >= 8 && n_phi >= 16,
          "isotropic_dephasing: quadrature orders must be at least (21, 8, 16)");
  const PhaseGenerator jy(angular_momentum(sys, Axis::kY));
  const Quadrature qt = gaussian_angles(sigma, n_theta);
  // sin(xi) d(xi) = d(cos xi), so Gauss-Legendre in u = cos xi on [0, 1].
  const Quadrature qu = gauss_legendre(n_xi, 0.0, 1.0);
  const Quadrature qp = periodic_trapezoid(n_phi, 0.0, 2.0 * kPi);
  std::vector<RotationFrame> frames;
  for (std::size_t a = 0; a < qu.nodes.size(); ++a) {
    const double xi = std::acos(qu.nodes[a]);
    for (std::size_t b = 0; b < qp.nodes.size(); ++b) {
      RotationFrame f;
      f.basis = frame_basis(sys, jy, xi, qp.nodes[b]);
      f.eigenvalues = jz_spectrum(sys);
      f.angles = qt.nodes;
      for (double w : qt.weights) f.weights.push_back(w * qu.weights[a] * qp.weights[b]);
      frames.push_back(std::move(f));
    }
  }
  normalize_frames(frames);
  return KrausChannel::from_frames(std::move(frames),
                                   {"isotropic_dephasing", sys.dim(), sigma, {n_theta, n_xi, n_phi}});
}

KrausChannel photon_detection(int cutoff, double gamma) {
  require(cutoff >= 4, "photon_detection: cutoff must be at least 4");
  require(std::isfinite(gamma) && gamma >= 0.0, "photon_detection: gamma must be >= 0");
  return KrausChannel::from_kraus(lowering_kraus(cutoff, gamma),
                                  {"photon_detection", cutoff + 1, gamma, {}});
}

Operator apply_channel(const KrausChannel& ch, const Operator& rho) {
  require(rho.rows() == ch.dim() && rho.cols() == ch.dim(), "apply_channel: dimension mismatch");
  require(min_eigenvalue(rho) >= -1e-9, "apply_channel: input is not PSD");
  require(std::abs(rho.trace() - 1.0) <= 1e-9, "apply_channel: input trace is not one");
  return ch.apply(rho);
}

}  // namespace spingkp
