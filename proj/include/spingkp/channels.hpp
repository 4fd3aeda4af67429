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


#ifndef SPINGKP_CHANNELS_HPP_
#define SPINGKP_CHANNELS_HPP_

#include <functional>
#include <string>
#include <vector>

#include "spingkp/linalg.hpp"
#include "spingkp/spin.hpp"

namespace spingkp {

struct ChannelMeta {
  std::string kind;           // identity, stochastic_relaxation, ...
  int dim = 0;
  double strength = 0.0;      // gamma or sigma
  std::vector<int> quadrature;  // orders (theta[, xi, phi])
};

// A block of unitaries sharing one eigenbasis: U_j = B diag(e^{-i theta_j m}) B^dag
// with weight w_j. Mixed-unitary channels are stored as lists of frames, so a
// channel with thousands of Kraus operators costs one basis per axis.
struct RotationFrame {
  Operator basis;
  RealVector eigenvalues;
  std::vector<double> angles;
  std::vector<double> weights;

  // sum_j w_j exp(-i theta_j (m_k - m_l)) as a dim x dim matrix.
  Operator characteristic() const;
  Operator unitary(std::size_t j) const;
};

class KrausChannel {
 public:
  static KrausChannel from_kraus(std::vector<Operator> kraus, ChannelMeta meta);
  static KrausChannel from_frames(std::vector<RotationFrame> frames, ChannelMeta meta);

  int dim() const { return meta_.dim; }
  const ChannelMeta& meta() const { return meta_; }
  double tp_defect() const { return tp_defect_; }
  bool is_mixed_unitary() const { return !frames_.empty(); }
  std::size_t size() const;

  // Kraus operators in a fixed order; materialized one at a time.
  void for_each_kraus(const std::function<void(const Operator&)>& f) const;
  std::vector<Operator> kraus() const;

  // Mixed-unitary view (weights sum to one).
  const std::vector<RotationFrame>& frames() const { return frames_; }
  void for_each_unitary(const std::function<void(double, const Operator&)>& f) const;

  Operator apply(const Operator& rho) const;

 private:
  std::vector<Operator> kraus_;
  std::vector<RotationFrame> frames_;
  ChannelMeta meta_;
  double tp_defect_ = 0.0;
};

KrausChannel identity_channel(int dim);

// K_l = sqrt((1-e^{-g})^l / l!) e^{-(g/4)(N - 2 J_z)} B^l, B|k> = sqrt(k)|k-1>.
KrausChannel stochastic_relaxation(const SpinSystem& sys, double gamma);

// Gaussian-weighted rotations about one axis. Gauss-Legendre nodes cover the
// support of the truncated Gaussian inside [-pi, pi].
KrausChannel one_axis_dephasing(const SpinSystem& sys, double sigma, Axis axis,
                                int n_theta = 41);

// Gaussian-weighted rotations about axes on the upper hemisphere.
KrausChannel isotropic_dephasing(const SpinSystem& sys, double sigma, int n_theta = 41,
                                 int n_xi = 12, int n_phi = 24);

// Photodetection on Fock levels 0..cutoff.
KrausChannel photon_detection(int cutoff, double gamma);

// Sum_l K rho K^dag.
Operator apply_channel(const KrausChannel& ch, const Operator& rho);

// Angular window used for the Gaussian rotation-angle quadrature.
double dephasing_window(double sigma);

}  // namespace spingkp

#endif  // SPINGKP_CHANNELS_HPP_
