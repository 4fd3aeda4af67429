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


#ifndef SPINGKP_SPIN_HPP_
#define SPINGKP_SPIN_HPP_

#include <iosfwd>
#include <vector>

#include "spingkp/linalg.hpp"

namespace spingkp {

// Symmetric subspace of N two-level systems. Basis index k = 0..N counts
// excitations in the second mode, so k = 0 is |J, J_z = J>.
class SpinSystem {
 public:
  explicit SpinSystem(int n);

  int particles() const { return n_; }
  double spin() const { return 0.5 * n_; }
  int dim() const { return n_ + 1; }

 private:
  int n_;
};

enum class Axis { kX, kY, kZ, kPlus, kMinus };

Operator angular_momentum(const SpinSystem& sys, Axis axis);

// n . J for a 3-vector n.
Operator axis_component(const SpinSystem& sys, const Eigen::Vector3d& n);

// exp(-i theta n.J); n must be a unit vector.
Operator rotation(const SpinSystem& sys, const Eigen::Vector3d& n,
                  double theta);

// exp((z / 2N)(J_+^2 - J_-^2)).
Operator tact_squeeze(const SpinSystem& sys, double z);

// exp(-i delta J_x^2).
Operator oat_unitary(const SpinSystem& sys, double delta);

// Number-basis state |k>.
Ket basis_ket(int dim, int k);

Eigen::Vector3d bloch_direction(double theta, double phi);

// Amplitudes sqrt(C(N,k)) cos^{N-k}(theta/2) sin^k(theta/2) e^{i k phi}.
Ket spin_coherent(const SpinSystem& sys, double theta, double phi);

struct HusimiGrid {
  std::vector<double> theta;
  std::vector<double> phi;
  Eigen::MatrixXd q;  // q(i, j) at (theta[i], phi[j])

  // Sphere integral with measure (2j+1)/(4 pi) sin(theta), 1/pi divided out.
  double normalization(int n) const;
  void write_csv(std::ostream& os) const;
};

// Q(theta, phi) = (1/pi) <alpha|rho|alpha> on an equiangular grid with
// theta in [0, pi] (endpoints included) and phi in [0, 2 pi).
HusimiGrid husimi_q(const Ket& state, int n_theta = 181, int n_phi = 360);
HusimiGrid husimi_q(const Operator& rho, int n_theta = 181, int n_phi = 360);

struct Embedding {
  Ket fock;
  double leaked_norm = 0.0;  // squared norm beyond the cutoff
};

// |N-k, k> -> Fock |k>, truncated to levels 0..cutoff.
Embedding isometry_embed(const Ket& spin, int fock_cutoff);

// Ratio of the two sides of the de Moivre-Laplace relation
// Gamma(N+1) / (2^N Gamma(N/2+x+1) Gamma(N/2-x+1)) ~ sqrt(2/(pi N)) e^{-2x^2/N}.
double dml_ratio(int n, double x);

}  // namespace spingkp

#endif  // SPINGKP_SPIN_HPP_
