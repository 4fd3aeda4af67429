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

#ifndef SPINGKP_LINALG_HPP_
#define SPINGKP_LINALG_HPP_

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spingkp {

using cplx = std::complex<double>;
using Ket = Eigen::VectorXcd;
using Operator = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

// Thrown for any violated precondition across the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Error(what);
}

// Non-fatal diagnostics go through one replaceable sink; stderr by default.
using WarningSink = std::function<void(const std::string&)>;
void set_warning_sink(WarningSink sink);
void warn(const std::string& what);

Operator dagger(const Operator& a);
Operator herm_part(const Operator& a);

// Largest singular value.
double opnorm(const Operator& a);
double max_abs(const Operator& a);

bool is_hermitian(const Operator& a, double tol = 1e-10);
bool is_unitary(const Operator& a, double tol = 1e-10);
double unitarity_defect(const Operator& u);

struct HermitianEig {
  RealVector values;  // ascending
  Operator vectors;
};

HermitianEig eigh(const Operator& h);

// exp(-i t H) for Hermitian H, cached on the spectral decomposition so that
// many angles cost one diagonalization.
class PhaseGenerator {
 public:
  PhaseGenerator() = default;
  explicit PhaseGenerator(const Operator& h);

  Operator unitary(double t) const;
  Ket apply(double t, const Ket& v) const;
  const HermitianEig& spectrum() const { return eig_; }
  int dim() const { return static_cast<int>(eig_.values.size()); }

 private:
  HermitianEig eig_;
};

Operator expm_hermitian(const Operator& h, double t);

Operator kron(const Operator& a, const Operator& b);
Ket kron(const Ket& a, const Ket& b);

// X is (da*db) x (da*db) with the first factor as the slow index.
Operator partial_trace_first(const Operator& x, int da, int db);

// Minimum eigenvalue of the Hermitian part.
double min_eigenvalue(const Operator& a);

// log C(n, k) for real k via lgamma; -inf outside [0, n].
double log_binomial(double n, double k);

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [a, b] (Golub-Welsch).
Quadrature gauss_legendre(int n, double a, double b);

// Uniform trapezoid rule on a periodic interval [a, a + period).
Quadrature periodic_trapezoid(int n, double a, double period);

}  // namespace spingkp

#endif  // SPINGKP_LINALG_HPP_
