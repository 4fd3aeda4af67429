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

// Independent reference computations used by the unit tests and the
// acceptance runner. Nothing here calls the solver it is meant to check.

#ifndef SPINGKP_TESTS_ORACLES_HPP_
#define SPINGKP_TESTS_ORACLES_HPP_

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "spingkp/linalg.hpp"

namespace spingkp::oracle {

inline Operator random_gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Operator a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = cplx(g(rng), g(rng));
  return a;
}

// Closest isometry (polar factor) via the SVD.
inline Operator polar_factor(const Operator& a) {
  Eigen::JacobiSVD<Operator> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

inline Operator random_isometry(int rows, int cols, std::mt19937_64& rng) {
  return polar_factor(random_gaussian(rows, cols, rng));
}

// maximize tr(C X) over Choi matrices X = sum_k vec(R_k) vec(R_k)^dag of
// channels C^d -> C^2, with the Kraus operators stacked into an isometry V
// (2r x d). Gradient ascent on V with polar retraction; the rank r = 2d
// leaves no spurious local maxima for this convex problem.
inline double primal_fidelity(const Operator& c, int d, std::uint64_t seed, int iters = 40000,
                              double tol = 1e-12) {
  const int r = 2 * d;
  std::mt19937_64 rng(seed);
  Operator v = random_isometry(2 * r, d, rng);
  auto value = [&](const Operator& w) {
    double f = 0.0;
    for (int k = 0; k < r; ++k) {
      Ket x(2 * d);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < d; ++j) x(i * d + j) = w(2 * k + i, j);
      f += (x.adjoint() * c * x)(0, 0).real();
    }
    return f;
  };
  auto gradient = [&](const Operator& w) {
    Operator g(2 * r, d);
    for (int k = 0; k < r; ++k) {
      Ket x(2 * d);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < d; ++j) x(i * d + j) = w(2 * k + i, j);
      const Ket y = c * x;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < d; ++j) g(2 * k + i, j) = y(i * d + j);
    }
    return g;
  };
  double f = value(v);
  double step = 1.0 / std::max(1e-12, c.norm());
  for (int it = 0; it < iters; ++it) {
    const Operator cand = polar_factor(v + step * gradient(v));
    const double fc = value(cand);
    if (fc >= f) {
      const double gain = fc - f;
      v = cand;
      f = fc;
      step *= 1.2;
      if (gain < tol) break;
    } else {
      step *= 0.5;
      if (step < 1e-14) break;
    }
  }
  return f;
}

// Gaussian overlap |<S|S shifted by s in q>|^2 for q-variance sigma2.
inline double squeezed_shift_overlap(double sigma2, double s) {
  return std::exp(-s * s / (4.0 * sigma2));
}

}  // namespace spingkp::oracle

#endif  // SPINGKP_TESTS_ORACLES_HPP_
