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

#ifndef SPINGKP_CV_HPP_
#define SPINGKP_CV_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spingkp/linalg.hpp"
#include "spingkp/sdp.hpp"

namespace spingkp {

// Fock levels 0..cutoff with q = (a + a^dag)/sqrt2, p = i(a^dag - a)/sqrt2.
class FockSpace {
 public:
  explicit FockSpace(int cutoff);

  int cutoff() const { return cutoff_; }
  int dim() const { return cutoff_ + 1; }
  const Operator& a() const { return a_; }
  const Operator& adag() const { return adag_; }
  const Operator& number() const { return number_; }
  Operator q() const;
  Operator p() const;

  // max |([a, a^dag] - I)_{ij}| over the first cutoff levels; the last level
  // is the truncation edge and is excluded.
  double commutator_defect() const;

 private:
  int cutoff_;
  Operator a_, adag_, number_;
};

// exp(alpha a^dag - conj(alpha) a). Rejects |alpha|^2 > cutoff / 4.
Operator displacement(const FockSpace& fock, cplx alpha);
// exp((r/2)(a^2 - a^dag^2)); r > 0 narrows q.
Operator squeeze(const FockSpace& fock, double r);

double mean_photons(const Ket& psi);

enum class CvFamily { kCvGkp, kSgGkp, kECvGkp, kESgGkp };

std::string_view cv_family_name(CvFamily f);
CvFamily parse_cv_family(std::string_view name);
const std::vector<CvFamily>& all_cv_families();

inline constexpr int kDefaultCvCutoff = 120;
inline constexpr int kMaxRecoveryCutoff = 60;

struct CvCodeParams {
  CvFamily family = CvFamily::kSgGkp;
  double lambda = 0.3;
  std::optional<double> d;  // squeeze ratio for the single-comb families
  int t = 5;
  int cutoff = 0;           // 0: start at kDefaultCvCutoff and raise as needed

  double resolved_d() const { return d ? *d : 1.0 / (lambda * lambda); }
  // (label for ket0, label for ket1): mu in {0, 1} or nu in {1/2, -1/2}.
  std::pair<double, double> labels() const;
  void validate() const;
};

struct CvCode {
  Ket ket0;
  Ket ket1;
  CvCodeParams params;  // cutoff resolved
  double leakage = 0.0;       // squared norm lost above the cutoff, worst codeword
  double gate_defect = 0.0;   // norm change when the cutoff is raised by 20
};

// Throws when the leakage exceeds 1e-4 at an explicit cutoff, or when no
// cutoff up to the automatic ceiling passes the gate.
CvCode cv_code(const CvCodeParams& params);
Ket cv_codeword(const CvCodeParams& params, double label);

struct Wavefunction {
  std::vector<double> x;
  std::vector<cplx> psi;
};

// Position-space amplitudes from normalized Hermite functions.
Wavefunction position_wavefunction(const Ket& fock, int n_points = 512,
                                   double extent = 0.0);  // 0: 8 sqrt(pi)

struct CvSweepRecord {
  CvFamily family = CvFamily::kSgGkp;
  double gamma = 0.0;
  double lambda_opt = 0.0;
  int t = 0;
  double fidelity = 0.0;
  int cutoff = 0;
  double leakage = 0.0;
};

struct LambdaBounds {
  double lo = 0.25;
  double hi = 1.0;
  int grid = 12;
  double tol = 2e-3;
};

// Optimal recovery fidelity under photodetection at a fixed code.
double cv_recovery_fidelity(const CvCode& code, double gamma, const SdpOptions& opts = {});

// Best lambda per gamma, by grid scan and golden-section refinement.
// Cutoffs above kMaxRecoveryCutoff are lowered with a warning.
std::vector<CvSweepRecord> cv_recovery_sweep(CvFamily family, const std::vector<double>& gammas,
                                             const LambdaBounds& bounds, int t,
                                             int cutoff = kMaxRecoveryCutoff,
                                             const SdpOptions& opts = {});

void write_cv_csv(std::ostream& os, const std::vector<CvSweepRecord>& rows);

// |<S|D(shift / sqrt2)|S>|^2 for the squeezed vacuum with q-variance 1/(2d),
// computed in Fock space; shift is in q units.
double cv_shift_overlap(double d, double shift);

// Spin states embedded into Fock space against their oscillator limits.
struct QcltRung {
  int n = 0;
  double coherent = 0.0;  // spin coherent vs |alpha>
  double squeezed = 0.0;  // TACT vs S(z)
  double grid = 0.0;      // spingkp vs SgGKP at lambda = delta
};

QcltRung qclt_rung(int n, double alpha, double z, double delta, int t);

}  // namespace spingkp

#endif  // SPINGKP_CV_HPP_
