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


#ifndef SPINGKP_RECOVERY_HPP_
#define SPINGKP_RECOVERY_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "spingkp/channels.hpp"
#include "spingkp/codes.hpp"
#include "spingkp/sdp.hpp"

namespace spingkp {

// C = sum_l vec(rho' S^dag E_l^dag) vec(...)^dag with rho' = I_2 / 2 and the
// row-major vec map vec|i><j| = |i>|j>.
SdpProblem build_c_matrix(const OrthonormalCode& code, const KrausChannel& ch);

struct FidelityResult {
  double fidelity = 0.0;
  double gap = 0.0;
  SdpStats stats;
};

FidelityResult optimal_fidelity(const OrthonormalCode& code, const KrausChannel& ch,
                                const SdpOptions& opts = {});
double channel_fidelity(const CodePair& code, const KrausChannel& ch, double tol = 1e-6);

struct LowerBounds {
  double lb2 = 0.0;
  double lb3 = 0.0;
};

LowerBounds mixed_unitary_lower_bounds(const OrthonormalCode& code, const KrausChannel& ch);

struct QecKernelSample {
  cplx a, b, c, d;  // coefficients of P, X_code, Y_code, Z_code
};

QecKernelSample qec_kernel(const OrthonormalCode& code, const Operator& u, const Operator& u2);

struct MeanStd {
  double mean = 0.0;
  double stdev = 0.0;
};

MeanStd no_recovery_fidelity(const OrthonormalCode& code, const KrausChannel& ch, int n_states,
                             std::uint64_t seed);

struct ParamBounds {
  double delta_max = 1.0;
  double delta_min = 0.0;   // exclusive
  int grid = 25;
  double delta_tol = 1e-3;
  std::vector<int> t_values;  // empty: family default
};

// Default delta range for a family at particle number n.
ParamBounds default_bounds(Family family, int n);

struct RecoveryResult {
  CodeParams params;  // optimal delta / T filled in
  double fidelity = 0.0;
  double gap = 0.0;
  int evaluations = 0;
  SdpStats stats;
  std::optional<LowerBounds> bounds;
};

// Coarse delta grid followed by golden-section refinement around the best
// grid point; uniform-amplitude families scan T as well.
RecoveryResult optimize_params(const CodeParams& base, const KrausChannel& ch,
                               const ParamBounds& bounds, const SdpOptions& opts = {});

// Fidelity at a single parameter point. Throws when the codewords are
// parallel; the optimizer skips such points.
FidelityResult evaluate_code(const CodeParams& params, const KrausChannel& ch,
                             const SdpOptions& opts = {});

}  // namespace spingkp

#endif  // SPINGKP_RECOVERY_HPP_
