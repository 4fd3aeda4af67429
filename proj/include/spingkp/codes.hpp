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


#ifndef SPINGKP_CODES_HPP_
#define SPINGKP_CODES_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "spingkp/linalg.hpp"
#include "spingkp/spin.hpp"

namespace spingkp {

enum class Family {
  kTactGkp,
  kTactGkpUni,
  kSpinGkp,
  kUniGkp,
  kOatGkp,
  kOatGkpUni,
  kBinom,
  kRail,
  kCat,
  kCoherent,
};

std::string_view family_name(Family f);
Family parse_family(std::string_view name);
const std::vector<Family>& all_families();
bool is_gkp_family(Family f);
bool is_uniform_family(Family f);

// Amplitudes used by the one-axis-twisted comb. kBinomial is the C(N, N/2+t)
// weighting; kGamma is the three-parameter Gamma-ratio weighting with its own
// lambda.
enum class OatWeights { kBinomial, kGamma };

struct CodeParams {
  Family family = Family::kSpinGkp;
  int n = 64;
  int t = 5;
  double delta = 0.3;
  std::optional<double> lambda;  // comb envelope, defaults to delta
  std::optional<double> d;       // squeeze ratio, defaults to delta^-2
  std::optional<double> z;       // TACT time, defaults to atanh((d-1)/(d+1))
  double theta = 1.5707963267948966;  // cat/coherent orientation
  double phi = 0.0;
  OatWeights oat_weights = OatWeights::kBinomial;

  double resolved_lambda() const;
  double resolved_d() const;
  double resolved_z() const;
  // Logical labels (mu for ket0, mu for ket1).
  std::array<double, 2> mu_values() const;
  void validate() const;
};

struct CodePair {
  Ket ket0;
  Ket ket1;
  CodeParams params;
};

struct OrthonormalCode {
  Ket e0;
  Ket e1;
  Operator projector;  // P_code
  Operator encoder;    // S, dim x 2
  int dim() const { return static_cast<int>(e0.size()); }
};

struct LogicalPaulis {
  Operator x;
  Operator y;
  Operator z;
};

// Normalized codeword for logical label mu (mu from mu_values()).
Ket build_codeword(const CodeParams& params, double mu);
CodePair build_code(const CodeParams& params);

double codeword_overlap(const CodePair& code);
OrthonormalCode orthonormalize(const CodePair& code);
OrthonormalCode orthonormalize(const Ket& ket0, const Ket& ket1);
LogicalPaulis logical_paulis(const OrthonormalCode& code);

// Comb coefficient Gamma(N+1) / (Gamma(N/2+x+1) Gamma(N/2-x+1)) in log form;
// -inf when either Gamma argument is nonpositive.
double log_comb_weight(int n, double x);

nlohmann::json params_to_json(const CodeParams& p);
CodeParams params_from_json(const nlohmann::json& j);
nlohmann::json code_to_json(const CodePair& code);
CodePair code_from_json(const nlohmann::json& j);

}  // namespace spingkp

#endif  // SPINGKP_CODES_HPP_
