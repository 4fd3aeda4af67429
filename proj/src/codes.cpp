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


#include "spingkp/codes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace spingkp {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);
const double kSqrtHalfPi = std::sqrt(0.5 * kPi);

struct FamilyEntry {
  Family family;
  std::string_view name;
};

constexpr FamilyEntry kFamilies[] = {
    {Family::kTactGkp, "tactgkp"},       {Family::kTactGkpUni, "tactgkp_uni"},
    {Family::kSpinGkp, "spingkp"},       {Family::kUniGkp, "unigkp"},
    {Family::kOatGkp, "oatgkp"},         {Family::kOatGkpUni, "oatgkp_uni"},
    {Family::kBinom, "binom"},           {Family::kRail, "rail"},
    {Family::kCat, "cat"},               {Family::kCoherent, "coherent"},
};

// Accumulates weighted terms with weights kept in log form until the end so
// that Gamma-function ratios at N ~ 100 never overflow.
class Accumulator {
 public:
  explicit Accumulator(int dim) : dim_(dim) {}

  void add(double log_weight, Ket v) {
    if (!std::isfinite(log_weight)) return;
    logs_.push_back(log_weight);
    terms_.push_back(std::move(v));
  }

  Ket normalized() const {
    require(!terms_.empty(), "build_code: every comb coefficient vanished");
    const double top = *std::max_element(logs_.begin(), logs_.end());
    Ket sum = Ket::Zero(dim_);
    for (std::size_t i = 0; i < terms_.size(); ++i)
      sum += std::exp(logs_[i] - top) * terms_[i];
    const double nrm = sum.norm();
    require(nrm > 1e-300, "build_code: codeword has zero norm");
    return sum / nrm;
  }

 private:
  int dim_;
  std::vector<double> logs_;
  std::vector<Ket> terms_;
};

struct Rotators {
  explicit Rotators(const SpinSystem& sys)
      : jy(angular_momentum(sys, Axis::kY)),
        jx(angular_momentum(sys, Axis::kX)),
        root_n(std::sqrt(static_cast<double>(sys.particles()))) {}

  // exp(-2 i c J_y / sqrt(N)) v
  Ket shift_q(double c, const Ket& v) const { return jy.apply(2.0 * c / root_n, v); }
  // exp(+2 i c J_x / sqrt(N)) v
  Ket shift_p(double c, const Ket& v) const { return jx.apply(-2.0 * c / root_n, v); }

  PhaseGenerator jy;
  PhaseGenerator jx;
  double root_n;
};

Ket tact_codeword(const CodeParams& p, double mu) {
  SpinSystem sys(p.n);
  Rotators rot(sys);
  const Ket parent = tact_squeeze(sys, p.resolved_z()) * basis_ket(sys.dim(), 0);
  const double lam = p.resolved_lambda();
  const double scale = lam * std::sqrt(kPi * p.n);
  Accumulator acc(sys.dim());
  for (int t = 1; t <= p.t; ++t) {
    acc.add(log_comb_weight(p.n, scale * (t + 0.5 * mu)),
            rot.shift_q(kSqrt2Pi * t + mu * kSqrtHalfPi, parent));
    acc.add(log_comb_weight(p.n, scale * (t - 0.5 * mu)),
            rot.shift_q(-(kSqrt2Pi * t - mu * kSqrtHalfPi), parent));
  }
  acc.add(log_comb_weight(p.n, scale * 0.5 * mu), rot.shift_q(mu * kSqrtHalfPi, parent));
  return acc.normalized();
}

// Uniform comb sum_{t=-T..T} exp(2i(sqrt(2pi) t - mu sqrt(pi/2)) J_y / sqrt(N)) parent.
Ket uniform_comb(const CodeParams& p, double mu, const Ket& parent) {
  SpinSystem sys(p.n);
  Rotators rot(sys);
  Accumulator acc(sys.dim());
  for (int t = -p.t; t <= p.t; ++t)
    acc.add(0.0, rot.shift_q(-(kSqrt2Pi * t - mu * kSqrtHalfPi), parent));
  return acc.normalized();
}

Ket grid_codeword(const CodeParams& p, double mu, bool weighted) {
  SpinSystem sys(p.n);
  Rotators rot(sys);
  const Ket vac = basis_ket(sys.dim(), 0);
  std::vector<Ket> p_shifted;
  for (int t2 = -p.t; t2 <= p.t; ++t2) p_shifted.push_back(rot.shift_p(kSqrtHalfPi * t2, vac));
  const double half = 0.5 * (weighted ? p.resolved_lambda() : 0.0);
  Accumulator acc(sys.dim());
  for (int t1 = -p.t; t1 <= p.t; ++t1) {
    // Sum over t2 first so each t1 needs a single J_y rotation.
    std::vector<double> logs;
    for (int t2 = -p.t; t2 <= p.t; ++t2) {
      const double r = (2.0 * t1 + mu) * (2.0 * t1 + mu) + double(t2) * t2;
      logs.push_back(log_comb_weight(p.n, half * std::sqrt(p.n * kPi * r)));
    }
    const double top = *std::max_element(logs.begin(), logs.end());
    if (!std::isfinite(top)) continue;
    Ket inner = Ket::Zero(sys.dim());
    for (std::size_t i = 0; i < logs.size(); ++i)
      if (std::isfinite(logs[i])) inner += std::exp(logs[i] - top) * p_shifted[i];
    acc.add(top, rot.shift_q(kSqrt2Pi * t1 + mu * kSqrtHalfPi, inner));
  }
  return acc.normalized();
}

Ket oat_codeword(const CodeParams& p, double mu) {
  SpinSystem sys(p.n);
  Rotators rot(sys);
  const Ket parent = oat_unitary(sys, p.delta) * basis_ket(sys.dim(), 0);
  Accumulator acc(sys.dim());
  if (p.oat_weights == OatWeights::kBinomial) {
    for (int t = 1; t <= p.t; ++t) {
      const double w = log_comb_weight(p.n, t);
      acc.add(w, rot.shift_q(kSqrt2Pi * t + mu * kSqrtHalfPi, parent));
      acc.add(w, rot.shift_q(-(kSqrt2Pi * t - mu * kSqrtHalfPi), parent));
    }
    acc.add(log_comb_weight(p.n, 0.0), rot.shift_q(mu * kSqrtHalfPi, parent));
  } else {
    // Three-parameter form; its second summand carries exp(-2i(...)) as
    // written, unlike the binomial form.
    const double scale = p.resolved_lambda() * std::sqrt(kPi * p.n);
    for (int t = 1; t <= p.t; ++t) {
      acc.add(log_comb_weight(p.n, scale * (t + mu)),
              rot.shift_q(kSqrt2Pi * t + mu * kSqrtHalfPi, parent));
      acc.add(log_comb_weight(p.n, scale * (t - mu)),
              rot.shift_q(kSqrt2Pi * t - mu * kSqrtHalfPi, parent));
    }
    acc.add(log_comb_weight(p.n, scale * mu), rot.shift_q(mu * kSqrtHalfPi, parent));
  }
  return acc.normalized();
}

Ket cat_like(const CodeParams& p, double mu, bool superpose) {
  SpinSystem sys(p.n);
  const Ket up = spin_coherent(sys, p.theta, p.phi);
  const Ket down = spin_coherent(sys, kPi - p.theta, p.phi + kPi);
  if (!superpose) return mu == 0.0 ? up : down;
  const double sign = mu == 0.0 ? 1.0 : -1.0;
  Ket v = up + sign * down;
  const double nrm = v.norm();
  require(nrm > 1e-12, "build_code: cat superposition vanishes");
  return v / nrm;
}

}  // namespace

std::string_view family_name(Family f) {
  for (const auto& e : kFamilies)
    if (e.family == f) return e.name;
  throw Error("family_name: unknown family");
}

Family parse_family(std::string_view name) {
  for (const auto& e : kFamilies)
    if (e.name == name) return e.family;
  throw Error("unknown code family '" + std::string(name) + "'");
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> v = [] {
    std::vector<Family> out;
    for (const auto& e : kFamilies) out.push_back(e.family);
    return out;
  }();
  return v;
}

bool is_gkp_family(Family f) {
  switch (f) {
    case Family::kTactGkp:
    case Family::kTactGkpUni:
    case Family::kSpinGkp:
    case Family::kUniGkp:
    case Family::kOatGkp:
    case Family::kOatGkpUni:
      return true;
    default:
      return false;
  }
}

bool is_uniform_family(Family f) {
  return f == Family::kTactGkpUni || f == Family::kUniGkp || f == Family::kOatGkpUni;
}

double CodeParams::resolved_lambda() const { return lambda.value_or(delta); }

double CodeParams::resolved_d() const { return d.value_or(1.0 / (delta * delta)); }

double CodeParams::resolved_z() const {
  if (z) return *z;
  const double dd = resolved_d();
  return std::atanh((dd - 1.0) / (dd + 1.0));
}

std::array<double, 2> CodeParams::mu_values() const {
  if (family == Family::kOatGkp || family == Family::kOatGkpUni) return {-0.5, 0.5};
  return {0.0, 1.0};
}

void CodeParams::validate() const {
  require(n >= 1, "code: N must be positive");
  require(t >= 0, "code: T must be nonnegative");
  const bool uses_delta = is_gkp_family(family) && family != Family::kUniGkp;
  if (uses_delta) require(std::isfinite(delta) && delta > 0.0, "code: delta must be positive");
  if (lambda) require(*lambda > 0.0, "code: lambda must be positive");
  if (d) require(*d > 0.0, "code: d must be positive");
  if (family == Family::kBinom) require(n >= 4, "code: binom needs N >= 4");
}

double log_comb_weight(int n, double x) {
  const double a = 0.5 * n + x + 1.0, b = 0.5 * n - x + 1.0;
  if (a <= 0.0 || b <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(a) - std::lgamma(b);
}

Ket build_codeword(const CodeParams& p, double mu) {
  p.validate();
  const int dim = p.n + 1;
  switch (p.family) {
    case Family::kTactGkp:
      return tact_codeword(p, mu);
    case Family::kTactGkpUni: {
      SpinSystem sys(p.n);
      return uniform_comb(p, mu, tact_squeeze(sys, p.resolved_z()) * basis_ket(dim, 0));
    }
    case Family::kSpinGkp:
      return grid_codeword(p, mu, true);
    case Family::kUniGkp:
      return grid_codeword(p, mu, false);
    case Family::kOatGkp:
      return oat_codeword(p, mu);
    case Family::kOatGkpUni: {
      SpinSystem sys(p.n);
      return uniform_comb(p, mu, oat_unitary(sys, p.delta) * basis_ket(dim, 0));
    }
    case Family::kBinom:
      if (mu == 0.0) return (basis_ket(dim, 0) + basis_ket(dim, 4)) / std::sqrt(2.0);
      return basis_ket(dim, 2);
    case Family::kRail:
      require(dim >= 2, "code: rail needs N >= 1");
      return basis_ket(dim, mu == 0.0 ? 0 : 1);
    case Family::kCat:
      return cat_like(p, mu, true);
    case Family::kCoherent:
      return cat_like(p, mu, false);
  }
  throw Error("build_code: unknown family");
}

CodePair build_code(const CodeParams& params) {
  const auto mu = params.mu_values();
  return {build_codeword(params, mu[0]), build_codeword(params, mu[1]), params};
}

double codeword_overlap(const CodePair& code) {
  return std::norm(code.ket0.dot(code.ket1));
}

OrthonormalCode orthonormalize(const Ket& ket0, const Ket& ket1) {
  require(ket0.size() == ket1.size(), "orthonormalize: dimension mismatch");
  OrthonormalCode c;
  c.e0 = ket0 / ket0.norm();
  const Ket k1 = ket1 / ket1.norm();
  require(std::norm(c.e0.dot(k1)) <= 1.0 - 1e-8, "orthonormalize: degenerate code");
  Ket r = k1 - c.e0.dot(k1) * c.e0;
  c.e1 = r / r.norm();
  c.encoder.resize(ket0.size(), 2);
  c.encoder.col(0) = c.e0;
  c.encoder.col(1) = c.e1;
  c.projector = c.encoder * c.encoder.adjoint();
  return c;
}

OrthonormalCode orthonormalize(const CodePair& code) {
  return orthonormalize(code.ket0, code.ket1);
}

LogicalPaulis logical_paulis(const OrthonormalCode& code) {
  const Operator e01 = code.e0 * code.e1.adjoint();
  const Operator e10 = code.e1 * code.e0.adjoint();
  return {e01 + e10, -kI * e01 + kI * e10,
          code.e0 * code.e0.adjoint() - code.e1 * code.e1.adjoint()};
}

nlohmann::json params_to_json(const CodeParams& p) {
  nlohmann::json j{{"family", std::string(family_name(p.family))},
                   {"N", p.n},
                   {"T", p.t},
                   {"delta", p.delta},
                   {"theta", p.theta},
                   {"phi", p.phi},
                   {"oat_weights", p.oat_weights == OatWeights::kBinomial ? "binomial" : "gamma"}};
  if (p.lambda) j["lambda"] = *p.lambda;
  if (p.d) j["d"] = *p.d;
  if (p.z) j["z"] = *p.z;
  return j;
}

CodeParams params_from_json(const nlohmann::json& j) {
  CodeParams p;
  p.family = parse_family(j.at("family").get<std::string>());
  p.n = j.at("N").get<int>();
  p.t = j.value("T", p.t);
  p.delta = j.value("delta", p.delta);
  p.theta = j.value("theta", p.theta);
  p.phi = j.value("phi", p.phi);
  if (j.contains("lambda")) p.lambda = j["lambda"].get<double>();
  if (j.contains("d")) p.d = j["d"].get<double>();
  if (j.contains("z")) p.z = j["z"].get<double>();
  const std::string w = j.value("oat_weights", std::string("binomial"));
  require(w == "binomial" || w == "gamma", "oat_weights must be binomial or gamma");
  p.oat_weights = w == "binomial" ? OatWeights::kBinomial : OatWeights::kGamma;
  return p;
}

namespace {

nlohmann::json amps_to_json(const Ket& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back({v(k).real(), v(k).imag()});
  return a;
}

Ket amps_from_json(const nlohmann::json& a) {
  Ket v(a.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    v(k) = cplx(a[k].at(0).get<double>(), a[k].at(1).get<double>());
  return v;
}

}  // namespace

nlohmann::json code_to_json(const CodePair& code) {
  return {{"family", std::string(family_name(code.params.family))},
          {"N", code.params.n},
          {"params", params_to_json(code.params)},
          {"amps0", amps_to_json(code.ket0)},
          {"amps1", amps_to_json(code.ket1)}};
}

CodePair code_from_json(const nlohmann::json& j) {
  CodePair c;
  c.params = params_from_json(j.at("params"));
  c.ket0 = amps_from_json(j.at("amps0"));
  c.ket1 = amps_from_json(j.at("amps1"));
  require(c.ket0.size() == c.params.n + 1 && c.ket1.size() == c.params.n + 1,
          "code JSON: amplitude length does not match N");
  return c;
}

}  // namespace spingkp
