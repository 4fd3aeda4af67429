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

#include "spingkp/cv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "spingkp/channels.hpp"
#include "spingkp/codes.hpp"
#include "spingkp/recovery.hpp"
#include "spingkp/spin.hpp"

namespace spingkp {
namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrtHalfPi = std::sqrt(0.5 * kPi);
const double kGolden = 0.5 * (std::sqrt(5.0) - 1.0);

constexpr int kAutoCeiling = 600;
constexpr int kGateStep = 20;
constexpr double kMaxLeakage = 1e-4;
constexpr double kGateTol = 1e-6;
// Terms lighter than e^{-kDropLog} relative to the heaviest are dropped.
constexpr double kDropLog = 35.0;

// Oversized working space in which code states are assembled before being
// cut down to the requested cutoff. Displacements along q and p each cost
// one diagonalization here.
class Workspace {
 public:
  explicit Workspace(int levels) : fock_(levels), q_(fock_.q()), p_(fock_.p()) {}

  int dim() const { return fock_.dim(); }
  Ket vacuum() const { return basis_ket(dim(), 0); }
  // D(alpha) for real alpha is exp(-i sqrt2 alpha p).
  Ket shift_real(double alpha, const Ket& v) const { return p_.apply(std::sqrt(2.0) * alpha, v); }
  // D(i b) is exp(i sqrt2 b q).
  Ket shift_imag(double b, const Ket& v) const { return q_.apply(-std::sqrt(2.0) * b, v); }
  Ket squeezed_vacuum(double r) const { return squeeze(fock_, r) * vacuum(); }

 private:
  FockSpace fock_;
  PhaseGenerator q_, p_;
};

struct Term {
  double log_weight;
  double shift_q;  // real displacement
  double shift_p;  // imaginary displacement (grid families)
};

bool is_grid(CvFamily f) { return f == CvFamily::kSgGkp || f == CvFamily::kESgGkp; }

std::vector<Term> comb_terms(const CvCodeParams& p, double label) {
  const double l2 = p.lambda * p.lambda;
  std::vector<Term> terms;
  for (int t1 = -p.t; t1 <= p.t; ++t1) {
    const double u = 2.0 * t1 + label;
    switch (p.family) {
      case CvFamily::kCvGkp:
        terms.push_back({-0.5 * kPi * l2 * u * u, kSqrtHalfPi * u, 0.0});
        break;
      case CvFamily::kECvGkp:
        terms.push_back({-2.0 * kPi * l2 * t1 * t1, kSqrtHalfPi * u, 0.0});
        break;
      case CvFamily::kSgGkp:
      case CvFamily::kESgGkp: {
        // The equal-energy grid centres its envelope on 2 t1 + 2 nu.
        const double env = p.family == CvFamily::kSgGkp ? u : 2.0 * t1 + 2.0 * label;
        for (int t2 = -p.t; t2 <= p.t; ++t2)
          terms.push_back({-0.5 * kPi * l2 * (env * env + double(t2) * t2), kSqrtHalfPi * u,
                           kSqrtHalfPi * t2});
        break;
      }
    }
  }
  double top = -std::numeric_limits<double>::infinity();
  for (const Term& t : terms) top = std::max(top, t.log_weight);
  std::erase_if(terms, [&](const Term& t) { return t.log_weight < top - kDropLog; });
  for (Term& t : terms) t.log_weight -= top;
  return terms;
}

double max_energy(const std::vector<Term>& terms) {
  double e = 0.0;
  for (const Term& t : terms) e = std::max(e, t.shift_q * t.shift_q + t.shift_p * t.shift_p);
  return e;
}

Ket assemble(const CvCodeParams& p, const std::vector<Term>& terms, const Workspace& ws) {
  Ket out = Ket::Zero(ws.dim());
  if (is_grid(p.family)) {
    // Group by the real displacement so each column needs one q-shift.
    Ket vac = ws.vacuum();
    std::size_t i = 0;
    while (i < terms.size()) {
      const double sq = terms[i].shift_q;
      Ket inner = Ket::Zero(ws.dim());
      for (; i < terms.size() && terms[i].shift_q == sq; ++i)
        inner += std::exp(terms[i].log_weight) * ws.shift_imag(terms[i].shift_p, vac);
      out += ws.shift_real(sq, inner);
    }
  } else {
    const Ket parent = ws.squeezed_vacuum(0.5 * std::log(p.resolved_d()));
    for (const Term& t : terms) out += std::exp(t.log_weight) * ws.shift_real(t.shift_q, parent);
  }
  return out;
}

// Squared-norm fraction of v above level `cutoff`.
double tail_fraction(const Ket& v, int cutoff) {
  const double total = v.squaredNorm();
  if (cutoff + 1 >= v.size()) return 0.0;
  return v.tail(v.size() - cutoff - 1).squaredNorm() / total;
}

struct Built {
  Ket full0, full1;
};

Built build_full(const CvCodeParams& p, int cutoff) {
  const auto [l0, l1] = p.labels();
  const std::vector<Term> t0 = comb_terms(p, l0), t1 = comb_terms(p, l1);
  const double e = std::max(max_energy(t0), max_energy(t1));
  // Room for the displaced packets plus the gate margin.
  const int levels = std::max(cutoff + kGateStep + 80, static_cast<int>(std::ceil(4.0 * e)) + 80);
  const Workspace ws(levels);
  Built b{assemble(p, t0, ws), assemble(p, t1, ws)};
  for (const Ket* v : {&b.full0, &b.full1}) {
    require(v->norm() > 0.0, "cv_code: empty codeword");
    require(v->tail(40).squaredNorm() <= 1e-12 * v->squaredNorm(),
            "cv_code: severe truncation in the working space");
  }
  return b;
}

CvCode cut(const CvCodeParams& p, const Built& b, int cutoff) {
  CvCode c;
  c.params = p;
  c.params.cutoff = cutoff;
  c.ket0 = b.full0.head(cutoff + 1).normalized();
  c.ket1 = b.full1.head(cutoff + 1).normalized();
  c.leakage = std::max(tail_fraction(b.full0, cutoff), tail_fraction(b.full1, cutoff));
  c.gate_defect = std::max(tail_fraction(b.full0, cutoff) - tail_fraction(b.full0, cutoff + kGateStep),
                           tail_fraction(b.full1, cutoff) - tail_fraction(b.full1, cutoff + kGateStep));
  return c;
}

}  // namespace

FockSpace::FockSpace(int cutoff) : cutoff_(cutoff) {
  require(cutoff >= 1, "FockSpace: cutoff must be at least 1");
  a_ = Operator::Zero(dim(), dim());
  for (int n = 1; n <= cutoff; ++n) a_(n - 1, n) = std::sqrt(double(n));
  adag_ = a_.adjoint();
  number_ = adag_ * a_;
}

Operator FockSpace::q() const { return (a_ + adag_) / std::sqrt(2.0); }
Operator FockSpace::p() const { return kI * (adag_ - a_) / std::sqrt(2.0); }

double FockSpace::commutator_defect() const {
  const Operator c = a_ * adag_ - adag_ * a_ - Operator::Identity(dim(), dim());
  return max_abs(c.topLeftCorner(cutoff_, cutoff_));
}

Operator displacement(const FockSpace& fock, cplx alpha) {
  require(std::norm(alpha) <= 0.25 * fock.cutoff(),
          "displacement: |alpha|^2 exceeds cutoff / 4");
  if (alpha == 0.0) return Operator::Identity(fock.dim(), fock.dim());
  const Operator h = kI * (alpha * fock.adag() - std::conj(alpha) * fock.a());
  return expm_hermitian(h, 1.0);
}

Operator squeeze(const FockSpace& fock, double r) {
  if (r == 0.0) return Operator::Identity(fock.dim(), fock.dim());
  const Operator a2 = fock.a() * fock.a();
  const Operator k = 0.5 * kI * (a2 - a2.adjoint());
  return expm_hermitian(k, r);
}

double mean_photons(const Ket& psi) {
  double e = 0.0;
  for (Eigen::Index n = 0; n < psi.size(); ++n) e += n * std::norm(psi(n));
  return e / psi.squaredNorm();
}

std::string_view cv_family_name(CvFamily f) {
  switch (f) {
    case CvFamily::kCvGkp: return "cvgkp";
    case CvFamily::kSgGkp: return "sggkp";
    case CvFamily::kECvGkp: return "ecvgkp";
    case CvFamily::kESgGkp: return "esggkp";
  }
  return "?";
}

CvFamily parse_cv_family(std::string_view name) {
  for (CvFamily f : all_cv_families())
    if (cv_family_name(f) == name) return f;
  throw Error("unknown CV code family: " + std::string(name));
}

const std::vector<CvFamily>& all_cv_families() {
  static const std::vector<CvFamily> v = {CvFamily::kCvGkp, CvFamily::kSgGkp, CvFamily::kECvGkp,
                                          CvFamily::kESgGkp};
  return v;
}

std::pair<double, double> CvCodeParams::labels() const {
  if (family == CvFamily::kCvGkp || family == CvFamily::kSgGkp) return {0.0, 1.0};
  return {0.5, -0.5};
}

void CvCodeParams::validate() const {
  require(std::isfinite(lambda) && lambda > 0.0, "cv_code: lambda must be positive");
  require(t >= 0, "cv_code: T must be nonnegative");
  require(cutoff == 0 || cutoff >= 4, "cv_code: cutoff must be 0 (auto) or at least 4");
  if (!is_grid(family)) require(resolved_d() > 0.0, "cv_code: d must be positive");
}

Ket cv_codeword(const CvCodeParams& params, double label) {
  params.validate();
  const int cutoff = params.cutoff > 0 ? params.cutoff : kDefaultCvCutoff;
  const std::vector<Term> terms = comb_terms(params, label);
  const int levels =
      std::max(cutoff + kGateStep + 80, static_cast<int>(std::ceil(4.0 * max_energy(terms))) + 80);
  const Workspace ws(levels);
  return assemble(params, terms, ws).head(cutoff + 1).normalized();
}

CvCode cv_code(const CvCodeParams& params) {
  params.validate();
  if (params.cutoff > 0) {
    CvCode c = cut(params, build_full(params, params.cutoff), params.cutoff);
    require(c.leakage <= kMaxLeakage, "cv_code: truncation leakage above 1e-4 at cutoff " +
                                          std::to_string(params.cutoff));
    return c;
  }
  const Built b = build_full(params, kAutoCeiling);
  for (int cutoff = kDefaultCvCutoff; cutoff <= kAutoCeiling; cutoff += kGateStep) {
    CvCode c = cut(params, b, cutoff);
    if (c.gate_defect < kGateTol && c.leakage <= kMaxLeakage) return c;
  }
  throw Error("cv_code: no cutoff up to " + std::to_string(kAutoCeiling) + " passes the gate");
}

Wavefunction position_wavefunction(const Ket& fock, int n_points, double extent) {
  require(n_points >= 2, "position_wavefunction: need at least two points");
  if (extent <= 0.0) extent = 8.0 * std::sqrt(kPi);
  Wavefunction w;
  const double norm0 = std::pow(kPi, -0.25);
  for (int i = 0; i < n_points; ++i) {
    const double x = -extent + 2.0 * extent * i / (n_points - 1);
    double prev = 0.0, cur = norm0 * std::exp(-0.5 * x * x);
    cplx acc = fock(0) * cur;
    for (Eigen::Index n = 1; n < fock.size(); ++n) {
      const double next = std::sqrt(2.0 / n) * x * cur - std::sqrt((n - 1.0) / n) * prev;
      prev = cur;
      cur = next;
      acc += fock(n) * cur;
    }
    w.x.push_back(x);
    w.psi.push_back(acc);
  }
  return w;
}

double cv_recovery_fidelity(const CvCode& code, double gamma, const SdpOptions& opts) {
  const KrausChannel ch = photon_detection(code.params.cutoff, gamma);
  return optimal_fidelity(orthonormalize(code.ket0, code.ket1), ch, opts).fidelity;
}

std::vector<CvSweepRecord> cv_recovery_sweep(CvFamily family, const std::vector<double>& gammas,
                                             const LambdaBounds& bounds, int t, int cutoff,
                                             const SdpOptions& opts) {
  require(!gammas.empty(), "cv_recovery_sweep: empty gamma grid");
  require(bounds.grid >= 2 && bounds.hi > bounds.lo && bounds.lo > 0.0,
          "cv_recovery_sweep: bad lambda bounds");
  if (cutoff > kMaxRecoveryCutoff) {
    warn("cv_recovery_sweep: cutoff " + std::to_string(cutoff) + " lowered to " +
         std::to_string(kMaxRecoveryCutoff));
    cutoff = kMaxRecoveryCutoff;
  }
  std::vector<CvSweepRecord> out;
  for (double gamma : gammas) {
    const KrausChannel ch = photon_detection(cutoff, gamma);
    CvSweepRecord best{family, gamma, 0.0, t, -std::numeric_limits<double>::infinity(), cutoff, 0.0};
    auto eval = [&](double lambda) {
      try {
        CvCodeParams p{family, lambda, std::nullopt, t, cutoff};
        const CvCode code = cv_code(p);
        const double f = optimal_fidelity(orthonormalize(code.ket0, code.ket1), ch, opts).fidelity;
        if (f > best.fidelity) {
          best.fidelity = f;
          best.lambda_opt = lambda;
          best.leakage = code.leakage;
        }
        return f;
      } catch (const Error&) {
        return -std::numeric_limits<double>::infinity();
      }
    };
    std::vector<double> xs, fs;
    for (int i = 0; i < bounds.grid; ++i) {
      xs.push_back(bounds.lo + (bounds.hi - bounds.lo) * i / (bounds.grid - 1));
      fs.push_back(eval(xs.back()));
    }
    const std::size_t k = std::max_element(fs.begin(), fs.end()) - fs.begin();
    require(std::isfinite(fs[k]), "cv_recovery_sweep: no admissible lambda");
    double a = xs[k > 0 ? k - 1 : 0], b = xs[std::min(k + 1, xs.size() - 1)];
    double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
    double f1 = eval(x1), f2 = eval(x2);
    while (b - a > bounds.tol) {
      if (f1 >= f2) {
        b = x2, x2 = x1, f2 = f1;
        x1 = b - kGolden * (b - a);
        f1 = eval(x1);
      } else {
        a = x1, x1 = x2, f1 = f2;
        x2 = a + kGolden * (b - a);
        f2 = eval(x2);
      }
    }
    out.push_back(best);
  }
  return out;
}

void write_cv_csv(std::ostream& os, const std::vector<CvSweepRecord>& rows) {
  os << "family,gamma,lambda_opt,T,fidelity,cutoff,leakage\n";
  const auto old = os.precision(12);
  for (const CvSweepRecord& r : rows)
    os << cv_family_name(r.family) << ',' << r.gamma << ',' << r.lambda_opt << ',' << r.t << ','
       << r.fidelity << ',' << r.cutoff << ',' << r.leakage << '\n';
  os.precision(old);
}

double cv_shift_overlap(double d, double shift) {
  require(d > 0.0, "cv_shift_overlap: d must be positive");
  const double r = 0.5 * std::log(d);
  // Squeezed-vacuum tails fall like tanh(r)^n; size the space to 1e-14.
  const double t = std::tanh(std::abs(r));
  const int tail = t > 0.0 ? static_cast<int>(std::ceil(std::log(1e-14) / std::log(t))) : 0;
  const int levels = std::max({80, tail + 40, static_cast<int>(std::ceil(2.0 * shift * shift)) + 80});
  const Workspace ws(levels);
  const Ket s = ws.squeezed_vacuum(r);
  return std::norm(s.dot(ws.shift_real(shift / std::sqrt(2.0), s)));
}

QcltRung qclt_rung(int n, double alpha, double z, double delta, int t) {
  require(n >= 2, "qclt_rung: N must be at least 2");
  require(alpha >= 0.0 && alpha * alpha < n, "qclt_rung: alpha out of range");
  const SpinSystem sys(n);
  const int cutoff = n;
  const Workspace ws(cutoff + 200);
  auto overlap = [&](const Ket& spin, const Ket& cv) {
    const Ket e = isometry_embed(spin, cutoff).fock;
    return std::norm(e.dot(cv.head(cutoff + 1)));
  };
  QcltRung rung;
  rung.n = n;
  rung.coherent = overlap(spin_coherent(sys, 2.0 * std::asin(alpha / std::sqrt(double(n))), 0.0),
                          ws.shift_real(alpha, ws.vacuum()));
  rung.squeezed = overlap(tact_squeeze(sys, z) * basis_ket(sys.dim(), 0), ws.squeezed_vacuum(z));
  CodeParams sp;
  sp.family = Family::kSpinGkp;
  sp.n = n;
  sp.t = t;
  sp.delta = delta;
  const Ket cv = cv_codeword({CvFamily::kSgGkp, delta, std::nullopt, t, cutoff + 200}, 0.0);
  rung.grid = overlap(build_codeword(sp, 0.0), cv);
  return rung;
}

}  // namespace spingkp
