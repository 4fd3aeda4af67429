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

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spingkp/agnostic.hpp"
#include "spingkp/bench.hpp"
#include "spingkp/channels.hpp"
#include "spingkp/codes.hpp"
#include "spingkp/cv.hpp"
#include "spingkp/gates.hpp"
#include "spingkp/lcu.hpp"
#include "spingkp/recovery.hpp"
#include "spingkp/spin.hpp"

namespace {

using namespace spingkp;
namespace bench = spingkp::bench;

struct Globals {
  std::string config;
  std::string out;
  int workers = 0;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error("cannot write " + path);
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int run_config(const Globals& g, const std::set<std::string>& kinds, const std::string& sub) {
  bench::ExperimentConfig cfg = bench::load_config(g.config);
  const std::string kind(bench::kind_name(cfg.kind));
  if (!kinds.count(kind))
    throw Error("experiment '" + kind + "' is not handled by the '" + sub + "' subcommand");
  bench::RunOptions opts;
  opts.out = g.out;
  opts.workers = g.workers;
  opts.seed = g.seed;
  opts.tol = g.tol;
  opts.log = &std::cerr;
  const bench::RunSummary s = bench::run(cfg, opts);
  std::cerr << "wrote " << s.rows << " rows to " << s.csv.string() << " (" << s.computed
            << " computed, " << s.reused << " reused, " << s.errors << " errors, "
            << s.wall_seconds << " s)\n";
  return s.errors == 0 ? 0 : 1;
}

CodeParams code_params(const std::string& family, int n, std::optional<double> delta, int t) {
  CodeParams p;
  p.family = parse_family(family);
  p.n = n;
  p.t = t;
  if (delta) p.delta = *delta;
  return p;
}

KrausChannel spin_channel(const std::string& kind, const SpinSystem& sys, double noise) {
  if (kind == "identity") return identity_channel(sys.dim());
  if (kind == "stochastic_relaxation") return stochastic_relaxation(sys, noise);
  if (kind == "isotropic_dephasing") return isotropic_dephasing(sys, noise);
  if (kind == "one_axis_dephasing") return one_axis_dephasing(sys, noise, Axis::kZ);
  throw Error("unknown channel '" + kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin GKP code construction, recovery and benchmark sweeps"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "Experiment config (YAML); runs the full sweep");
  app.add_option("--out", g.out, "Output file");
  app.add_option("--workers", g.workers,
                 std::string("Worker threads (default: $") + bench::kWorkersEnv +
                     " or the hardware count)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Base random seed");
  app.add_option("--tol", g.tol, "SDP duality-gap tolerance")->check(CLI::PositiveNumber);

  std::string family = "spingkp", channel = "stochastic_relaxation";
  int n = 64, t = 5, ket = 0, samples = 20, cutoff = kMaxRecoveryCutoff;
  std::optional<double> delta;
  double noise = 0.1, epsilon = 0.1;
  std::vector<int> ns;
  std::vector<double> gammas;
  std::vector<std::string> cv_families;
  int n_theta = 91, n_phi = 180;
  double lambda_lo = 0.25, lambda_hi = 1.0;
  std::string results, expectations;

  auto* codes = app.add_subcommand("codes", "Build a code and report its codeword overlap");
  codes->add_option("--family", family);
  codes->add_option("-n,--particles", n);
  codes->add_option("--delta", delta);
  codes->add_option("-T,--terms", t);

  auto* recovery = app.add_subcommand("recovery", "Optimal recovery fidelity for a code and channel");
  recovery->add_option("--family", family);
  recovery->add_option("-n,--particles", n);
  recovery->add_option("--delta", delta, "Fixed delta; optimized when omitted");
  recovery->add_option("-T,--terms", t);
  recovery->add_option("--channel", channel);
  recovery->add_option("--noise", noise, "gamma or sigma");

  auto* husimi = app.add_subcommand("husimi", "Husimi Q grid of a codeword as CSV");
  husimi->add_option("--family", family);
  husimi->add_option("-n,--particles", n);
  husimi->add_option("--delta", delta);
  husimi->add_option("-T,--terms", t);
  husimi->add_option("--ket", ket)->check(CLI::Range(0, 1));
  husimi->add_option("--theta-points", n_theta);
  husimi->add_option("--phi-points", n_phi);

  auto* agnostic = app.add_subcommand("agnostic", "Syndrome-based recovery of a shifted squeezed state");
  agnostic->add_option("-n,--particles", ns, "Particle numbers (default 20..80 step 10)");
  agnostic->add_option("--delta", delta);

  auto* lcu = app.add_subcommand("lcu", "LCU state preparation with noisy select unitary");
  lcu->add_option("--family", family);
  lcu->add_option("-n,--particles", n);
  lcu->add_option("--delta", delta);
  lcu->add_option("-T,--terms", t);
  lcu->add_option("--epsilon", epsilon);
  lcu->add_option("--samples", samples)->check(CLI::PositiveNumber);

  auto* gates = app.add_subcommand("gates", "Logical gate identity and propagation checks");
  gates->add_option("-n,--particles", n);
  gates->add_option("--delta", delta);

  auto* cv = app.add_subcommand("cv", "Finite-energy CV GKP recovery under photodetection");
  cv->add_option("--family", cv_families, "cvgkp, sggkp, ecvgkp, esggkp (default all)");
  cv->add_option("--gamma", gammas, "Loss rates (default 0.05 0.1 0.2)");
  cv->add_option("-T,--terms", t);
  cv->add_option("--fock-cutoff", cutoff);
  cv->add_option("--lambda-lo", lambda_lo);
  cv->add_option("--lambda-hi", lambda_hi);

  auto* verify = app.add_subcommand("verify", "Check a results CSV against an expectations file");
  verify->add_option("results", results)->required()->check(CLI::ExistingFile);
  verify->add_option("expectations", expectations)->required()->check(CLI::ExistingFile);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      const bench::VerifyReport r = bench::verify(results, expectations);
      Sink sink(g.out);
      r.print(sink.os());
      return r.ok() ? 0 : 1;
    }

    if (!g.config.empty()) {
      if (*codes) return run_config(g, {"fig3"}, "codes");
      if (*recovery)
        return run_config(g, {"fig4", "fig5", "fig6", "fig11", "table1", "table2", "custom"},
                          "recovery");
      if (*husimi) return run_config(g, {"husimi", "fig10"}, "husimi");
      if (*agnostic) return run_config(g, {"fig8"}, "agnostic");
      if (*lcu) return run_config(g, {"fig9"}, "lcu");
      if (*gates) return run_config(g, {"gates"}, "gates");
      if (*cv) return run_config(g, {"fig12"}, "cv");
    }

    Sink sink(g.out);
    std::ostream& os = sink.os();
    os.precision(12);

    if (*codes) {
      const CodePair code = build_code(code_params(family, n, delta, t));
      nlohmann::json j = params_to_json(code.params);
      j["overlap"] = codeword_overlap(code);
      os << j.dump(2) << "\n";
    } else if (*recovery) {
      const SpinSystem sys(n);
      const KrausChannel ch = spin_channel(channel, sys, noise);
      SdpOptions so;
      if (g.tol) so.tol = *g.tol;
      CodeParams p = code_params(family, n, delta, t);
      nlohmann::json j;
      if (delta || !is_gkp_family(p.family)) {
        const FidelityResult f = evaluate_code(p, ch, so);
        j["fidelity"] = f.fidelity;
        j["gap"] = f.gap;
      } else {
        const RecoveryResult r = optimize_params(p, ch, default_bounds(p.family, n), so);
        p = r.params;
        j["fidelity"] = r.fidelity;
        j["gap"] = r.gap;
        if (r.bounds) j["lower_bounds"] = {{"lb2", r.bounds->lb2}, {"lb3", r.bounds->lb3}};
      }
      j["params"] = params_to_json(p);
      j["channel"] = channel;
      j["noise"] = noise;
      os << j.dump(2) << "\n";
    } else if (*husimi) {
      const CodePair code = build_code(code_params(family, n, delta, t));
      husimi_q(ket == 0 ? code.ket0 : code.ket1, n_theta, n_phi).write_csv(os);
    } else if (*agnostic) {
      if (ns.empty())
        for (int j = 10; j <= 40; j += 5) ns.push_back(2 * j);
      os << "n,b,recovered,unrecovered\n";
      for (int m : ns) {
        const ShiftRecoveryPoint pt = squeezed_shift_experiment(m, delta.value_or(0.2));
        os << m << ',' << std::sqrt(2.0 * std::numbers::pi / m) / 4.0 << ',' << pt.recovered << ','
           << pt.unrecovered << '\n';
      }
    } else if (*lcu) {
      if (family == "spingkp" && !delta) family = "tactgkp_uni";
      const CodeParams p = code_params(family, n, delta.value_or(0.1), t);
      const NoisyLcuStats s = noisy_lcu(p, p.mu_values()[0], epsilon, g.seed.value_or(1), samples);
      nlohmann::json j = {{"mean", s.mean}, {"min", s.min}, {"max", s.max}, {"epsilon", epsilon}};
      for (const auto& x : s.samples)
        j["samples"].push_back({{"seed", x.seed}, {"fidelity", x.fidelity},
                                {"herald_probability", x.herald_probability}});
      j["params"] = params_to_json(p);
      os << j.dump(2) << "\n";
    } else if (*gates) {
      const SpinSystem sys(n);
      const double phi = 0.1 / std::sqrt(double(n));
      const FConjugationDefects f = check_f_conjugation(sys, 0.2);
      const PPropagation pp = check_p_propagation(sys, phi);
      nlohmann::json j = {{"n", n},
                          {"f_m_to_n", f.m_to_n},
                          {"f_n_to_m", f.n_to_m},
                          {"p_commute", pp.commute_defect},
                          {"p_fidelity", pp.asymptotic_fidelity}};
      if (n <= kMaxSumParticles) {
        const SumPropagation s = check_sum_propagation(sys, phi);
        j["sum_benign_m"] = s.benign_m;
        j["sum_benign_n"] = s.benign_n;
        j["sum_fanout"] = s.fanout_fidelity;
      }
      const CodePair code = build_code(code_params("spingkp", n, delta.value_or(0.2), t));
      j["stabilizer_commutator"] = stabilizer_commutator(orthonormalize(code), build_gates(sys));
      os << j.dump(2) << "\n";
    } else if (*cv) {
      if (gammas.empty()) gammas = {0.05, 0.1, 0.2};
      std::vector<CvFamily> fams;
      for (const auto& f : cv_families) fams.push_back(parse_cv_family(f));
      if (fams.empty()) fams = all_cv_families();
      LambdaBounds lb;
      lb.lo = lambda_lo;
      lb.hi = lambda_hi;
      SdpOptions so;
      if (g.tol) so.tol = *g.tol;
      std::vector<CvSweepRecord> rows;
      for (CvFamily f : fams)
        for (auto& r : cv_recovery_sweep(f, gammas, lb, t, cutoff, so)) rows.push_back(r);
      write_cv_csv(os, rows);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
