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

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "spingkp/agnostic.hpp"
#include "spingkp/bench.hpp"
#include "spingkp/channels.hpp"
#include "spingkp/codes.hpp"
#include "spingkp/csv.hpp"
#include "spingkp/cv.hpp"
#include "spingkp/gates.hpp"
#include "spingkp/lcu.hpp"
#include "spingkp/recovery.hpp"
#include "spingkp/spin.hpp"

namespace spingkp::bench {
namespace {

using K = ExperimentKind;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

template <class T>
std::string opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) return fmt(*v);
  else return std::to_string(*v);
}

const char* const kColumns[] = {
    "schema", "experiment", "cell", "family", "channel", "n", "noise_name", "noise", "delta",
    "t", "z", "d", "seed", "metric", "value", "fidelity", "baseline", "lb2", "lb3",
    "probability", "gap", "cutoff", "leakage", "tol", "quadrature", "error"};

// Everything one grid cell needs; `key` is stable across runs.
struct Task {
  std::string key;
  std::string family;
  int n = 0;
  double noise = 0.0;
  std::optional<double> delta;
  std::optional<std::uint64_t> seed;
  std::function<std::vector<SweepRecord>(const Task&)> work;
};

struct TableEntry {
  std::optional<double> delta;
  int t = 5;
};

// Bundled parameter tables: <noise>,family,n,delta,t.
std::map<std::tuple<std::string, int, long>, TableEntry> load_table(const std::filesystem::path& p) {
  const CsvTable tab = read_csv_file(p);
  require(tab.header.size() >= 5, "table: expected <noise>,family,n,delta,t in " + p.string());
  std::map<std::tuple<std::string, int, long>, TableEntry> out;
  for (const auto& row : tab.rows) {
    TableEntry e;
    if (!row[3].empty()) e.delta = std::stod(row[3]);
    e.t = std::stoi(row[4]);
    out[{row[1], std::stoi(row[2]), std::lround(std::stod(row[0]) * 1e4)}] = e;
  }
  return out;
}

KrausChannel make_channel(const ExperimentConfig& c, const SpinSystem& sys, double noise) {
  const std::string ch = c.resolved_channel();
  const auto& q = c.quadrature;
  if (ch == "identity") return identity_channel(sys.dim());
  if (ch == "stochastic_relaxation") return stochastic_relaxation(sys, noise);
  if (ch == "isotropic_dephasing")
    return isotropic_dephasing(sys, noise, q[0], q.size() > 1 ? q[1] : 12, q.size() > 2 ? q[2] : 24);
  if (ch == "one_axis_dephasing") {
    const Axis ax = c.axis == "x" ? Axis::kX : c.axis == "y" ? Axis::kY : Axis::kZ;
    return one_axis_dephasing(sys, noise, ax, q[0]);
  }
  throw Error("channel '" + ch + "' does not apply to spin codes");
}

std::string quadrature_string(const ExperimentConfig& c) {
  const std::string ch = c.resolved_channel();
  if (ch == "isotropic_dephasing") {
    std::string s;
    for (std::size_t i = 0; i < 3; ++i) {
      if (i) s += 'x';
      s += std::to_string(i < c.quadrature.size() ? c.quadrature[i] : (i == 1 ? 12 : 24));
    }
    return s;
  }
  if (ch == "one_axis_dephasing") return std::to_string(c.quadrature[0]);
  return "";
}

SweepRecord base_record(const ExperimentConfig& c, const Task& t) {
  SweepRecord r;
  r.experiment = c.id;
  r.cell = t.key;
  r.family = t.family;
  r.channel = c.resolved_channel();
  r.n = t.n;
  r.noise_name = std::string(c.noise_name());
  r.noise = t.noise;
  r.delta = t.delta;
  r.seed = t.seed;
  r.tol = c.tol;
  r.quadrature = quadrature_string(c);
  return r;
}

void fill_params(SweepRecord& r, const CodeParams& p) {
  const bool has_delta = is_gkp_family(p.family) && p.family != Family::kUniGkp;
  r.delta = has_delta ? std::optional<double>(p.delta) : std::nullopt;
  r.t = is_gkp_family(p.family) ? std::optional<int>(p.t) : std::nullopt;
  if (p.family == Family::kTactGkp || p.family == Family::kTactGkpUni) {
    r.z = p.resolved_z();
    r.d = p.resolved_d();
  }
}

std::string cell_key(const std::string& family, int n, double noise,
                     const std::optional<double>& delta, const std::optional<std::uint64_t>& seed) {
  std::string k = family + "|" + std::to_string(n) + "|" + fmt(noise);
  if (delta) k += "|" + fmt(*delta);
  if (seed) k += "|" + std::to_string(*seed);
  return k;
}

// Relative paths resolve against the working directory, then the config's
// own directory.
std::filesystem::path resolve(const ExperimentConfig& c, const std::filesystem::path& p) {
  if (p.is_absolute() || std::filesystem::exists(p) || c.base_dir.empty()) return p;
  return c.base_dir / p;
}

std::vector<Task> recovery_tasks(const ExperimentConfig& c) {
  std::shared_ptr<std::map<std::tuple<std::string, int, long>, TableEntry>> table;
  if (c.params == ParamMode::kTable)
    table = std::make_shared<std::map<std::tuple<std::string, int, long>, TableEntry>>(
        load_table(resolve(c, c.table)));
  std::vector<Task> tasks;
  for (const std::string& fam : c.families)
    for (int n : c.n)
      for (double noise : c.noise) {
        Task t{cell_key(fam, n, noise, std::nullopt, std::nullopt), fam, n, noise, {}, {}, {}};
        t.work = [&c, table](const Task& task) {
          SweepRecord r = base_record(c, task);
          const SpinSystem sys(task.n);
          const KrausChannel ch = make_channel(c, sys, task.noise);
          CodeParams p;
          p.family = parse_family(task.family);
          p.n = task.n;
          p.t = c.t;
          SdpOptions so;
          so.tol = c.tol;
          const bool tunable = is_gkp_family(p.family);
          std::optional<TableEntry> entry;
          if (table && tunable) {
            auto it = table->find({task.family, task.n, std::lround(task.noise * 1e4)});
            if (it != table->end()) entry = it->second;
          }
          if (entry || (tunable && c.params == ParamMode::kFixed) || !tunable) {
            if (entry) {
              if (entry->delta) p.delta = *entry->delta;
              p.t = entry->t;
              r.metric = "table";
            } else if (tunable) {
              p.delta = c.delta.front();
              r.metric = "fixed";
            } else {
              r.metric = "fixed";
            }
            const OrthonormalCode code = orthonormalize(build_code(p));
            const FidelityResult f = optimal_fidelity(code, ch, so);
            r.fidelity = f.fidelity;
            r.gap = f.gap;
            if (ch.is_mixed_unitary()) {
              const LowerBounds lb = mixed_unitary_lower_bounds(code, ch);
              r.lb2 = lb.lb2;
              r.lb3 = lb.lb3;
            }
          } else {
            ParamBounds b = default_bounds(p.family, task.n);
            b.grid = c.opt_grid;
            b.delta_tol = c.delta_tol;
            if (c.delta_max) b.delta_max = *c.delta_max;
            const RecoveryResult res = optimize_params(p, ch, b, so);
            p = res.params;
            r.metric = "optimized";
            r.fidelity = res.fidelity;
            r.gap = res.gap;
            if (res.bounds) {
              r.lb2 = res.bounds->lb2;
              r.lb3 = res.bounds->lb3;
            }
          }
          fill_params(r, p);
          return std::vector<SweepRecord>{r};
        };
        tasks.push_back(std::move(t));
      }
  return tasks;
}

std::vector<Task> overlap_tasks(const ExperimentConfig& c) {
  std::vector<Task> tasks;
  for (const std::string& fam : c.families)
    for (int n : c.n)
      for (double delta : c.delta) {
        Task t{cell_key(fam, n, 0.0, delta, std::nullopt), fam, n, 0.0, delta, {}, {}};
        t.work = [&c](const Task& task) {
          SweepRecord r = base_record(c, task);
          r.noise.reset();
          CodeParams p;
          p.family = parse_family(task.family);
          p.n = task.n;
          p.t = c.t;
          p.delta = *task.delta;
          fill_params(r, p);
          r.metric = "overlap";
          r.value = codeword_overlap(build_code(p));
          return std::vector<SweepRecord>{r};
        };
        tasks.push_back(std::move(t));
      }
  return tasks;
}

std::vector<Task> agnostic_tasks(const ExperimentConfig& c) {
  std::vector<Task> tasks;
  const double delta = c.delta.empty() ? 0.2 : c.delta.front();
  for (int n : c.n) {
    const double b = std::sqrt(2.0 * std::numbers::pi / n) / 4.0;
    Task t{cell_key("squeezed", n, b, delta, std::nullopt), "squeezed", n, b, delta, {}, {}};
    t.work = [&c](const Task& task) {
      SweepRecord r = base_record(c, task);
      const ShiftRecoveryPoint pt = squeezed_shift_experiment(task.n, *task.delta, c.povm_grid);
      const CodeParams anc = default_ancilla(task.n, *task.delta);
      r.z = anc.resolved_z();
      r.d = anc.resolved_d();
      r.metric = "max_probability";
      r.fidelity = pt.recovered;
      r.baseline = pt.unrecovered;
      return std::vector<SweepRecord>{r};
    };
    tasks.push_back(std::move(t));
  }
  return tasks;
}

std::vector<Task> lcu_tasks(const ExperimentConfig& c) {
  std::vector<Task> tasks;
  const double delta = c.delta.empty() ? 0.1 : c.delta.front();
  for (const std::string& fam : c.families)
    for (int n : c.n)
      for (double eps : c.noise)
        for (int k = 0; k < c.seeds; ++k) {
          const std::uint64_t seed = c.seed + k;
          Task t{cell_key(fam, n, eps, delta, seed), fam, n, eps, delta, seed, {}};
          t.work = [&c](const Task& task) {
            SweepRecord r = base_record(c, task);
            CodeParams p;
            p.family = parse_family(task.family);
            p.n = task.n;
            p.t = c.t;
            p.delta = *task.delta;
            fill_params(r, p);
            const NoisyLcuStats s = noisy_lcu(p, p.mu_values()[0], task.noise, *task.seed, 1);
            r.metric = "ket0";
            r.fidelity = s.samples.front().fidelity;
            r.probability = s.samples.front().herald_probability;
            return std::vector<SweepRecord>{r};
          };
          tasks.push_back(std::move(t));
        }
  return tasks;
}

std::filesystem::path husimi_dir(const std::filesystem::path& csv) {
  return csv.parent_path() / (csv.stem().string() + "_husimi");
}

std::vector<Task> husimi_tasks(const ExperimentConfig& c, const std::filesystem::path& csv) {
  std::vector<Task> tasks;
  const double delta = c.delta.empty() ? 0.3 : c.delta.front();
  const std::filesystem::path dir = husimi_dir(csv);
  for (const std::string& fam : c.families)
    for (int n : c.n)
      for (double noise : c.noise) {
        Task t{cell_key(fam, n, noise, delta, std::nullopt), fam, n, noise, delta, {}, {}};
        t.work = [&c, dir](const Task& task) {
          CodeParams p;
          p.family = parse_family(task.family);
          p.n = task.n;
          p.t = c.t;
          p.delta = *task.delta;
          const CodePair code = build_code(p);
          const SpinSystem sys(task.n);
          const KrausChannel ch = make_channel(c, sys, task.noise);
          std::vector<SweepRecord> out;
          std::filesystem::create_directories(dir);
          int k = 0;
          for (const Ket* ket : {&code.ket0, &code.ket1}) {
            const Operator rho = ch.apply(*ket * ket->adjoint());
            const HusimiGrid g = husimi_q(rho, c.husimi_theta, c.husimi_phi);
            const std::string name = task.family + "_n" + std::to_string(task.n) + "_" +
                                     fmt(task.noise) + "_ket" + std::to_string(k) + ".csv";
            std::ofstream os(dir / name);
            g.write_csv(os);
            require(bool(os), "husimi: cannot write " + (dir / name).string());
            SweepRecord r = base_record(c, task);
            fill_params(r, p);
            r.metric = "q_normalization_ket" + std::to_string(k++);
            r.value = g.normalization(task.n);
            out.push_back(r);
          }
          return out;
        };
        tasks.push_back(std::move(t));
      }
  return tasks;
}

std::vector<Task> cv_tasks(const ExperimentConfig& c) {
  std::vector<Task> tasks;
  for (const std::string& fam : c.families)
    for (double gamma : c.noise) {
      Task t{cell_key(fam, 0, gamma, std::nullopt, std::nullopt), fam, 0, gamma, {}, {}, {}};
      t.work = [&c](const Task& task) {
        SweepRecord r = base_record(c, task);
        LambdaBounds lb;
        lb.lo = c.lambda_lo;
        lb.hi = c.lambda_hi;
        SdpOptions so;
        so.tol = c.tol;
        const CvSweepRecord s =
            cv_recovery_sweep(parse_cv_family(task.family), {task.noise}, lb, c.t, c.cutoff, so)
                .front();
        r.metric = "optimized";
        r.delta = s.lambda_opt;
        r.d = 1.0 / (s.lambda_opt * s.lambda_opt);
        r.t = s.t;
        r.fidelity = s.fidelity;
        r.cutoff = s.cutoff;
        r.leakage = s.leakage;
        return std::vector<SweepRecord>{r};
      };
      tasks.push_back(std::move(t));
    }
  return tasks;
}

std::vector<Task> gate_tasks(const ExperimentConfig& c) {
  std::vector<Task> tasks;
  const double delta = c.delta.empty() ? 0.2 : c.delta.front();
  for (int n : c.n) {
    Task t{cell_key("gates", n, 0.0, delta, std::nullopt), "gates", n, 0.0, delta, {}, {}};
    t.work = [&c](const Task& task) {
      const SpinSystem sys(task.n);
      const double phi = 0.1 / std::sqrt(double(task.n));
      std::vector<SweepRecord> out;
      auto add = [&](const std::string& metric, double v) {
        SweepRecord r = base_record(c, task);
        r.noise.reset();
        r.metric = metric;
        r.value = v;
        out.push_back(r);
      };
      const FConjugationDefects f = check_f_conjugation(sys, 0.2);
      add("f_m_to_n", f.m_to_n);
      add("f_n_to_m", f.n_to_m);
      const PPropagation pp = check_p_propagation(sys, phi);
      add("p_commute", pp.commute_defect);
      add("p_fidelity", pp.asymptotic_fidelity);
      if (task.n <= kMaxSumParticles) {
        const SumPropagation s = check_sum_propagation(sys, phi);
        add("sum_benign_m", s.benign_m);
        add("sum_benign_n", s.benign_n);
        add("sum_fanout", s.fanout_fidelity);
      }
      CodeParams p;
      p.family = Family::kSpinGkp;
      p.n = task.n;
      p.t = c.t;
      p.delta = *task.delta;
      const CodePair code = build_code(p);
      const GateSet g = build_gates(sys);
      add("stabilizer_commutator", stabilizer_commutator(orthonormalize(code), g));
      add("stabilizer_x", std::abs(code.ket0.dot(g.stabilizer_x * code.ket0)));
      add("stabilizer_y", std::abs(code.ket0.dot(g.stabilizer_y * code.ket0)));
      for (SweepRecord& r : out) fill_params(r, p);
      return out;
    };
    tasks.push_back(std::move(t));
  }
  return tasks;
}

std::vector<Task> make_tasks(const ExperimentConfig& c, const std::filesystem::path& csv) {
  switch (c.kind) {
    case K::kFig3: return overlap_tasks(c);
    case K::kFig8: return agnostic_tasks(c);
    case K::kFig9: return lcu_tasks(c);
    case K::kFig10: case K::kHusimi: return husimi_tasks(c, csv);
    case K::kFig12: return cv_tasks(c);
    case K::kGates: return gate_tasks(c);
    default: return recovery_tasks(c);
  }
}

bool all_finite(const SweepRecord& r) {
  for (const auto* v : {&r.noise, &r.delta, &r.z, &r.d, &r.value, &r.fidelity, &r.baseline,
                        &r.lb2, &r.lb3, &r.probability, &r.gap, &r.leakage})
    if (*v && !std::isfinite(**v)) return false;
  return true;
}

}  // namespace

std::string csv_header() {
  std::string h;
  for (const char* c : kColumns) {
    if (!h.empty()) h += ',';
    h += c;
  }
  return h;
}

std::string csv_row(const SweepRecord& r) {
  const std::vector<std::string> cells = {
      std::to_string(kSchemaVersion), r.experiment, r.cell, r.family, r.channel,
      std::to_string(r.n), r.noise_name, opt(r.noise), opt(r.delta), opt(r.t), opt(r.z),
      opt(r.d), opt(r.seed), r.metric, opt(r.value), opt(r.fidelity), opt(r.baseline),
      opt(r.lb2), opt(r.lb3), opt(r.probability), opt(r.gap), opt(r.cutoff), opt(r.leakage),
      fmt(r.tol), r.quadrature, r.error};
  return format_csv_line(cells);
}

RunSummary run(ExperimentConfig config, const RunOptions& opts) {
  if (opts.seed) config.seed = *opts.seed;
  if (opts.tol) config.tol = *opts.tol;
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();

  RunSummary summary;
  summary.csv = !opts.out.empty()          ? opts.out
                : !config.output.empty()   ? std::filesystem::path(config.output)
                                           : std::filesystem::path(config.id + ".csv");
  summary.manifest = summary.csv;
  summary.manifest.replace_extension(".json");
  if (summary.csv.has_parent_path()) std::filesystem::create_directories(summary.csv.parent_path());

  const std::vector<Task> tasks = make_tasks(config, summary.csv);
  const std::string hash = config.hash();

  // Resume: reuse error-free rows of cells already present, but only when the
  // previous run used the same configuration.
  std::map<std::string, std::vector<std::string>> previous;
  if (opts.resume && std::filesystem::exists(summary.csv) &&
      std::filesystem::exists(summary.manifest)) {
    try {
      std::ifstream mf(summary.manifest);
      const nlohmann::json m = nlohmann::json::parse(mf);
      if (m.value("config_hash", "") == hash) {
        const CsvTable old = read_csv_file(summary.csv);
        const std::size_t cell = old.column("cell"), err = old.column("error");
        std::map<std::string, bool> bad;
        for (const auto& row : old.rows) bad[row[cell]] = bad[row[cell]] || !row[err].empty();
        for (const auto& row : old.rows)
          if (!bad[row[cell]]) previous[row[cell]].push_back(format_csv_line(row));
      } else if (opts.log) {
        *opts.log << "config changed since the previous run; recomputing all cells\n";
      }
    } catch (const std::exception& e) {
      warn(std::string("resume: ignoring previous output (") + e.what() + ")");
      previous.clear();
    }
  }

  std::vector<std::vector<std::string>> lines(tasks.size());
  std::vector<double> seconds(tasks.size(), 0.0);
  std::vector<char> reused(tasks.size(), 0);
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (auto it = previous.find(tasks[i].key); it != previous.end()) {
      lines[i] = it->second;
      reused[i] = 1;
    } else {
      todo.push_back(i);
    }
  }

  std::atomic<std::size_t> next{0};
  std::atomic<int> errors{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < todo.size(); j = next++) {
      const Task& task = tasks[todo[j]];
      const auto s = std::chrono::steady_clock::now();
      std::vector<SweepRecord> rows;
      try {
        rows = task.work(task);
        for (SweepRecord& r : rows)
          if (!all_finite(r)) throw Error("non-finite result");
      } catch (const std::exception& e) {
        SweepRecord r = base_record(config, task);
        r.error = e.what();
        rows = {r};
        ++errors;
      }
      for (const SweepRecord& r : rows) lines[todo[j]].push_back(csv_row(r));
      seconds[todo[j]] = std::chrono::duration<double>(std::chrono::steady_clock::now() - s).count();
      if (opts.log) {
        static std::mutex m;
        std::lock_guard lock(m);
        *opts.log << "[" << (j + 1) << "/" << todo.size() << "] " << task.key
                  << (rows.front().error.empty() ? "" : "  error: " + rows.front().error) << "\n";
      }
    }
  };
  const int workers = std::max(1, std::min<int>(opts.workers > 0 ? opts.workers : default_workers(),
                                                static_cast<int>(std::max<std::size_t>(todo.size(), 1))));
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }

  {
    std::ofstream os(summary.csv, std::ios::binary);
    require(bool(os), "run: cannot write " + summary.csv.string());
    os << csv_header() << '\n';
    for (const auto& block : lines)
      for (const auto& line : block) {
        os << line << '\n';
        ++summary.rows;
      }
  }
  summary.computed = static_cast<int>(todo.size());
  summary.reused = static_cast<int>(tasks.size() - todo.size());
  summary.errors = errors;
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  nlohmann::json m;
  m["schema_version"] = kSchemaVersion;
  m["software_version"] = kSoftwareVersion;
  m["config_hash"] = hash;
  m["config"] = config.to_json();
  m["csv"] = summary.csv.filename().string();
  m["totals"] = {{"cells", tasks.size()},      {"rows", summary.rows},
                 {"computed", summary.computed}, {"reused", summary.reused},
                 {"errors", summary.errors},     {"workers", workers},
                 {"wall_seconds", summary.wall_seconds}};
  nlohmann::json timing = nlohmann::json::object();
  for (std::size_t i = 0; i < tasks.size(); ++i)
    if (!reused[i]) timing[tasks[i].key] = seconds[i];
  m["cell_seconds"] = timing;
  std::ofstream ms(summary.manifest);
  ms << m.dump(2) << '\n';
  return summary;
}

}  // namespace spingkp::bench
