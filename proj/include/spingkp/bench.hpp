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

#ifndef SPINGKP_BENCH_HPP_
#define SPINGKP_BENCH_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace spingkp::bench {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kWorkersEnv = "SPINGKP_WORKERS";
inline constexpr const char* kSoftwareVersion = "0.1.0";

enum class ExperimentKind {
  kFig3, kFig4, kFig5, kFig6, kFig8, kFig9, kFig10, kFig11, kFig12,
  kTable1, kTable2, kHusimi, kGates, kCustom,
};

std::string_view kind_name(ExperimentKind k);
ExperimentKind parse_kind(std::string_view name);

// How code parameters are chosen at each grid cell.
enum class ParamMode { kOptimize, kTable, kFixed };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kCustom;
  std::string id;
  std::vector<std::string> families;
  std::string channel;        // empty: the kind's default
  std::string axis = "z";     // one-axis dephasing
  std::vector<int> n;
  std::vector<double> noise;  // gamma, sigma, epsilon, ...
  std::vector<double> delta;  // fig3 grid, or the fixed delta
  int t = 5;
  ParamMode params = ParamMode::kOptimize;
  std::string table;          // bundled parameter table for kTable
  std::uint64_t seed = 1;
  int seeds = 1;
  double tol = 1e-6;
  std::vector<int> quadrature = {41, 12, 24};
  int opt_grid = 25;
  double delta_tol = 1e-3;
  std::optional<double> delta_max;
  double lambda_lo = 0.25;
  double lambda_hi = 1.0;
  int cutoff = 60;
  int povm_grid = 0;
  int husimi_theta = 91;
  int husimi_phi = 180;
  std::string output;
  std::filesystem::path base_dir;  // relative paths resolve here

  std::string_view noise_name() const;
  std::string resolved_channel() const;
  void validate() const;
  nlohmann::json to_json() const;
  std::string hash() const;  // FNV-1a over the canonical JSON form
};

ExperimentConfig parse_config(const std::string& yaml_text,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

// One CSV row. Optional fields print as empty cells.
struct SweepRecord {
  std::string experiment;
  std::string cell;  // grid coordinates; the resume key
  std::string family;
  std::string channel;
  int n = 0;
  std::string noise_name;
  std::optional<double> noise;
  std::optional<double> delta;
  std::optional<int> t;
  std::optional<double> z;
  std::optional<double> d;
  std::optional<std::uint64_t> seed;
  std::string metric;
  std::optional<double> value;
  std::optional<double> fidelity;
  std::optional<double> baseline;
  std::optional<double> lb2;
  std::optional<double> lb3;
  std::optional<double> probability;
  std::optional<double> gap;
  std::optional<int> cutoff;
  std::optional<double> leakage;
  double tol = 0.0;
  std::string quadrature;
  std::string error;
};

std::string csv_header();
std::string csv_row(const SweepRecord& r);

// Default worker count: SPINGKP_WORKERS when set, else the hardware count.
int default_workers();

struct RunOptions {
  std::filesystem::path out;  // empty: the config's output, else <id>.csv
  int workers = 0;            // 0: default_workers()
  bool resume = true;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::ostream* log = nullptr;
};

struct RunSummary {
  std::filesystem::path csv;
  std::filesystem::path manifest;
  int rows = 0;
  int computed = 0;
  int reused = 0;
  int errors = 0;
  double wall_seconds = 0.0;
};

RunSummary run(ExperimentConfig config, const RunOptions& opts);

struct CheckResult {
  std::string name;
  bool passed = false;
  int compared = 0;
  std::vector<std::string> detail;  // per-row diffs on failure
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool ok() const;
  void print(std::ostream& os) const;
};

// Expectation files are YAML lists of compare / table / monotone / range
// checks against a results CSV; see README for the syntax.
VerifyReport verify(const std::filesystem::path& results,
                    const std::filesystem::path& expectations);

}  // namespace spingkp::bench

#endif  // SPINGKP_BENCH_HPP_
