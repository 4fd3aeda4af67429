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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <yaml-cpp/yaml.h>

#include "spingkp/bench.hpp"
#include "spingkp/codes.hpp"
#include "spingkp/cv.hpp"
#include "spingkp/linalg.hpp"

namespace spingkp::bench {
namespace {

struct KindEntry {
  ExperimentKind kind;
  std::string_view name;
};

constexpr KindEntry kKinds[] = {
    {ExperimentKind::kFig3, "fig3"},     {ExperimentKind::kFig4, "fig4"},
    {ExperimentKind::kFig5, "fig5"},     {ExperimentKind::kFig6, "fig6"},
    {ExperimentKind::kFig8, "fig8"},     {ExperimentKind::kFig9, "fig9"},
    {ExperimentKind::kFig10, "fig10"},   {ExperimentKind::kFig11, "fig11"},
    {ExperimentKind::kFig12, "fig12"},   {ExperimentKind::kTable1, "table1"},
    {ExperimentKind::kTable2, "table2"}, {ExperimentKind::kHusimi, "husimi"},
    {ExperimentKind::kGates, "gates"},   {ExperimentKind::kCustom, "custom"},
};

const char* const kChannels[] = {"identity", "stochastic_relaxation", "isotropic_dephasing",
                                 "one_axis_dephasing", "photon_detection", "none"};

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return v;
}

std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> v = linspace(std::log10(a), std::log10(b), n);
  for (double& x : v) x = std::pow(10.0, x);
  return v;
}

// A grid is either a list or {from, to, count[, scale: log]}.
std::vector<double> read_grid(const YAML::Node& node, const std::string& what) {
  if (node.IsSequence()) return node.as<std::vector<double>>();
  if (node.IsScalar()) return {node.as<double>()};
  require(node.IsMap() && node["from"] && node["to"] && node["count"],
          "config: " + what + " must be a list or {from, to, count}");
  const double a = node["from"].as<double>(), b = node["to"].as<double>();
  const int n = node["count"].as<int>();
  require(n >= 1, "config: " + what + " count must be positive");
  const std::string scale = node["scale"] ? node["scale"].as<std::string>() : "linear";
  if (scale == "log") {
    require(a > 0.0 && b > 0.0, "config: log grid needs positive bounds");
    return logspace(a, b, n);
  }
  require(scale == "linear", "config: grid scale must be linear or log");
  return linspace(a, b, n);
}

bool is_recovery_kind(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kFig4: case ExperimentKind::kFig5: case ExperimentKind::kFig6:
    case ExperimentKind::kFig11: case ExperimentKind::kTable1: case ExperimentKind::kTable2:
    case ExperimentKind::kCustom:
      return true;
    default:
      return false;
  }
}

std::vector<std::string> names_of(const std::vector<Family>& fs) {
  std::vector<std::string> out;
  for (Family f : fs) out.emplace_back(family_name(f));
  return out;
}

void apply_defaults(ExperimentConfig& c) {
  using K = ExperimentKind;
  if (c.id.empty()) c.id = std::string(kind_name(c.kind));
  if (c.families.empty()) {
    switch (c.kind) {
      case K::kFig3:
        c.families = {"tactgkp", "spingkp", "oatgkp", "oatgkp_uni"};
        break;
      case K::kTable1: case K::kTable2:
        c.families = {"spingkp", "oatgkp", "tactgkp", "unigkp"};
        break;
      case K::kFig8: c.families = {"squeezed"}; break;
      case K::kFig9: c.families = {"tactgkp_uni"}; break;
      case K::kFig10: case K::kHusimi: c.families = {"oatgkp", "spingkp"}; break;
      case K::kFig12:
        for (CvFamily f : all_cv_families()) c.families.emplace_back(cv_family_name(f));
        break;
      case K::kGates: c.families = {"spingkp"}; break;
      default: c.families = names_of(all_families());
    }
  }
  if (c.n.empty()) {
    if (c.kind == K::kFig8) {
      for (int j = 10; j <= 40; j += 5) c.n.push_back(2 * j);
    } else if (c.kind == K::kGates) {
      c.n = {16, 32, 64};
    } else if (c.kind == K::kFig12) {
      c.n = {0};
    } else if (c.kind == K::kTable1 || c.kind == K::kTable2 || c.kind == K::kFig9) {
      c.n = {64};
    } else {
      c.n = {32};
    }
  }
  if (c.noise.empty()) {
    switch (c.kind) {
      case K::kFig4: case K::kTable1: c.noise = linspace(0.01, 0.8, 40); break;
      case K::kFig5: case K::kFig6: case K::kFig11: case K::kTable2:
        c.noise = logspace(1e-3, 1.0, 40);
        break;
      case K::kFig9: c.noise = {0.0, 0.05, 0.1, 0.2, 0.5}; break;
      case K::kFig10: c.noise = {0.2}; break;
      case K::kFig12: c.noise = linspace(0.0, 0.3, 7); break;
      default: c.noise = {0.0};
    }
  }
  if (c.delta.empty()) {
    switch (c.kind) {
      case K::kFig3: c.delta = linspace(0.02, 1.0, 50); break;
      case K::kFig8: case K::kGates: c.delta = {0.2}; break;
      case K::kFig9: c.delta = {0.1}; break;
      case K::kFig10: case K::kHusimi: c.delta = {0.3}; break;
      default: break;
    }
  }
  std::sort(c.n.begin(), c.n.end());
  std::sort(c.noise.begin(), c.noise.end());
  std::sort(c.delta.begin(), c.delta.end());
  c.n.erase(std::unique(c.n.begin(), c.n.end()), c.n.end());
  c.noise.erase(std::unique(c.noise.begin(), c.noise.end()), c.noise.end());
  c.delta.erase(std::unique(c.delta.begin(), c.delta.end()), c.delta.end());
}

}  // namespace

std::string_view kind_name(ExperimentKind k) {
  for (const auto& e : kKinds)
    if (e.kind == k) return e.name;
  return "?";
}

ExperimentKind parse_kind(std::string_view name) {
  for (const auto& e : kKinds)
    if (e.name == name) return e.kind;
  throw Error("config: unknown experiment kind '" + std::string(name) + "'");
}

std::string_view ExperimentConfig::noise_name() const {
  const std::string ch = resolved_channel();
  if (kind == ExperimentKind::kFig9) return "epsilon";
  if (kind == ExperimentKind::kFig8) return "b";
  if (ch == "stochastic_relaxation" || ch == "photon_detection") return "gamma";
  if (ch == "isotropic_dephasing" || ch == "one_axis_dephasing") return "sigma";
  return "noise";
}

std::string ExperimentConfig::resolved_channel() const {
  if (!channel.empty()) return channel;
  switch (kind) {
    case ExperimentKind::kFig4: case ExperimentKind::kTable1: return "stochastic_relaxation";
    case ExperimentKind::kFig5: case ExperimentKind::kFig6: case ExperimentKind::kTable2:
      return "isotropic_dephasing";
    case ExperimentKind::kFig10: case ExperimentKind::kFig11: return "one_axis_dephasing";
    case ExperimentKind::kFig12: return "photon_detection";
    case ExperimentKind::kHusimi: return "identity";
    default: return "none";
  }
}

void ExperimentConfig::validate() const {
  require(!families.empty(), "config: no code families");
  require(!n.empty() && !noise.empty(), "config: empty grid");
  const std::string ch = resolved_channel();
  require(std::find(std::begin(kChannels), std::end(kChannels), ch) != std::end(kChannels),
          "config: unknown channel '" + ch + "'");
  if (kind == ExperimentKind::kCustom)
    require(ch != "none", "config: custom experiments need a channel");
  if (kind == ExperimentKind::kFig12) {
    for (const auto& f : families) parse_cv_family(f);
    require(lambda_hi > lambda_lo && lambda_lo > 0.0, "config: bad lambda bounds");
  } else if (kind != ExperimentKind::kFig8 && kind != ExperimentKind::kGates) {
    for (const auto& f : families) parse_family(f);
  }
  for (int x : n) require(x >= 1 || kind == ExperimentKind::kFig12, "config: N must be positive");
  for (double x : noise) require(std::isfinite(x) && x >= 0.0, "config: noise must be >= 0");
  for (double x : delta) require(std::isfinite(x) && x > 0.0, "config: delta must be > 0");
  if (params == ParamMode::kFixed && is_recovery_kind(kind))
    require(!delta.empty(), "config: params: fixed needs a delta");
  if (params == ParamMode::kTable) require(!table.empty(), "config: params: table needs a table file");
  require(seeds >= 1, "config: seeds must be positive");
  require(tol > 0.0, "config: tol must be positive");
  require(axis == "x" || axis == "y" || axis == "z", "config: axis must be x, y or z");
  require(!quadrature.empty(), "config: empty quadrature orders");
  if (ch == "isotropic_dephasing")
    require(quadrature.size() == 3 && quadrature[0] >= 21 && quadrature[1] >= 8 && quadrature[2] >= 16,
            "config: isotropic quadrature needs three orders of at least (21, 8, 16)");
  if (ch == "one_axis_dephasing")
    require(quadrature[0] >= 21 && quadrature[0] % 2 == 1,
            "config: one-axis quadrature order must be odd and at least 21");
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["experiment"] = kind_name(kind);
  j["id"] = id;
  j["families"] = families;
  j["channel"] = resolved_channel();
  j["axis"] = axis;
  j["n"] = n;
  j["noise"] = noise;
  j["delta"] = delta;
  j["t"] = t;
  j["params"] = params == ParamMode::kOptimize ? "optimize"
                : params == ParamMode::kTable  ? "table"
                                               : "fixed";
  j["table"] = table;
  j["seed"] = seed;
  j["seeds"] = seeds;
  j["tol"] = tol;
  j["quadrature"] = quadrature;
  j["optimize"] = {{"grid", opt_grid}, {"delta_tol", delta_tol}};
  if (delta_max) j["optimize"]["delta_max"] = *delta_max;
  j["cv"] = {{"lambda", {lambda_lo, lambda_hi}}, {"cutoff", cutoff}};
  j["povm_grid"] = povm_grid;
  j["husimi"] = {husimi_theta, husimi_phi};
  return j;
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : to_json().dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig parse_config(const std::string& yaml_text, const std::filesystem::path& base_dir) {
  YAML::Node y;
  try {
    y = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw Error(std::string("config: ") + e.what());
  }
  require(y.IsMap(), "config: top level must be a mapping");
  require(bool(y["experiment"]), "config: missing 'experiment'");
  ExperimentConfig c;
  c.base_dir = base_dir;
  try {
    c.kind = parse_kind(y["experiment"].as<std::string>());
    if (y["id"]) c.id = y["id"].as<std::string>();
    if (y["families"]) c.families = y["families"].as<std::vector<std::string>>();
    if (y["channel"]) {
      const YAML::Node ch = y["channel"];
      if (ch.IsScalar()) {
        c.channel = ch.as<std::string>();
      } else {
        c.channel = ch["kind"].as<std::string>();
        if (ch["axis"]) c.axis = ch["axis"].as<std::string>();
        if (ch["quadrature"]) c.quadrature = ch["quadrature"].as<std::vector<int>>();
      }
    }
    if (y["n"]) {
      for (double x : read_grid(y["n"], "n")) c.n.push_back(static_cast<int>(std::lround(x)));
    }
    if (y["j"]) {
      for (double x : read_grid(y["j"], "j")) c.n.push_back(static_cast<int>(std::lround(2 * x)));
    }
    for (const char* key : {"noise", "gamma", "sigma", "epsilon"})
      if (y[key]) c.noise = read_grid(y[key], key);
    if (y["delta"]) c.delta = read_grid(y["delta"], "delta");
    if (y["t"]) c.t = y["t"].as<int>();
    if (y["params"]) {
      const std::string m = y["params"].as<std::string>();
      if (m == "optimize") c.params = ParamMode::kOptimize;
      else if (m == "table") c.params = ParamMode::kTable;
      else if (m == "fixed") c.params = ParamMode::kFixed;
      else throw Error("config: params must be optimize, table or fixed");
    }
    if (y["table"]) c.table = y["table"].as<std::string>();
    if (y["seed"]) c.seed = y["seed"].as<std::uint64_t>();
    if (y["seeds"]) c.seeds = y["seeds"].as<int>();
    else if (c.kind == ExperimentKind::kFig9) c.seeds = 20;
    if (y["tol"]) c.tol = y["tol"].as<double>();
    if (const YAML::Node o = y["optimize"]) {
      if (o["grid"]) c.opt_grid = o["grid"].as<int>();
      if (o["delta_tol"]) c.delta_tol = o["delta_tol"].as<double>();
      if (o["delta_max"]) c.delta_max = o["delta_max"].as<double>();
    }
    if (const YAML::Node cv = y["cv"]) {
      if (cv["lambda"]) {
        const auto l = cv["lambda"].as<std::vector<double>>();
        require(l.size() == 2, "config: cv.lambda must be [lo, hi]");
        c.lambda_lo = l[0];
        c.lambda_hi = l[1];
      }
      if (cv["cutoff"]) c.cutoff = cv["cutoff"].as<int>();
    }
    if (y["povm_grid"]) c.povm_grid = y["povm_grid"].as<int>();
    if (const YAML::Node h = y["husimi"]) {
      if (h["theta"]) c.husimi_theta = h["theta"].as<int>();
      if (h["phi"]) c.husimi_phi = h["phi"].as<int>();
    }
    if (y["output"]) c.output = y["output"].as<std::string>();
  } catch (const YAML::Exception& e) {
    throw Error(std::string("config: ") + e.what());
  }
  apply_defaults(c);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(bool(in), "config: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

int default_workers() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
    warn(std::string(kWorkersEnv) + " is not a positive integer; ignoring it");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace spingkp::bench
