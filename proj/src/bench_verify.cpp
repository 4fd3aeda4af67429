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
#include <limits>
#include <map>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "spingkp/bench.hpp"
#include "spingkp/csv.hpp"
#include "spingkp/linalg.hpp"

namespace spingkp::bench {
namespace {

constexpr std::size_t kMaxDetail = 20;

std::optional<double> to_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return std::nullopt;
  return v;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Column access with the noise aliases gamma, sigma, epsilon and b.
class Rows {
 public:
  explicit Rows(CsvTable t) : t_(std::move(t)) {}

  std::size_t size() const { return t_.rows.size(); }

  std::string text(std::size_t i, const std::string& col) const {
    if (t_.has_column(col)) return t_.rows[i][t_.column(col)];
    if ((col == "gamma" || col == "sigma" || col == "epsilon" || col == "b") &&
        t_.has_column("noise"))
      return t_.rows[i][t_.column("noise")];
    if (col == "j" && t_.has_column("n")) {
      const auto n = to_number(t_.rows[i][t_.column("n")]);
      return n ? fmt(0.5 * *n) : "";
    }
    throw Error("verify: results have no column '" + col + "'");
  }

  std::optional<double> number(std::size_t i, const std::string& col) const {
    return to_number(text(i, col));
  }

  std::string family(std::size_t i) const {
    return t_.has_column("family") ? t_.rows[i][t_.column("family")] : "";
  }

  bool has_error(std::size_t i) const {
    return t_.has_column("error") && !t_.rows[i][t_.column("error")].empty();
  }

 private:
  CsvTable t_;
};

struct Condition {
  std::string column, op, rhs;
};

std::vector<Condition> parse_where(const std::string& where) {
  std::vector<Condition> out;
  if (where.empty()) return out;
  static const std::regex cond(R"(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(<=|>=|==|!=|<|>)\s*(\S+)\s*$)");
  std::string rest = where;
  std::size_t pos;
  std::vector<std::string> parts;
  while ((pos = rest.find(" and ")) != std::string::npos) {
    parts.push_back(rest.substr(0, pos));
    rest = rest.substr(pos + 5);
  }
  parts.push_back(rest);
  for (const auto& p : parts) {
    std::smatch m;
    require(std::regex_match(p, m, cond), "verify: malformed condition '" + p + "'");
    out.push_back({m[1], m[2], m[3]});
  }
  return out;
}

bool holds(double a, const std::string& op, double b, double slack = 0.0) {
  if (op == "<") return a < b + slack;
  if (op == "<=") return a <= b + slack;
  if (op == ">") return a > b - slack;
  if (op == ">=") return a >= b - slack;
  if (op == "==") return std::abs(a - b) <= slack;
  if (op == "!=") return std::abs(a - b) > slack;
  throw Error("verify: unknown operator '" + op + "'");
}

bool matches(const Rows& rows, std::size_t i, const std::vector<Condition>& conds) {
  for (const auto& c : conds) {
    const auto rhs = to_number(c.rhs);
    if (rhs) {
      const auto v = rows.number(i, c.column);
      if (!v || !holds(*v, c.op, *rhs)) return false;
    } else {
      const bool eq = rows.text(i, c.column) == c.rhs;
      if ((c.op == "==" && !eq) || (c.op == "!=" && eq)) return false;
      if (c.op != "==" && c.op != "!=") throw Error("verify: '" + c.op + "' needs a number");
    }
  }
  return true;
}

std::vector<std::string> string_list(const YAML::Node& n) {
  if (!n) return {};
  if (n.IsScalar()) return {n.as<std::string>()};
  return n.as<std::vector<std::string>>();
}

// Rows passing `where` and `families`.
std::vector<std::size_t> select(const Rows& rows, const YAML::Node& spec, CheckResult& res) {
  const auto conds = parse_where(spec["where"] ? spec["where"].as<std::string>() : "");
  const auto fams = string_list(spec["families"]);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!fams.empty() && std::find(fams.begin(), fams.end(), rows.family(i)) == fams.end()) continue;
    if (!matches(rows, i, conds)) continue;
    if (rows.has_error(i)) {
      res.passed = false;
      if (res.detail.size() < kMaxDetail)
        res.detail.push_back("row " + std::to_string(i + 2) + " carries an error: " +
                             rows.text(i, "error"));
      continue;
    }
    out.push_back(i);
  }
  return out;
}

struct Term {
  std::optional<double> constant;
  std::string column;
  std::vector<std::string> families;
  std::string text;
};

Term parse_term(const std::string& s) {
  static const std::regex col(R"(^([A-Za-z_][A-Za-z0-9_]*)(?:\[([A-Za-z0-9_,\s]+)\])?$)");
  Term t;
  t.text = s;
  if (auto v = to_number(s)) {
    t.constant = v;
    return t;
  }
  std::smatch m;
  require(std::regex_match(s, m, col), "verify: malformed term '" + s + "'");
  t.column = m[1];
  if (m[2].matched) {
    std::string list = m[2];
    std::stringstream ss(list);
    std::string f;
    while (std::getline(ss, f, ',')) {
      f.erase(std::remove_if(f.begin(), f.end(), ::isspace), f.end());
      if (!f.empty()) t.families.push_back(f);
    }
  }
  return t;
}

double reduce(const std::vector<double>& v, const std::string& how) {
  if (how == "mean") {
    double s = 0.0;
    for (double x : v) s += x;
    return s / v.size();
  }
  if (how == "min") return *std::min_element(v.begin(), v.end());
  if (how == "max") return *std::max_element(v.begin(), v.end());
  throw Error("verify: aggregate must be mean, min or max");
}

void check_compare(const Rows& rows, const YAML::Node& spec, CheckResult& res) {
  static const std::regex expr(R"(^\s*(\S+)\s*(<=|>=|==|!=|<|>)\s*(\S+)\s*$)");
  const std::string text = spec["compare"].as<std::string>();
  std::smatch m;
  require(std::regex_match(text, m, expr), "verify: malformed comparison '" + text + "'");
  const Term lhs = parse_term(m[1]), rhs = parse_term(m[3]);
  const std::string op = m[2];
  const double slack = spec["slack"] ? spec["slack"].as<double>() : 0.0;
  require(!(lhs.constant && rhs.constant), "verify: comparison between two constants");
  const bool by_family = !lhs.families.empty() || !rhs.families.empty();
  require(!by_family || ((lhs.constant || !lhs.families.empty()) &&
                         (rhs.constant || !rhs.families.empty())),
          "verify: mixing family-indexed and bare columns in '" + text + "'");
  const std::string aggregate = spec["aggregate"] ? spec["aggregate"].as<std::string>() : "";
  std::vector<std::string> match = string_list(spec["match"]);
  if (match.empty()) match = aggregate.empty() ? std::vector<std::string>{"n", "noise", "seed"}
                                               : std::vector<std::string>{"n", "noise"};

  const std::vector<std::size_t> sel = select(rows, spec, res);
  // group -> family -> column -> values
  std::map<std::string, std::map<std::string, std::map<std::string, std::vector<double>>>> g;
  std::map<std::string, std::string> label;
  for (std::size_t i : sel) {
    std::string key, lab;
    if (by_family || !aggregate.empty()) {
      for (const auto& c : match) {
        key += rows.text(i, c) + "|";
        if (!rows.text(i, c).empty()) lab += c + "=" + rows.text(i, c) + " ";
      }
    } else {
      key = std::to_string(i);
      lab = "row " + std::to_string(i + 2) + " (" + rows.family(i) + ") ";
    }
    label[key] = lab;
    for (const Term* t : {&lhs, &rhs})
      if (!t->constant)
        if (auto v = rows.number(i, t->column)) g[key][by_family ? rows.family(i) : ""][t->column].push_back(*v);
  }

  auto side = [&](const Term& t, const std::map<std::string, std::map<std::string, std::vector<double>>>& fams)
      -> std::optional<std::vector<std::pair<std::string, double>>> {
    std::vector<std::pair<std::string, double>> out;
    if (t.constant) return std::vector<std::pair<std::string, double>>{{t.text, *t.constant}};
    const std::vector<std::string> want = by_family ? t.families : std::vector<std::string>{""};
    for (const auto& f : want) {
      auto it = fams.find(f);
      if (it == fams.end()) return std::nullopt;
      auto jt = it->second.find(t.column);
      if (jt == it->second.end() || jt->second.empty()) return std::nullopt;
      const double v = aggregate.empty() ? jt->second.front() : reduce(jt->second, aggregate);
      out.emplace_back(f.empty() ? t.column : t.column + "[" + f + "]", v);
    }
    return out;
  };

  for (const auto& [key, fams] : g) {
    const auto l = side(lhs, fams), r = side(rhs, fams);
    if (!l || !r) continue;
    for (const auto& [ln, lv] : *l)
      for (const auto& [rn, rv] : *r) {
        ++res.compared;
        if (!holds(lv, op, rv, slack)) {
          res.passed = false;
          if (res.detail.size() < kMaxDetail)
            res.detail.push_back(label[key] + ": " + ln + "=" + fmt(lv) + " " + op + " " + rn +
                                 "=" + fmt(rv) + " fails (diff " + fmt(lv - rv) + ")");
        }
      }
  }
}

void check_table(const Rows& rows, const YAML::Node& spec, const std::filesystem::path& base,
                 CheckResult& res) {
  std::filesystem::path p = spec["table"].as<std::string>();
  if (p.is_relative() && !std::filesystem::exists(p)) p = base / p;
  const CsvTable tab = read_csv_file(p);
  const std::string col = spec["column"].as<std::string>();
  const std::string tcol = spec["table_column"] ? spec["table_column"].as<std::string>() : col;
  require(spec["tol"].IsDefined(), "verify: table checks need a tol");
  const double tol = spec["tol"].as<double>();
  const std::size_t fam = tab.column("family"), n = tab.column("n"), v = tab.column(tcol);
  std::map<std::tuple<std::string, std::string, long>, double> ref;
  for (const auto& row : tab.rows)
    if (auto x = to_number(row[v]))
      ref[{row[fam], row[n], std::lround(std::stod(row[0]) * 1e4)}] = *x;
  for (std::size_t i : select(rows, spec, res)) {
    const auto noise = rows.number(i, "noise");
    const auto val = rows.number(i, col);
    if (!noise || !val) continue;
    auto it = ref.find({rows.family(i), rows.text(i, "n"), std::lround(*noise * 1e4)});
    if (it == ref.end()) continue;
    ++res.compared;
    if (std::abs(*val - it->second) > tol) {
      res.passed = false;
      if (res.detail.size() < kMaxDetail)
        res.detail.push_back(rows.family(i) + " n=" + rows.text(i, "n") + " noise=" +
                             rows.text(i, "noise") + ": " + col + "=" + fmt(*val) + " table=" +
                             fmt(it->second) + " diff " + fmt(*val - it->second) + " > " + fmt(tol));
    }
  }
}

void check_monotone(const Rows& rows, const YAML::Node& spec, CheckResult& res) {
  const std::string col = spec["monotone"].as<std::string>();
  const std::string by = spec["by"] ? spec["by"].as<std::string>() : "n";
  const std::string dir = spec["direction"] ? spec["direction"].as<std::string>() : "increasing";
  require(dir == "increasing" || dir == "decreasing", "verify: direction must be increasing or decreasing");
  const double slack = spec["slack"] ? spec["slack"].as<double>() : 0.0;
  std::vector<std::string> group = string_list(spec["group"]);
  if (group.empty()) {
    // Every other grid coordinate, so that one series varies only along `by`.
    const bool by_noise = by == "noise" || by == "gamma" || by == "sigma" || by == "epsilon" || by == "b";
    group = {"family", "metric"};
    if (by != "n" && by != "j") group.push_back("n");
    if (!by_noise) group.push_back("noise");
    if (by != "seed") group.push_back("seed");
  }
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  for (std::size_t i : select(rows, spec, res)) {
    const auto x = rows.number(i, by), y = rows.number(i, col);
    if (!x || !y) continue;
    std::string key;
    for (const auto& c : group) key += c + "=" + rows.text(i, c) + " ";
    series[key].emplace_back(*x, *y);
  }
  for (auto& [key, pts] : series) {
    std::sort(pts.begin(), pts.end());
    for (std::size_t k = 1; k < pts.size(); ++k) {
      ++res.compared;
      const double step = pts[k].second - pts[k - 1].second;
      const bool ok = dir == "increasing" ? step >= -slack : step <= slack;
      if (!ok) {
        res.passed = false;
        if (res.detail.size() < kMaxDetail)
          res.detail.push_back(key + by + " " + fmt(pts[k - 1].first) + " -> " + fmt(pts[k].first) +
                               ": " + col + " " + fmt(pts[k - 1].second) + " -> " +
                               fmt(pts[k].second) + " is not " + dir);
      }
    }
  }
}

void check_range(const Rows& rows, const YAML::Node& spec, CheckResult& res) {
  const std::string col = spec["range"].as<std::string>();
  require(spec["min"] || spec["max"], "verify: range checks need min or max");
  const double inf = std::numeric_limits<double>::infinity();
  const double lo = spec["min"] ? spec["min"].as<double>() : -inf;
  const double hi = spec["max"] ? spec["max"].as<double>() : inf;
  for (std::size_t i : select(rows, spec, res)) {
    const auto v = rows.number(i, col);
    if (!v) continue;
    ++res.compared;
    if (*v < lo || *v > hi) {
      res.passed = false;
      if (res.detail.size() < kMaxDetail)
        res.detail.push_back("row " + std::to_string(i + 2) + " (" + rows.family(i) + "): " + col +
                             "=" + fmt(*v) + " outside [" + fmt(lo) + ", " + fmt(hi) + "]");
    }
  }
}

}  // namespace

bool VerifyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void VerifyReport::print(std::ostream& os) const {
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.compared << " compared)\n";
    for (const auto& d : c.detail) os << "    " << d << "\n";
  }
}

VerifyReport verify(const std::filesystem::path& results, const std::filesystem::path& expectations) {
  const Rows rows(read_csv_file(results));
  YAML::Node doc;
  try {
    doc = YAML::LoadFile(expectations.string());
  } catch (const YAML::Exception& e) {
    throw Error(std::string("verify: ") + e.what());
  }
  const YAML::Node list = doc.IsMap() ? doc["checks"] : doc;
  require(list && list.IsSequence(), "verify: expectations must be a list of checks");
  VerifyReport report;
  for (const YAML::Node& spec : list) {
    require(spec.IsMap(), "verify: each check must be a mapping");
    CheckResult res;
    res.passed = true;
    res.name = spec["name"] ? spec["name"].as<std::string>() : "check " + std::to_string(report.checks.size() + 1);
    try {
      if (spec["compare"]) check_compare(rows, spec, res);
      else if (spec["table"]) check_table(rows, spec, expectations.parent_path(), res);
      else if (spec["monotone"]) check_monotone(rows, spec, res);
      else if (spec["range"]) check_range(rows, spec, res);
      else throw Error("verify: check '" + res.name + "' has no compare/table/monotone/range key");
    } catch (const YAML::Exception& e) {
      throw Error("verify: check '" + res.name + "': " + e.what());
    }
    if (res.compared == 0) {
      res.passed = false;
      res.detail.push_back("no rows matched");
    }
    report.checks.push_back(std::move(res));
  }
  return report;
}

}  // namespace spingkp::bench
