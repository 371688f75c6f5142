// Copyright 2026 The cdsopt Authors
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


#include "cdsopt_cli/scenario_io.h"

#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "cdsopt/error.h"

namespace cdsopt::cli {

namespace {

std::string LineSuffix(const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  if (mark.is_null()) return "";
  return " (line " + std::to_string(mark.line + 1) + ")";
}

[[noreturn]] void Fail(const std::string& path, const YAML::Node& node,
                       const std::string& what) {
  throw Error(ErrorCode::kParse, path + ": " + what + LineSuffix(node));
}

std::string Join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void CheckKeys(const YAML::Node& node, const std::string& path,
               const std::set<std::string>& allowed) {
  if (!node.IsMap()) Fail(path.empty() ? "<root>" : path, node,
                          "expected a mapping");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key)) {
      Fail(Join(path, key), kv.first, "unknown key");
    }
  }
}

YAML::Node Require(const YAML::Node& parent, const std::string& path,
                   const std::string& key) {
  YAML::Node child = parent[key];
  if (!child) Fail(Join(path, key), parent, "missing field");
  return child;
}

template <typename T>
T Scalar(const YAML::Node& node, const std::string& path, const char* type) {
  if (!node.IsScalar()) Fail(path, node, std::string("expected ") + type);
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    Fail(path, node, std::string("expected ") + type + ", got '" +
                         node.Scalar() + "'");
  }
}

double Real(const YAML::Node& node, const std::string& path) {
  return Scalar<double>(node, path, "a number");
}

int Integer(const YAML::Node& node, const std::string& path) {
  return Scalar<int>(node, path, "an integer");
}

// A list of `n` numbers, or a single number repeated n times.
Vector RealList(const YAML::Node& node, const std::string& path, int n) {
  if (node.IsScalar()) return Vector::Constant(n, Real(node, path));
  if (!node.IsSequence()) Fail(path, node, "expected a list of numbers");
  if (static_cast<int>(node.size()) != n) {
    Fail(path, node, "expected " + std::to_string(n) + " entries, got " +
                         std::to_string(node.size()));
  }
  Vector v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = Real(node[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

std::vector<int> IntList(const YAML::Node& node, const std::string& path) {
  if (!node.IsSequence()) Fail(path, node, "expected a list of integers");
  std::vector<int> v;
  for (std::size_t i = 0; i < node.size(); ++i) {
    v.push_back(Integer(node[i], path + "[" + std::to_string(i) + "]"));
  }
  return v;
}

std::pair<int, int> Shape(const YAML::Node& node, const std::string& path) {
  CheckKeys(node, path, {"rows", "cols", "data"});
  const int rows = Integer(Require(node, path, "rows"), Join(path, "rows"));
  const int cols = Integer(Require(node, path, "cols"), Join(path, "cols"));
  if (rows < 0 || cols < 0) Fail(path, node, "negative dimension");
  const YAML::Node data = Require(node, path, "data");
  if (!data.IsSequence() ||
      static_cast<long>(data.size()) != static_cast<long>(rows) * cols) {
    Fail(Join(path, "data"), data,
         "expected " + std::to_string(rows * cols) + " row-major entries");
  }
  return {rows, cols};
}

Matrix RealMatrix(const YAML::Node& node, const std::string& path) {
  const auto [rows, cols] = Shape(node, path);
  const YAML::Node data = node["data"];
  Matrix a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      a(i, j) = Real(data[i * cols + j],
                     Join(path, "data") + "[" + std::to_string(i * cols + j) +
                         "]");
    }
  }
  return a;
}

IntMatrix IntegerMatrix(const YAML::Node& node, const std::string& path) {
  const auto [rows, cols] = Shape(node, path);
  const YAML::Node data = node["data"];
  IntMatrix a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      a(i, j) = Integer(data[i * cols + j],
                        Join(path, "data") + "[" +
                            std::to_string(i * cols + j) + "]");
    }
  }
  return a;
}

// Maps an invariant failure reported by Scenario::Validate back to the
// document location.
[[noreturn]] void RethrowInvariant(const Error& e, const YAML::Node& root) {
  const std::string message = e.what();
  const std::size_t colon = message.find(':');
  std::string field = message.substr(0, colon);
  static const std::set<std::string> kFleet = {
      "m", "a", "b", "theta_ambient", "theta_lo", "theta_hi",
      "delta", "c", "x0"};
  if (kFleet.count(field)) field = "fleet." + field;
  YAML::Node node = root;
  std::stringstream parts(field);
  std::string part;
  while (std::getline(parts, part, '.')) {
    YAML::Node next = node[part];
    if (!next) break;
    node = next;
  }
  const std::string rest =
      colon == std::string::npos ? message : message.substr(colon + 2);
  throw Error(ErrorCode::kParse, field + ": " + rest + LineSuffix(node));
}

Scenario FromNode(const YAML::Node& root) {
  CheckKeys(root, "", {"schema", "step_minutes", "num_steps", "fleet",
                       "case", "transient"});
  const YAML::Node schema = Require(root, "", "schema");
  if (Scalar<std::string>(schema, "schema", "a string") != kScenarioSchema) {
    Fail("schema", schema,
         std::string("unsupported schema, expected ") + kScenarioSchema);
  }
  Scenario s;
  if (root["step_minutes"]) {
    s.step_minutes = Real(root["step_minutes"], "step_minutes");
  }
  if (root["num_steps"]) s.num_steps = Integer(root["num_steps"], "num_steps");
  if (s.num_steps < 1) Fail("num_steps", root["num_steps"], "must be positive");

  const YAML::Node fleet = Require(root, "", "fleet");
  CheckKeys(fleet, "fleet", {"m", "a", "b", "theta_ambient", "theta_lo",
                             "theta_hi", "delta", "c", "x0"});
  EtpParams& p = s.params;
  p.m = Integer(Require(fleet, "fleet", "m"), "fleet.m");
  if (p.m < 1) Fail("fleet.m", fleet["m"], "must be positive");
  p.a = RealMatrix(Require(fleet, "fleet", "a"), "fleet.a");
  if (p.a.rows() != p.m || p.a.cols() != p.m) {
    Fail("fleet.a", fleet["a"], "must be m x m");
  }
  auto list = [&](const char* key) {
    return RealList(Require(fleet, "fleet", key), Join("fleet", key), p.m);
  };
  p.b = list("b");
  p.theta_ambient = list("theta_ambient");
  p.theta_lo = list("theta_lo");
  p.theta_hi = list("theta_hi");
  p.delta = list("delta");
  p.c = list("c");
  p.x0 = list("x0");

  const YAML::Node kase = Require(root, "", "case");
  if (!kase.IsMap()) Fail("case", kase, "expected a mapping");
  const std::string type =
      Scalar<std::string>(Require(kase, "case", "type"), "case.type",
                          "a string");
  if (type == "target_band") {
    CheckKeys(kase, "case", {"type", "y_lo", "y_hi"});
    TargetBandCase band;
    band.y_lo = RealList(Require(kase, "case", "y_lo"), "case.y_lo",
                         s.num_steps);
    band.y_hi = RealList(Require(kase, "case", "y_hi"), "case.y_hi",
                         s.num_steps);
    s.problem = std::move(band);
  } else if (type == "tu") {
    CheckKeys(kase, "case", {"type", "q", "r", "z_bar"});
    TuCase tu;
    tu.q = IntegerMatrix(Require(kase, "case", "q"), "case.q");
    const std::vector<int> r = IntList(Require(kase, "case", "r"), "case.r");
    tu.r = Eigen::Map<const IntVector>(r.data(), r.size());
    if (kase["z_bar"]) tu.z_bar = IntList(kase["z_bar"], "case.z_bar");
    s.problem = std::move(tu);
  } else {
    Fail("case.type", kase["type"],
         "expected target_band or tu, got '" + type + "'");
  }

  if (const YAML::Node tr = root["transient"]) {
    CheckKeys(tr, "transient", {"xi", "members"});
    TransientSpec t;
    t.xi = RealList(Require(tr, "transient", "xi"), "transient.xi", p.m);
    t.members = IntList(Require(tr, "transient", "members"),
                        "transient.members");
    s.transient = std::move(t);
  }

  try {
    s.Validate();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInvalidParams) throw;
    RethrowInvariant(e, root);
  }
  return s;
}

Scenario Load(const std::function<YAML::Node()>& load) {
  YAML::Node root;
  try {
    root = load();
  } catch (const YAML::BadFile& e) {
    throw Error(ErrorCode::kParse, std::string("cannot open scenario: ") +
                                       e.what());
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kParse,
                "malformed YAML: " + e.msg + " (line " +
                    std::to_string(e.mark.line + 1) + ")");
  }
  try {
    return FromNode(root);
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kParse,
                "malformed YAML: " + e.msg + " (line " +
                    std::to_string(e.mark.line + 1) + ")");
  }
}

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string FlowVector(const Vector& v) {
  std::string s = "[";
  for (int i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += Num(v[i]);
  }
  return s + "]";
}

std::string FlowInts(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

}  // namespace

Scenario ParseScenario(const std::string& path) {
  return Load([&] { return YAML::LoadFile(path); });
}

Scenario ParseScenarioText(const std::string& text) {
  return Load([&] { return YAML::Load(text); });
}

void WriteScenario(const Scenario& s, std::ostream& out) {
  const EtpParams& p = s.params;
  out << "schema: " << kScenarioSchema << "\n";
  out << "step_minutes: " << Num(s.step_minutes) << "\n";
  out << "num_steps: " << s.num_steps << "\n";
  out << "fleet:\n";
  out << "  m: " << p.m << "\n";
  out << "  a:\n    rows: " << p.a.rows() << "\n    cols: " << p.a.cols()
      << "\n    data: [\n";
  for (int i = 0; i < p.a.rows(); ++i) {
    std::string row = FlowVector(p.a.row(i).transpose());
    row = row.substr(1, row.size() - 2);
    out << "      " << row << (i + 1 < p.a.rows() ? ",\n" : "]\n");
  }
  out << "  b: " << FlowVector(p.b) << "\n";
  out << "  theta_ambient: " << FlowVector(p.theta_ambient) << "\n";
  out << "  theta_lo: " << FlowVector(p.theta_lo) << "\n";
  out << "  theta_hi: " << FlowVector(p.theta_hi) << "\n";
  out << "  delta: " << FlowVector(p.delta) << "\n";
  out << "  c: " << FlowVector(p.c) << "\n";
  out << "  x0: " << FlowVector(p.x0) << "\n";
  out << "case:\n";
  if (const auto* band = std::get_if<TargetBandCase>(&s.problem)) {
    out << "  type: target_band\n";
    out << "  y_lo: " << FlowVector(band->y_lo) << "\n";
    out << "  y_hi: " << FlowVector(band->y_hi) << "\n";
  } else {
    const auto& tu = std::get<TuCase>(s.problem);
    out << "  type: tu\n";
    out << "  q:\n    rows: " << tu.q.rows() << "\n    cols: " << tu.q.cols()
        << "\n    data: [" << (tu.q.rows() == 0 ? "]" : "") << "\n";
    for (int i = 0; i < tu.q.rows(); ++i) {
      std::vector<int> row(tu.q.cols());
      for (int j = 0; j < tu.q.cols(); ++j) row[j] = tu.q(i, j);
      std::string text = FlowInts(row);
      text = text.substr(1, text.size() - 2);
      out << "      " << text << (i + 1 < tu.q.rows() ? ",\n" : "]\n");
    }
    out << "  r: "
        << FlowInts(std::vector<int>(tu.r.data(), tu.r.data() + tu.r.size()))
        << "\n";
    if (!tu.z_bar.empty()) out << "  z_bar: " << FlowInts(tu.z_bar) << "\n";
  }
  if (s.transient) {
    out << "transient:\n";
    out << "  xi: " << FlowVector(s.transient->xi) << "\n";
    out << "  members: " << FlowInts(s.transient->members) << "\n";
  }
}

}  // namespace cdsopt::cli
