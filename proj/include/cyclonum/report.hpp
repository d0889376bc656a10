#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclonum/consistency.hpp"
#include "cyclonum/field.hpp"

namespace cyclonum {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// x rounded to 12 significant digits (the only floating value ever emitted).
inline double round_significant(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline Json context_json(const ExtensionContext& ctx) {
  Json j;
  j["p"] = ctx.p();
  j["n"] = ctx.n();
  j["r"] = ctx.r();
  j["q"] = ctx.q();
  j["k"] = ctx.k();
  j["modulus"] = ctx.modulus();
  j["omega"] = ctx.omega().coeffs;
  j["omega_k"] = ctx.pow(ctx.omega(), ctx.k()).coeffs;
  j["omega_k_dlog"] = ctx.subfield().exponent(*ctx.subfield_code(ctx.pow(ctx.omega(), ctx.k())));
  j["norm_target"] = ctx.target_norm() ? Json(*ctx.target_norm()) : Json(nullptr);
  return j;
}

inline Json properties_json(const std::vector<NamedSuite>& suites) {
  Json out = Json::array();
  for (const auto& s : suites)
    for (const auto& p : s.results) {
      Json j;
      j["module"] = s.module;
      j["property"] = p.name;
      j["passed"] = p.passed;
      j["checked"] = p.checked;
      if (!p.passed) j["counterexample"] = p.counterexample;
      out.push_back(std::move(j));
    }
  return out;
}

inline Json to_json(const ContextReport& c) {
  Json j;
  j["triple"] = {{"p", c.triple.p}, {"n", c.triple.n}, {"r", c.triple.r}};
  j["triple"]["norm_target"] = c.triple.norm_target ? Json(*c.triple.norm_target) : Json(nullptr);
  if (!c.build_error.empty()) {
    j["build_error"] = c.build_error;
    j["ok"] = false;
    return j;
  }
  j["q"] = c.q;
  j["k"] = c.k;
  j["modulus"] = c.modulus;
  j["omega"] = c.omega.coeffs;
  j["omega_k"] = c.omega_k.coeffs;
  Json ran = Json::array();
  for (auto m : c.ran) ran.push_back(std::string(to_string(m)));
  j["methods_run"] = ran;
  Json skipped = Json::array();
  for (const auto& s : c.skipped)
    skipped.push_back({{"method", std::string(to_string(s.method))}, {"reason", s.status.reason}});
  j["methods_skipped"] = skipped;

  Json cells = Json::array();
  for (const auto& cell : c.cells) {
    Json cj;
    cj["a"] = cell.cell.a;
    cj["b"] = cell.cell.b;
    cj["reference"] = cell.reference;
    Json values = Json::object();
    for (const auto& o : cell.outcomes) {
      const std::string name(to_string(o.method));
      if (o.value) values[name] = *o.value;
      else values[name] = {{"error", o.error}};
    }
    cj["values"] = values;
    cj["agreement"] = cell.agreement;
    cj["bound"] = cell.verdict.bound.str();
    cj["relation"] = std::string(to_string(cell.verdict.relation));
    cj["clause"] = cell.verdict.clause;
    cj["consistent"] = cell.verdict.consistent;
    if (!cell.verdict.consistent) cj["violation"] = cell.verdict.violation;
    cells.push_back(std::move(cj));
  }
  j["cells"] = cells;
  j["properties"] = properties_json(c.properties);
  j["ok"] = c.ok();
  return j;
}

/// Deterministic: no timings, contexts in config order, cells row-major.
inline Json to_json(const SweepReport& report) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  Json methods = Json::array();
  for (auto m : report.methods) methods.push_back(std::string(to_string(m)));
  j["methods"] = methods;
  j["caps"] = {{"enumeration", report.caps.enumeration},
               {"rank", report.caps.rank},
               {"poly", report.caps.poly},
               {"precision_budget", static_cast<std::uint64_t>(report.caps.precision)}};
  Json contexts = Json::array();
  for (const auto& c : report.contexts) contexts.push_back(to_json(c));
  j["contexts"] = contexts;
  j["ok"] = report.ok();
  return j;
}

/// Header `b=0,...,b=q-2`, then one row per a.
inline std::string table_csv(const std::vector<std::vector<std::uint64_t>>& values) {
  std::string out;
  for (std::size_t b = 0; b < values.size(); ++b) out += (b ? ",b=" : "b=") + std::to_string(b);
  out += '\n';
  for (const auto& row : values) {
    for (std::size_t b = 0; b < row.size(); ++b) out += (b ? "," : "") + std::to_string(row[b]);
    out += '\n';
  }
  return out;
}

}  // namespace cyclonum
