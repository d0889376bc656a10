#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cyclonum/consistency.hpp"
#include "cyclonum/report.hpp"

namespace cyclonum::cli {

enum ExitCode : int {
  kOk = 0,
  kCounterexample = 1,
  kInapplicable = 2,
  kCapExceeded = 3,
  kDisagreement = 4,
  kUsage = 64,
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SizeCapExceeded:
    case ErrorKind::PrecisionBudgetExceeded: return kCapExceeded;
    case ErrorKind::MethodInapplicable:
    case ErrorKind::NaturalOrderingUnavailable: return kInapplicable;
    case ErrorKind::InvalidArgument:
    case ErrorKind::OutOfRange: return kUsage;
    default: return kCounterexample;
  }
}

/// CYCLONUM_CAP replaces the q^r enumeration cap when set.
inline std::uint64_t enumeration_cap(std::uint64_t fallback) {
  const char* env = std::getenv("CYCLONUM_CAP");
  if (env == nullptr || *env == '\0') return fallback;
  return detail::parse_u64(env, "CYCLONUM_CAP");
}

struct FieldArgs {
  std::uint32_t p = 0;
  unsigned n = 1, r = 0;
  std::optional<std::uint64_t> norm_target;

  void add_to(CLI::App* cmd) {
    cmd->add_option("-p", p, "characteristic")->required();
    cmd->add_option("-n", n, "q = p^n")->capture_default_str();
    cmd->add_option("-r", r, "extension degree over F_q")->required();
    cmd->add_option("--norm-target", norm_target, "pin omega so that omega^k = g_t");
  }
  ExtensionContext build() const {
    if (!is_prime(p)) fail(ErrorKind::InvalidArgument, "p must be prime");
    if (n < 1 || r < 2) fail(ErrorKind::InvalidArgument, "need n >= 1 and r >= 2");
    return ExtensionContext::build(p, n, r, norm_target, enumeration_cap(kDefaultFieldCap));
  }
  Json request(const std::string& command) const {
    Json j;
    j["command"] = command;
    j["p"] = p;
    j["n"] = n;
    j["r"] = r;
    j["norm_target"] = norm_target ? Json(*norm_target) : Json(nullptr);
    return j;
  }
};

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) fail(ErrorKind::InvalidArgument, "cannot write " + path);
  file << text;
}

inline std::int64_t elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
}

/// Per-method intermediate quantities worth printing next to the value.
inline Json method_details(const ExtensionContext& ctx, Method m, CycloParams params, const Caps& caps) {
  Json d = Json::object();
  switch (m) {
    case Method::Rank: {
      const auto rank = rank_ffield(ctx, build_C(ctx, params, caps.rank));
      d["matrix_size"] = ctx.k();
      d["rank"] = rank;
      break;
    }
    case Method::Characters: {
      const JacobiCache cache(ctx);
      const auto split = decompose_main_error(ctx, cache, params, caps.precision);
      d["main_numerator"] = split.main_numerator;
      d["main_denominator"] = split.main_denominator;
      d["error_term"] = round_significant(split.error);
      break;
    }
    case Method::Digraph: {
      const auto graph = CayleyGraph::build(ctx, VertexOrdering::Canonical);
      const auto [u, v] = digraph_target(ctx, params);
      d["leading_term"] = digraph_leading_term(ctx.q(), ctx.r()).str();
      d["walk_count"] = W(ctx, graph, u, v, ctx.r()).str();
      break;
    }
    case Method::Ell: {
      const auto e = cyclotomic_by_ell(ctx, params, caps.poly);
      d["t_count"] = e.t_count;
      d["i_count"] = e.i_count;
      break;
    }
    case Method::Closed:
      d["formula"] = ctx.q() == 2 ? "q=2" : ctx.q() == 3 ? "q=3" : "r=2";
      break;
    default: break;
  }
  return d;
}

inline int cmd_compute(const FieldArgs& field, CycloParams params, const std::string& method_name, std::ostream& out,
                       std::ostream& err) {
  const auto methods = parse_methods(method_name);
  const auto ctx = field.build();
  validate(ctx, params);
  Caps caps;
  caps.enumeration = enumeration_cap(caps.enumeration);
  MethodRunner runner(ctx, caps);

  Json record;
  record["schema_version"] = kSchemaVersion;
  record["context"] = context_json(ctx);
  record["request"] = field.request("compute");
  record["request"]["a"] = params.a;
  record["request"]["b"] = params.b;
  record["request"]["method"] = method_name;
  Json results = Json::array();
  Json timing = Json::object();

  const bool single = methods.size() == 1;
  int code = kOk;
  std::optional<std::uint64_t> first;
  bool agree = true;
  for (auto m : methods) {
    const std::string name(to_string(m));
    Json entry;
    entry["method"] = name;
    const auto status = applicability(ctx, m, caps);
    if (!status.applicable()) {
      entry["status"] = status.state == Applicability::CapExceeded ? "cap-exceeded" : "inapplicable";
      entry["reason"] = status.reason;
      if (single) code = status.state == Applicability::CapExceeded ? kCapExceeded : kInapplicable;
      results.push_back(std::move(entry));
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto value = runner.compute(m, params);
      entry["status"] = "ok";
      entry["value"] = value;
      entry["details"] = method_details(ctx, m, params, caps);
      if (first && *first != value) agree = false;
      if (!first) first = value;
    } catch (const Error& e) {
      entry["status"] = "error";
      entry["reason"] = e.what();
      if (single) code = exit_code_for(e.kind());
      else agree = false;
    }
    timing[name] = elapsed_ms(start);
    results.push_back(std::move(entry));
  }
  record["results"] = results;
  record["agreement"] = agree;
  if (first && agree) record["value"] = *first;
  record["timing_ms"] = timing;
  out << record.dump(2) << '\n';
  if (!agree) {
    err << "methods disagree\n";
    return kDisagreement;
  }
  return code;
}

inline int cmd_table(const FieldArgs& field, const std::string& method_name, const std::string& format,
                     const std::string& path, std::ostream& out) {
  auto methods = parse_methods(method_name == "oracle" ? "oracle-norm" : method_name);
  if (methods.size() != 1) fail(ErrorKind::InvalidArgument, "table takes a single method");
  const auto m = methods.front();
  const auto ctx = field.build();
  Caps caps;
  caps.enumeration = enumeration_cap(caps.enumeration);
  const auto status = applicability(ctx, m, caps);
  if (status.state == Applicability::CapExceeded) fail(ErrorKind::SizeCapExceeded, status.reason);
  if (status.state == Applicability::Inapplicable) fail(ErrorKind::MethodInapplicable, status.reason);

  const auto start = std::chrono::steady_clock::now();
  MethodRunner runner(ctx, caps);
  const auto q = ctx.q();
  std::vector<std::vector<std::uint64_t>> values(q - 1, std::vector<std::uint64_t>(q - 1));
  for (std::uint64_t a = 0; a + 1 < q; ++a)
    for (std::uint64_t b = 0; b + 1 < q; ++b) values[a][b] = runner.compute(m, {a, b});

  if (format == "csv") {
    emit(table_csv(values), path, out);
    return kOk;
  }
  Json record;
  record["schema_version"] = kSchemaVersion;
  record["context"] = context_json(ctx);
  record["request"] = field.request("table");
  record["request"]["method"] = std::string(to_string(m));
  record["values"] = values;
  record["timing_ms"] = {{std::string(to_string(m)), elapsed_ms(start)}};
  emit(record.dump(2) + "\n", path, out);
  return kOk;
}

inline std::string matrix_entry(const ExtensionContext& ctx, ElementIndex x, const std::string& entries) {
  if (entries == "index") return std::to_string(x.value);
  if (entries == "dlog") return x.value == 0 ? "-" : std::to_string(ctx.dlog(x));
  std::string s;
  for (auto c : ctx.unpack(x).coeffs) s += (s.empty() ? "" : ":") + std::to_string(c);
  return s;
}

inline int cmd_export(const FieldArgs& field, CycloParams params, const std::string& which,
                      const std::string& ordering, const std::string& entries, const std::string& path,
                      std::ostream& out) {
  const auto ctx = field.build();
  if (which == "A") {
    const auto graph =
        CayleyGraph::build(ctx, ordering == "natural" ? VertexOrdering::Natural : VertexOrdering::Canonical);
    emit(graph.adjacency_text(), path, out);
    return kOk;
  }
  validate(ctx, params);
  const auto matrix = build_C(ctx, params, kDefaultRankCap);
  std::string text = "# cyclotomic-matrix p=" + std::to_string(ctx.p()) + " n=" + std::to_string(ctx.n()) +
                     " r=" + std::to_string(ctx.r()) + " a=" + std::to_string(params.a) +
                     " b=" + std::to_string(params.b) + " size=" + std::to_string(matrix.size()) +
                     " entries=" + entries + "\n";
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = 0; j < matrix.size(); ++j) text += (j ? " " : "") + matrix_entry(ctx, matrix.at(i, j), entries);
    text += '\n';
  }
  emit(text, path, out);
  return kOk;
}

inline int cmd_verify(const std::string& config_path, const std::string& report_path, std::ostream& out,
                      std::ostream& err) {
  SweepConfig config;
  try {
    if (config_path.empty()) {
      config = SweepConfig::defaults();
    } else {
      std::ifstream in(config_path);
      if (!in) fail(ErrorKind::InvalidArgument, "cannot read " + config_path);
      config = parse_config(in);
    }
    config.caps.enumeration = enumeration_cap(config.caps.enumeration);
  } catch (const Error& e) {
    err << "malformed config: " << e.what() << '\n';
    return kUsage;
  }
  const auto report = run_sweep(config);
  emit(to_json(report).dump(2) + "\n", report_path, out);
  std::size_t cells = 0;
  for (const auto& c : report.contexts) cells += c.cells.size();
  err << "verify: " << report.contexts.size() << " contexts, " << cells << " cells, "
      << (report.ok() ? "all consistent" : "FAILED") << '\n';
  if (auto ce = report.first_counterexample()) {
    err << "counterexample: " << *ce << '\n';
    return kCounterexample;
  }
  return kOk;
}

/// Entry point; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cyclotomic numbers (a,b)_{q-1} over F_{q^r} by several independent methods", "cyclonum"};
  app.require_subcommand(1);

  FieldArgs field;
  CycloParams params;
  std::string method = "all", format = "csv", which = "A", ordering = "canonical", entries = "index";
  std::string output, config_path, report_path;

  auto* compute = app.add_subcommand("compute", "one cyclotomic number by one or all methods");
  field.add_to(compute);
  compute->add_option("-a", params.a, "coset of x")->required();
  compute->add_option("-b", params.b, "coset of x+1")->required();
  compute->add_option("--method", method, "oracle-coset|oracle-norm|oracle|rank|chars|digraph|ell|closed|all")
      ->capture_default_str();

  auto* table = app.add_subcommand("table", "the full (q-1)x(q-1) table");
  field.add_to(table);
  table->add_option("--method", method, "a single method (default oracle-norm)");
  table->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  table->add_option("-o,--output", output, "write to file instead of stdout");

  auto* exporter = app.add_subcommand("export-matrix", "the matrix C^(a,b) or the digraph adjacency matrix");
  field.add_to(exporter);
  exporter->add_option("-a", params.a, "for C");
  exporter->add_option("-b", params.b, "for C");
  exporter->add_option("--which", which, "C|A")->check(CLI::IsMember({"C", "A"}))->capture_default_str();
  exporter->add_option("--ordering", ordering, "canonical|natural (A only)")
      ->check(CLI::IsMember({"canonical", "natural"}))
      ->capture_default_str();
  exporter->add_option("--entries", entries, "index|dlog|coeffs (C only)")
      ->check(CLI::IsMember({"index", "dlog", "coeffs"}))
      ->capture_default_str();
  exporter->add_option("-o,--output", output, "write to file instead of stdout");

  auto* verify = app.add_subcommand("verify", "cross-method sweep with property suites and theorem verdicts");
  verify->add_option("config", config_path, "key = value config file (default grid when omitted)");
  verify->add_option("--report", report_path, "write the JSON report to a file instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (compute->parsed()) return cmd_compute(field, params, method, out, err);
    if (table->parsed()) return cmd_table(field, method == "all" ? "oracle-norm" : method, format, output, out);
    if (exporter->parsed()) return cmd_export(field, params, which, ordering, entries, output, out);
    return cmd_verify(config_path, report_path, out, err);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code_for(e.kind());
  }
}

}  // namespace cyclonum::cli
