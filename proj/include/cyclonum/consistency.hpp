#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cyclonum/characters.hpp"
#include "cyclonum/closed_forms.hpp"
#include "cyclonum/digraph.hpp"
#include "cyclonum/errors.hpp"
#include "cyclonum/field.hpp"
#include "cyclonum/oracle.hpp"
#include "cyclonum/prime_ell.hpp"
#include "cyclonum/properties.hpp"
#include "cyclonum/rank.hpp"

namespace cyclonum {

enum class Method { OracleCoset, OracleNorm, Rank, Characters, Digraph, Ell, Closed };

inline constexpr std::array kAllMethods{Method::OracleCoset, Method::OracleNorm, Method::Rank, Method::Characters,
                                        Method::Digraph,     Method::Ell,        Method::Closed};

constexpr std::string_view to_string(Method m) {
  switch (m) {
    case Method::OracleCoset: return "oracle-coset";
    case Method::OracleNorm: return "oracle-norm";
    case Method::Rank: return "rank";
    case Method::Characters: return "chars";
    case Method::Digraph: return "digraph";
    case Method::Ell: return "ell";
    case Method::Closed: return "closed";
  }
  return "?";
}

/// Accepts every method name, plus "oracle" (both oracles) and "all".
inline std::vector<Method> parse_methods(std::string_view name) {
  if (name == "all") return {kAllMethods.begin(), kAllMethods.end()};
  if (name == "oracle") return {Method::OracleCoset, Method::OracleNorm};
  for (auto m : kAllMethods)
    if (to_string(m) == name) return {m};
  fail(ErrorKind::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

struct Caps {
  std::uint64_t enumeration = kDefaultFieldCap;
  std::uint64_t rank = kDefaultRankCap;
  std::uint64_t poly = kDefaultPolyCap;
  double precision = kDefaultPrecisionBudget;
};

enum class Applicability { Applicable, Inapplicable, CapExceeded };

struct MethodStatus {
  Applicability state = Applicability::Applicable;
  std::string reason;
  bool applicable() const { return state == Applicability::Applicable; }
};

inline MethodStatus applicability(const ExtensionContext& ctx, Method m, const Caps& caps) {
  const auto q = ctx.q();
  const unsigned r = ctx.r();
  switch (m) {
    case Method::OracleCoset:
    case Method::OracleNorm: return {};
    case Method::Rank:
      if (ctx.k() > caps.rank) return {Applicability::CapExceeded, "k = " + std::to_string(ctx.k()) + " > rank cap"};
      return {};
    case Method::Characters: {
      const double m1 = static_cast<double>(q - 1);
      if (m1 * m1 * std::pow(static_cast<double>(q), r / 2.0) > caps.precision)
        return {Applicability::CapExceeded, "(q-1)^2 q^{r/2} exceeds the precision budget"};
      return {};
    }
    case Method::Digraph:
      if (q < 3) return {Applicability::Inapplicable, "needs q >= 3"};
      return {};
    case Method::Ell: {
      if (r < 3 || !is_prime(r)) return {Applicability::Inapplicable, "needs r an odd prime"};
      const auto count = checked_pow(q, r - 2);
      if (!count || *count > caps.poly) return {Applicability::CapExceeded, "q^{r-2} exceeds the polynomial cap"};
      return {};
    }
    case Method::Closed:
      if (!closed_form_applies(ctx)) return {Applicability::Inapplicable, "needs q = 2, q = 3 or r = 2"};
      return {};
  }
  return {Applicability::Inapplicable, "unknown method"};
}

/// Evaluates any method on one context, caching per-context work
/// (oracle tables, Jacobi sums, the digraph and its walk row).
class MethodRunner {
 public:
  MethodRunner(const ExtensionContext& ctx, Caps caps) : ctx_(ctx), caps_(caps) {}

  const ExtensionContext& context() const { return ctx_; }
  const Caps& caps() const { return caps_; }

  const CycloTable& table(TableMethod m) {
    auto& slot = m == TableMethod::Coset ? coset_ : norm_;
    if (!slot) slot = std::make_unique<CycloTable>(full_table(ctx_, m));
    return *slot;
  }

  std::uint64_t compute(Method m, CycloParams params) {
    validate(ctx_, params);
    const auto status = applicability(ctx_, m, caps_);
    if (status.state == Applicability::CapExceeded) fail(ErrorKind::SizeCapExceeded, status.reason);
    if (status.state == Applicability::Inapplicable) fail(ErrorKind::MethodInapplicable, status.reason);
    switch (m) {
      case Method::OracleCoset: return table(TableMethod::Coset).values[params.a][params.b];
      case Method::OracleNorm: return table(TableMethod::Norm).values[params.a][params.b];
      case Method::Rank: return cyclotomic_by_rank(ctx_, params, caps_.rank);
      case Method::Characters:
        if (!jacobi_) jacobi_ = std::make_unique<JacobiCache>(ctx_);
        return cyclotomic_by_characters(ctx_, *jacobi_, params, caps_.precision);
      case Method::Digraph:
        if (!graph_) {
          graph_ = std::make_unique<CayleyGraph>(CayleyGraph::build(ctx_, VertexOrdering::Canonical));
          const auto one = ctx_.subfield().one();
          walks_ = walk_vector(*graph_, ctx_.r(), graph_->index(one, one));
        }
        return cyclotomic_from_walks(ctx_, *graph_, walks_, params);
      case Method::Ell: return cyclotomic_by_ell(ctx_, params, caps_.poly).total();
      case Method::Closed: return closed_value(ctx_, params);
    }
    fail(ErrorKind::MethodInapplicable, "unknown method");
  }

 private:
  const ExtensionContext& ctx_;
  Caps caps_;
  std::unique_ptr<CycloTable> coset_, norm_;
  std::unique_ptr<JacobiCache> jacobi_;
  std::unique_ptr<CayleyGraph> graph_;
  std::vector<BigInt> walks_;
};

struct Triple {
  std::uint32_t p = 0;
  unsigned n = 0, r = 0;
  std::optional<std::uint64_t> norm_target;

  friend bool operator==(const Triple&, const Triple&) = default;
};

inline std::string to_string(const Triple& t) {
  std::string s = "(" + std::to_string(t.p) + "," + std::to_string(t.n) + "," + std::to_string(t.r);
  if (t.norm_target) s += "; norm target " + std::to_string(*t.norm_target);
  return s + ")";
}

struct SweepConfig {
  std::vector<Triple> triples;
  Caps caps;
  std::vector<Method> methods;

  /// q in {2,3,4,5,7,8,9}, r in {2,3,4}, plus (3,1,5) and (5,1,5); every method.
  static SweepConfig defaults() {
    SweepConfig c;
    for (unsigned r = 2; r <= 4; ++r)
      for (auto [p, n] : {std::pair<std::uint32_t, unsigned>{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}})
        c.triples.push_back({p, n, r, std::nullopt});
    c.triples.push_back({3, 1, 5, std::nullopt});
    c.triples.push_back({5, 1, 5, std::nullopt});
    c.methods.assign(kAllMethods.begin(), kAllMethods.end());
    return c;
  }
};

namespace detail {
inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

inline std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty())
    fail(ErrorKind::InvalidArgument, "bad " + std::string(what) + " '" + std::string(text) + "'");
  return value;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (std::size_t start = 0;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}
}  // namespace detail

/// Flat `key = value` lines; `#` starts a comment. Keys: triple (repeatable,
/// `p,n,r` or `p,n,r,t`), methods (comma list), enumeration_cap, rank_cap,
/// poly_cap, precision_budget. Caps and methods default as in defaults(); a
/// config with no triple lines sweeps the default grid.
inline SweepConfig parse_config(std::istream& in) {
  SweepConfig config;
  const auto defaults = SweepConfig::defaults();
  config.methods = defaults.methods;
  std::string line;
  unsigned line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text(line);
    text = detail::trim(text.substr(0, text.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    const auto where = " on line " + std::to_string(line_no);
    if (eq == std::string_view::npos) fail(ErrorKind::InvalidArgument, "expected key = value" + where);
    const auto key = detail::trim(text.substr(0, eq));
    const auto value = detail::trim(text.substr(eq + 1));
    if (key == "triple") {
      const auto fields = detail::split(value, ',');
      if (fields.size() != 3 && fields.size() != 4) fail(ErrorKind::InvalidArgument, "triple needs 3 or 4 fields" + where);
      Triple t{static_cast<std::uint32_t>(detail::parse_u64(fields[0], "p")),
               static_cast<unsigned>(detail::parse_u64(fields[1], "n")),
               static_cast<unsigned>(detail::parse_u64(fields[2], "r")), std::nullopt};
      if (fields.size() == 4) t.norm_target = detail::parse_u64(fields[3], "norm target");
      if (!is_prime(t.p) || t.n < 1 || t.r < 2) fail(ErrorKind::InvalidArgument, "invalid triple" + where);
      config.triples.push_back(t);
    } else if (key == "methods") {
      config.methods.clear();
      if (value.empty() || value == "none") continue;
      for (auto name : detail::split(value, ','))
        for (auto m : parse_methods(name))
          if (std::find(config.methods.begin(), config.methods.end(), m) == config.methods.end())
            config.methods.push_back(m);
    } else if (key == "enumeration_cap") {
      config.caps.enumeration = detail::parse_u64(value, "enumeration_cap");
    } else if (key == "rank_cap") {
      config.caps.rank = detail::parse_u64(value, "rank_cap");
    } else if (key == "poly_cap") {
      config.caps.poly = detail::parse_u64(value, "poly_cap");
    } else if (key == "precision_budget") {
      config.caps.precision = static_cast<double>(detail::parse_u64(value, "precision_budget"));
    } else {
      fail(ErrorKind::InvalidArgument, "unknown key '" + std::string(key) + "'" + where);
    }
  }
  if (config.caps.enumeration == 0 || config.caps.rank == 0 || config.caps.poly == 0 || config.caps.precision <= 0)
    fail(ErrorKind::InvalidArgument, "caps must be positive");
  if (config.triples.empty()) config.triples = defaults.triples;
  return config;
}

inline SweepConfig parse_config(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_config(in);
}

struct MethodOutcome {
  Method method{};
  std::optional<std::uint64_t> value;
  std::string error;  // "<kind>: <message>" when the method threw
};

/// One cell of one context.
struct MethodReport {
  CycloParams cell;
  std::uint64_t reference = 0;  // count_by_norm
  std::vector<MethodOutcome> outcomes;
  TheoremVerdict verdict;
  bool agreement = true;  // every computed value equals the reference and no method threw
};

struct SkippedMethod {
  Method method{};
  MethodStatus status;
};

struct NamedSuite {
  std::string module;
  PropertySuite results;
};

struct ContextReport {
  Triple triple;
  std::string build_error;
  std::uint64_t q = 0, k = 0;
  std::vector<std::uint32_t> modulus;
  FieldElement omega, omega_k;
  std::vector<Method> ran;
  std::vector<SkippedMethod> skipped;
  std::vector<MethodReport> cells;
  std::vector<NamedSuite> properties;

  bool ok() const {
    if (!build_error.empty()) return false;
    for (const auto& c : cells)
      if (!c.agreement || !c.verdict.consistent) return false;
    for (const auto& s : properties)
      if (!all_passed(s.results)) return false;
    return true;
  }

  /// Description of the first failing item, if any.
  std::optional<std::string> first_counterexample() const {
    const auto where = to_string(triple);
    if (!build_error.empty()) return where + ": " + build_error;
    for (const auto& c : cells) {
      const auto cell = where + " cell " + cell_text(c.cell.a, c.cell.b);
      if (!c.agreement) {
        std::string detail = cell + ": reference " + std::to_string(c.reference);
        for (const auto& o : c.outcomes)
          detail += ", " + std::string(to_string(o.method)) + " " + (o.value ? std::to_string(*o.value) : o.error);
        return detail;
      }
      if (!c.verdict.consistent) return cell + ": " + c.verdict.violation;
    }
    for (const auto& s : properties)
      for (const auto& p : s.results)
        if (!p.passed) return where + " " + s.module + "/" + p.name + ": " + p.counterexample;
    return std::nullopt;
  }
};

struct SweepReport {
  std::vector<Method> methods;
  Caps caps;
  std::vector<ContextReport> contexts;

  bool ok() const {
    for (const auto& c : contexts)
      if (!c.ok()) return false;
    return true;
  }
  std::optional<std::string> first_counterexample() const {
    for (const auto& c : contexts)
      if (auto ce = c.first_counterexample()) return ce;
    return std::nullopt;
  }
};

namespace detail {
template <class Fn>
void run_suite(ContextReport& report, std::string module, Fn&& fn) {
  try {
    report.properties.push_back({std::move(module), fn()});
  } catch (const Error& e) {
    PropertyResult failed{"suite"};
    failed.expect(false, [&] { return std::string(e.what()); });
    report.properties.push_back({std::move(module), {failed}});
  }
}

inline bool enabled(const std::vector<Method>& methods, Method m) {
  return std::find(methods.begin(), methods.end(), m) != methods.end();
}
}  // namespace detail

/// Runs every enabled and applicable method on every cell of one context,
/// plus the theorem classification and the property suites of those methods.
inline ContextReport run_context(const Triple& triple, const std::vector<Method>& methods, const Caps& caps) {
  ContextReport report;
  report.triple = triple;
  std::optional<ExtensionContext> built;
  try {
    built.emplace(ExtensionContext::build(triple.p, triple.n, triple.r, triple.norm_target, caps.enumeration));
  } catch (const Error& e) {
    report.build_error = std::string(e.what());
    return report;
  }
  const auto& ctx = *built;
  report.q = ctx.q();
  report.k = ctx.k();
  report.modulus = ctx.modulus();
  report.omega = ctx.omega();
  report.omega_k = ctx.pow(ctx.omega(), ctx.k());

  for (auto m : methods) {
    const auto status = applicability(ctx, m, caps);
    if (status.applicable()) report.ran.push_back(m);
    else report.skipped.push_back({m, status});
  }

  MethodRunner runner(ctx, caps);
  const auto& reference = runner.table(TableMethod::Norm);
  const auto verdicts = evaluate_main_theorem(ctx, reference);
  const auto q = ctx.q();
  for (std::uint64_t a = 0; a + 1 < q; ++a)
    for (std::uint64_t b = 0; b + 1 < q; ++b) {
      MethodReport cell;
      cell.cell = {a, b};
      cell.reference = reference.values[a][b];
      cell.verdict = verdicts[a * (q - 1) + b];
      for (auto m : report.ran) {
        MethodOutcome outcome{m, std::nullopt, {}};
        try {
          outcome.value = runner.compute(m, cell.cell);
          if (*outcome.value != cell.reference) cell.agreement = false;
        } catch (const Error& e) {
          outcome.error = std::string(e.what());
          cell.agreement = false;
        }
        cell.outcomes.push_back(std::move(outcome));
      }
      report.cells.push_back(std::move(cell));
    }

  const auto ran = [&](Method m) { return detail::enabled(report.ran, m); };
  detail::run_suite(report, "ff_core", [&] { return ff_core_properties(ctx); });
  if (ran(Method::OracleCoset) || ran(Method::OracleNorm))
    detail::run_suite(report, "oracle", [&] {
      return oracle_properties(ctx, runner.table(TableMethod::Coset), runner.table(TableMethod::Norm));
    });
  if (ran(Method::Characters))
    detail::run_suite(report, "char_method", [&] { return character_properties(ctx, reference, caps.precision); });
  if (ran(Method::Digraph)) detail::run_suite(report, "digraph", [&] { return digraph_properties(ctx, reference); });
  if (ran(Method::Ell))
    detail::run_suite(report, "prime_ell", [&] { return prime_ell_properties(ctx, reference, caps.poly); });
  if (ran(Method::Closed)) detail::run_suite(report, "closed_forms", [&] { return closed_form_properties(ctx); });
  return report;
}

/// Contexts in config order, cells row-major. An empty method list gives an empty report.
inline SweepReport run_sweep(const SweepConfig& config) {
  SweepReport report{config.methods, config.caps, {}};
  if (config.methods.empty()) return report;
  for (const auto& t : config.triples) report.contexts.push_back(run_context(t, config.methods, config.caps));
  return report;
}

}  // namespace cyclonum
