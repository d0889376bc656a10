// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "cyclonum/cli.hpp"
#include "support.hpp"

using namespace cyclonum;

namespace {

// Pinned tolerances and limits.
constexpr double kUnitTolerance = 1e-9;
constexpr double kLiftTolerance = 1e-6;
constexpr double kBoundSlack = 1e-6;
constexpr double kExample1Seconds = 10.0;
constexpr double kClosedFormSeconds = 5.0;
constexpr double kSweepSeconds = 120.0;

struct Check {
  bool ok = true;
  std::uint64_t count = 0;
  std::string first_failure;

  void expect(bool cond, const std::function<std::string()>& describe) {
    ++count;
    if (!cond && ok) first_failure = describe();
    ok = ok && cond;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int failures = 0;

void report(int number, const std::string& title, const Check& check, const std::string& detail) {
  if (!check.ok) ++failures;
  std::printf("%s criterion %d: %s (%s)%s%s\n", check.ok ? "PASS" : "FAIL", number, title.c_str(), detail.c_str(),
              check.ok ? "" : " first failure: ", check.first_failure.c_str());
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string where(const Triple& t, std::uint64_t a, std::uint64_t b) {
  return to_string(t) + " cell (" + std::to_string(a) + "," + std::to_string(b) + ")";
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < e; ++i) out *= b;
  return out;
}

// ---------------------------------------------------------------- 1

void criterion_worked_example() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  const auto ctx = ExtensionContext::build(5, 1, 6, 2);
  c.expect(ctx.pack(ctx.pow(ctx.omega(), ctx.k())) == ctx.pack(ctx.from_integer(2)), [] { return "omega^k != 2"; });

  const auto natural = CayleyGraph::build(ctx, VertexOrdering::Natural);
  const auto& f = ctx.subfield();
  const JacobiCache cache(ctx);
  const std::pair<CycloParams, std::uint64_t> expected[] = {{{0, 0}, 932}, {{0, 1}, 980}};
  for (const auto& [cell, value] : expected) {
    const auto label = [&, cell = cell] { return "(" + std::to_string(cell.a) + "," + std::to_string(cell.b) + ")"; };
    c.expect(count_by_coset(ctx, cell) == value, [&] { return "coset " + label(); });
    c.expect(count_by_norm(ctx, cell) == value, [&] { return "norm " + label(); });
    c.expect(cyclotomic_by_digraph(ctx, natural, cell) == value, [&] { return "digraph " + label(); });
    c.expect(cyclotomic_by_characters(ctx, cache, cell) == value, [&] { return "characters " + label(); });
  }
  c.expect(W(ctx, natural, f.one(), f.one(), 6) == 90, [] { return "A^6 entry for (1,1)"; });
  c.expect(W(ctx, natural, f.one(), f.from_integer(2), 6) == 42, [] { return "A^6 entry for (1,2)"; });

  std::string printed = "# cayley-digraph q=5 ordering=natural vertices=16\n";
  for (const auto& row : reference::kA5) {
    for (std::size_t j = 0; j < row.size(); ++j) printed += (j ? " " : "") + std::to_string(row[j]);
    printed += '\n';
  }
  std::ostringstream out, err;
  const int code = cli::run({"export-matrix", "-p", "5", "-r", "2", "--which", "A", "--ordering", "natural"}, out, err);
  c.expect(code == 0 && out.str() == printed, [] { return "natural A_5 export differs from the printed matrix"; });

  const double elapsed = seconds_since(start);
  c.expect(elapsed < kExample1Seconds, [&] { return "runtime " + fmt(elapsed) + " s"; });
  report(1, "q=5 r=6 worked example", c, std::to_string(c.count) + " checks, " + fmt(elapsed) + " s");
}

// ---------------------------------------------------------------- 2

void criterion_closed_forms() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  for (unsigned r = 2; r <= 8; ++r) {
    const auto ctx = ExtensionContext::build(2, 1, r);
    const auto value = count_by_norm(ctx, {0, 0});
    const std::uint64_t expected = ipow(2, r) - 2;
    const auto half = (ctx.k() + 1) / 2;
    c.expect(value == expected && closed_value(ctx, {0, 0}) == expected,
             [&] { return "q=2 r=" + std::to_string(r) + " value " + std::to_string(value); });
    const auto verdict = verify_main_theorem(ctx).front();
    const auto want = r == 2 ? Relation::Equal : Relation::Above;
    c.expect(verdict.relation == want && (r == 2 ? value == half : value > half),
             [&] { return "q=2 r=" + std::to_string(r) + " relation"; });
  }
  for (unsigned r = 2; r <= 6; ++r) {
    const auto ctx = ExtensionContext::build(3, 1, r);
    const auto t = ipow(3, r);
    const auto half = (ctx.k() + 1) / 2;
    const auto verdicts = verify_main_theorem(ctx);
    for (std::uint64_t a = 0; a < 2; ++a)
      for (std::uint64_t b = 0; b < 2; ++b) {
        std::uint64_t expected;
        bool equal;
        if (r % 2 == 1) {
          equal = a == 0 && b == 1;
          expected = equal ? (t + 1) / 4 : (t - 3) / 4;
        } else {
          equal = !(a == 0 && b == 0);
          expected = equal ? (t - 1) / 4 : (t - 5) / 4;
        }
        const auto value = count_by_norm(ctx, {a, b});
        const auto label = [&] { return "q=3 r=" + std::to_string(r) + " (" + std::to_string(a) + "," + std::to_string(b) + ")"; };
        c.expect(value == expected && closed_value(ctx, {a, b}) == expected, label);
        c.expect(verdicts[a * 2 + b].relation == (equal ? Relation::Equal : Relation::Below) &&
                     (equal ? value == half : value < half),
                 label);
      }
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < kClosedFormSeconds, [&] { return "runtime " + fmt(elapsed) + " s"; });
  report(2, "q=2 and q=3 closed forms", c, std::to_string(c.count) + " checks, " + fmt(elapsed) + " s");
}

// ---------------------------------------------------------------- 3

std::set<Method> expected_methods(const ContextReport& ctx) {
  const auto q = ctx.q;
  const unsigned r = ctx.triple.r;
  std::set<Method> out{Method::OracleCoset, Method::OracleNorm};
  if (ctx.k <= 400) out.insert(Method::Rank);
  if (double(q - 1) * double(q - 1) * std::pow(double(q), r / 2.0) <= kDefaultPrecisionBudget)
    out.insert(Method::Characters);
  if (q >= 3) out.insert(Method::Digraph);
  if (r >= 3 && is_prime(r)) out.insert(Method::Ell);
  if (q == 2 || q == 3 || r == 2) out.insert(Method::Closed);
  return out;
}

void criterion_sweep(const SweepReport& sweep, double elapsed) {
  Check c;
  std::uint64_t comparisons = 0;
  c.expect(sweep.contexts.size() == 23, [&] { return std::to_string(sweep.contexts.size()) + " contexts"; });
  for (const auto& ctx : sweep.contexts) {
    c.expect(ctx.build_error.empty(), [&] { return to_string(ctx.triple) + ": " + ctx.build_error; });
    const auto want = expected_methods(ctx);
    const std::set<Method> ran(ctx.ran.begin(), ctx.ran.end());
    c.expect(ran == want, [&] { return to_string(ctx.triple) + ": unexpected method set"; });
    c.expect(ctx.cells.size() == (ctx.q - 1) * (ctx.q - 1), [&] { return to_string(ctx.triple) + ": cell count"; });
    for (const auto& cell : ctx.cells)
      for (const auto& o : cell.outcomes) {
        ++comparisons;
        c.expect(o.value.has_value() && *o.value == cell.reference, [&] {
          return where(ctx.triple, cell.cell.a, cell.cell.b) + " " + std::string(to_string(o.method)) + " gave " +
                 (o.value ? std::to_string(*o.value) : o.error) + ", reference " + std::to_string(cell.reference);
        });
      }
  }
  c.expect(elapsed < kSweepSeconds, [&] { return "runtime " + fmt(elapsed) + " s"; });
  report(3, "cross-method agreement", c,
         std::to_string(sweep.contexts.size()) + " contexts, " + std::to_string(comparisons) + " method values, " +
             fmt(elapsed) + " s");
}

// ---------------------------------------------------------------- 4

void criterion_verdicts(const SweepReport& sweep) {
  Check c;
  std::uint64_t above = 0, equal = 0;
  for (const auto& ctx : sweep.contexts) {
    const auto q = ctx.q;
    const unsigned r = ctx.triple.r;
    const auto half = (ctx.k + 1) / 2;
    for (const auto& cell : ctx.cells) {
      const auto v = cell.reference;
      const auto [a, b] = cell.cell;
      const auto label = [&, a = a, b = b] { return where(ctx.triple, a, b) + " value " + std::to_string(v); };
      if (v > half) {
        ++above;
        c.expect(q == 2 && r >= 3, label);
      } else if (v == half) {
        ++equal;
        const bool q3_pattern = q == 3 && (r % 2 == 1 ? (a == 0 && b == 1) : !(a == 0 && b == 0));
        c.expect((q == 2 && r == 2) || q3_pattern, label);
      }
      if (q >= 4) c.expect(v < half, label);
      if (q == 3) {
        const bool eq = r % 2 == 1 ? (a == 0 && b == 1) : !(a == 0 && b == 0);
        c.expect(eq == (v == half), label);
      }
      if (r == 2) c.expect(v <= 2, label);
      if (r == 3) c.expect(v >= 6 && v <= 2 * q + 4, label);
      if (r >= 3 && is_prime(r)) {
        const auto bound = r * ipow(q, r - 2) + (ctx.triple.p == r ? 1 : r - 1);
        c.expect(v <= bound, label);
      }
      // The library's own classification must agree.
      c.expect(cell.verdict.consistent, [&] { return label() + ": " + cell.verdict.violation; });
    }
  }
  report(4, "bound classification", c,
         std::to_string(c.count) + " checks, " + std::to_string(above) + " above, " + std::to_string(equal) + " equal");
}

// ---------------------------------------------------------------- 5

void criterion_characters(const SweepReport& sweep) {
  Check c;
  double worst_unit = 0, worst_lift = 0, worst_margin = -1e300, worst_q3 = 0;
  std::uint64_t contexts = 0;
  for (const auto& report : sweep.contexts) {
    if (std::find(report.ran.begin(), report.ran.end(), Method::Characters) == report.ran.end()) continue;
    ++contexts;
    const auto ctx = ExtensionContext::build(report.triple.p, report.triple.n, report.triple.r, report.triple.norm_target);
    const auto q = ctx.q();
    const auto m = q - 1;
    const auto& f = ctx.subfield();
    const auto tag = to_string(report.triple);

    // Orthogonality and vanishing sums.
    for (std::uint64_t s = 0; s < m; ++s) {
      Complex total = 0.0;
      for (Subfield::value_type x = 1; x < q; ++x) total += MultiplicativeCharacter{s}(f, x);
      const double dev = std::abs(total - (s == 0 ? Complex(double(m)) : Complex(0.0)));
      worst_unit = std::max(worst_unit, dev);
      c.expect(dev < kUnitTolerance, [&] { return tag + " character sum s=" + std::to_string(s); });
      for (std::uint64_t t = 0; t < m; ++t) {
        Complex inner = 0.0;
        for (Subfield::value_type x = 1; x < q; ++x)
          inner += MultiplicativeCharacter{s}(f, x) * std::conj(MultiplicativeCharacter{t}(f, x));
        const double d = std::abs(inner - (s == t ? Complex(double(m)) : Complex(0.0)));
        worst_unit = std::max(worst_unit, d);
        c.expect(d < kUnitTolerance, [&] { return tag + " orthogonality"; });
      }
    }

    // |J| = sqrt(q) and the special values.
    const JacobiCache cache(ctx);
    const auto minus_one = f.neg(f.one());
    for (std::uint64_t s = 0; s < m; ++s)
      for (std::uint64_t t = 0; t < m; ++t) {
        const auto j = cache(s, t);
        double dev;
        if (s == 0 && t == 0) dev = std::abs(j - Complex(double(q - 2)));
        else if (s == 0) dev = std::abs(j + 1.0);
        else if (t == 0) dev = std::abs(j + MultiplicativeCharacter{s}(f, minus_one));
        else if ((s + t) % m == 0) dev = std::abs(j + 1.0);
        else dev = std::abs(std::abs(j) - std::sqrt(double(q)));
        worst_unit = std::max(worst_unit, dev);
        c.expect(dev < kUnitTolerance, [&] { return tag + " Jacobi (" + std::to_string(s) + "," + std::to_string(t) + ")"; });
      }
    // J'(chi, chi^{-1}) = chi(-1) J(chi, chi^{-1}).
    for (std::uint64_t s = 1; s < m; ++s) {
      const MultiplicativeCharacter chi{s};
      const double dev = std::abs(jacobi_prime_sum_q(ctx, chi, chi.inverse(q)) - chi(f, minus_one) * cache(s, m - s));
      worst_unit = std::max(worst_unit, dev);
      c.expect(dev < kUnitTolerance, [&] { return tag + " J' relation"; });
    }

    // Davenport-Hasse: -G_{q^r}(chi o N) = (-G_q(chi))^r, relative.
    for (std::uint64_t s = 0; s < m; ++s) {
      const auto base = gauss_sum(ctx, FieldLevel::Base, s);
      const auto lifted = gauss_sum(ctx, FieldLevel::Extension, lift_character_index(ctx, {s}));
      const auto rhs = integer_power(-base, ctx.r());
      const double rel = std::abs(-lifted - rhs) / std::max(1.0, std::abs(rhs));
      worst_lift = std::max(worst_lift, rel);
      c.expect(rel < kLiftTolerance, [&] { return tag + " Davenport-Hasse s=" + std::to_string(s); });
    }

    // Error term against its bound on every cell, and E = 0 for q = 3.
    const double bound = error_bound(q, ctx.r());
    for (std::uint64_t a = 0; a < m; ++a)
      for (std::uint64_t b = 0; b < m; ++b) {
        const auto split = decompose_main_error(ctx, cache, {a, b});
        worst_margin = std::max(worst_margin, std::abs(split.error) - bound);
        c.expect(std::abs(split.error) <= bound + kBoundSlack, [&] { return where(report.triple, a, b) + " |E| bound"; });
        if (q == 3) {
          worst_q3 = std::max(worst_q3, std::abs(split.error));
          c.expect(std::abs(split.error) < kUnitTolerance, [&] { return where(report.triple, a, b) + " E != 0"; });
        }
      }

    // The sweep's own character suite must have passed as well.
    for (const auto& suite : report.properties)
      if (suite.module == "char_method")
        for (const auto& p : suite.results)
          c.expect(p.passed, [&] { return tag + " " + p.name + ": " + p.counterexample; });
  }
  report(5, "character identities", c,
         std::to_string(contexts) + " contexts, worst unit deviation " + fmt(worst_unit) + ", worst lift " +
             fmt(worst_lift) + ", worst |E|-bound " + fmt(worst_margin) + ", worst q=3 |E| " + fmt(worst_q3));
}

// ---------------------------------------------------------------- 6

void criterion_r3(const SweepReport& sweep) {
  Check c;
  std::uint64_t cells = 0;
  for (const auto& report : sweep.contexts) {
    if (report.triple.r != 3) continue;
    const auto ctx = ExtensionContext::build(report.triple.p, report.triple.n, 3, report.triple.norm_target);
    const auto q = ctx.q();
    const auto& f = ctx.subfield();
    for (std::uint64_t a = 0; a + 1 < q; ++a)
      for (std::uint64_t b = 0; b + 1 < q; ++b) {
        ++cells;
        const CycloParams cell{a, b};
        const auto label = [&] { return where(report.triple, a, b); };
        if (q >= 4) {
          const auto [A, B] = r3_polynomials(ctx, cell);
          c.expect(resultant_r3(ctx, cell) == sylvester_resultant(f, A, B), [&] { return label() + " resultant"; });
        }
        const auto T = count_T(ctx, 3, cell);
        const auto I = count_I(ctx, 3, cell);
        c.expect(classify_T3(ctx, cell).count == T, [&] { return label() + " T_3 classification"; });
        c.expect(q - image_count_phi(ctx, cell) == I, [&] { return label() + " phi image"; });
        c.expect(T + 3 * I == count_by_norm(ctx, cell), [&] { return label() + " T + 3I"; });
      }
  }
  report(6, "r=3 structure", c, std::to_string(cells) + " cells, " + std::to_string(c.count) + " checks");
}

// ---------------------------------------------------------------- 7

void criterion_determinism() {
  Check c;
  std::string reports[2];
  int codes[2];
  for (int i = 0; i < 2; ++i) {
    std::ostringstream out, err;
    codes[i] = cli::run({"verify"}, out, err);
    reports[i] = out.str();
  }
  c.expect(codes[0] == 0 && codes[1] == 0,
           [&] { return "exit codes " + std::to_string(codes[0]) + ", " + std::to_string(codes[1]); });
  c.expect(!reports[0].empty() && reports[0] == reports[1], [] { return "reports differ"; });
  report(7, "deterministic verify report", c, std::to_string(reports[0].size()) + " bytes per report");
}

}  // namespace

int main() {
  criterion_worked_example();
  criterion_closed_forms();

  const auto start = std::chrono::steady_clock::now();
  const auto sweep = run_sweep(SweepConfig::defaults());
  criterion_sweep(sweep, seconds_since(start));
  criterion_verdicts(sweep);
  criterion_characters(sweep);
  criterion_r3(sweep);
  criterion_determinism();

  std::printf("%s: %d of 7 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
