#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cyclonum/errors.hpp"
#include "cyclonum/field.hpp"
#include "cyclonum/integer.hpp"
#include "cyclonum/oracle.hpp"

namespace cyclonum {

struct HalfKBound {
  std::uint64_t q = 0;
  unsigned r = 0;
  BigInt k;
  BigInt value;
};

/// ceil(k/2) by the parity branches:
///   (q^r+q-2)/(2(q-1)) for q even, or q and r both odd;
///   (q^r-1)/(2(q-1))   for q odd and r even.
inline HalfKBound half_k(std::uint64_t q, unsigned r) {
  if (q < 2 || r < 2) fail(ErrorKind::InvalidArgument, "half_k needs q >= 2 and r >= 2");
  const BigInt qr = big_pow(q, r);
  const BigInt den = 2 * BigInt(q - 1);
  const bool odd_k = q % 2 == 0 || r % 2 == 1;
  const BigInt num = odd_k ? qr + q - 2 : qr - 1;
  HalfKBound out{q, r, (qr - 1) / (q - 1), num / den};
  if (num % den != 0 || out.value != (out.k + 1) / 2)
    fail(ErrorKind::TheoremViolation, "half_k branch formula disagrees with ceiling division");
  return out;
}

/// (0,0)_1 over F_{2^r}.
inline BigInt q2_value(unsigned r) { return big_pow(2, r) - 2; }

/// (a,b)_2 over F_{3^r}.
inline BigInt q3_value(unsigned r, std::uint64_t a, std::uint64_t b) {
  if (a > 1 || b > 1) fail(ErrorKind::OutOfRange, "q=3 requires a, b in {0, 1}");
  const BigInt t = big_pow(3, r);
  if (r % 2 == 1) return (a == 0 && b == 1) ? (t + 1) / 4 : (t - 3) / 4;
  return (a == 0 && b == 0) ? (t - 5) / 4 : (t - 1) / 4;
}

/// (a,b)_{q-1} for r = 2 from the quadratic X^2 + cX + omega^{ak}: discriminant
/// and Euler's criterion for odd p, the absolute trace for p = 2.
inline std::uint64_t r2_value(const ExtensionContext& ctx, CycloParams params) {
  if (ctx.r() != 2) fail(ErrorKind::MethodInapplicable, "r2_value requires r = 2");
  validate(ctx, params);
  const auto u = ctx.pow(ctx.omega(), params.a * ctx.k());
  const auto v = ctx.pow(ctx.omega(), params.b * ctx.k());
  const auto one = ctx.one();
  if (ctx.p() != 2) {
    const auto c = ctx.sub(ctx.add(one, u), v);
    const auto disc = ctx.sub(ctx.mul(c, c), ctx.mul(ctx.from_integer(4), u));
    if (ctx.is_zero(disc)) return 1;
    return ctx.pow(disc, (ctx.q() - 1) / 2) == one ? 0 : 2;
  }
  const auto c = ctx.add(ctx.add(one, u), v);
  if (ctx.is_zero(c)) return 1;
  const auto arg = ctx.mul(u, ctx.inv(ctx.mul(c, c)));
  return ctx.trace_to_prime(arg, ctx.n()) == 0 ? 0 : 2;
}

inline bool closed_form_applies(const ExtensionContext& ctx) { return ctx.q() == 2 || ctx.q() == 3 || ctx.r() == 2; }

/// Whichever closed form covers the context: q = 2, then q = 3, then r = 2.
inline std::uint64_t closed_value(const ExtensionContext& ctx, CycloParams params) {
  validate(ctx, params);
  if (ctx.q() == 2) return static_cast<std::uint64_t>(q2_value(ctx.r()));
  if (ctx.q() == 3) return static_cast<std::uint64_t>(q3_value(ctx.r(), params.a, params.b));
  if (ctx.r() == 2) return r2_value(ctx, params);
  fail(ErrorKind::MethodInapplicable, "no closed form for q >= 4 and r >= 3");
}

enum class Relation { Below, Equal, Above };

constexpr std::string_view to_string(Relation rel) {
  switch (rel) {
    case Relation::Below: return "below";
    case Relation::Equal: return "equal";
    case Relation::Above: return "above";
  }
  return "?";
}

struct TheoremVerdict {
  CycloParams cell;
  std::uint64_t value = 0;
  BigInt bound;
  Relation relation = Relation::Below;
  std::string clause;
  bool consistent = true;
  std::string violation;
};

/// Largest value permitted when r is an odd prime l: l q^{l-2} + (1 if p = l else l-1).
inline BigInt odd_prime_bound(std::uint64_t p, std::uint64_t q, unsigned l) {
  return BigInt(l) * big_pow(q, l - 2) + (p == l ? 1 : l - 1);
}

/// Classifies each cell of an oracle table against ceil(k/2) and the range
/// statements for r = 2, r = 3 and odd prime r. Never throws on a mismatch;
/// inconsistent cells carry a violation message.
inline std::vector<TheoremVerdict> evaluate_main_theorem(const ExtensionContext& ctx, const CycloTable& table) {
  const auto q = ctx.q();
  const auto r = ctx.r();
  const auto bound = half_k(q, r).value;
  std::vector<TheoremVerdict> out;
  for (std::uint64_t a = 0; a + 1 < q; ++a)
    for (std::uint64_t b = 0; b + 1 < q; ++b) {
      TheoremVerdict v;
      v.cell = {a, b};
      v.value = table.values[a][b];
      v.bound = bound;
      const BigInt value(v.value);
      v.relation = value < bound ? Relation::Below : value == bound ? Relation::Equal : Relation::Above;

      Relation expected;
      if (q == 2) {
        v.clause = "q=2";
        expected = r == 2 ? Relation::Equal : Relation::Above;
        if (value != q2_value(r)) v.violation += "q=2 value differs from 2^r-2; ";
      } else if (q == 3) {
        v.clause = "q=3";
        const bool eq = r % 2 == 1 ? (a == 0 && b == 1) : (a != 0 || b != 0);
        expected = eq ? Relation::Equal : Relation::Below;
      } else {
        v.clause = "q>=4";
        expected = Relation::Below;
      }
      if (v.relation != expected)
        v.violation += "relation " + std::string(to_string(v.relation)) + " where " +
                       std::string(to_string(expected)) + " is required; ";

      if (r == 2 && v.value > 2) v.violation += "r=2 value outside {0,1,2}; ";
      if (r == 3 && (v.value < 6 || v.value > 2 * q + 4)) v.violation += "r=3 value outside [6, 2q+4]; ";
      if (r % 2 == 1 && is_prime(r)) {
        v.clause += "; odd prime r";
        if (value > odd_prime_bound(ctx.p(), q, r)) v.violation += "odd-prime bound exceeded; ";
      }
      v.consistent = v.violation.empty();
      out.push_back(std::move(v));
    }
  return out;
}

/// As evaluate_main_theorem, but a single inconsistent cell is an error.
inline std::vector<TheoremVerdict> verify_main_theorem(const ExtensionContext& ctx, const CycloTable& table) {
  auto verdicts = evaluate_main_theorem(ctx, table);
  for (const auto& v : verdicts)
    if (!v.consistent)
      fail(ErrorKind::TheoremViolation, "cell (" + std::to_string(v.cell.a) + "," + std::to_string(v.cell.b) +
                                            "): " + v.violation);
  return verdicts;
}

inline std::vector<TheoremVerdict> verify_main_theorem(const ExtensionContext& ctx) {
  return verify_main_theorem(ctx, full_table(ctx, TableMethod::Norm));
}

}  // namespace cyclonum
