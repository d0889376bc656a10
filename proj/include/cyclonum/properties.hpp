#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cyclonum/characters.hpp"
#include "cyclonum/closed_forms.hpp"
#include "cyclonum/digraph.hpp"
#include "cyclonum/field.hpp"
#include "cyclonum/oracle.hpp"
#include "cyclonum/prime_ell.hpp"

namespace cyclonum {

inline constexpr double kCharacterTolerance = 1e-9;
inline constexpr double kLiftRelativeTolerance = 1e-6;
inline constexpr double kErrorBoundSlack = 1e-6;
/// Fields at most this large are checked exhaustively; larger ones by a seeded sample.
inline constexpr std::uint64_t kExhaustiveFieldLimit = 256;
inline constexpr std::uint64_t kSampleSize = 2000;
inline constexpr std::uint64_t kSampleSeed = 0x5eedc0de;

/// Outcome of one named property over one context. Only the first failure is kept.
struct PropertyResult {
  PropertyResult() = default;
  explicit PropertyResult(std::string property) : name(std::move(property)) {}

  std::string name;
  bool passed = true;
  std::uint64_t checked = 0;
  double worst = 0.0;  // largest numeric deviation; stays 0 for exact checks
  std::string counterexample;

  template <class Describe>
  void expect(bool ok, Describe&& describe) {
    ++checked;
    if (ok || !passed) {
      passed = passed && ok;
      return;
    }
    passed = false;
    counterexample = describe();
  }

  template <class Describe>
  void within(double deviation, double tolerance, Describe&& describe) {
    worst = std::max(worst, deviation);
    expect(deviation <= tolerance, [&] { return describe() + " deviation " + std::to_string(deviation); });
  }
};

using PropertySuite = std::vector<PropertyResult>;

inline std::string cell_text(std::uint64_t a, std::uint64_t b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

// ---------------------------------------------------------------- ff_core

namespace detail {
/// Every element when the field is small, else a fixed-seed sample of pairs.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> element_pairs(const ExtensionContext& ctx) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  const auto size = static_cast<std::uint32_t>(ctx.field_size());
  if (size <= kExhaustiveFieldLimit) {
    for (std::uint32_t x = 0; x < size; ++x)
      for (std::uint32_t y = 0; y < size; ++y) out.emplace_back(x, y);
    return out;
  }
  std::mt19937_64 rng(kSampleSeed);
  std::uniform_int_distribution<std::uint32_t> pick(0, size - 1);
  for (std::uint64_t i = 0; i < kSampleSize; ++i) {
    const auto x = pick(rng);
    out.emplace_back(x, pick(rng));
  }
  return out;
}
}  // namespace detail

inline PropertySuite ff_core_properties(const ExtensionContext& ctx) {
  PropertyResult multiplicative{"norm-multiplicative"}, freshman{"freshman-dream"}, in_subfield{"norm-in-subfield"},
      kernel{"norm-kernel-size"}, fixed{"frobenius-fixed-points"}, fibres{"coset-equals-norm-fibre"};

  for (const auto& [xv, yv] : detail::element_pairs(ctx)) {
    const auto x = ctx.unpack(ElementIndex{xv}), y = ctx.unpack(ElementIndex{yv});
    multiplicative.expect(ctx.norm(ctx.mul(x, y)) == ctx.mul(ctx.norm(x), ctx.norm(y)),
                          [&] { return "x=" + to_string(x) + " y=" + to_string(y); });
    const auto p = std::uint64_t{ctx.p()};
    freshman.expect(ctx.pow(ctx.add(x, y), p) == ctx.add(ctx.pow(x, p), ctx.pow(y, p)),
                    [&] { return "x=" + to_string(x) + " y=" + to_string(y); });
  }

  std::uint64_t kernel_size = 0, fixed_count = 0;
  const auto one = ctx.one();
  for (std::uint64_t v = 0; v < ctx.field_size(); ++v) {
    const ElementIndex xi{static_cast<std::uint32_t>(v)};
    const auto x = ctx.unpack(xi);
    const auto nx = ctx.norm(x);
    in_subfield.expect(ctx.frobenius(nx) == nx, [&] { return "x=" + to_string(x); });
    if (nx == one) ++kernel_size;
    if (ctx.frobenius(x) == x) ++fixed_count;
    if (v == 0) continue;
    const auto a = ctx.dlog(xi) % ctx.e();
    fibres.expect(nx == ctx.pow(ctx.omega(), a * ctx.k()), [&] { return "x=" + to_string(x); });
  }
  kernel.expect(kernel_size == ctx.k(), [&] { return "kernel has " + std::to_string(kernel_size) + " elements"; });
  fixed.expect(fixed_count == ctx.q(), [&] { return std::to_string(fixed_count) + " fixed points"; });
  return {multiplicative, in_subfield, kernel, freshman, fixed, fibres};
}

// ---------------------------------------------------------------- oracle

inline PropertySuite oracle_properties(const ExtensionContext& ctx, const CycloTable& coset, const CycloTable& norm) {
  PropertyResult sum{"table-sum"}, equal{"coset-equals-norm-table"};
  sum.expect(norm.sum() == ctx.field_size() - 2, [&] { return "sum " + std::to_string(norm.sum()); });
  for (std::uint64_t a = 0; a + 1 < ctx.q(); ++a)
    for (std::uint64_t b = 0; b + 1 < ctx.q(); ++b)
      equal.expect(coset.values[a][b] == norm.values[a][b], [&] { return cell_text(a, b); });
  return {sum, equal};
}

// ---------------------------------------------------------------- characters

inline PropertySuite character_properties(const ExtensionContext& ctx, const CycloTable& oracle,
                                          double budget = kDefaultPrecisionBudget) {
  check_precision_budget(ctx, budget);
  const auto& f = ctx.subfield();
  const auto q = ctx.q();
  const auto m = q - 1;
  const unsigned r = ctx.r();
  const auto minus_one = f.neg(f.one());
  const double sqrt_q = std::sqrt(static_cast<double>(q));
  const JacobiCache cache(ctx);

  PropertyResult orthogonality{"orthogonality"}, vanishing{"vanishing-sum"}, indicator{"character-sum-indicator"},
      reflection{"jacobi-reflection"}, special{"jacobi-special-values"}, modulus{"jacobi-modulus"},
      gauss_mod{"gauss-modulus"}, gauss_trivial{"gauss-trivial"}, gauss_jacobi{"gauss-jacobi-identity"},
      dh{"davenport-hasse"}, lift{"jacobi-lift-direct"}, bound{"error-bound"}, split{"main-plus-error"},
      zero_error{"error-vanishes-q3"}, side{"strictness-side-condition"};

  for (std::uint64_t s = 0; s < m; ++s) {
    const MultiplicativeCharacter chi{s};
    for (std::uint64_t t = 0; t < m; ++t) {
      const MultiplicativeCharacter psi{t};
      Complex inner = 0.0;
      for (Subfield::value_type x = 1; x < q; ++x) inner += chi(f, x) * std::conj(psi(f, x));
      orthogonality.within(std::abs(inner - Complex(s == t ? static_cast<double>(m) : 0.0)), kCharacterTolerance,
                           [&] { return "chi_" + std::to_string(s) + " vs chi_" + std::to_string(t); });
    }
    if (s != 0) {
      Complex total = 0.0;
      for (Subfield::value_type x = 0; x < q; ++x) total += chi(f, x);
      vanishing.within(std::abs(total), kCharacterTolerance, [&] { return "chi_" + std::to_string(s); });
    }
  }
  for (Subfield::value_type u = 0; u < q; ++u) {
    Complex total = 0.0;
    for (std::uint64_t s = 0; s < m; ++s) total += MultiplicativeCharacter{s}(f, u);
    indicator.within(std::abs(total / static_cast<double>(m) - (u == f.one() ? 1.0 : 0.0)), kCharacterTolerance,
                     [&] { return "u code " + std::to_string(u); });
  }

  std::vector<Complex> gauss_base(m), gauss_ext(m);
  const auto ext_sqrt = std::sqrt(static_cast<double>(ctx.field_size()));
  for (std::uint64_t s = 0; s < m; ++s) {
    gauss_base[s] = gauss_sum(ctx, FieldLevel::Base, s);
    gauss_ext[s] = gauss_sum(ctx, FieldLevel::Extension, lift_character_index(ctx, {s}));
    if (s == 0) {
      gauss_trivial.within(std::abs(gauss_base[0] + 1.0), kCharacterTolerance, [] { return std::string("base"); });
      gauss_trivial.within(std::abs(gauss_ext[0] + 1.0), kCharacterTolerance, [] { return std::string("extension"); });
      continue;
    }
    gauss_mod.within(std::abs(std::abs(gauss_base[s]) - sqrt_q), kCharacterTolerance,
                     [&] { return "base chi_" + std::to_string(s); });
    gauss_mod.within(std::abs(std::abs(gauss_ext[s]) - ext_sqrt), kCharacterTolerance * ext_sqrt,
                     [&] { return "lifted chi_" + std::to_string(s); });
    const Complex predicted = (r % 2 == 1 ? 1.0 : -1.0) * integer_power(gauss_base[s], r);
    dh.within(std::abs(gauss_ext[s] - predicted) / std::abs(predicted), kLiftRelativeTolerance,
              [&] { return "chi_" + std::to_string(s); });
  }

  // Direct Jacobi sums over F_{q^r}: chi(N(omega^j)) = zeta^{s j}.
  std::vector<std::int64_t> dlog_plus_one(ctx.field_size(), -1);
  for (std::uint64_t j = 0; j < ctx.group_order(); ++j) {
    const auto y = ctx.plus_one(ctx.omega_power(static_cast<std::int64_t>(j)));
    if (y.value != 0) dlog_plus_one[j] = static_cast<std::int64_t>(ctx.dlog(y));
  }

  for (std::uint64_t s = 0; s < m; ++s)
    for (std::uint64_t t = 0; t < m; ++t) {
      const MultiplicativeCharacter chi{s}, psi{t};
      const auto label = [&] { return "(chi_" + std::to_string(s) + ", chi_" + std::to_string(t) + ")"; };
      const auto J = cache(s, t);
      const auto Jp = jacobi_prime_sum_q(ctx, chi, psi);
      reflection.within(std::abs(J - chi(f, minus_one) * Jp), kCharacterTolerance, label);

      const bool cs = s == 0, ps = t == 0, prod = (s + t) % m == 0;
      if (cs && ps) {
        special.within(std::abs(J - static_cast<double>(q - 2)), kCharacterTolerance, label);
        special.within(std::abs(Jp - static_cast<double>(q - 2)), kCharacterTolerance, label);
      } else if (cs) {
        special.within(std::abs(J + 1.0), kCharacterTolerance, label);
        special.within(std::abs(Jp + 1.0), kCharacterTolerance, label);
      } else if (ps) {
        special.within(std::abs(J + chi(f, minus_one)), kCharacterTolerance, label);
        special.within(std::abs(Jp + 1.0), kCharacterTolerance, label);
      } else if (prod) {
        special.within(std::abs(J + 1.0), kCharacterTolerance, label);
        special.within(std::abs(Jp + chi(f, minus_one)), kCharacterTolerance, label);
      } else {
        modulus.within(std::abs(std::abs(J) - sqrt_q), kCharacterTolerance, label);
        gauss_jacobi.within(std::abs(Jp - gauss_base[s] * gauss_base[t] / gauss_base[(s + t) % m]),
                            kCharacterTolerance, label);
      }

      Complex direct = 0.0;
      for (std::uint64_t j = 0; j < ctx.group_order(); ++j) {
        if (dlog_plus_one[j] < 0) continue;
        direct += unit_root(s * (j % m) + t * (static_cast<std::uint64_t>(dlog_plus_one[j]) % m), m);
      }
      const auto lifted = lifted_jacobi(ctx, cache, chi, psi);
      lift.within(std::abs(direct - lifted) / std::max(1.0, std::abs(lifted)), kLiftRelativeTolerance, label);
    }

  const double e_bound = error_bound(q, r);
  for (std::uint64_t a = 0; a < m; ++a)
    for (std::uint64_t b = 0; b < m; ++b) {
      const auto d = decompose_main_error(ctx, cache, {a, b}, budget);
      const auto label = [&] { return cell_text(a, b); };
      bound.within(std::max(0.0, std::abs(d.error) - e_bound), kErrorBoundSlack, label);
      split.within(std::abs(d.total() - static_cast<double>(oracle.values[a][b])), kRoundingResidualLimit, label);
      if (q == 3) zero_error.within(std::abs(d.error), kCharacterTolerance, label);
    }
  if (q >= 4 && r >= 3) {
    const double qd = static_cast<double>(q);
    const double lhs = std::pow(qd, r) - 2 * (qd - 2) * std::pow(qd, r / 2.0) + qd;
    side.expect(lhs > 0, [&] { return "q^r - 2(q-2)q^{r/2} + q = " + std::to_string(lhs); });
  }

  PropertySuite out{orthogonality, vanishing, indicator, reflection, special, modulus, gauss_mod, gauss_trivial,
                    gauss_jacobi, dh, lift, bound, split};
  if (q == 3) out.push_back(zero_error);
  if (q >= 4 && r >= 3) out.push_back(side);
  return out;
}

// ---------------------------------------------------------------- digraph

inline PropertySuite digraph_properties(const ExtensionContext& ctx, const CycloTable& oracle) {
  const auto q = ctx.q();
  if (q < 3) fail(ErrorKind::MethodInapplicable, "digraph properties need q >= 3");
  const unsigned r = ctx.r();
  PropertyResult regular{"regularity"}, integral{"leading-term-integral"}, walks{"walk-total"},
      criteria{"halfk-criteria"}, ordering{"ordering-invariance"};

  const auto canonical = CayleyGraph::build(ctx, VertexOrdering::Canonical);
  std::vector<std::uint64_t> in_degree(canonical.vertex_count(), 0);
  for (std::size_t i = 0; i < canonical.vertex_count(); ++i) {
    regular.expect(canonical.successors(i).size() == q - 2, [&] { return "out-degree at " + std::to_string(i); });
    for (auto j : canonical.successors(i)) ++in_degree[j];
  }
  for (std::size_t i = 0; i < in_degree.size(); ++i)
    regular.expect(in_degree[i] == q - 2, [&] { return "in-degree at " + std::to_string(i); });

  try {
    digraph_leading_term(q, r);
    integral.expect(true, [] { return std::string(); });
  } catch (const Error& e) {
    integral.expect(false, [&] { return std::string(e.what()); });
  }

  const auto one = ctx.subfield().one();
  const auto row = walk_vector(canonical, r, canonical.index(one, one));
  BigInt total = 0;
  for (const auto& w : row) total += w;
  walks.expect(total == big_pow(q - 2, r), [&] { return "row sum " + total.str(); });

  for (std::uint64_t a = 0; a + 1 < q; ++a)
    for (std::uint64_t b = 0; b + 1 < q; ++b) {
      const auto c = check_halfk_criteria(ctx, canonical, {a, b}, oracle.values[a][b]);
      criteria.expect(c.agrees(), [&] { return cell_text(a, b) + " clause " + std::to_string(c.clause); });
    }

  PropertySuite out{regular, integral, walks, criteria};
  if (ctx.n() == 1) {
    const auto natural = CayleyGraph::build(ctx, VertexOrdering::Natural);
    const auto natural_row = walk_vector(natural, r, natural.index(one, one));
    for (std::uint64_t a = 0; a + 1 < q; ++a)
      for (std::uint64_t b = 0; b + 1 < q; ++b)
        ordering.expect(cyclotomic_from_walks(ctx, canonical, row, {a, b}) ==
                            cyclotomic_from_walks(ctx, natural, natural_row, {a, b}),
                        [&] { return cell_text(a, b); });
    out.push_back(ordering);
  }
  return out;
}

// ---------------------------------------------------------------- prime ell

/// Requires r an odd prime with q^{r-2} within poly_cap.
inline PropertySuite prime_ell_properties(const ExtensionContext& ctx, const CycloTable& oracle,
                                          std::uint64_t poly_cap = kDefaultPolyCap) {
  const unsigned ell = ctx.r();
  if (ell < 3 || !is_prime(ell)) fail(ErrorKind::MethodInapplicable, "r is not an odd prime");
  const auto& f = ctx.subfield();
  const auto q = ctx.q();
  PropertyResult t_bound{"T-bound"}, i_bound{"I-bound"}, rabin{"rabin-agreement"}, resultant{"resultant-sylvester"},
      common_root{"resultant-common-root"}, t3{"t3-classification"}, phi{"phi-image"}, phi_lower{"phi-image-lower"},
      i3{"I3-range"}, sandwich{"sandwich"};
  const auto i_max = *checked_pow(q, ell - 2);

  for (std::uint64_t a = 0; a + 1 < q; ++a)
    for (std::uint64_t b = 0; b + 1 < q; ++b) {
      const CycloParams cell{a, b};
      const auto label = [&] { return cell_text(a, b); };
      const auto T = count_T(ctx, ell, cell);
      std::uint64_t I = 0;
      for (const auto& g : enumerate_P(ctx, ell, cell, poly_cap)) {
        const bool fast = is_irreducible_prime_degree(f, g);
        rabin.expect(fast == poly::is_irreducible(f, g), label);
        if (fast) ++I;
      }
      const auto u = f.from_exponent(static_cast<std::int64_t>(a)), v = f.from_exponent(static_cast<std::int64_t>(b));
      const bool shift_zero = f.sub(f.add(f.one(), u), v) == f.zero();
      if (ctx.p() == ell) t_bound.expect(T == (shift_zero ? 1u : 0u), label);
      else t_bound.expect(T <= ell - 1, label);
      i_bound.expect(I <= i_max, label);
      const auto total = T + ell * I;
      if (ell != 3) continue;

      const auto [A, B] = r3_polynomials(ctx, cell);
      const auto res = resultant_r3(ctx, cell);
      resultant.expect(res == sylvester_resultant(f, A, B), label);
      const bool shared = poly::degree<Subfield>(poly::gcd(f, A, B)) > 0;
      common_root.expect((res == f.zero()) == shared, label);
      t3.expect(classify_T3(ctx, cell).count == T, label);
      const auto image = image_count_phi(ctx, cell);
      phi.expect(q - image == I, label);
      phi_lower.expect(3 * image >= q - 2 && image <= q - 2, label);
      i3.expect(I >= 2 && I <= (2 * q + 2) / 3, label);
      sandwich.expect(T + 6 <= total && total <= T + 3 * ((2 * q + 2) / 3) && total >= 6 && total <= 2 * q + 4 &&
                          total == oracle.values[a][b],
                      label);
    }
  PropertySuite out{t_bound, i_bound, rabin};
  if (ell == 3) out.insert(out.end(), {resultant, common_root, t3, phi, phi_lower, i3, sandwich});
  return out;
}

// ---------------------------------------------------------------- closed forms

inline PropertySuite closed_form_properties(const ExtensionContext& ctx) {
  PropertyResult branch{"half-k-branch"};
  try {
    const auto h = half_k(ctx.q(), ctx.r());
    branch.expect(h.k == BigInt(ctx.k()), [&] { return "k mismatch"; });
  } catch (const Error& e) {
    branch.expect(false, [&] { return std::string(e.what()); });
  }
  return {branch};
}

inline bool all_passed(const PropertySuite& suite) {
  return std::all_of(suite.begin(), suite.end(), [](const PropertyResult& p) { return p.passed; });
}

}  // namespace cyclonum
