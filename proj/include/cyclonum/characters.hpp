#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "cyclonum/errors.hpp"
#include "cyclonum/field.hpp"
#include "cyclonum/oracle.hpp"

namespace cyclonum {

using Complex = std::complex<double>;

/// (q-1)^2 q^{r/2} must stay below this for the double-precision route.
inline constexpr double kDefaultPrecisionBudget = 35184372088832.0;  // 2^45
inline constexpr double kRoundingResidualLimit = 1e-3;

/// exp(2 pi i m / modulus)
inline Complex unit_root(std::uint64_t m, std::uint64_t modulus) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(m % modulus) / static_cast<double>(modulus);
  return std::polar(1.0, angle);
}

/// chi_s on F_q: chi_s(g^j) = zeta^{s j} with zeta = exp(2 pi i / (q-1)),
/// g = omega^k, and chi_s(0) = 0 for every s including the trivial character.
struct MultiplicativeCharacter {
  std::uint64_t index = 0;

  bool trivial(std::uint64_t q) const { return index % (q - 1) == 0; }
  MultiplicativeCharacter operator*(MultiplicativeCharacter other) const { return {index + other.index}; }
  MultiplicativeCharacter inverse(std::uint64_t q) const { return {(q - 1 - index % (q - 1)) % (q - 1)}; }

  Complex operator()(const Subfield& field, Subfield::value_type x) const {
    if (x == 0) return 0.0;
    const auto m = field.order() - 1;
    return unit_root((index % m) * field.exponent(x), m);
  }
};

/// J_{F_q}(chi, psi) = sum_x chi(x) psi(x+1).
inline Complex jacobi_sum_q(const ExtensionContext& ctx, MultiplicativeCharacter chi, MultiplicativeCharacter psi) {
  const auto& f = ctx.subfield();
  Complex sum = 0.0;
  for (Subfield::value_type x = 0; x < f.order(); ++x) sum += chi(f, x) * psi(f, f.add(x, f.one()));
  return sum;
}

/// J'_{F_q}(chi, psi) = sum_x chi(x) psi(1-x).
inline Complex jacobi_prime_sum_q(const ExtensionContext& ctx, MultiplicativeCharacter chi,
                                  MultiplicativeCharacter psi) {
  const auto& f = ctx.subfield();
  Complex sum = 0.0;
  for (Subfield::value_type x = 0; x < f.order(); ++x) sum += chi(f, x) * psi(f, f.sub(f.one(), x));
  return sum;
}

inline Complex integer_power(Complex z, unsigned exponent) {
  Complex out = 1.0;
  for (unsigned i = 0; i < exponent; ++i) out *= z;
  return out;
}

/// J_{F_q}(chi, psi) for every pair, indexed [s][t].
class JacobiCache {
 public:
  explicit JacobiCache(const ExtensionContext& ctx) : m_(ctx.q() - 1), values_(m_ * m_) {
    for (std::uint64_t s = 0; s < m_; ++s)
      for (std::uint64_t t = 0; t < m_; ++t) values_[s * m_ + t] = jacobi_sum_q(ctx, {s}, {t});
  }
  Complex operator()(std::uint64_t s, std::uint64_t t) const { return values_[(s % m_) * m_ + t % m_]; }

 private:
  std::uint64_t m_;
  std::vector<Complex> values_;
};

/// J_{F_{q^r}}(chi o N, psi o N) via the lift (-1)^{r-1} J_{F_q}(chi, psi)^r.
inline Complex lifted_jacobi(const ExtensionContext& ctx, const JacobiCache& cache, MultiplicativeCharacter chi,
                             MultiplicativeCharacter psi) {
  const auto q = ctx.q();
  if (chi.trivial(q) && psi.trivial(q)) return static_cast<double>(ctx.field_size() - 2);
  const double sign = ctx.r() % 2 == 1 ? 1.0 : -1.0;
  return sign * integer_power(cache(chi.index, psi.index), ctx.r());
}

inline Complex lifted_jacobi(const ExtensionContext& ctx, MultiplicativeCharacter chi, MultiplicativeCharacter psi) {
  return lifted_jacobi(ctx, JacobiCache(ctx), chi, psi);
}

inline void check_precision_budget(const ExtensionContext& ctx, double budget = kDefaultPrecisionBudget) {
  const double m = static_cast<double>(ctx.q() - 1);
  if (m * m * std::pow(static_cast<double>(ctx.q()), ctx.r() / 2.0) > budget)
    fail(ErrorKind::PrecisionBudgetExceeded, "(q-1)^2 q^{r/2} exceeds the floating-point budget");
}

/// Term chi(omega^{-ak}) psi(omega^{-bk}) J_{F_{q^r}}(chi o N, psi o N) of the exact character formula.
inline Complex character_term(const ExtensionContext& ctx, const JacobiCache& cache, CycloParams params,
                              std::uint64_t s, std::uint64_t t) {
  const auto m = ctx.q() - 1;
  const auto twist = unit_root((m - (s * params.a) % m) % m + (m - (t * params.b) % m) % m, m);
  return twist * lifted_jacobi(ctx, cache, {s}, {t});
}

inline std::uint64_t round_checked(double value) {
  const double rounded = std::round(value);
  if (std::abs(value - rounded) > kRoundingResidualLimit || rounded < 0)
    fail(ErrorKind::RoundingResidualTooLarge, "character sum " + std::to_string(value) + " is not near an integer");
  return static_cast<std::uint64_t>(rounded);
}

inline std::uint64_t cyclotomic_by_characters(const ExtensionContext& ctx, const JacobiCache& cache,
                                              CycloParams params, double budget = kDefaultPrecisionBudget) {
  validate(ctx, params);
  check_precision_budget(ctx, budget);
  const auto m = ctx.q() - 1;
  Complex sum = 0.0;
  for (std::uint64_t s = 0; s < m; ++s)
    for (std::uint64_t t = 0; t < m; ++t) sum += character_term(ctx, cache, params, s, t);
  const double denom = static_cast<double>(m * m);
  if (std::abs(sum.imag()) / denom > kRoundingResidualLimit)
    fail(ErrorKind::RoundingResidualTooLarge, "character sum has an imaginary part");
  return round_checked(sum.real() / denom);
}

inline std::uint64_t cyclotomic_by_characters(const ExtensionContext& ctx, CycloParams params,
                                              double budget = kDefaultPrecisionBudget) {
  check_precision_budget(ctx, budget);
  return cyclotomic_by_characters(ctx, JacobiCache(ctx), params, budget);
}

/// (a,b)_{q-1} = M + E: M collects every character pair where chi, psi or
/// chi psi is trivial (exact rational), E the remaining (q-2)(q-3) pairs.
struct MainErrorSplit {
  std::int64_t main_numerator = 0;
  std::int64_t main_denominator = 1;
  double error = 0.0;

  double main() const { return static_cast<double>(main_numerator) / static_cast<double>(main_denominator); }
  double total() const { return main() + error; }
};

inline std::int64_t main_term_A(std::uint64_t q, unsigned r, std::uint64_t a) {
  const auto low = -static_cast<std::int64_t>(q - 2);
  if (r % 2 == 0) return a == 0 ? low : 1;
  if (q % 2 == 0) return a == 0 ? low : 1;
  return a == (q - 1) / 2 ? low : 1;
}
inline std::int64_t main_term_B(std::uint64_t q, std::uint64_t b) { return b == 0 ? -static_cast<std::int64_t>(q - 2) : 1; }
inline std::int64_t main_term_C(std::uint64_t q, std::uint64_t a, std::uint64_t b) {
  return a == b ? -static_cast<std::int64_t>(q - 2) : 1;
}

inline MainErrorSplit decompose_main_error(const ExtensionContext& ctx, const JacobiCache& cache, CycloParams params,
                                           double budget = kDefaultPrecisionBudget) {
  validate(ctx, params);
  check_precision_budget(ctx, budget);
  const auto q = ctx.q();
  const auto m = q - 1;
  MainErrorSplit split;
  split.main_numerator = static_cast<std::int64_t>(ctx.field_size()) - 2 + main_term_A(q, ctx.r(), params.a) +
                         main_term_B(q, params.b) + main_term_C(q, params.a, params.b);
  split.main_denominator = static_cast<std::int64_t>(m * m);
  Complex error = 0.0;
  for (std::uint64_t s = 1; s < m; ++s)
    for (std::uint64_t t = 1; t < m; ++t)
      if ((s + t) % m != 0) error += character_term(ctx, cache, params, s, t);
  split.error = error.real() / static_cast<double>(m * m);
  round_checked(split.total());
  return split;
}

/// (q-2)(q-3) q^{r/2} / (q-1)^2
inline double error_bound(std::uint64_t q, unsigned r) {
  const double qd = static_cast<double>(q);
  return (qd - 2) * (qd - 3) * std::pow(qd, r / 2.0) / ((qd - 1) * (qd - 1));
}

enum class FieldLevel { Base, Extension };

/// Tr_{F_{q^r}/F_p} for every element, via the traces of the basis X^i.
class TraceTable {
 public:
  explicit TraceTable(const ExtensionContext& ctx) : p_(ctx.p()) {
    for (unsigned i = 0; i < ctx.degree(); ++i) {
      auto basis = ctx.zero();
      basis.coeffs[i] = 1;
      basis_.push_back(ctx.trace_to_prime(basis, ctx.degree()));
    }
  }
  std::uint32_t operator()(const FieldElement& x) const {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i) acc += std::uint64_t{x.coeffs[i]} * basis_[i];
    return static_cast<std::uint32_t>(acc % p_);
  }

 private:
  std::uint32_t p_;
  std::vector<std::uint32_t> basis_;
};

/// G_F(rho) = sum_{x != 0} rho(x) exp(2 pi i Tr_{F/F_p}(x) / p).
/// Base: rho = chi_index on F_q. Extension: rho(omega^j) = exp(2 pi i index j / (q^r-1)).
inline Complex gauss_sum(const ExtensionContext& ctx, FieldLevel level, std::uint64_t index) {
  const auto p = ctx.p();
  Complex sum = 0.0;
  if (level == FieldLevel::Base) {
    const auto& f = ctx.subfield();
    const MultiplicativeCharacter chi{index};
    for (Subfield::value_type x = 1; x < f.order(); ++x) {
      const auto tr = ctx.trace_to_prime(ctx.unpack(f.lift(x)), ctx.n());
      sum += chi(f, x) * unit_root(tr, p);
    }
    return sum;
  }
  const TraceTable trace(ctx);
  const auto m = ctx.group_order();
  for (std::uint64_t j = 0; j < m; ++j) {
    const auto x = ctx.unpack(ctx.omega_power(static_cast<std::int64_t>(j)));
    sum += unit_root((index % m) * j % m, m) * unit_root(trace(x), p);
  }
  return sum;
}

/// Index of chi o N as a character of F_{q^r}^x.
inline std::uint64_t lift_character_index(const ExtensionContext& ctx, MultiplicativeCharacter chi) {
  return (chi.index % (ctx.q() - 1)) * ctx.k();
}

}  // namespace cyclonum
