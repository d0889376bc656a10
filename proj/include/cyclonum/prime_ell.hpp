#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "cyclonum/closed_forms.hpp"
#include "cyclonum/errors.hpp"
#include "cyclonum/field.hpp"
#include "cyclonum/integer.hpp"
#include "cyclonum/oracle.hpp"
#include "cyclonum/poly.hpp"

namespace cyclonum {

/// Bound on #P_l(a,b) = q^{l-2}; 13^3 keeps l = 5 usable for q <= 13.
inline constexpr std::uint64_t kDefaultPolyCap = 2197;

using FqPoly = Poly<Subfield>;

namespace detail {
inline void require_odd_prime(unsigned ell) {
  if (ell < 3 || !is_prime(ell)) fail(ErrorKind::InvalidArgument, "l must be an odd prime");
}
inline Subfield::value_type u_of(const ExtensionContext& ctx, CycloParams params) {
  return ctx.subfield().from_exponent(static_cast<std::int64_t>(params.a));
}
inline Subfield::value_type v_of(const ExtensionContext& ctx, CycloParams params) {
  return ctx.subfield().from_exponent(static_cast<std::int64_t>(params.b));
}
}  // namespace detail

/// #{x in F_q : x^l = omega^{ak}, (x+1)^l = omega^{bk}}.
inline std::uint64_t count_T(const ExtensionContext& ctx, unsigned ell, CycloParams params) {
  detail::require_odd_prime(ell);
  validate(ctx, params);
  const auto& f = ctx.subfield();
  const auto u = detail::u_of(ctx, params), v = detail::v_of(ctx, params);
  std::uint64_t count = 0;
  for (Subfield::value_type x = 0; x < f.order(); ++x)
    if (f.pow(x, ell) == u && f.pow(f.add(x, f.one()), ell) == v) ++count;
  return count;
}

/// Irreducibility for prime degree l: X^{q^l} = X mod f and gcd(X^q - X, f) = 1.
inline bool is_irreducible_prime_degree(const Subfield& field, const FqPoly& f) {
  const long d = poly::degree<Subfield>(f);
  if (d < 2 || !is_prime(static_cast<std::uint64_t>(d))) fail(ErrorKind::InvalidArgument, "degree must be prime");
  const auto x = poly::mod(field, poly::monomial(field, 1), f);
  auto power = x;
  power = poly::powmod(field, power, field.order(), f);
  const auto xq = power;
  for (long i = 1; i < d; ++i) power = poly::powmod(field, power, field.order(), f);
  if (power != x) return false;
  return poly::degree<Subfield>(poly::gcd(field, poly::sub(field, xq, x), f)) == 0;
}

/// Members of P_l(a,b): monic, degree l, f(0) = -omega^{ak}, f(-1) = -omega^{bk}.
/// The free coefficients c_2..c_{l-1} run over F_q in base-q order.
inline std::vector<FqPoly> enumerate_P(const ExtensionContext& ctx, unsigned ell, CycloParams params,
                                       std::uint64_t poly_cap = kDefaultPolyCap) {
  detail::require_odd_prime(ell);
  validate(ctx, params);
  const auto& f = ctx.subfield();
  const auto q = ctx.q();
  const auto count = checked_pow(q, ell - 2);
  if (!count || *count > poly_cap) fail(ErrorKind::SizeCapExceeded, "q^{l-2} exceeds the polynomial cap");
  const auto u = detail::u_of(ctx, params), v = detail::v_of(ctx, params);
  const auto shift = f.sub(f.add(f.one(), u), v);

  std::vector<FqPoly> out;
  out.reserve(*count);
  std::vector<Subfield::value_type> free(ell - 2, 0);
  for (std::uint64_t index = 0; index < *count; ++index) {
    auto rest = index;
    for (auto& c : free) {
      c = static_cast<Subfield::value_type>(rest % q);
      rest /= q;
    }
    FqPoly g(ell + 1, f.zero());
    g[0] = f.neg(u);
    g[ell] = f.one();
    auto c1 = f.neg(shift);
    for (unsigned mu = 2; mu < ell; ++mu) {
      g[mu] = free[mu - 2];
      c1 = mu % 2 == 0 ? f.add(c1, g[mu]) : f.sub(c1, g[mu]);
    }
    g[1] = c1;
    out.push_back(std::move(g));
  }
  return out;
}

/// #I_l(a,b): members of P_l(a,b) that are irreducible.
inline std::uint64_t count_I(const ExtensionContext& ctx, unsigned ell, CycloParams params,
                             std::uint64_t poly_cap = kDefaultPolyCap) {
  std::uint64_t count = 0;
  for (const auto& g : enumerate_P(ctx, ell, params, poly_cap))
    if (is_irreducible_prime_degree(ctx.subfield(), g)) ++count;
  return count;
}

struct EllDecomposition {
  unsigned ell = 0;
  std::uint64_t t_count = 0;
  std::uint64_t i_count = 0;
  std::uint64_t total() const { return t_count + ell * i_count; }
};

/// (a,b)_{q-1} = #T_l + l #I_l for r = l an odd prime.
inline EllDecomposition cyclotomic_by_ell(const ExtensionContext& ctx, CycloParams params,
                                          std::uint64_t poly_cap = kDefaultPolyCap) {
  const unsigned ell = ctx.r();
  if (ell < 3 || !is_prime(ell)) fail(ErrorKind::MethodInapplicable, "r is not an odd prime");
  EllDecomposition out{ell, count_T(ctx, ell, params), count_I(ctx, ell, params, poly_cap)};
  if (BigInt(out.total()) > odd_prime_bound(ctx.p(), ctx.q(), ell))
    fail(ErrorKind::TheoremViolation, "l-decomposition exceeds the odd-prime bound");
  return out;
}

namespace detail {
inline void require_r3(const ExtensionContext& ctx) {
  if (ctx.r() != 3) fail(ErrorKind::MethodInapplicable, "requires r = 3");
}
}  // namespace detail

/// A(X) = X^3 - omega^{ak} and B(X) = (X+1)^3 - omega^{bk}.
inline std::pair<FqPoly, FqPoly> r3_polynomials(const ExtensionContext& ctx, CycloParams params) {
  const auto& f = ctx.subfield();
  const auto u = detail::u_of(ctx, params), v = detail::v_of(ctx, params);
  const auto three = f.from_integer(3);
  FqPoly A{f.neg(u), f.zero(), f.zero(), f.one()};
  FqPoly B{f.sub(f.one(), v), three, three, f.one()};
  return {A, B};
}

/// (1 + u - v)^3 + 27 u v with u = omega^{ak}, v = omega^{bk}.
inline Subfield::value_type resultant_r3(const ExtensionContext& ctx, CycloParams params) {
  detail::require_r3(ctx);
  validate(ctx, params);
  const auto& f = ctx.subfield();
  const auto u = detail::u_of(ctx, params), v = detail::v_of(ctx, params);
  const auto c = f.sub(f.add(f.one(), u), v);
  return f.add(f.pow(c, 3), f.mul(f.from_integer(27), f.mul(u, v)));
}

/// (n+m) x (n+m) Sylvester matrix of f (degree m) and g (degree n), blocks
/// A11 = (a_{m+i-j}), A12 = (a_{m-n+i-j}), A21 = (b_{n+i-j}), A22 = (b_{i-j}),
/// 1-based, with coefficients outside [0, deg] read as zero.
inline std::vector<std::vector<Subfield::value_type>> sylvester_matrix(const Subfield& field, const FqPoly& f,
                                                                       const FqPoly& g) {
  const long m = poly::degree<Subfield>(f), n = poly::degree<Subfield>(g);
  if (m < 1 || n < 1) fail(ErrorKind::InvalidArgument, "Sylvester matrix needs nonconstant polynomials");
  const auto coeff = [&](const FqPoly& h, long deg, long t) { return t < 0 || t > deg ? field.zero() : h[t]; };
  const auto size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Subfield::value_type>> s(size, std::vector<Subfield::value_type>(size, field.zero()));
  for (long i = 1; i <= n; ++i) {
    for (long j = 1; j <= n; ++j) s[i - 1][j - 1] = coeff(f, m, m + i - j);
    for (long j = 1; j <= m; ++j) s[i - 1][n + j - 1] = coeff(f, m, m - n + i - j);
  }
  for (long i = 1; i <= m; ++i) {
    for (long j = 1; j <= n; ++j) s[n + i - 1][j - 1] = coeff(g, n, n + i - j);
    for (long j = 1; j <= m; ++j) s[n + i - 1][n + j - 1] = coeff(g, n, i - j);
  }
  return s;
}

/// Determinant over F_q by elimination.
inline Subfield::value_type determinant(const Subfield& field, std::vector<std::vector<Subfield::value_type>> m) {
  const auto size = m.size();
  auto det = field.one();
  for (std::size_t col = 0; col < size; ++col) {
    std::size_t pivot = col;
    while (pivot < size && m[pivot][col] == field.zero()) ++pivot;
    if (pivot == size) return field.zero();
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = field.neg(det);
    }
    det = field.mul(det, m[col][col]);
    const auto inv = field.inv(m[col][col]);
    for (std::size_t i = col + 1; i < size; ++i) {
      if (m[i][col] == field.zero()) continue;
      const auto factor = field.mul(m[i][col], inv);
      for (std::size_t j = col; j < size; ++j) m[i][j] = field.sub(m[i][j], field.mul(factor, m[col][j]));
    }
  }
  return det;
}

inline Subfield::value_type sylvester_resultant(const Subfield& field, const FqPoly& f, const FqPoly& g) {
  return determinant(field, sylvester_matrix(field, f, g));
}

struct T3Classification {
  int case_label = 0;  // 1..6 in the order of the classification table
  std::uint64_t count = 0;
};

/// #T_3(a,b) from p, (a,b) and the resultant, without enumerating F_q.
inline T3Classification classify_T3(const ExtensionContext& ctx, CycloParams params) {
  detail::require_r3(ctx);
  validate(ctx, params);
  const auto& f = ctx.subfield();
  const auto q = ctx.q();
  if (ctx.p() == 3) {
    const auto c = f.sub(f.add(f.one(), detail::u_of(ctx, params)), detail::v_of(ctx, params));
    return c == f.zero() ? T3Classification{1, 1} : T3Classification{2, 0};
  }
  const std::uint64_t lambda = ctx.p() == 2 ? 0 : (q - 1) / 2;
  if (params.a == 0 && params.b == lambda) return (q - 1) % 3 == 0 ? T3Classification{3, 2} : T3Classification{4, 0};
  return resultant_r3(ctx, params) == f.zero() ? T3Classification{5, 1} : T3Classification{6, 0};
}

/// #Im(phi_{a,b}) for phi(x) = x - 1 - omega^{ak}/x + omega^{bk}/(x+1) on F_q \ {0,-1}.
inline std::uint64_t image_count_phi(const ExtensionContext& ctx, CycloParams params) {
  detail::require_r3(ctx);
  validate(ctx, params);
  const auto& f = ctx.subfield();
  const auto u = detail::u_of(ctx, params), v = detail::v_of(ctx, params);
  const auto minus_one = f.neg(f.one());
  std::vector<bool> hit(f.order(), false);
  for (Subfield::value_type x = 1; x < f.order(); ++x) {
    if (x == minus_one) continue;
    const auto xp1 = f.add(x, f.one());
    const auto y = f.add(f.sub(f.sub(x, f.one()), f.div(u, x)), f.div(v, xp1));
    hit[y] = true;
  }
  return static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), true));
}

}  // namespace cyclonum
