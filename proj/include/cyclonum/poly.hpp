#pragma once

#include <concepts>
#include <cstdint>
#include <vector>

#include "cyclonum/errors.hpp"
#include "cyclonum/integer.hpp"

namespace cyclonum {

/// Minimal interface for the coefficient field of a univariate polynomial.
template <class R>
concept CoefficientField = requires(const R& f, typename R::value_type a, typename R::value_type b) {
  { f.zero() } -> std::same_as<typename R::value_type>;
  { f.one() } -> std::same_as<typename R::value_type>;
  { f.add(a, b) } -> std::same_as<typename R::value_type>;
  { f.sub(a, b) } -> std::same_as<typename R::value_type>;
  { f.mul(a, b) } -> std::same_as<typename R::value_type>;
  { f.neg(a) } -> std::same_as<typename R::value_type>;
  { f.inv(a) } -> std::same_as<typename R::value_type>;
  { f.order() } -> std::convertible_to<std::uint64_t>;
};

/// Z/pZ with residues stored as integers in [0, p-1].
struct PrimeField {
  using value_type = std::uint32_t;
  std::uint32_t p;

  value_type zero() const { return 0; }
  value_type one() const { return 1 % p; }
  value_type add(value_type a, value_type b) const { return static_cast<value_type>((std::uint64_t{a} + b) % p); }
  value_type sub(value_type a, value_type b) const { return static_cast<value_type>((std::uint64_t{a} + p - b) % p); }
  value_type mul(value_type a, value_type b) const { return static_cast<value_type>((std::uint64_t{a} * b) % p); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type pow(value_type a, std::uint64_t e) const {
    std::uint64_t result = 1 % p, base = a % p;
    for (; e > 0; e >>= 1, base = base * base % p)
      if (e & 1) result = result * base % p;
    return static_cast<value_type>(result);
  }
  value_type inv(value_type a) const {
    if (a % p == 0) fail(ErrorKind::DivisionByZero, "inverse of 0 in Z/pZ");
    return pow(a, p - 2);
  }
  std::uint64_t order() const { return p; }
};

/// Dense polynomial, coefficient of X^i at index i, no trailing zeros.
template <CoefficientField F>
using Poly = std::vector<typename F::value_type>;

namespace poly {

template <CoefficientField F>
void trim(const F& field, Poly<F>& f) {
  while (!f.empty() && f.back() == field.zero()) f.pop_back();
}

/// -1 for the zero polynomial.
template <CoefficientField F>
long degree(const Poly<F>& f) {
  return static_cast<long>(f.size()) - 1;
}

template <CoefficientField F>
Poly<F> monomial(const F& field, std::size_t exponent) {
  Poly<F> m(exponent + 1, field.zero());
  m[exponent] = field.one();
  return m;
}

template <CoefficientField F>
Poly<F> add(const F& field, const Poly<F>& f, const Poly<F>& g) {
  Poly<F> out(std::max(f.size(), g.size()), field.zero());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = field.add(out[i], g[i]);
  trim(field, out);
  return out;
}

template <CoefficientField F>
Poly<F> sub(const F& field, const Poly<F>& f, const Poly<F>& g) {
  Poly<F> out(std::max(f.size(), g.size()), field.zero());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = field.sub(out[i], g[i]);
  trim(field, out);
  return out;
}

template <CoefficientField F>
Poly<F> mul(const F& field, const Poly<F>& f, const Poly<F>& g) {
  if (f.empty() || g.empty()) return {};
  Poly<F> out(f.size() + g.size() - 1, field.zero());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == field.zero()) continue;
    for (std::size_t j = 0; j < g.size(); ++j) out[i + j] = field.add(out[i + j], field.mul(f[i], g[j]));
  }
  trim(field, out);
  return out;
}

/// Remainder of f modulo a nonzero divisor.
template <CoefficientField F>
Poly<F> mod(const F& field, Poly<F> f, const Poly<F>& divisor) {
  if (divisor.empty()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
  trim(field, f);
  const auto dd = divisor.size() - 1;
  const auto lead_inv = field.inv(divisor.back());
  while (f.size() > dd) {
    const auto shift = f.size() - 1 - dd;
    const auto factor = field.mul(f.back(), lead_inv);
    for (std::size_t i = 0; i <= dd; ++i) f[shift + i] = field.sub(f[shift + i], field.mul(factor, divisor[i]));
    trim(field, f);
  }
  return f;
}

template <CoefficientField F>
Poly<F> mulmod(const F& field, const Poly<F>& f, const Poly<F>& g, const Poly<F>& modulus) {
  return mod(field, mul(field, f, g), modulus);
}

template <CoefficientField F>
Poly<F> powmod(const F& field, Poly<F> base, std::uint64_t exponent, const Poly<F>& modulus) {
  Poly<F> result = mod(field, Poly<F>{field.one()}, modulus);
  base = mod(field, std::move(base), modulus);
  for (; exponent > 0; exponent >>= 1) {
    if (exponent & 1) result = mulmod(field, result, base, modulus);
    if (exponent > 1) base = mulmod(field, base, base, modulus);
  }
  return result;
}

/// Monic gcd; the gcd of two zero polynomials is zero.
template <CoefficientField F>
Poly<F> gcd(const F& field, Poly<F> f, Poly<F> g) {
  trim(field, f);
  trim(field, g);
  while (!g.empty()) {
    auto r = mod(field, f, g);
    f = std::move(g);
    g = std::move(r);
  }
  if (!f.empty()) {
    const auto lead_inv = field.inv(f.back());
    for (auto& c : f) c = field.mul(c, lead_inv);
  }
  return f;
}

template <CoefficientField F>
typename F::value_type evaluate(const F& field, const Poly<F>& f, typename F::value_type x) {
  auto acc = field.zero();
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = field.add(field.mul(acc, x), *it);
  return acc;
}

/// Rabin's test: f of degree d is irreducible iff X^{s^d} = X mod f and
/// gcd(X^{s^{d/l}} - X, f) = 1 for each prime l | d, where s is the field order.
template <CoefficientField F>
bool is_irreducible(const F& field, const Poly<F>& f) {
  const long d = degree<F>(f);
  if (d <= 0) return false;
  if (d == 1) return true;
  const std::uint64_t s = field.order();
  const auto x = mod(field, monomial(field, 1), f);
  // frobenius[i] = X^{s^i} mod f
  std::vector<Poly<F>> frobenius{x};
  for (long i = 1; i <= d; ++i) frobenius.push_back(powmod(field, frobenius.back(), s, f));
  if (frobenius[static_cast<std::size_t>(d)] != x) return false;
  for (auto l : prime_factors(static_cast<std::uint64_t>(d))) {
    const auto h = sub(field, frobenius[static_cast<std::size_t>(d) / l], x);
    if (degree<F>(gcd(field, h, f)) != 0) return false;
  }
  return true;
}

}  // namespace poly
}  // namespace cyclonum
