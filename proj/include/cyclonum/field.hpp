#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclonum/errors.hpp"
#include "cyclonum/integer.hpp"
#include "cyclonum/poly.hpp"

namespace cyclonum {

/// Default upper bound on q^r for anything that enumerates F_{q^r}.
inline constexpr std::uint64_t kDefaultFieldCap = 2'000'000;

/// Element of F_{q^r} = F_p[X]/(modulus): coefficient of X^i at index i,
/// always of length n*r and fully reduced.
struct FieldElement {
  std::vector<std::uint32_t> coeffs;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

/// The same element encoded as the base-p integer sum c_i p^i. This is the
/// ordering used for modulus and generator selection.
struct ElementIndex {
  std::uint32_t value = 0;

  friend auto operator<=>(const ElementIndex&, const ElementIndex&) = default;
};

/// Lexicographically smallest monic irreducible polynomial of degree d over Z/pZ.
/// Returned low-to-high with the leading 1 included (size d+1).
inline std::vector<std::uint32_t> find_irreducible(std::uint32_t p, unsigned d) {
  if (!is_prime(p)) fail(ErrorKind::InvalidArgument, "characteristic must be prime");
  if (d == 0) fail(ErrorKind::InvalidArgument, "degree must be positive");
  const auto count = checked_pow(p, d);
  if (!count) fail(ErrorKind::SizeCapExceeded, "search space too large");
  const PrimeField zp{p};
  Poly<PrimeField> f(d + 1, 0);
  for (std::uint64_t tail = 0; tail < *count; ++tail) {
    std::uint64_t t = tail;
    for (unsigned i = 0; i < d; ++i, t /= p) f[i] = static_cast<std::uint32_t>(t % p);
    f[d] = 1;
    if (poly::is_irreducible(zp, f)) return f;
  }
  fail(ErrorKind::InvalidArgument, "no irreducible polynomial found");  // unreachable for prime p
}

/// The copy of F_q inside F_{q^r}. Elements are small codes: 0 is zero and
/// code j+1 stands for g^j with g = omega^k, so code-1 is the discrete log
/// to base g. Satisfies CoefficientField.
class Subfield {
 public:
  using value_type = std::uint32_t;

  Subfield() = default;
  Subfield(std::uint64_t q, std::vector<ElementIndex> lifts, std::vector<std::uint32_t> add_table,
           std::vector<std::uint32_t> neg_table, std::vector<std::uint32_t> integer_codes)
      : q_(q),
        lifts_(std::move(lifts)),
        add_(std::move(add_table)),
        neg_(std::move(neg_table)),
        integers_(std::move(integer_codes)) {}

  std::uint64_t order() const { return q_; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  /// g = omega^k, a generator of F_q^x.
  value_type generator() const { return q_ > 2 ? 2 : 1; }

  value_type add(value_type a, value_type b) const { return add_[a * q_ + b]; }
  value_type neg(value_type a) const { return neg_[a]; }
  value_type sub(value_type a, value_type b) const { return add(a, neg(b)); }
  value_type mul(value_type a, value_type b) const {
    if (a == 0 || b == 0) return 0;
    return static_cast<value_type>((std::uint64_t{a} - 1 + b - 1) % (q_ - 1) + 1);
  }
  value_type inv(value_type a) const {
    if (a == 0) fail(ErrorKind::DivisionByZero, "inverse of 0 in F_q");
    return static_cast<value_type>((q_ - 1 - (a - 1)) % (q_ - 1) + 1);
  }
  value_type pow(value_type a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    return static_cast<value_type>((std::uint64_t{a} - 1) * (e % (q_ - 1)) % (q_ - 1) + 1);
  }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }

  /// g^j for any integer j.
  value_type from_exponent(std::int64_t j) const {
    const auto m = static_cast<std::int64_t>(q_ - 1);
    return static_cast<value_type>(((j % m) + m) % m + 1);
  }
  /// Discrete log to base g of a nonzero code.
  std::uint64_t exponent(value_type a) const {
    if (a == 0) fail(ErrorKind::ZeroArgument, "discrete log of 0");
    return a - 1;
  }
  /// Image of the integer m under Z -> F_p -> F_q.
  value_type from_integer(std::int64_t m) const {
    const auto p = static_cast<std::int64_t>(integers_.size());
    return integers_[static_cast<std::size_t>(((m % p) + p) % p)];
  }
  std::uint64_t characteristic() const { return integers_.size(); }

  ElementIndex lift(value_type a) const { return lifts_[a]; }
  const std::vector<ElementIndex>& lifts() const { return lifts_; }

 private:
  std::uint64_t q_ = 0;
  std::vector<ElementIndex> lifts_;
  std::vector<std::uint32_t> add_;
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> integers_;
};

/// The tower F_p < F_q < F_{q^r}, with a fixed generator omega of F_{q^r}^x
/// and full discrete-log tables. Immutable after build().
class ExtensionContext {
 public:
  static ExtensionContext build(std::uint32_t p, unsigned n, unsigned r,
                                std::optional<std::uint64_t> target_norm = std::nullopt,
                                std::uint64_t size_cap = kDefaultFieldCap) {
    if (!is_prime(p)) fail(ErrorKind::InvalidArgument, "p must be prime");
    if (n < 1) fail(ErrorKind::InvalidArgument, "n must be at least 1");
    if (r < 2) fail(ErrorKind::InvalidArgument, "r must be at least 2");
    const auto size = checked_pow(p, std::uint64_t{n} * r);
    if (!size || *size > size_cap || *size >= (std::uint64_t{1} << 31))
      fail(ErrorKind::SizeCapExceeded, "q^r exceeds the enumeration cap of " + std::to_string(size_cap));

    ExtensionContext ctx;
    ctx.p_ = p;
    ctx.n_ = n;
    ctx.r_ = r;
    ctx.degree_ = n * r;
    ctx.size_ = *size;
    ctx.q_ = *checked_pow(p, n);
    ctx.k_ = (ctx.size_ - 1) / (ctx.q_ - 1);
    ctx.modulus_ = find_irreducible(p, ctx.degree_);
    ctx.place_values_.resize(ctx.degree_);
    for (unsigned i = 0; i < ctx.degree_; ++i) ctx.place_values_[i] = static_cast<std::uint32_t>(*checked_pow(p, i));
    ctx.target_norm_ = target_norm;
    ctx.select_generator(target_norm);
    ctx.build_tables();
    return ctx;
  }

  std::uint32_t p() const { return p_; }
  unsigned n() const { return n_; }
  unsigned r() const { return r_; }
  /// [F_{q^r} : F_p] = n*r.
  unsigned degree() const { return degree_; }
  std::uint64_t q() const { return q_; }
  std::uint64_t k() const { return k_; }
  std::uint64_t e() const { return q_ - 1; }
  /// q^r
  std::uint64_t field_size() const { return size_; }
  /// q^r - 1
  std::uint64_t group_order() const { return size_ - 1; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  const FieldElement& omega() const { return omega_; }
  std::optional<std::uint64_t> target_norm() const { return target_norm_; }
  const Subfield& subfield() const { return subfield_; }

  // Coefficient-vector arithmetic.

  FieldElement zero() const { return FieldElement{std::vector<std::uint32_t>(degree_, 0)}; }
  FieldElement one() const { return from_integer(1); }
  FieldElement from_integer(std::int64_t m) const {
    auto x = zero();
    const auto pp = static_cast<std::int64_t>(p_);
    x.coeffs[0] = static_cast<std::uint32_t>(((m % pp) + pp) % pp);
    return x;
  }
  bool is_zero(const FieldElement& x) const {
    for (auto c : x.coeffs)
      if (c != 0) return false;
    return true;
  }
  FieldElement add(const FieldElement& x, const FieldElement& y) const {
    FieldElement out = zero();
    for (unsigned i = 0; i < degree_; ++i) out.coeffs[i] = zp().add(x.coeffs[i], y.coeffs[i]);
    return out;
  }
  FieldElement sub(const FieldElement& x, const FieldElement& y) const {
    FieldElement out = zero();
    for (unsigned i = 0; i < degree_; ++i) out.coeffs[i] = zp().sub(x.coeffs[i], y.coeffs[i]);
    return out;
  }
  FieldElement neg(const FieldElement& x) const { return sub(zero(), x); }
  FieldElement mul(const FieldElement& x, const FieldElement& y) const {
    return canonical(poly::mulmod(zp(), strip(x), strip(y), modulus_));
  }
  FieldElement pow(const FieldElement& x, const BigInt& exponent) const {
    if (exponent < 0) fail(ErrorKind::InvalidArgument, "negative exponent");
    FieldElement result = one();
    if (exponent == 0) return result;
    const auto top = boost::multiprecision::msb(exponent);
    for (auto bit = static_cast<long>(top); bit >= 0; --bit) {
      result = mul(result, result);
      if (boost::multiprecision::bit_test(exponent, static_cast<unsigned>(bit))) result = mul(result, x);
    }
    return result;
  }
  FieldElement pow(const FieldElement& x, std::uint64_t exponent) const { return pow(x, BigInt(exponent)); }
  /// x^(q^r - 2).
  FieldElement inv(const FieldElement& x) const {
    if (is_zero(x)) fail(ErrorKind::DivisionByZero, "inverse of 0");
    return pow(x, size_ - 2);
  }

  /// N_{F_{q^r}/F_q}(x) = x^k.
  FieldElement norm(const FieldElement& x) const { return pow(x, k_); }
  /// x -> x^q, generator of Gal(F_{q^r}/F_q).
  FieldElement frobenius(const FieldElement& x) const { return pow(x, q_); }

  /// Tr_{F_{p^m}/F_p}(x) as an integer in [0, p-1], for x in the subfield F_{p^m}.
  std::uint32_t trace_to_prime(const FieldElement& x, unsigned m) const {
    if (m == 0 || degree_ % m != 0) fail(ErrorKind::InvalidArgument, "F_{p^m} is not a subfield");
    FieldElement sum = zero();
    FieldElement conj = x;
    for (unsigned mu = 0; mu < m; ++mu) {
      sum = add(sum, conj);
      conj = pow(conj, std::uint64_t{p_});
    }
    if (conj != x) fail(ErrorKind::NotInSubfield, "x^(p^m) != x");
    return sum.coeffs[0];
  }

  // Packed arithmetic through the log/antilog tables.

  ElementIndex pack(const FieldElement& x) const {
    std::uint32_t v = 0;
    for (unsigned i = 0; i < degree_; ++i) v += x.coeffs[i] * place_values_[i];
    return ElementIndex{v};
  }
  FieldElement unpack(ElementIndex x) const {
    FieldElement out = zero();
    std::uint32_t v = x.value;
    for (unsigned i = 0; i < degree_; ++i, v /= p_) out.coeffs[i] = v % p_;
    return out;
  }
  static constexpr ElementIndex zero_index() { return ElementIndex{0}; }
  static constexpr ElementIndex one_index() { return ElementIndex{1}; }

  /// omega^j for any integer j.
  ElementIndex omega_power(std::int64_t j) const {
    const auto m = static_cast<std::int64_t>(size_ - 1);
    return ElementIndex{exp_[static_cast<std::size_t>(((j % m) + m) % m)]};
  }
  std::uint64_t dlog(ElementIndex x) const {
    if (x.value == 0) fail(ErrorKind::ZeroArgument, "discrete log of 0");
    return log_[x.value];
  }
  std::uint64_t dlog(const FieldElement& x) const { return dlog(pack(x)); }

  ElementIndex add(ElementIndex x, ElementIndex y) const {
    if (x.value == 0) return y;
    if (y.value == 0) return x;
    const auto m = size_ - 1;
    const std::uint64_t lx = log_[x.value], ly = log_[y.value];
    const auto z = zech_[(ly + m - lx) % m];
    if (z == kNoLog) return zero_index();
    return ElementIndex{exp_[(lx + z) % m]};
  }
  ElementIndex neg(ElementIndex x) const {
    if (x.value == 0 || p_ == 2) return x;
    return ElementIndex{exp_[(log_[x.value] + (size_ - 1) / 2) % (size_ - 1)]};
  }
  ElementIndex sub(ElementIndex x, ElementIndex y) const { return add(x, neg(y)); }
  ElementIndex mul(ElementIndex x, ElementIndex y) const {
    if (x.value == 0 || y.value == 0) return zero_index();
    return ElementIndex{exp_[(std::uint64_t{log_[x.value]} + log_[y.value]) % (size_ - 1)]};
  }
  ElementIndex inv(ElementIndex x) const {
    if (x.value == 0) fail(ErrorKind::DivisionByZero, "inverse of 0");
    const auto m = size_ - 1;
    return ElementIndex{exp_[(m - log_[x.value]) % m]};
  }
  /// x + 1 without table lookups: bump the constant coefficient.
  ElementIndex plus_one(ElementIndex x) const {
    const auto c0 = x.value % p_;
    return ElementIndex{x.value - c0 + (c0 + 1) % p_};
  }

  /// Code of x in the subfield, or nullopt when x is not in F_q.
  std::optional<Subfield::value_type> subfield_code(ElementIndex x) const {
    if (x.value == 0) return 0;
    const auto j = log_[x.value];
    if (j % k_ != 0) return std::nullopt;
    return static_cast<Subfield::value_type>(j / k_ + 1);
  }
  std::optional<Subfield::value_type> subfield_code(const FieldElement& x) const { return subfield_code(pack(x)); }

 private:
  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  ExtensionContext() = default;

  PrimeField zp() const { return PrimeField{p_}; }

  Poly<PrimeField> strip(const FieldElement& x) const {
    Poly<PrimeField> f = x.coeffs;
    poly::trim(zp(), f);
    return f;
  }
  FieldElement canonical(Poly<PrimeField> f) const {
    f.resize(degree_, 0);
    return FieldElement{std::move(f)};
  }

  bool is_primitive(const FieldElement& x) const {
    if (is_zero(x)) return false;
    const auto order = size_ - 1;
    for (auto l : prime_factors(order))
      if (pow(x, order / l) == one()) return false;
    return true;
  }

  bool generates_subfield_group(const FieldElement& g) const {
    if (is_zero(g) || pow(g, q_) != g) return false;
    for (auto l : prime_factors(q_ - 1))
      if (pow(g, (q_ - 1) / l) == one()) return false;
    return true;
  }

  void select_generator(std::optional<std::uint64_t> target_norm) {
    std::optional<FieldElement> wanted;
    if (target_norm) {
      if (n_ == 1) {
        if (*target_norm == 0 || *target_norm >= p_)
          fail(ErrorKind::InvalidArgument, "norm target must lie in [1, p-1]");
        wanted = from_integer(static_cast<std::int64_t>(*target_norm));
      } else {
        select_generator(std::nullopt);
        wanted = pow(norm(omega_), *target_norm % (q_ - 1));
      }
      if (!generates_subfield_group(*wanted))
        fail(ErrorKind::InvalidArgument, "norm target is not a generator of F_q^x");
    }
    for (std::uint64_t v = 1; v < size_; ++v) {
      const auto candidate = unpack(ElementIndex{static_cast<std::uint32_t>(v)});
      if (wanted && norm(candidate) != *wanted) continue;
      if (is_primitive(candidate)) {
        omega_ = candidate;
        return;
      }
    }
    fail(ErrorKind::InvalidArgument, "no primitive element found");
  }

  void build_tables() {
    const auto m = size_ - 1;
    exp_.assign(m, 0);
    log_.assign(size_, kNoLog);
    FieldElement cur = one();
    for (std::uint64_t j = 0; j < m; ++j) {
      const auto idx = pack(cur).value;
      exp_[j] = idx;
      log_[idx] = static_cast<std::uint32_t>(j);
      cur = mul(cur, omega_);
    }
    zech_.assign(m, kNoLog);
    for (std::uint64_t j = 0; j < m; ++j) {
      const auto shifted = plus_one(ElementIndex{exp_[j]}).value;
      zech_[j] = shifted == 0 ? kNoLog : log_[shifted];
    }

    const auto q = q_;
    std::vector<ElementIndex> lifts(q);
    lifts[0] = zero_index();
    for (std::uint64_t j = 0; j + 1 < q; ++j) lifts[j + 1] = omega_power(static_cast<std::int64_t>(j * k_));
    std::vector<std::uint32_t> add_table(q * q), neg_table(q);
    for (std::uint64_t a = 0; a < q; ++a) {
      neg_table[a] = *subfield_code(neg(lifts[a]));
      for (std::uint64_t b = 0; b < q; ++b) add_table[a * q + b] = *subfield_code(add(lifts[a], lifts[b]));
    }
    std::vector<std::uint32_t> integers(p_);
    for (std::uint32_t i = 0; i < p_; ++i) integers[i] = *subfield_code(ElementIndex{i});
    subfield_ = Subfield(q, std::move(lifts), std::move(add_table), std::move(neg_table), std::move(integers));
  }

  std::uint32_t p_ = 0;
  unsigned n_ = 0, r_ = 0, degree_ = 0;
  std::uint64_t q_ = 0, k_ = 0, size_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> place_values_;
  std::optional<std::uint64_t> target_norm_;
  FieldElement omega_;
  std::vector<std::uint32_t> exp_, log_, zech_;
  Subfield subfield_;
};

/// Coefficients low-to-high, comma separated.
inline std::string to_string(const FieldElement& x) {
  std::string out;
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(x.coeffs[i]);
  }
  return out;
}

}  // namespace cyclonum
