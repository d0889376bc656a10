#pragma once

#include <cstdint>
#include <vector>

#include "cyclonum/errors.hpp"
#include "cyclonum/field.hpp"
#include "cyclonum/integer.hpp"
#include "cyclonum/oracle.hpp"

namespace cyclonum {

inline constexpr std::uint64_t kDefaultRankCap = 400;

/// binom(k, m) mod p by Lucas' theorem: product of digit binomials in base p.
inline std::uint32_t binom_mod_p(const BigInt& k, const BigInt& m, std::uint32_t p) {
  if (m < 0 || m > k) fail(ErrorKind::OutOfRange, "binom_mod_p requires 0 <= m <= k");
  const PrimeField zp{p};
  // Pascal's triangle mod p for single digits.
  std::vector<std::vector<std::uint32_t>> small(p, std::vector<std::uint32_t>(p, 0));
  for (std::uint32_t i = 0; i < p; ++i) {
    small[i][0] = 1 % p;
    for (std::uint32_t j = 1; j <= i; ++j) small[i][j] = zp.add(small[i - 1][j - 1], j < i ? small[i - 1][j] : 0);
  }
  std::uint32_t result = 1 % p;
  BigInt kk = k, mm = m;
  while (mm > 0) {
    const auto dk = static_cast<std::uint32_t>(kk % p);
    const auto dm = static_cast<std::uint32_t>(mm % p);
    if (dm > dk) return 0;
    result = zp.mul(result, small[dk][dm]);
    kk /= p;
    mm /= p;
  }
  return result;
}

/// Dense k x k matrix over F_{q^r}, row-major, entries in packed form.
class CyclotomicMatrix {
 public:
  CyclotomicMatrix(std::size_t size, std::vector<ElementIndex> entries) : size_(size), entries_(std::move(entries)) {}

  std::size_t size() const { return size_; }
  ElementIndex at(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }
  FieldElement entry(const ExtensionContext& ctx, std::size_t i, std::size_t j) const { return ctx.unpack(at(i, j)); }
  const std::vector<ElementIndex>& entries() const { return entries_; }
  std::vector<ElementIndex>& entries() { return entries_; }

 private:
  std::size_t size_;
  std::vector<ElementIndex> entries_;
};

/// C^{(a,b)}: diagonal 1 + omega^{ak} - omega^{bk}, binom(k, j-i) above the
/// diagonal, omega^{ak} binom(k, i-j) below.
inline CyclotomicMatrix build_C(const ExtensionContext& ctx, CycloParams params,
                                std::uint64_t size_cap = kDefaultRankCap) {
  validate(ctx, params);
  const auto k = ctx.k();
  if (k > size_cap) fail(ErrorKind::SizeCapExceeded, "k = " + std::to_string(k) + " exceeds the rank cap");
  const auto u = ctx.omega_power(static_cast<std::int64_t>(params.a * k));
  const auto v = ctx.omega_power(static_cast<std::int64_t>(params.b * k));
  const auto diagonal = ctx.sub(ctx.add(ExtensionContext::one_index(), u), v);

  std::vector<ElementIndex> band(k);
  for (std::uint64_t d = 1; d < k; ++d) band[d] = ElementIndex{binom_mod_p(BigInt(k), BigInt(d), ctx.p())};

  std::vector<ElementIndex> entries(k * k);
  for (std::uint64_t i = 0; i < k; ++i)
    for (std::uint64_t j = 0; j < k; ++j) {
      ElementIndex& out = entries[i * k + j];
      if (i == j) out = diagonal;
      else if (i < j) out = band[j - i];
      else out = ctx.mul(u, band[i - j]);
    }
  return CyclotomicMatrix(k, std::move(entries));
}

/// Rank by Gaussian elimination; pivot is the first nonzero entry of the column.
inline std::uint64_t rank_ffield(const ExtensionContext& ctx, CyclotomicMatrix matrix) {
  const auto n = matrix.size();
  auto& m = matrix.entries();
  std::uint64_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < n && m[pivot * n + col].value == 0) ++pivot;
    if (pivot == n) continue;
    if (pivot != rank)
      for (std::size_t j = col; j < n; ++j) std::swap(m[pivot * n + j], m[rank * n + j]);
    const auto pivot_inv = ctx.inv(m[rank * n + col]);
    for (std::size_t i = rank + 1; i < n; ++i) {
      const auto lead = m[i * n + col];
      if (lead.value == 0) continue;
      const auto factor = ctx.neg(ctx.mul(lead, pivot_inv));
      for (std::size_t j = col; j < n; ++j) {
        const auto src = m[rank * n + j];
        if (src.value != 0) m[i * n + j] = ctx.add(m[i * n + j], ctx.mul(factor, src));
      }
    }
    ++rank;
  }
  return rank;
}

/// (a,b)_{q-1} = k - rank C^{(a,b)}.
inline std::uint64_t cyclotomic_by_rank(const ExtensionContext& ctx, CycloParams params,
                                        std::uint64_t size_cap = kDefaultRankCap) {
  const auto rank = rank_ffield(ctx, build_C(ctx, params, size_cap));
  if (rank > ctx.k()) fail(ErrorKind::OutOfRange, "rank exceeds matrix size");
  return ctx.k() - rank;
}

}  // namespace cyclonum
