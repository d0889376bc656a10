#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cyclonum/errors.hpp"
#include "cyclonum/field.hpp"

namespace cyclonum {

/// The pair (a, b) of a cyclotomic number (a,b)_{q-1}, 0 <= a, b <= q-2.
struct CycloParams {
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  friend bool operator==(const CycloParams&, const CycloParams&) = default;
};

inline void validate(const ExtensionContext& ctx, CycloParams params) {
  if (params.a > ctx.q() - 2 || params.b > ctx.q() - 2)
    fail(ErrorKind::OutOfRange, "a and b must lie in [0, q-2]");
}

enum class TableMethod { Coset, Norm };

constexpr std::string_view to_string(TableMethod m) { return m == TableMethod::Coset ? "oracle-coset" : "oracle-norm"; }

/// All (q-1)^2 cyclotomic numbers of one context; values[a][b].
struct CycloTable {
  std::uint32_t p = 0;
  unsigned n = 0, r = 0;
  std::uint64_t q = 0;
  std::string method;
  std::vector<std::vector<std::uint64_t>> values;

  std::uint64_t sum() const {
    std::uint64_t s = 0;
    for (const auto& row : values)
      for (auto v : row) s += v;
    return s;
  }
};

/// #{x in C_a : x+1 in C_b}, walking C_a = omega^a <omega^e> explicitly.
inline std::uint64_t count_by_coset(const ExtensionContext& ctx, CycloParams params) {
  validate(ctx, params);
  const auto e = ctx.e();
  std::uint64_t count = 0;
  for (std::uint64_t j = 0; j < ctx.k(); ++j) {
    const auto x = ctx.omega_power(static_cast<std::int64_t>(params.a + j * e));
    const auto y = ctx.plus_one(x);
    if (y.value == 0) continue;
    if (ctx.dlog(y) % e == params.b) ++count;
  }
  return count;
}

/// #{x != 0 : N(x) = omega^{ak}, N(x+1) = omega^{bk}}, norms evaluated as x^k
/// in coefficient arithmetic (no discrete-log tables involved).
inline std::uint64_t count_by_norm(const ExtensionContext& ctx, CycloParams params) {
  validate(ctx, params);
  const auto k = ctx.k();
  const auto target_a = ctx.pow(ctx.omega(), params.a * k);
  const auto target_b = ctx.pow(ctx.omega(), params.b * k);
  const auto one = ctx.one();
  std::uint64_t count = 0;
  for (std::uint64_t v = 1; v < ctx.field_size(); ++v) {
    const auto x = ctx.unpack(ElementIndex{static_cast<std::uint32_t>(v)});
    if (ctx.norm(x) != target_a) continue;
    const auto y = ctx.add(x, one);
    if (ctx.is_zero(y)) continue;
    if (ctx.norm(y) == target_b) ++count;
  }
  return count;
}

/// Every cell in one pass, bucketing each x by the cosets of x and x+1.
inline CycloTable full_table(const ExtensionContext& ctx, TableMethod method) {
  const auto q = ctx.q();
  CycloTable table{ctx.p(), ctx.n(), ctx.r(), q, std::string(to_string(method)),
                   std::vector<std::vector<std::uint64_t>>(q - 1, std::vector<std::uint64_t>(q - 1, 0))};
  const auto size = ctx.field_size();
  if (method == TableMethod::Coset) {
    const auto e = ctx.e();
    for (std::uint64_t v = 1; v < size; ++v) {
      const ElementIndex x{static_cast<std::uint32_t>(v)};
      const auto y = ctx.plus_one(x);
      if (y.value == 0) continue;
      ++table.values[ctx.dlog(x) % e][ctx.dlog(y) % e];
    }
    return table;
  }
  // Norm route: norm_code[v] is the exponent of N(x) to base omega^k, found by
  // matching x^k against the list of powers of omega^k.
  std::vector<FieldElement> subgroup;
  const auto g = ctx.pow(ctx.omega(), ctx.k());
  auto cur = ctx.one();
  for (std::uint64_t j = 0; j + 1 < q; ++j, cur = ctx.mul(cur, g)) subgroup.push_back(cur);
  std::vector<std::int64_t> norm_exponent(size, -1);
  for (std::uint64_t v = 1; v < size; ++v) {
    const auto nx = ctx.norm(ctx.unpack(ElementIndex{static_cast<std::uint32_t>(v)}));
    for (std::size_t j = 0; j < subgroup.size(); ++j)
      if (subgroup[j] == nx) {
        norm_exponent[v] = static_cast<std::int64_t>(j);
        break;
      }
  }
  for (std::uint64_t v = 1; v < size; ++v) {
    const auto y = ctx.plus_one(ElementIndex{static_cast<std::uint32_t>(v)});
    if (y.value == 0) continue;
    ++table.values[static_cast<std::size_t>(norm_exponent[v])][static_cast<std::size_t>(norm_exponent[y.value])];
  }
  return table;
}

}  // namespace cyclonum
