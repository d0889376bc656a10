#pragma once

// Independent reference code for the tests. Nothing here touches the
// library's log/Zech tables or its polynomial routines.

#include <array>
#include <cstdint>
#include <vector>

namespace reference {

using Coeffs = std::vector<std::uint32_t>;  // low to high, fixed length d

/// Schoolbook arithmetic in F_p[X]/(f) with f monic of degree d (f has d+1 entries).
struct NaiveField {
  std::uint32_t p;
  Coeffs f;

  unsigned degree() const { return static_cast<unsigned>(f.size() - 1); }

  std::uint64_t size() const {
    std::uint64_t s = 1;
    for (unsigned i = 0; i < degree(); ++i) s *= p;
    return s;
  }

  Coeffs element(std::uint64_t index) const {
    Coeffs c(degree());
    for (auto& x : c) {
      x = static_cast<std::uint32_t>(index % p);
      index /= p;
    }
    return c;
  }

  Coeffs one() const {
    Coeffs c(degree(), 0);
    c[0] = 1;
    return c;
  }

  Coeffs add(const Coeffs& x, const Coeffs& y) const {
    Coeffs out(degree());
    for (unsigned i = 0; i < degree(); ++i) out[i] = (x[i] + y[i]) % p;
    return out;
  }

  Coeffs mul(const Coeffs& x, const Coeffs& y) const {
    const unsigned d = degree();
    std::vector<std::uint64_t> prod(2 * d, 0);
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p;
    for (unsigned t = 2 * d - 1; t >= d; --t) {
      const auto c = prod[t];
      if (c == 0) continue;
      prod[t] = 0;
      for (unsigned i = 0; i < d; ++i) prod[t - d + i] = (prod[t - d + i] + (p - f[i]) % p * c) % p;
    }
    Coeffs out(d);
    for (unsigned i = 0; i < d; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return out;
  }

  Coeffs pow(Coeffs x, std::uint64_t e) const {
    Coeffs result = one();
    for (; e > 0; e >>= 1) {
      if (e & 1) result = mul(result, x);
      x = mul(x, x);
    }
    return result;
  }
};

/// Whether a monic polynomial over F_p (p prime) has a monic factor of degree 1..deg/2,
/// by trial division against every candidate.
inline bool has_small_factor(std::uint32_t p, const Coeffs& f) {
  const unsigned d = static_cast<unsigned>(f.size() - 1);
  for (unsigned fd = 1; fd <= d / 2; ++fd) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < fd; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Coeffs g(fd + 1);
      auto rest = idx;
      for (unsigned i = 0; i < fd; ++i) {
        g[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      g[fd] = 1;
      std::vector<std::int64_t> r(f.begin(), f.end());
      for (int t = static_cast<int>(d); t >= static_cast<int>(fd); --t) {
        const auto c = ((r[t] % p) + p) % p;
        if (c == 0) continue;
        for (unsigned i = 0; i <= fd; ++i) r[t - fd + i] -= c * g[i];
      }
      bool zero = true;
      for (unsigned i = 0; i < fd; ++i)
        if (((r[i] % p) + p) % p != 0) zero = false;
      if (zero) return true;
    }
  }
  return false;
}

/// The printed adjacency matrix of the q = 5 digraph under the natural numbering.
inline constexpr std::array<std::array<int, 16>, 16> kA5 = {{
    {0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0},
    {0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1},
    {0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0},
    {0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0},
    {0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1},
    {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0},
    {0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0},
    {0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0},
    {0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0},
    {0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0},
    {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1},
    {1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0},
    {0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0},
    {0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0},
    {1, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0},
    {0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0},
}};

/// Every (a,b)_{q-1} by brute force: N(x) = x^k in naive arithmetic, cosets
/// read off as exponents of omega^k.
inline std::vector<std::vector<std::uint64_t>> brute_table(const NaiveField& field, const Coeffs& omega,
                                                           std::uint64_t q) {
  const auto size = field.size();
  const auto k = (size - 1) / (q - 1);
  const auto g = field.pow(omega, k);
  std::vector<Coeffs> powers{field.one()};
  for (std::uint64_t j = 1; j + 1 < q; ++j) powers.push_back(field.mul(powers.back(), g));
  const auto exponent = [&](const Coeffs& x) -> std::int64_t {
    const auto n = field.pow(x, k);
    for (std::size_t j = 0; j < powers.size(); ++j)
      if (powers[j] == n) return static_cast<std::int64_t>(j);
    return -1;
  };
  std::vector<std::vector<std::uint64_t>> table(q - 1, std::vector<std::uint64_t>(q - 1, 0));
  for (std::uint64_t v = 1; v < size; ++v) {
    const auto x = field.element(v);
    const auto y = field.add(x, field.one());
    if (y == Coeffs(field.degree(), 0)) continue;
    ++table[static_cast<std::size_t>(exponent(x))][static_cast<std::size_t>(exponent(y))];
  }
  return table;
}

}  // namespace reference
