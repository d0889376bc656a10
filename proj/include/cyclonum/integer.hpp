#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cyclonum {

// Expression templates off so ternaries and auto behave like plain values.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

/// base^exp, or nullopt on 64-bit overflow.
constexpr std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) return std::nullopt;
    result *= base;
  }
  return result;
}

inline BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Distinct prime divisors in increasing order.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// If n = p^e for a prime p, returns {p, e}.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> prime_power(std::uint64_t n) {
  auto primes = prime_factors(n);
  if (primes.size() != 1) return std::nullopt;
  std::uint64_t e = 0;
  while (n > 1) {
    n /= primes[0];
    ++e;
  }
  return std::pair{primes[0], e};
}

constexpr std::uint64_t ceil_div(std::uint64_t num, std::uint64_t den) { return num / den + (num % den != 0); }

}  // namespace cyclonum
