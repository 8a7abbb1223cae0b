#pragma once

#include <cstdint>
#include <numeric>

#include "qrmix/numeric.hpp"

namespace qrmix::modular {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<detail::u128>(a) * b % q);
}

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  const std::uint64_t s = a + b;
  return s >= q ? s - q : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return a >= b ? a - b : a + q - b;
}

inline std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t q) {
  std::uint64_t result = 1 % q;
  base %= q;
  while (exp > 0) {
    if (exp & 1U) result = mul(result, base, q);
    base = mul(base, base, q);
    exp >>= 1U;
  }
  return result;
}

/// Inverse modulo a prime q; a must be nonzero mod q.
inline std::uint64_t inv(std::uint64_t a, std::uint64_t q) { return pow(a, q - 2, q); }

/// Trial division; intended for arguments below 2^40.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

}  // namespace qrmix::modular
