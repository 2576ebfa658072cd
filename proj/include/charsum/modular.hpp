#pragma once

// Modular arithmetic on int64_t. Intermediate products are widened to
// unsigned __int128, so every routine here is safe for moduli up to 2^62.

#include <cstdint>
#include <numeric>
#include <string>

#include "charsum/errors.hpp"

namespace charsum {

/// Least nonnegative residue of a mod m (m > 0); works for negative a.
[[nodiscard]] constexpr int64_t mod_reduce(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

[[nodiscard]] inline int64_t mul_mod(int64_t a, int64_t b, int64_t m) {
  return static_cast<int64_t>(static_cast<unsigned __int128>(mod_reduce(a, m)) *
                              static_cast<unsigned __int128>(mod_reduce(b, m)) %
                              static_cast<unsigned __int128>(m));
}

[[nodiscard]] inline int64_t pow_mod(int64_t base, uint64_t exp, int64_t m) {
  if (m == 1) return 0;
  int64_t acc = 1;
  int64_t b = mod_reduce(base, m);
  while (exp != 0) {
    if (exp & 1) acc = mul_mod(acc, b, m);
    b = mul_mod(b, b, m);
    exp >>= 1;
  }
  return acc;
}

/// Inverse of a mod m via extended Euclid. Throws non_unit_error when
/// gcd(a, m) != 1.
[[nodiscard]] inline int64_t inverse_mod(int64_t a, int64_t m) {
  if (m <= 0) throw std::invalid_argument("inverse_mod: modulus must be positive");
  int64_t r0 = m, r1 = mod_reduce(a, m);
  int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    int64_t q = r0 / r1;
    int64_t r2 = r0 - q * r1;
    int64_t s2 = s0 - q * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  if (r0 != 1)
    throw non_unit_error("inverse_mod: " + std::to_string(a) + " is not a unit mod " +
                         std::to_string(m));
  return mod_reduce(s0, m);
}

/// p-adic valuation of x (x != 0, p >= 2).
[[nodiscard]] constexpr int64_t valuation(int64_t x, int64_t p) {
  if (x == 0) throw std::invalid_argument("valuation: x must be nonzero");
  if (x < 0) x = -x;
  int64_t v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

/// Jacobi symbol (a/n) for odd n > 0. Returns 0 when gcd(a, n) > 1.
[[nodiscard]] inline int jacobi_symbol(int64_t a, int64_t n) {
  if (n <= 0 || n % 2 == 0)
    throw std::invalid_argument("jacobi_symbol: n must be odd and positive");
  a = mod_reduce(a, n);
  int sign = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      int64_t nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) sign = -sign;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) sign = -sign;
    a %= n;
  }
  return n == 1 ? sign : 0;
}

/// Deterministic Miller-Rabin for 64-bit inputs.
[[nodiscard]] inline bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  int64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    int64_t x = pow_mod(a, static_cast<uint64_t>(d), n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

/// p^e with overflow detection (throws std::invalid_argument past 2^62).
[[nodiscard]] constexpr int64_t checked_pow(int64_t p, int64_t e) {
  constexpr int64_t kLimit = int64_t{1} << 62;
  int64_t acc = 1;
  for (int64_t i = 0; i < e; ++i) {
    if (acc > kLimit / p) throw std::invalid_argument("checked_pow: overflow");
    acc *= p;
  }
  return acc;
}

}  // namespace charsum
