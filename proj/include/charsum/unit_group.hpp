#pragma once

// Structure of the unit group (Z/p^m)^*.
//
// For odd p the group is cyclic and we fix one generator a for all powers of
// p: the smallest primitive root mod p^2 (such an a generates (Z/p^j)^* for
// every j >= 1). For p = 2 and m >= 3 the group is <-1> x <5>; every unit is
// (-1)^e * 5^t with e in {0,1} and 0 <= t < 2^(m-2). The degenerate moduli 2
// and 4 reuse the same shape with a trivial 5-part.
//
// A UnitGroupContext precomputes the full discrete-log table for its modulus
// plus the constants r and R_j defined by
//     a^phi(p)     = 1 + r p         (odd p)
//     a^phi(p^j)   = 1 + R_j p^j     (odd p, j >= 1)
//     5^(2^(j-2))  = 1 + R_j 2^j     (p = 2,  j >= 2)
// with R_j reported mod p^m. Contexts are immutable once built; every method
// is a pure read, so one context can serve any number of threads.

#include <cstdint>
#include <string>
#include <vector>

#include "charsum/errors.hpp"
#include "charsum/modular.hpp"

namespace charsum {

// Largest modulus for which a context will allocate its dlog table.
inline constexpr int64_t kDlogTableGuard = 1'000'000;

struct PrimePowerModulus {
  int64_t p = 0;
  int64_t m = 0;
  int64_t q = 0;    // p^m
  int64_t phi = 0;  // p^(m-1) (p-1)

  static PrimePowerModulus make(int64_t p, int64_t m) {
    if (m < 1) throw std::invalid_argument("PrimePowerModulus: m must be >= 1");
    if (!is_prime(p)) throw std::invalid_argument("PrimePowerModulus: p must be prime");
    PrimePowerModulus out;
    out.p = p;
    out.m = m;
    out.q = checked_pow(p, m);
    out.phi = out.q / p * (p - 1);
    return out;
  }
};

/// Exponents of a unit with respect to the canonical generators:
/// x = (-1)^e * a^t for p = 2 (a = 5), x = a^t with e = 0 for odd p.
struct UnitExponents {
  int64_t e = 0;
  int64_t t = 0;
  friend bool operator==(const UnitExponents&, const UnitExponents&) = default;
};

/// Smallest a >= 2 that is a primitive root mod p^2 (p an odd prime). Such an
/// a is automatically a primitive root mod p^j for every j >= 1, which is what
/// makes character labels comparable across moduli with the same p.
[[nodiscard]] inline int64_t find_primitive_root(int64_t p) {
  if (p == 2 || !is_prime(p))
    throw std::invalid_argument("find_primitive_root: p must be an odd prime");
  // Distinct prime factors of p - 1, by trial division.
  std::vector<int64_t> factors;
  int64_t n = p - 1;
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      factors.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) factors.push_back(n);

  for (int64_t a = 2;; ++a) {
    bool generates = true;
    for (int64_t f : factors) {
      if (pow_mod(a, static_cast<uint64_t>((p - 1) / f), p) == 1) {
        generates = false;
        break;
      }
    }
    if (!generates) continue;
    // Primitive root mod p; reject the rare a with a^(p-1) = 1 mod p^2.
    if (pow_mod(a, static_cast<uint64_t>(p - 1), p * p) != 1) return a;
  }
}

class UnitGroupContext {
 public:
  static UnitGroupContext build(int64_t p, int64_t m) {
    return UnitGroupContext(PrimePowerModulus::make(p, m));
  }

  const PrimePowerModulus& modulus() const { return mod_; }
  int64_t p() const { return mod_.p; }
  int64_t m() const { return mod_.m; }
  int64_t q() const { return mod_.q; }
  int64_t phi() const { return mod_.phi; }

  /// Order of the cyclic part indexed by t: phi(q) for odd p, 2^(m-2) for
  /// p = 2 with m >= 3, and 1 for q in {2, 4}.
  int64_t cyclic_order() const { return cyclic_order_; }

  /// The generator whose powers t indexes: a for odd p, 5 for p = 2. For
  /// q in {2, 4} the 5-part is trivial and this returns 1.
  int64_t generator() const { return gen_; }

  /// Human-readable generator list for reports.
  std::string generator_description() const {
    if (mod_.p != 2) return "a=" + std::to_string(gen_);
    if (mod_.m == 1) return "trivial";
    if (mod_.m == 2) return "-1";
    return "-1,5";
  }

  bool is_unit(int64_t x) const { return dlog_t_[index(x)] >= 0; }

  /// Decompose a unit into generator exponents. Throws non_unit_error when
  /// p | x.
  UnitExponents unit_exponents(int64_t x) const {
    size_t i = index(x);
    if (dlog_t_[i] < 0)
      throw non_unit_error("unit_exponents: " + std::to_string(x) + " is not a unit mod " +
                           std::to_string(mod_.q));
    return {dlog_e_.empty() ? 0 : int64_t{dlog_e_[i]}, int64_t{dlog_t_[i]}};
  }

  /// r with a^phi(p) = 1 + r p, reduced mod p. Odd p only.
  int64_t r() const {
    if (mod_.p == 2) throw std::invalid_argument("r: defined for odd p only");
    return r_;
  }

  /// R_j mod p^m. Odd p needs j >= 1, p = 2 needs j >= 2. Values for
  /// j <= m come from the table built at construction; larger j are computed
  /// on the fly (still a pure function of (p, m, j)).
  int64_t Rj(int64_t j) const {
    int64_t jmin = (mod_.p == 2) ? 2 : 1;
    if (j < jmin) throw std::invalid_argument("Rj: j out of range");
    if (j <= mod_.m) return rj_table_[static_cast<size_t>(j - jmin)];
    return compute_rj(j);
  }

 private:
  explicit UnitGroupContext(PrimePowerModulus mod) : mod_(mod) {
    if (mod_.q > kDlogTableGuard)
      throw resource_limit_error("UnitGroupContext: q = " + std::to_string(mod_.q) +
                                 " exceeds the dlog table guard (" +
                                 std::to_string(kDlogTableGuard) + ")");
    dlog_t_.assign(static_cast<size_t>(mod_.q), -1);
    if (mod_.p == 2) {
      build_two_power();
    } else {
      build_odd();
    }
    int64_t jmin = (mod_.p == 2) ? 2 : 1;
    for (int64_t j = jmin; j <= mod_.m; ++j) rj_table_.push_back(compute_rj(j));
  }

  void build_odd() {
    gen_ = find_primitive_root(mod_.p);
    cyclic_order_ = mod_.phi;
    int64_t x = 1;
    for (int64_t t = 0; t < mod_.phi; ++t) {
      dlog_t_[static_cast<size_t>(x)] = static_cast<int32_t>(t);
      x = mul_mod(x, gen_, mod_.q);
    }
    int64_t ap = pow_mod(gen_, static_cast<uint64_t>(mod_.p - 1), mod_.p * mod_.p);
    r_ = ((ap - 1) / mod_.p) % mod_.p;
  }

  void build_two_power() {
    if (mod_.m == 1) {
      gen_ = 1;
      cyclic_order_ = 1;
      dlog_t_[1] = 0;
      return;
    }
    gen_ = (mod_.m == 2) ? 1 : 5;
    cyclic_order_ = (mod_.m == 2) ? 1 : mod_.q / 4;
    dlog_e_.assign(static_cast<size_t>(mod_.q), 0);
    int64_t x = 1;
    for (int64_t t = 0; t < cyclic_order_; ++t) {
      dlog_t_[static_cast<size_t>(x)] = static_cast<int32_t>(t);
      int64_t neg = mod_.q - x;
      dlog_t_[static_cast<size_t>(neg)] = static_cast<int32_t>(t);
      dlog_e_[static_cast<size_t>(neg)] = 1;
      x = mul_mod(x, 5, mod_.q);
    }
  }

  // a^phi(p^j) = 1 + R_j p^j evaluated mod p^(j+m), then divided exactly.
  int64_t compute_rj(int64_t j) const {
    int64_t mod_high = checked_pow(mod_.p, j + mod_.m);
    int64_t pj = checked_pow(mod_.p, j);
    int64_t base, order;
    if (mod_.p == 2) {
      base = 5;
      order = pj / 4;  // phi(2^j)/2 = 2^(j-2), the order of 5 mod 2^j
    } else {
      base = gen_;
      order = pj / mod_.p * (mod_.p - 1);
    }
    int64_t pw = pow_mod(base, static_cast<uint64_t>(order), mod_high);
    return ((pw - 1) / pj) % mod_.q;
  }

  size_t index(int64_t x) const { return static_cast<size_t>(mod_reduce(x, mod_.q)); }

  PrimePowerModulus mod_;
  int64_t gen_ = 1;
  int64_t cyclic_order_ = 1;
  int64_t r_ = 0;
  std::vector<int32_t> dlog_t_;
  std::vector<int8_t> dlog_e_;  // populated for p = 2 only
  std::vector<int64_t> rj_table_;
};

/// Exponent k in eps_{p^m} = i^k, where eps is 1 when p^m = 1 mod 4 and i
/// when p^m = 3 mod 4. Odd p only.
[[nodiscard]] inline int epsilon_exponent(int64_t p, int64_t m) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("epsilon_exponent: p must be an odd prime");
  if (m < 1) throw std::invalid_argument("epsilon_exponent: m must be >= 1");
  int64_t residue = (m % 2 == 0) ? 1 : p % 4;
  return residue == 1 ? 0 : 1;
}

}  // namespace charsum
