#pragma once

// Exact values of character sums.
//
// Every closed-form evaluation in this library is an algebraic number of the
// shape   scale * p^(half_exp/2) * e^(2*pi*i*num/den),   so it is stored as an
// integer scale, a half-integer power of p, and a reduced fraction of a full
// turn (the "rotation"). Arithmetic on these is exact; floating point only
// enters when a value is converted for comparison against a brute-force sum.
//
// Rotation denominators stay bounded: every phase produced here divides
// lcm(8, p^m (p-1)) for the modulus in play, which fits comfortably in
// int64_t for any modulus the dlog table guard admits.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>

#include "charsum/errors.hpp"
#include "charsum/modular.hpp"

namespace charsum {

/// A fraction of a full turn, reduced, with 0 <= num < den. Represents the
/// unit complex number e^(2*pi*i*num/den).
struct Rotation {
  int64_t num = 0;
  int64_t den = 1;

  static Rotation of(int64_t num, int64_t den) {
    if (den <= 0) throw std::invalid_argument("Rotation: denominator must be positive");
    num = mod_reduce(num, den);
    int64_t g = std::gcd(num, den);
    return Rotation{num / g, den / g};
  }

  Rotation operator+(const Rotation& o) const {
    int64_t g = std::gcd(den, o.den);
    __int128 l = static_cast<__int128>(den / g) * o.den;
    if (l > (__int128{1} << 62)) throw std::invalid_argument("Rotation: denominator overflow");
    int64_t lcm = static_cast<int64_t>(l);
    return of(num * (lcm / den) + o.num * (lcm / o.den), lcm);
  }

  Rotation operator-() const { return of(-num, den); }
  Rotation operator-(const Rotation& o) const { return *this + (-o); }

  /// Integer multiple: k copies of this rotation.
  Rotation times(int64_t k) const {
    int64_t kk = mod_reduce(k, den);
    return of(mul_mod(num, kk, den) % den, den);
  }

  std::complex<double> to_complex() const {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
  }

  friend bool operator==(const Rotation&, const Rotation&) = default;
};

inline const Rotation kRotOne = Rotation{0, 1};
inline const Rotation kRotMinusOne = Rotation{1, 2};
inline const Rotation kRotI = Rotation{1, 4};

/// scale * base^(half_exp/2) * e^(2*pi*i*phase), or exactly zero.
struct ExactValue {
  bool is_zero = true;
  int64_t base = 0;      // the prime p of the ambient modulus
  int64_t half_exp = 0;  // magnitude contributes base^(half_exp/2)
  Rotation phase;
  int64_t scale = 0;     // nonnegative integer factor (phi(q) in the B = 0 case)

  static ExactValue zero(int64_t p) { return ExactValue{true, p, 0, kRotOne, 0}; }

  static ExactValue make(int64_t p, int64_t half_exp, Rotation phase, int64_t scale = 1) {
    if (scale < 0) throw std::invalid_argument("ExactValue: scale must be nonnegative");
    if (scale == 0) return zero(p);
    return ExactValue{false, p, half_exp, phase, scale};
  }

  static ExactValue one(int64_t p) { return make(p, 0, kRotOne); }
  static ExactValue root_of_unity(int64_t p, Rotation rot) { return make(p, 0, rot); }

  ExactValue operator*(const ExactValue& o) const {
    require_same_base(o);
    if (is_zero || o.is_zero) return zero(base);
    return make(base, half_exp + o.half_exp, phase + o.phase, scale * o.scale);
  }

  ExactValue operator/(const ExactValue& o) const {
    require_same_base(o);
    if (o.is_zero) throw std::invalid_argument("ExactValue: division by exact zero");
    if (o.scale != 1) throw std::invalid_argument("ExactValue: divisor has integer scale");
    if (is_zero) return zero(base);
    return make(base, half_exp - o.half_exp, phase - o.phase, scale);
  }

  ExactValue conjugate() const {
    if (is_zero) return *this;
    return make(base, half_exp, -phase, scale);
  }

  double magnitude() const {
    if (is_zero) return 0.0;
    return static_cast<double>(scale) *
           std::pow(static_cast<double>(base), 0.5 * static_cast<double>(half_exp));
  }

  std::complex<double> to_complex() const {
    if (is_zero) return {0.0, 0.0};
    return magnitude() * phase.to_complex();
  }

  friend bool operator==(const ExactValue&, const ExactValue&) = default;

 private:
  void require_same_base(const ExactValue& o) const {
    if (base != o.base)
      throw std::invalid_argument("ExactValue: mixed bases " + std::to_string(base) + " and " +
                                  std::to_string(o.base));
  }
};

enum class SumMethod { brute, gauss_closed, jacobi_closed, gauss_quotient, direct_k2 };

[[nodiscard]] inline const char* to_string(SumMethod m) {
  switch (m) {
    case SumMethod::brute: return "brute";
    case SumMethod::gauss_closed: return "gauss-closed";
    case SumMethod::jacobi_closed: return "jacobi-closed";
    case SumMethod::gauss_quotient: return "gauss-quotient";
    case SumMethod::direct_k2: return "direct-k2";
  }
  return "?";
}

/// Result of evaluating a character sum: exact algebraic value where a closed
/// form applies, a floating-point complex number otherwise. `approx` is always
/// populated. `terms` records how many summands a numeric path touched (0 for
/// exact paths), which bounds its rounding error.
struct SumResult {
  bool exact = false;
  ExactValue value;
  std::complex<double> approx;
  uint64_t terms = 0;
  SumMethod method = SumMethod::brute;
  std::string notes;

  static SumResult from_exact(ExactValue v, SumMethod method, std::string notes = {}) {
    SumResult r;
    r.exact = true;
    r.value = v;
    r.approx = v.to_complex();
    r.terms = 0;
    r.method = method;
    r.notes = std::move(notes);
    return r;
  }

  static SumResult from_numeric(std::complex<double> v, uint64_t terms, SumMethod method,
                                std::string notes = {}) {
    SumResult r;
    r.exact = false;
    r.value = ExactValue{};
    r.approx = v;
    r.terms = terms;
    r.method = method;
    r.notes = std::move(notes);
    return r;
  }
};

/// Multiply a sum by an exact prefactor (stays exact iff it was exact).
[[nodiscard]] inline SumResult scale_result(const ExactValue& factor, SumResult r) {
  if (r.exact) {
    r.value = factor * r.value;
    r.approx = r.value.to_complex();
  } else {
    r.approx *= factor.to_complex();
  }
  return r;
}

/// Equality up to tol * max(1, |a|). Two exact values compare field by field
/// (no floating point involved); all other combinations compare as complex
/// numbers with `a` supplying the reference magnitude.
[[nodiscard]] inline bool approx_equal(const SumResult& a, const SumResult& b, double tol) {
  if (a.exact && b.exact) return a.value == b.value;
  double ref = std::max(1.0, std::abs(a.approx));
  return std::abs(a.approx - b.approx) <= tol * ref;
}

[[nodiscard]] inline bool approx_equal(const ExactValue& a, const ExactValue& b, double tol) {
  if (a == b) return true;
  double ref = std::max(1.0, std::abs(a.to_complex()));
  return std::abs(a.to_complex() - b.to_complex()) <= tol * ref;
}

}  // namespace charsum
