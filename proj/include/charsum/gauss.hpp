#pragma once

// Gauss sums G(chi, p^m) = sum over x mod p^m of chi(x) e^(2*pi*i*x/p^m).
//
// Two evaluation paths:
//   gauss_brute   direct summation over the units, numeric complex.
//   gauss_closed  exact evaluation for m >= 2. Imprimitive characters give
//                 exactly 0. Primitive ones reduce to a single localized
//                 term: with R_j as in unit_group.hpp and alpha the solution
//                 of  c + R_j x = 0 (mod p^m),
//
//       odd p:   G = p^(m/2) chi(alpha) e(alpha/p^m) (-2rc|p)^m eps_{p^m}
//                times, for odd m, a completion term e(-B^2 (4A)^{-1} / p)
//                from the innermost quadratic layer (see gauss_closed_with_j;
//                it is 1 for most p, m). Valid for every j >= ceil(m/2);
//       p = 2:   G = 2^(m/2) chi(alpha) e(alpha/2^m) (2|c)^m w^c  (m >= 5,
//                j >= ceil(m/2)+2, w = e^(pi*i/4)),
//                and for m = 2, 3, 4 the explicit table
//                    m=2: 2^(m/2) i
//                    m=3: 2^(m/2) w^(1 - chi(-1))
//                    m=4: 2^(m/2) chi(-c) e(-c/16).
//
// There is no closed form at m = 1; gauss_eval falls back to brute there.

#include <complex>
#include <cstdint>
#include <string>

#include "charsum/algebraic.hpp"
#include "charsum/character.hpp"
#include "charsum/errors.hpp"

namespace charsum {

inline constexpr uint64_t kGaussTermGuard = 10'000'000;

enum class GaussMethod { automatic, brute, closed };

namespace detail {

/// Exponent, in units of 1/p of a turn, of the completion term the closed
/// form of G(chi_c, p^level) picks up for odd p and odd level >= 3. The
/// localized sum leaves one quadratic layer of p points; completing the
/// square there costs e(-B^2 (4A)^{-1} / p) with
///   A = alpha R'^2 / 2,  B = (c + alpha R') / p^((level-1)/2) - A  (mod p),
/// where alpha = -c R_J^{-1} mod p^level, J = (level+1)/2, R' = R_{(level-1)/2}.
/// The value does not depend on which admissible alpha is used. It is zero
/// for many (p, level), which is why the completion term is easy to miss.
[[nodiscard]] inline int64_t completion_exponent(const UnitGroupContext& ctx, int64_t level,
                                                 int64_t c) {
  const int64_t p = ctx.p();
  const int64_t J = (level + 1) / 2;
  const int64_t half = (level - 1) / 2;
  int64_t q = p;
  for (int64_t i = 1; i < level; ++i) q *= p;
  const int64_t alpha = mod_reduce(-mul_mod(c, inverse_mod(ctx.Rj(J), q), q), q);
  int64_t pmj = 1;
  for (int64_t i = 0; i < half; ++i) pmj *= p;
  const int64_t rp = ctx.Rj(half);
  const int64_t lift = pmj * p;
  const int64_t d = mod_reduce(c + mul_mod(alpha, rp, lift), lift) / pmj;
  const int64_t a_coef = mul_mod(mul_mod(alpha, rp, p), mul_mod(rp, inverse_mod(2, p), p), p);
  const int64_t b_coef = mod_reduce(d - a_coef, p);
  return mod_reduce(-mul_mod(mul_mod(b_coef, b_coef, p),
                             inverse_mod(mod_reduce(4 * a_coef, p), p), p), p);
}

}  // namespace detail

[[nodiscard]] inline SumResult gauss_brute(const Character& chi,
                                           uint64_t term_guard = kGaussTermGuard) {
  const UnitGroupContext& ctx = chi.context();
  if (static_cast<uint64_t>(ctx.q()) > term_guard)
    throw resource_limit_error("gauss_brute: " + std::to_string(ctx.q()) +
                               " terms exceed the guard (" + std::to_string(term_guard) + ")");
  const int64_t q = ctx.q();
  std::complex<double> acc{0.0, 0.0};
  uint64_t terms = 0;
  for (int64_t x = 1; x < q; ++x) {
    auto rot = chi.rotation_at(x);
    if (!rot) continue;
    double turns = static_cast<double>(rot->num) / static_cast<double>(rot->den) +
                   static_cast<double>(x) / static_cast<double>(q);
    double angle = 2.0 * std::numbers::pi * turns;
    acc += std::complex<double>{std::cos(angle), std::sin(angle)};
    ++terms;
  }
  return SumResult::from_numeric(acc, terms, SumMethod::brute);
}

/// Exact Gauss sum with an explicit localization depth j (only meaningful for
/// the generic primitive branches; exposed so tests can confirm the value does
/// not depend on the admissible j).
[[nodiscard]] inline SumResult gauss_closed_with_j(const Character& chi, int64_t j) {
  const UnitGroupContext& ctx = chi.context();
  const int64_t p = ctx.p();
  const int64_t m = ctx.m();
  const int64_t q = ctx.q();
  if (m < 2)
    throw unsupported_regime_error("gauss_closed: no closed form at m = 1");
  if (!chi.is_primitive())
    return SumResult::from_exact(ExactValue::zero(p), SumMethod::gauss_closed, "imprimitive");

  const int64_t c = chi.c();
  if (p == 2) {
    if (m == 2)
      return SumResult::from_exact(ExactValue::make(2, 2, kRotI), SumMethod::gauss_closed);
    if (m == 3) {
      Rotation rot = Rotation::of(1 - chi.sign_at_minus_one(), 8);
      return SumResult::from_exact(ExactValue::make(2, 3, rot), SumMethod::gauss_closed);
    }
    if (m == 4) {
      int64_t neg_c = q - c;
      Rotation rot = chi.rotation_at(neg_c).value() + Rotation::of(neg_c, q);
      return SumResult::from_exact(ExactValue::make(2, 4, rot), SumMethod::gauss_closed);
    }
    if (j < (m + 1) / 2 + 2)
      throw std::invalid_argument("gauss_closed: j must be >= ceil(m/2)+2 for p = 2");
    int64_t alpha = mod_reduce(-mul_mod(c, inverse_mod(ctx.Rj(j), q), q), q);
    Rotation rot = chi.rotation_at(alpha).value() + Rotation::of(alpha, q);
    if (m % 2 == 1 && jacobi_symbol(2, c) < 0) rot = rot + kRotMinusOne;
    rot = rot + Rotation::of(c, 8);
    return SumResult::from_exact(ExactValue::make(2, m, rot), SumMethod::gauss_closed);
  }

  if (j < (m + 1) / 2)
    throw std::invalid_argument("gauss_closed: j must be >= ceil(m/2)");
  int64_t alpha = mod_reduce(-mul_mod(c, inverse_mod(ctx.Rj(j), q), q), q);
  Rotation rot = chi.rotation_at(alpha).value() + Rotation::of(alpha, q);
  int64_t lead = mod_reduce(-2 * ctx.r() * c, p);
  if (m % 2 == 1) {
    rot = rot + Rotation::of(detail::completion_exponent(ctx, m, c), p);
    if (jacobi_symbol(lead, p) < 0) rot = rot + kRotMinusOne;
  }
  rot = rot + Rotation::of(epsilon_exponent(p, m), 4);
  return SumResult::from_exact(ExactValue::make(p, m, rot), SumMethod::gauss_closed);
}

[[nodiscard]] inline SumResult gauss_closed(const Character& chi) {
  const int64_t m = chi.context().m();
  int64_t j = (chi.context().p() == 2) ? (m + 1) / 2 + 2 : (m + 1) / 2;
  return gauss_closed_with_j(chi, j);
}

[[nodiscard]] inline SumResult gauss_eval(const Character& chi,
                                          GaussMethod method = GaussMethod::automatic,
                                          uint64_t term_guard = kGaussTermGuard) {
  switch (method) {
    case GaussMethod::brute:
      return gauss_brute(chi, term_guard);
    case GaussMethod::closed:
      return gauss_closed(chi);
    case GaussMethod::automatic:
      break;
  }
  if (chi.context().m() >= 2) return gauss_closed(chi);
  SumResult r = gauss_brute(chi, term_guard);
  r.notes = "m=1: brute fallback";
  return r;
}

/// conj(G(chi)) computed exactly as conj(chi)(-1) * G(conj(chi)). For m = 1
/// the principal character gives the exact value -1 and other characters fall
/// back to a (p-term) brute sum.
[[nodiscard]] inline SumResult gauss_conjugate(const Character& chi,
                                               uint64_t term_guard = kGaussTermGuard) {
  Character bar = chi.conjugate();
  SumResult g = (chi.context().m() >= 2)
                    ? gauss_closed(bar)
                    : (bar.is_principal()
                           ? SumResult::from_exact(
                                 ExactValue::root_of_unity(chi.context().p(), kRotMinusOne),
                                 SumMethod::gauss_closed, "principal mod p")
                           : gauss_brute(bar, term_guard));
  ExactValue sign = bar.sign_at_minus_one() < 0
                        ? ExactValue::root_of_unity(chi.context().p(), kRotMinusOne)
                        : ExactValue::one(chi.context().p());
  return scale_result(sign, std::move(g));
}

}  // namespace charsum
