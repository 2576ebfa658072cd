#pragma once

// Generalized Jacobi sums
//
//   J_B(chi_1, ..., chi_k, p^m) =
//       sum over x_1 + ... + x_k = B (mod p^m) of chi_1(x_1) ... chi_k(x_k).
//
// Evaluation paths:
//
//   jacobi_brute      the defining sum over unit tuples, numeric complex.
//   jacobi_closed     exact one-term evaluation for B = p^n with m >= n+2:
//                     zero unless every chi_i is primitive mod p^m and the
//                     product chi_1...chi_k is induced by a primitive mod
//                     p^(m-n) character; otherwise
//                        J = p^((m(k-1)+n)/2) *
//                            (prod chi_i(c_i) / (chi_1...chi_k)(v)) * delta,
//                     v = (c_1 + ... + c_k)/p^n, with delta a fourth or
//                     eighth root of unity times a quadratic symbol (see the
//                     branches below; p = 2 carries extra small-modulus
//                     cases).
//   jacobi_via_gauss  exact quotient of Gauss sums, valid whenever m > n and
//                     some chi_i is primitive; the only numeric ingredient is
//                     a p-term Gauss sum when m - n = 1.
//   jacobi_direct_k2  independent k = 2 evaluation (odd p) built on the
//                     characteristic equation c_1 + c_2 - c_1 b x = 0
//                     (mod p^(floor((m+n)/2)+1)) and its explicit solution.
//
// General B reduces to B = p^n: J_B = (chi_1...chi_k)(B') J_{p^n} for
// B = p^n B' with p not dividing B', and B = 0 mod p^m has the closed form
// J_0 = phi(p^m) chi_k(-1) J_1(chi_1, ..., chi_{k-1}) when chi_1...chi_k is
// principal (0 otherwise).

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "charsum/algebraic.hpp"
#include "charsum/character.hpp"
#include "charsum/errors.hpp"
#include "charsum/gauss.hpp"

namespace charsum {

inline constexpr uint64_t kJacobiTermGuard = 100'000'000;

enum class JacobiMethod { automatic, brute, closed, quotient, direct };

struct JacobiQuery {
  std::vector<Character> chars;
  int64_t B = 1;
};

namespace detail {

inline const UnitGroupContext& common_context(const std::vector<Character>& chars) {
  if (chars.empty()) throw std::invalid_argument("jacobi: need at least one character");
  for (size_t i = 1; i < chars.size(); ++i) {
    if (!chars[0].same_modulus(chars[i]))
      throw std::invalid_argument("jacobi: characters must share one modulus");
  }
  return chars[0].context();
}

inline Character product_character(const std::vector<Character>& chars) {
  Character prod = chars[0];
  for (size_t i = 1; i < chars.size(); ++i) prod = prod * chars[i];
  return prod;
}

inline bool all_primitive(const std::vector<Character>& chars) {
  return std::ranges::all_of(chars, [](const Character& c) { return c.is_primitive(); });
}

inline bool any_primitive(const std::vector<Character>& chars) {
  return std::ranges::any_of(chars, [](const Character& c) { return c.is_primitive(); });
}

inline std::vector<int64_t> unit_list(const UnitGroupContext& ctx) {
  std::vector<int64_t> units;
  units.reserve(static_cast<size_t>(ctx.phi()));
  for (int64_t x = 1; x < ctx.q(); ++x)
    if (ctx.is_unit(x)) units.push_back(x);
  return units;
}

}  // namespace detail

[[nodiscard]] inline SumResult jacobi_brute(const JacobiQuery& query,
                                            uint64_t term_guard = kJacobiTermGuard) {
  const UnitGroupContext& ctx = detail::common_context(query.chars);
  const int64_t q = ctx.q();
  const size_t k = query.chars.size();
  const int64_t b = mod_reduce(query.B, q);

  if (k == 1) {
    return SumResult::from_numeric(query.chars[0].complex_at(b), 1, SumMethod::brute);
  }
  // Guard on the nominal index space q^(k-1).
  unsigned __int128 nominal = 1;
  for (size_t i = 0; i + 1 < k; ++i) {
    nominal *= static_cast<unsigned __int128>(q);
    if (nominal > term_guard)
      throw resource_limit_error("jacobi_brute: q^(k-1) exceeds the guard (" +
                                 std::to_string(term_guard) + ")");
  }

  std::vector<std::vector<std::complex<double>>> tables;
  tables.reserve(k);
  for (const Character& chi : query.chars) tables.push_back(character_value_table(chi));
  const std::vector<int64_t> units = detail::unit_list(ctx);

  std::complex<double> acc{0.0, 0.0};
  uint64_t terms = 0;
  if (k == 2) {
    for (int64_t x : units) {
      acc += tables[0][static_cast<size_t>(x)] * tables[1][static_cast<size_t>(mod_reduce(b - x, q))];
      ++terms;
    }
  } else if (k == 3) {
    for (int64_t x : units) {
      const std::complex<double> lead = tables[0][static_cast<size_t>(x)];
      const int64_t rest = b - x;
      for (int64_t y : units) {
        acc += lead * tables[1][static_cast<size_t>(y)] *
               tables[2][static_cast<size_t>(mod_reduce(rest - y, q))];
        ++terms;
      }
    }
  } else {
    // Generic depth-first walk over (k-1)-tuples of units.
    std::vector<size_t> idx(k - 1, 0);
    std::vector<std::complex<double>> prefix(k, {1.0, 0.0});
    std::vector<int64_t> partial(k, 0);
    size_t level = 0;
    while (true) {
      if (idx[level] == units.size()) {
        if (level == 0) break;
        idx[level] = 0;
        --level;
        ++idx[level];
        continue;
      }
      int64_t x = units[idx[level]];
      prefix[level + 1] = prefix[level] * tables[level][static_cast<size_t>(x)];
      partial[level + 1] = partial[level] + x;
      if (level == k - 2) {
        acc += prefix[level + 1] *
               tables[k - 1][static_cast<size_t>(mod_reduce(b - partial[level + 1], q))];
        ++terms;
        ++idx[level];
      } else {
        ++level;
      }
    }
  }
  return SumResult::from_numeric(acc, terms, SumMethod::brute);
}

/// Predicted vanishing of J_{p^n} per the closed-form theory. nullopt when no
/// statement applies (no primitive character below the top case).
[[nodiscard]] inline std::optional<bool> predict_zero(const std::vector<Character>& chars,
                                                      int64_t n) {
  const UnitGroupContext& ctx = detail::common_context(chars);
  const int64_t m = ctx.m();
  if (n == m) {
    if (!detail::product_character(chars).is_principal()) return true;
    if (chars.size() == 1) return true;  // single factor chi(0) = 0
    std::vector<Character> rest(chars.begin(), chars.end() - 1);
    if (rest.size() == 1) return false;  // inner sum is chi(1) = 1
    return predict_zero(rest, 0);
  }
  if (n > m || n < 0) throw std::invalid_argument("predict_zero: n out of range");
  if (!detail::any_primitive(chars)) return std::nullopt;
  const Character prod = detail::product_character(chars);
  if (m >= n + 2)
    return !detail::all_primitive(chars) || prod.conductor_exponent() != m - n;
  // m = n + 1: the quotient expansion has a mod-p Gauss sum in every factor
  // slot once m = 1, and those never vanish.
  if (m == 1) return false;
  return !detail::all_primitive(chars) || prod.conductor_exponent() > 1;
}

[[nodiscard]] inline SumResult jacobi_closed(const std::vector<Character>& chars, int64_t n) {
  const UnitGroupContext& ctx = detail::common_context(chars);
  const int64_t p = ctx.p();
  const int64_t m = ctx.m();
  const size_t k = chars.size();
  if (k < 2) throw precondition_error("jacobi_closed: need k >= 2 characters");
  if (n < 0 || m < n + 2)
    throw unsupported_regime_error("jacobi_closed: requires m >= n+2");
  if (!detail::any_primitive(chars))
    throw precondition_error("jacobi_closed: no primitive character");
  if (p == 2 && n == 0 && (m == 2 || m == 4))
    throw unsupported_regime_error("jacobi_closed: p=2, (m,n)=(" + std::to_string(m) +
                                   ",0) has no direct display; use the quotient path");

  if (!detail::all_primitive(chars))
    return SumResult::from_exact(ExactValue::zero(p), SumMethod::jacobi_closed,
                                 "imprimitive factor");
  const Character prod = detail::product_character(chars);
  if (prod.conductor_exponent() != m - n)
    return SumResult::from_exact(ExactValue::zero(p), SumMethod::jacobi_closed,
                                 "product conductor != p^(m-n)");

  // All c_i are now units mod p (and odd when p = 2); v is a p-unit integer
  // except in the p = 2, m-n = 2, k >= 4 corner handled below.
  int64_t sum_c = 0;
  for (const Character& chi : chars) sum_c += chi.c();
  const int64_t pn = checked_pow(p, n);
  const int64_t v = sum_c / pn;
  const int64_t half_exp = m * (static_cast<int64_t>(k) - 1) + n;

  // Phases are accumulated as numerators over one common denominator L;
  // every factor below is a root of unity of order dividing L.
  const int64_t ord = ctx.cyclic_order();

  if (p != 2) {
    const int64_t L = std::lcm(int64_t{8}, ord);
    const int64_t step = L / ord;
    auto phase_num = [&](const Character& chi, int64_t x) {
      return mul_mod(chi.c(), ctx.unit_exponents(x).t, ord) * step;
    };
    int64_t num = 0;
    for (const Character& chi : chars) num = (num + phase_num(chi, chi.c())) % L;
    num = mod_reduce(num - phase_num(prod, v), L);
    int sign = 1;
    if ((half_exp % 2) != 0 && jacobi_symbol(mod_reduce(-2 * ctx.r(), p), p) < 0) sign = -sign;
    if (((m - n) % 2) != 0 && jacobi_symbol(v, p) < 0) sign = -sign;
    if ((m % 2) != 0) {
      for (const Character& chi : chars)
        if (jacobi_symbol(chi.c(), p) < 0) sign = -sign;
    }
    if (sign < 0) num = (num + L / 2) % L;
    num = (num + mod_reduce(static_cast<int64_t>(k) * epsilon_exponent(p, m) -
                                epsilon_exponent(p, m - n),
                            4) *
                     (L / 4)) %
          L;
    // Completion terms inherited from the Gauss factors at odd depth: one per
    // numerator factor when m is odd, and a conjugate one from the product
    // character at depth m - n when that is odd.
    if ((m % 2) != 0) {
      for (const Character& chi : chars)
        num = (num + detail::completion_exponent(ctx, m, chi.c()) * (L / p)) % L;
    }
    if (((m - n) % 2) != 0)
      num = mod_reduce(num - detail::completion_exponent(ctx, m - n, v) * (L / p), L);
    return SumResult::from_exact(ExactValue::make(p, half_exp, Rotation::of(num, L)),
                                 SumMethod::jacobi_closed);
  }

  // p = 2 from here on.
  if (m == 3 && n == 0) {
    // All chi_i primitive and the product primitive mod 8 (so k is odd):
    // J = 2^(3(k-1)/2) * (-1)^(floor(l/2)), l = #{i : chi_i(-1) = -1}.
    int64_t l = 0;
    for (const Character& chi : chars)
      if (chi.sign_at_minus_one() < 0) ++l;
    Rotation rot = (l / 2) % 2 == 1 ? kRotMinusOne : kRotOne;
    return SumResult::from_exact(ExactValue::make(2, half_exp, rot), SumMethod::jacobi_closed);
  }
  if (m == 3 && n == 1) {
    int64_t l = 0;
    for (const Character& chi : chars)
      if (chi.sign_at_minus_one() < 0) ++l;
    Rotation rot = Rotation::of(3, 4) + Rotation::of(2 * l, 8);  // -i * w^(k - sum chi_i(-1))
    return SumResult::from_exact(ExactValue::make(2, half_exp, rot), SumMethod::jacobi_closed);
  }
  if (m == 4 && n == 1) {
    Rotation rot = Rotation::of(prod.sign_at_minus_one() - 1 - v, 8);
    for (const Character& chi : chars) rot = rot + chi.rotation_at(ctx.q() - chi.c()).value();
    return SumResult::from_exact(ExactValue::make(2, half_exp, rot), SumMethod::jacobi_closed);
  }
  if (m == 4 && n == 2) {
    Rotation rot = Rotation::of(1 - v, 4);
    for (const Character& chi : chars) rot = rot + chi.rotation_at(chi.c()).value();
    return SumResult::from_exact(ExactValue::make(2, half_exp, rot), SumMethod::jacobi_closed);
  }

  // m >= 5 now, with m - n >= 2. The main 2-adic formula needs v odd, which
  // only fails in the (m - n = 2, k >= 4) corner where the product character
  // has c = 0; the quotient path covers that exactly.
  if (v % 2 == 0)
    throw unsupported_regime_error("jacobi_closed: v = (c_1+...+c_k)/2^n is even");
  const int64_t L = std::lcm(int64_t{8}, ord);  // ord = 2^(m-2) >= 8 here
  const int64_t step = L / ord;
  auto phase_num = [&](const Character& chi, int64_t x) {
    UnitExponents ue = ctx.unit_exponents(x);
    int64_t s = mul_mod(chi.c(), ue.t, ord) * step;
    if (chi.e() != 0 && ue.e != 0) s += L / 2;
    return s % L;
  };
  int64_t num = 0;
  for (const Character& chi : chars) num = (num + phase_num(chi, chi.c())) % L;
  num = mod_reduce(num - phase_num(prod, v), L);
  int sign = 1;
  if (((m - n) % 2) != 0 && jacobi_symbol(2, v) < 0) sign = -sign;
  if ((m % 2) != 0) {
    for (const Character& chi : chars)
      if (jacobi_symbol(2, chi.c()) < 0) sign = -sign;
  }
  if (sign < 0) num = (num + L / 2) % L;
  const int64_t eighth = L / 8;
  num = (num + mod_reduce((pow_mod(2, static_cast<uint64_t>(n), 8) - 1) * v, 8) * eighth) % L;
  switch (m - n) {
    case 2:
      num = (num + eighth) % L;
      break;
    case 3:
      num = (num + mod_reduce((1 + prod.sign_at_minus_one()) * v, 8) * eighth) % L;
      break;
    case 4:
      if (prod.sign_at_minus_one() < 0) num = (num + L / 2) % L;
      num = (num + mod_reduce(2 * v, 8) * eighth) % L;
      break;
    default:
      break;
  }
  return SumResult::from_exact(ExactValue::make(2, half_exp, Rotation::of(num, L)),
                               SumMethod::jacobi_closed);
}

/// J_{p^n} as a quotient of Gauss sums: with chi_t a primitive factor and the
/// remaining ones in their original order,
///   J = p^n * conj(G(chi_1...chi_k, p^(m-n))) / conj(G(chi_t, p^m))
///         * prod_{i != t} G(chi_i, p^m)
/// when chi_1...chi_k is a mod p^(m-n) character, 0 otherwise. When every
/// chi_i is primitive and the product is primitive mod p^(m-n) the symmetric
/// form  prod_i G(chi_i, p^m) / G(chi_1...chi_k, p^(m-n))  is used instead.
[[nodiscard]] inline SumResult jacobi_via_gauss(const std::vector<Character>& chars, int64_t n,
                                                uint64_t term_guard = kGaussTermGuard) {
  const UnitGroupContext& ctx = detail::common_context(chars);
  const int64_t p = ctx.p();
  const int64_t m = ctx.m();
  if (chars.size() < 2) throw precondition_error("jacobi_via_gauss: need k >= 2 characters");
  if (n < 0 || m <= n) throw unsupported_regime_error("jacobi_via_gauss: requires m > n");
  if (!detail::any_primitive(chars))
    throw precondition_error("jacobi_via_gauss: no primitive character");

  const Character prod = detail::product_character(chars);
  if (prod.conductor_exponent() > m - n)
    return SumResult::from_exact(ExactValue::zero(p), SumMethod::gauss_quotient,
                                 "product conductor exceeds p^(m-n)");

  const UnitGroupContext reduced_ctx = UnitGroupContext::build(p, m - n);
  const Character reduced = prod.reduce_to(reduced_ctx);
  auto eval_gauss = [&](const Character& chi) -> SumResult {
    if (chi.context().m() >= 2) return gauss_closed(chi);
    if (chi.is_principal())
      return SumResult::from_exact(ExactValue::root_of_unity(chi.context().p(), kRotMinusOne),
                                   SumMethod::gauss_closed, "principal mod p");
    return gauss_brute(chi, term_guard);
  };

  bool symmetric = detail::all_primitive(chars) && reduced.is_primitive();
  std::string notes = symmetric ? "symmetric form" : "asymmetric form";

  std::vector<SumResult> numerators;
  SumResult denominator = SumResult::from_exact(ExactValue::one(p), SumMethod::gauss_closed);
  ExactValue outer = ExactValue::one(p);
  if (symmetric) {
    for (const Character& chi : chars) numerators.push_back(eval_gauss(chi));
    denominator = eval_gauss(reduced);
  } else {
    size_t t = 0;
    while (!chars[t].is_primitive()) ++t;
    for (size_t i = 0; i < chars.size(); ++i)
      if (i != t) numerators.push_back(eval_gauss(chars[i]));
    numerators.push_back(gauss_conjugate(reduced, term_guard));
    denominator = gauss_conjugate(chars[t], term_guard);
    outer = ExactValue::make(p, 2 * n, kRotOne);  // p^n
  }

  bool exact = denominator.exact;
  for (const SumResult& r : numerators) exact = exact && r.exact;
  if (exact) {
    ExactValue val = outer;
    for (const SumResult& r : numerators) val = val * r.value;
    val = val / denominator.value;
    return SumResult::from_exact(val, SumMethod::gauss_quotient, notes);
  }
  std::complex<double> val = outer.to_complex();
  uint64_t terms = denominator.terms;
  for (const SumResult& r : numerators) {
    val *= r.approx;
    terms += r.terms;
  }
  val /= denominator.approx;
  return SumResult::from_numeric(val, terms, SumMethod::gauss_quotient,
                                 notes + "; numeric mod-p factor");
}

/// Independent k = 2 evaluation for odd p and m >= n+2, via the explicit
/// solution x0 = (c_1+c_2) p^-n c_1^-1 b'^-1 of the characteristic equation:
///   J_b = p^((m+n)/2) conj(chi_1 chi_2)(x0) chi_2(b x0 - 1)
///         (-2 c_2 r b' x0 | p)^(m-n) eps_{p^(m-n)},
/// and 0 when the equation has no unit solution. Accepts any b != 0 mod q.
[[nodiscard]] inline SumResult jacobi_direct_k2(const Character& chi1_in, const Character& chi2_in,
                                                int64_t b) {
  if (!chi1_in.same_modulus(chi2_in))
    throw std::invalid_argument("jacobi_direct_k2: characters must share one modulus");
  const UnitGroupContext& ctx = chi1_in.context();
  const int64_t p = ctx.p();
  const int64_t m = ctx.m();
  const int64_t q = ctx.q();
  if (p == 2) throw unsupported_regime_error("jacobi_direct_k2: odd p only");
  b = mod_reduce(b, q);
  if (b == 0) throw precondition_error("jacobi_direct_k2: b must be nonzero mod q");

  const Character& chi1 = chi1_in.is_primitive() ? chi1_in : chi2_in;
  const Character& chi2 = chi1_in.is_primitive() ? chi2_in : chi1_in;
  if (!chi1.is_primitive()) throw precondition_error("jacobi_direct_k2: no primitive character");

  const int64_t n = valuation(b, p);
  if (m < n + 2) throw unsupported_regime_error("jacobi_direct_k2: requires m >= n+2");
  const int64_t bp = b / checked_pow(p, n);

  const int64_t c1 = chi1.c();
  const int64_t c2 = chi2.c();
  if (c2 % p == 0)  // covers the principal character c2 = 0
    return SumResult::from_exact(ExactValue::zero(p), SumMethod::direct_k2,
                                 "chi_2 imprimitive");
  const int64_t csum = c1 + c2;
  if (valuation(csum, p) != n)
    return SumResult::from_exact(ExactValue::zero(p), SumMethod::direct_k2,
                                 "characteristic equation unsolvable");

  const int64_t w = csum / checked_pow(p, n);
  const int64_t x0 =
      mul_mod(mod_reduce(w, q), mul_mod(inverse_mod(c1, q), inverse_mod(bp, q), q), q);
  const Character prod = chi1 * chi2;
  Rotation rot = -prod.rotation_at(x0).value();
  rot = rot + chi2.rotation_at(mod_reduce(mul_mod(b, x0, q) - 1, q)).value();
  int64_t lead = mod_reduce(-2 * mod_reduce(c2, p), p);
  lead = mul_mod(lead, ctx.r(), p);
  lead = mul_mod(lead, mod_reduce(bp, p), p);
  lead = mul_mod(lead, mod_reduce(x0, p), p);
  if (((m - n) % 2) != 0 && jacobi_symbol(lead, p) < 0) rot = rot + kRotMinusOne;
  rot = rot + Rotation::of(epsilon_exponent(p, m - n), 4);
  // Same completion terms the quotient of closed Gauss forms carries: one per
  // numerator factor at depth m, a conjugate one at depth m - n, each only
  // when its depth is odd.
  if ((m % 2) != 0) {
    rot = rot + Rotation::of(detail::completion_exponent(ctx, m, c1), p);
    rot = rot + Rotation::of(detail::completion_exponent(ctx, m, c2), p);
  }
  if (((m - n) % 2) != 0)
    rot = rot + Rotation::of(mod_reduce(-detail::completion_exponent(ctx, m - n, w), p), p);
  return SumResult::from_exact(ExactValue::make(p, m + n, rot), SumMethod::direct_k2);
}

/// B = 0 mod p^m: J_0 = phi(p^m) chi_k(-1) J_1(chi_1, ..., chi_{k-1}) when
/// the product character is principal, 0 otherwise.
[[nodiscard]] SumResult jacobi_top_case(const std::vector<Character>& chars, uint64_t term_guard);

[[nodiscard]] SumResult jacobi_eval(const JacobiQuery& query,
                                    JacobiMethod method = JacobiMethod::automatic,
                                    uint64_t term_guard = kJacobiTermGuard);

inline SumResult jacobi_top_case(const std::vector<Character>& chars,
                                 uint64_t term_guard = kJacobiTermGuard) {
  const UnitGroupContext& ctx = detail::common_context(chars);
  if (chars.size() < 2) throw precondition_error("jacobi_top_case: need k >= 2 characters");
  if (!detail::product_character(chars).is_principal())
    return SumResult::from_exact(ExactValue::zero(ctx.p()), SumMethod::jacobi_closed,
                                 "B=0: product not principal");
  ExactValue lead = ExactValue::make(
      ctx.p(), 0, chars.back().sign_at_minus_one() < 0 ? kRotMinusOne : kRotOne, ctx.phi());
  std::vector<Character> rest(chars.begin(), chars.end() - 1);
  SumResult inner = jacobi_eval(JacobiQuery{std::move(rest), 1}, JacobiMethod::automatic,
                                term_guard);
  SumResult out = scale_result(lead, std::move(inner));
  out.method = SumMethod::jacobi_closed;
  out.notes = "B=0: phi(q) chi_k(-1) J_1(chi_1..chi_{k-1})" +
              (out.notes.empty() ? std::string{} : "; inner: " + out.notes);
  return out;
}

inline SumResult jacobi_eval(const JacobiQuery& query, JacobiMethod method, uint64_t term_guard) {
  const UnitGroupContext& ctx = detail::common_context(query.chars);
  const int64_t p = ctx.p();
  const int64_t q = ctx.q();
  const int64_t b = mod_reduce(query.B, q);

  if (method == JacobiMethod::brute) return jacobi_brute(query, term_guard);

  if (query.chars.size() == 1) {
    return SumResult::from_exact(query.chars[0].value_at(b), SumMethod::jacobi_closed,
                                 "k=1: J_B = chi(B)");
  }
  if (b == 0) return jacobi_top_case(query.chars, term_guard);

  const int64_t n = (b % p == 0) ? valuation(b, p) : 0;
  const int64_t bp = b / checked_pow(p, n);
  ExactValue prefactor = detail::product_character(query.chars).value_at(bp);
  std::string translated =
      (bp == 1) ? std::string{} : "translated from B = p^" + std::to_string(n) + " * " +
                                      std::to_string(bp);

  SumResult core;
  switch (method) {
    case JacobiMethod::closed:
      core = jacobi_closed(query.chars, n);
      break;
    case JacobiMethod::quotient:
      core = jacobi_via_gauss(query.chars, n, std::min<uint64_t>(term_guard, kGaussTermGuard));
      break;
    case JacobiMethod::direct:
      if (query.chars.size() != 2)
        throw precondition_error("jacobi_eval: direct path handles k = 2 only");
      core = jacobi_direct_k2(query.chars[0], query.chars[1], checked_pow(p, n));
      break;
    case JacobiMethod::automatic: {
      const int64_t m = ctx.m();
      std::string fallback;
      if (m >= n + 2) {
        try {
          core = jacobi_closed(query.chars, n);
          break;
        } catch (const unsupported_regime_error& e) {
          fallback = e.what();
        } catch (const precondition_error& e) {
          fallback = e.what();
        }
      }
      try {
        core = jacobi_via_gauss(query.chars, n, std::min<uint64_t>(term_guard, kGaussTermGuard));
        core.notes += fallback.empty() ? "" : "; after: " + fallback;
        break;
      } catch (const unsupported_regime_error& e) {
        fallback = e.what();
      } catch (const precondition_error& e) {
        fallback = e.what();
      }
      core = jacobi_brute(JacobiQuery{query.chars, checked_pow(p, n)}, term_guard);
      core.notes += "; brute fallback after: " + fallback;
      break;
    }
    case JacobiMethod::brute:
      break;  // handled above
  }
  SumResult out = scale_result(prefactor, std::move(core));
  if (!translated.empty())
    out.notes = out.notes.empty() ? translated : out.notes + "; " + translated;
  return out;
}

}  // namespace charsum
