#pragma once

// Multiplicative characters mod p^m, labeled by exponents on the canonical
// generators of the unit group:
//
//   odd p:          chi(a) = e^(2*pi*i*c/phi(q)),              0 <= c < phi(q)
//   p = 2, m >= 3:  chi(5) = e^(2*pi*i*c/2^(m-2)),  chi(-1) = (-1)^e
//   p = 2, m = 2:   chi(-1) = (-1)^e
//   p = 2, m = 1:   principal only
//
// c = 0 (and e = 0) is the principal character. A character is primitive
// exactly when its conductor equals the full modulus; the conductor exponent
// is m - v_p(c) for c != 0, and for p = 2 with c = 0 it is 2 when e = 1.
//
// Characters are small value types holding a pointer to their (immutable)
// UnitGroupContext; the context must outlive them.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "charsum/algebraic.hpp"
#include "charsum/errors.hpp"
#include "charsum/unit_group.hpp"

namespace charsum {

class Character {
 public:
  static Character make(const UnitGroupContext& ctx, int64_t c, int64_t e = 0) {
    e = mod_reduce(e, 2);
    if (ctx.p() != 2 && e != 0)
      throw std::invalid_argument("Character: sign exponent e applies to p = 2 only");
    if (ctx.p() == 2 && ctx.m() == 1 && e != 0)
      throw std::invalid_argument("Character: mod 2 admits only the principal character");
    return Character(&ctx, mod_reduce(c, ctx.cyclic_order()), e);
  }

  const UnitGroupContext& context() const { return *ctx_; }
  int64_t c() const { return c_; }
  int64_t e() const { return e_; }

  bool same_modulus(const Character& o) const {
    return ctx_->p() == o.ctx_->p() && ctx_->m() == o.ctx_->m();
  }

  /// chi(x) as a rotation, or nullopt when x is not a unit.
  std::optional<Rotation> rotation_at(int64_t x) const {
    if (!ctx_->is_unit(x)) return std::nullopt;
    UnitExponents ue = ctx_->unit_exponents(x);
    Rotation rot = Rotation::of(c_ * ue.t, ctx_->cyclic_order());
    if (e_ != 0 && ue.e != 0) rot = rot + kRotMinusOne;
    return rot;
  }

  ExactValue value_at(int64_t x) const {
    auto rot = rotation_at(x);
    if (!rot) return ExactValue::zero(ctx_->p());
    return ExactValue::root_of_unity(ctx_->p(), *rot);
  }

  std::complex<double> complex_at(int64_t x) const {
    auto rot = rotation_at(x);
    return rot ? rot->to_complex() : std::complex<double>{0.0, 0.0};
  }

  /// chi(-1), always +1 or -1.
  int sign_at_minus_one() const {
    if (ctx_->p() == 2) return (ctx_->m() >= 2 && e_ == 1) ? -1 : 1;
    return (c_ % 2 == 0) ? 1 : -1;
  }

  int64_t conductor_exponent() const {
    if (c_ != 0) return ctx_->m() - valuation(c_, ctx_->p());
    if (ctx_->p() == 2 && e_ == 1) return 2;
    return 0;
  }

  int64_t conductor() const { return checked_pow(ctx_->p(), conductor_exponent()); }
  bool is_primitive() const { return conductor_exponent() == ctx_->m(); }
  bool is_principal() const { return c_ == 0 && e_ == 0; }

  Character conjugate() const {
    return Character(ctx_, mod_reduce(-c_, ctx_->cyclic_order()), e_);
  }

  Character pow(int64_t n) const {
    int64_t order = ctx_->cyclic_order();
    return Character(ctx_, mul_mod(c_, mod_reduce(n, order), order), mod_reduce(e_ * n, 2));
  }

  friend Character operator*(const Character& a, const Character& b) {
    if (!a.same_modulus(b))
      throw std::invalid_argument("Character: cannot multiply characters of different moduli");
    return Character(a.ctx_, mod_reduce(a.c_ + b.c_, a.ctx_->cyclic_order()),
                     mod_reduce(a.e_ + b.e_, 2));
  }

  /// The character mod target.q() that induces this one. Requires target to
  /// share p, have target.m() <= m, and lie at or above the conductor.
  Character reduce_to(const UnitGroupContext& target) const {
    int64_t p = ctx_->p();
    if (target.p() != p || target.m() > ctx_->m())
      throw std::invalid_argument("reduce_to: target must be a divisor modulus");
    int64_t j = target.m();
    if (conductor_exponent() > j)
      throw not_reducible_error("reduce_to: conductor " + std::to_string(conductor()) +
                                " does not divide " + std::to_string(target.q()));
    if (p != 2) return Character(&target, c_ / checked_pow(p, ctx_->m() - j), 0);
    if (j >= 3) return Character(&target, c_ / checked_pow(2, ctx_->m() - j), e_);
    if (j == 2) return Character(&target, 0, e_);
    return Character(&target, 0, 0);  // j = 1, necessarily principal
  }

 private:
  Character(const UnitGroupContext* ctx, int64_t c, int64_t e) : ctx_(ctx), c_(c), e_(e) {}

  const UnitGroupContext* ctx_;
  int64_t c_;
  int64_t e_;
};

/// All characters mod q in a deterministic order (principal first).
[[nodiscard]] inline std::vector<Character> enumerate_characters(const UnitGroupContext& ctx,
                                                                 bool primitive_only = false) {
  std::vector<Character> out;
  int64_t e_count = (ctx.p() == 2 && ctx.m() >= 2) ? 2 : 1;
  for (int64_t e = 0; e < e_count; ++e) {
    for (int64_t c = 0; c < ctx.cyclic_order(); ++c) {
      Character chi = Character::make(ctx, c, e);
      if (primitive_only && !chi.is_primitive()) continue;
      out.push_back(chi);
    }
  }
  return out;
}

/// chi(x) for x = 0..q-1 as complex doubles (0 on non-units). The table form
/// brute-force summation wants.
[[nodiscard]] inline std::vector<std::complex<double>> character_value_table(const Character& chi) {
  const UnitGroupContext& ctx = chi.context();
  std::vector<std::complex<double>> table(static_cast<size_t>(ctx.q()), {0.0, 0.0});
  for (int64_t x = 1; x < ctx.q(); ++x) {
    if (ctx.is_unit(x)) table[static_cast<size_t>(x)] = chi.complex_at(x);
  }
  return table;
}

}  // namespace charsum
