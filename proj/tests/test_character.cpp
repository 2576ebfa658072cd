#include <gtest/gtest.h>

#include <complex>
#include <vector>

#include "charsum/character.hpp"
#include "oracle.hpp"

using namespace charsum;

namespace {

void expect_close(std::complex<double> got, std::complex<double> want, double tol = 1e-12) {
  EXPECT_NEAR(got.real(), want.real(), tol);
  EXPECT_NEAR(got.imag(), want.imag(), tol);
}

/// Smallest j such that chi(x) = 1 whenever x = 1 mod p^j, straight from the
/// definition of the conductor.
int64_t brute_conductor_exponent(const Character& chi) {
  const UnitGroupContext& ctx = chi.context();
  for (int64_t j = 0; j <= ctx.m(); ++j) {
    const int64_t pj = checked_pow(ctx.p(), j);
    bool trivial = true;
    for (int64_t x = 1; x < ctx.q() && trivial; ++x) {
      if (!ctx.is_unit(x) || mod_reduce(x - 1, pj) != 0) continue;
      if (chi.rotation_at(x).value() != kRotOne) trivial = false;
    }
    if (trivial) return j;
  }
  return ctx.m();
}

}  // namespace

TEST(Character, ValuesMatchTheGeneratorDefinition) {
  for (auto [p, m] : {std::pair<int64_t, int64_t>{3, 2}, {3, 3}, {5, 2}, {7, 1},
                      {2, 1}, {2, 2}, {2, 3}, {2, 4}}) {
    UnitGroupContext ctx = UnitGroupContext::build(p, m);
    for (const Character& chi : enumerate_characters(ctx)) {
      for (int64_t x = 0; x < ctx.q(); ++x) {
        expect_close(chi.complex_at(x), oracle::character_value(ctx, chi.c(), chi.e(), x));
      }
    }
  }
}

TEST(Character, IsCompletelyMultiplicative) {
  for (auto [p, m] : {std::pair<int64_t, int64_t>{3, 3}, {2, 4}, {5, 2}}) {
    UnitGroupContext ctx = UnitGroupContext::build(p, m);
    std::vector<int64_t> units;
    for (int64_t x = 1; x < ctx.q(); ++x)
      if (ctx.is_unit(x)) units.push_back(x);
    for (const Character& chi : enumerate_characters(ctx)) {
      for (int64_t x : units) {
        for (int64_t y : units) {
          const Rotation lhs = chi.rotation_at(mul_mod(x, y, ctx.q())).value();
          const Rotation rhs = chi.rotation_at(x).value() + chi.rotation_at(y).value();
          EXPECT_EQ(lhs, rhs) << "p=" << p << " m=" << m << " c=" << chi.c() << " e=" << chi.e()
                              << " x=" << x << " y=" << y;
        }
      }
    }
  }
}

TEST(Character, VanishesOffTheUnits) {
  UnitGroupContext ctx = UnitGroupContext::build(3, 2);
  Character chi = Character::make(ctx, 1);
  EXPECT_FALSE(chi.rotation_at(6).has_value());
  EXPECT_TRUE(chi.value_at(3).is_zero);
  expect_close(chi.complex_at(0), {0.0, 0.0});
  const auto table = character_value_table(chi);
  expect_close(table[6], {0.0, 0.0});
  expect_close(table[5], chi.complex_at(5));
}

TEST(Character, EnumerationCountsAreFrozen) {
  UnitGroupContext c9 = UnitGroupContext::build(3, 2);
  EXPECT_EQ(enumerate_characters(c9).size(), 6u);
  EXPECT_EQ(enumerate_characters(c9, true).size(), 4u);

  UnitGroupContext c16 = UnitGroupContext::build(2, 4);
  EXPECT_EQ(enumerate_characters(c16).size(), 8u);
  EXPECT_EQ(enumerate_characters(c16, true).size(), 4u);

  UnitGroupContext c4 = UnitGroupContext::build(2, 2);
  EXPECT_EQ(enumerate_characters(c4).size(), 2u);
  EXPECT_EQ(enumerate_characters(c4, true).size(), 1u);

  UnitGroupContext c2 = UnitGroupContext::build(2, 1);
  EXPECT_EQ(enumerate_characters(c2).size(), 1u);
  EXPECT_TRUE(enumerate_characters(c2).front().is_principal());
}

TEST(Character, ConductorMatchesTheKernelDefinition) {
  for (auto [p, m] : {std::pair<int64_t, int64_t>{3, 3}, {5, 2}, {2, 4}, {2, 3}, {2, 2}}) {
    UnitGroupContext ctx = UnitGroupContext::build(p, m);
    for (const Character& chi : enumerate_characters(ctx)) {
      EXPECT_EQ(chi.conductor_exponent(), brute_conductor_exponent(chi))
          << "p=" << p << " m=" << m << " c=" << chi.c() << " e=" << chi.e();
      EXPECT_EQ(chi.is_primitive(), chi.conductor_exponent() == m);
    }
  }
}

TEST(Character, SignAtMinusOneMatchesEvaluation) {
  for (auto [p, m] : {std::pair<int64_t, int64_t>{3, 2}, {7, 1}, {2, 2}, {2, 4}}) {
    UnitGroupContext ctx = UnitGroupContext::build(p, m);
    for (const Character& chi : enumerate_characters(ctx)) {
      const double want = static_cast<double>(chi.sign_at_minus_one());
      expect_close(chi.complex_at(ctx.q() - 1), {want, 0.0});
    }
  }
}

TEST(Character, ProductsConjugatesAndPowersComposePointwise) {
  UnitGroupContext ctx = UnitGroupContext::build(3, 3);
  const auto chars = enumerate_characters(ctx);
  for (const Character& a : chars) {
    const Character conj = a.conjugate();
    const Character sq = a.pow(2);
    for (int64_t x = 1; x < ctx.q(); ++x) {
      if (!ctx.is_unit(x)) continue;
      expect_close(conj.complex_at(x), std::conj(a.complex_at(x)));
      expect_close(sq.complex_at(x), a.complex_at(x) * a.complex_at(x));
    }
    for (const Character& b : chars) {
      const Character ab = a * b;
      for (int64_t x : {1, 2, 5, 13}) {
        expect_close(ab.complex_at(x), a.complex_at(x) * b.complex_at(x));
      }
    }
  }
  EXPECT_TRUE(chars.front().pow(0).is_principal());
}

TEST(Character, ReduceToDropsToTheInducingModulus) {
  UnitGroupContext c27 = UnitGroupContext::build(3, 3);
  UnitGroupContext c9 = UnitGroupContext::build(3, 2);

  Character wide = Character::make(c27, 3);  // conductor 9
  Character narrow = wide.reduce_to(c9);
  EXPECT_EQ(narrow.c(), 1);
  for (int64_t x = 1; x < 27; ++x) {
    if (!c27.is_unit(x)) continue;
    expect_close(wide.complex_at(x), narrow.complex_at(mod_reduce(x, 9)));
  }

  EXPECT_THROW(Character::make(c27, 1).reduce_to(c9), not_reducible_error);
  EXPECT_THROW(wide.reduce_to(UnitGroupContext::build(5, 1)), std::invalid_argument);

  UnitGroupContext c16 = UnitGroupContext::build(2, 4);
  UnitGroupContext c8 = UnitGroupContext::build(2, 3);
  Character even = Character::make(c16, 2, 1);  // conductor 8
  Character dropped = even.reduce_to(c8);
  EXPECT_EQ(dropped.c(), 1);
  EXPECT_EQ(dropped.e(), 1);
  for (int64_t x = 1; x < 16; x += 2) {
    expect_close(even.complex_at(x), dropped.complex_at(mod_reduce(x, 8)));
  }
}

TEST(Character, MakeNormalizesAndValidatesLabels) {
  UnitGroupContext c9 = UnitGroupContext::build(3, 2);
  EXPECT_EQ(Character::make(c9, 7).c(), 1);   // labels live mod phi(q)
  EXPECT_EQ(Character::make(c9, -1).c(), 5);
  EXPECT_THROW(Character::make(c9, 1, 1), std::invalid_argument);  // sign part needs p = 2

  UnitGroupContext c2 = UnitGroupContext::build(2, 1);
  EXPECT_THROW(Character::make(c2, 0, 1), std::invalid_argument);
  UnitGroupContext c8 = UnitGroupContext::build(2, 3);
  EXPECT_EQ(Character::make(c8, 5, 3).c(), 1);
  EXPECT_EQ(Character::make(c8, 5, 3).e(), 1);
}
