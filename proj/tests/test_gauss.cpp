#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "charsum/gauss.hpp"
#include "oracle.hpp"

using namespace charsum;

namespace {

void expect_close(std::complex<double> got, std::complex<double> want, double tol) {
  EXPECT_NEAR(got.real(), want.real(), tol) << "got " << got << " want " << want;
  EXPECT_NEAR(got.imag(), want.imag(), tol) << "got " << got << " want " << want;
}

}  // namespace

TEST(GaussSum, FrozenValuesMod9) {
  UnitGroupContext ctx = UnitGroupContext::build(3, 2);
  const SumResult closed = gauss_closed(Character::make(ctx, 1));
  ASSERT_TRUE(closed.exact);
  EXPECT_EQ(closed.value, ExactValue::make(3, 2, Rotation::of(7, 18)));
  expect_close(closed.approx, {-2.298133329356934, 1.9283628290596178}, 1e-12);
  expect_close(oracle::gauss_sum(Character::make(ctx, 1)), closed.approx, 1e-12);
}

TEST(GaussSum, FrozenValuesMod27) {
  // Odd modulus exponent: the closed form carries the quadratic completion
  // term from the innermost localization layer. These three pin it down.
  UnitGroupContext ctx = UnitGroupContext::build(3, 3);
  const struct {
    int64_t c;
    int64_t num;
  } cases[] = {{1, 41}, {5, 85}, {4, 23}};
  for (const auto& cs : cases) {
    const Character chi = Character::make(ctx, cs.c);
    const SumResult closed = gauss_closed(chi);
    ASSERT_TRUE(closed.exact);
    EXPECT_EQ(closed.value, ExactValue::make(3, 3, Rotation::of(cs.num, 108))) << "c=" << cs.c;
    expect_close(oracle::gauss_sum(chi), closed.approx, 1e-10);
  }
}

TEST(GaussSum, FrozenValuesAtSmallTwoPowers) {
  UnitGroupContext c4 = UnitGroupContext::build(2, 2);
  EXPECT_EQ(gauss_closed(Character::make(c4, 0, 1)).value, ExactValue::make(2, 2, kRotI));

  UnitGroupContext c8 = UnitGroupContext::build(2, 3);
  EXPECT_EQ(gauss_closed(Character::make(c8, 1, 0)).value, ExactValue::make(2, 3, kRotOne));
  EXPECT_EQ(gauss_closed(Character::make(c8, 1, 1)).value, ExactValue::make(2, 3, kRotI));

  const SumResult imprimitive = gauss_closed(Character::make(c8, 0, 1));
  ASSERT_TRUE(imprimitive.exact);
  EXPECT_TRUE(imprimitive.value.is_zero);
}

TEST(GaussSum, ClosedMatchesTheOracleOnASmallGrid) {
  for (auto [p, m_top] : {std::pair<int64_t, int64_t>{2, 9}, {3, 5}, {5, 4}, {7, 3}}) {
    for (int64_t m = 2; m <= m_top; ++m) {
      UnitGroupContext ctx = UnitGroupContext::build(p, m);
      const double tol = 1e-9 * std::pow(static_cast<double>(p), m / 2.0);
      for (const Character& chi : enumerate_characters(ctx)) {
        const SumResult closed = gauss_closed(chi);
        ASSERT_TRUE(closed.exact);
        expect_close(closed.approx, oracle::gauss_sum(chi), tol);
        if (!chi.is_primitive()) {
          EXPECT_TRUE(closed.value.is_zero)
              << "p=" << p << " m=" << m << " c=" << chi.c() << " e=" << chi.e();
        } else {
          EXPECT_EQ(closed.value.half_exp, m);  // |G| = p^(m/2)
          EXPECT_EQ(closed.value.scale, 1);
        }
      }
    }
  }
}

TEST(GaussSum, ClosedValueDoesNotDependOnTheLocalizationDepth) {
  for (auto [p, m] : {std::pair<int64_t, int64_t>{3, 4}, {3, 5}, {5, 3}, {7, 3},
                      {2, 6}, {2, 7}}) {
    UnitGroupContext ctx = UnitGroupContext::build(p, m);
    const int64_t jmin = (p == 2) ? (m + 1) / 2 + 2 : (m + 1) / 2;
    for (const Character& chi : enumerate_characters(ctx, true)) {
      const SumResult base = gauss_closed_with_j(chi, jmin);
      for (int64_t j = jmin; j <= m; ++j) {
        EXPECT_EQ(gauss_closed_with_j(chi, j).value, base.value)
            << "p=" << p << " m=" << m << " c=" << chi.c() << " j=" << j;
      }
    }
    EXPECT_THROW(gauss_closed_with_j(enumerate_characters(ctx, true).front(), jmin - 1),
                 std::invalid_argument);
  }
}

TEST(GaussSum, ConjugationIdentityMatchesTheOracle) {
  for (auto [p, m] : {std::pair<int64_t, int64_t>{3, 3}, {2, 4}, {5, 2}}) {
    UnitGroupContext ctx = UnitGroupContext::build(p, m);
    const double tol = 1e-9 * std::pow(static_cast<double>(p), m / 2.0);
    for (const Character& chi : enumerate_characters(ctx)) {
      expect_close(gauss_conjugate(chi).approx, std::conj(oracle::gauss_sum(chi)), tol);
    }
  }
  // m = 1 keeps an exact branch for the principal character only.
  UnitGroupContext c7 = UnitGroupContext::build(7, 1);
  const SumResult principal = gauss_conjugate(Character::make(c7, 0));
  EXPECT_TRUE(principal.exact);
  expect_close(principal.approx, {-1.0, 0.0}, 1e-12);
}

TEST(GaussSum, EvalDispatchesOnMethodAndModulus) {
  UnitGroupContext c9 = UnitGroupContext::build(3, 2);
  const Character chi9 = Character::make(c9, 1);
  EXPECT_TRUE(gauss_eval(chi9).exact);
  EXPECT_EQ(gauss_eval(chi9).method, SumMethod::gauss_closed);
  EXPECT_EQ(gauss_eval(chi9, GaussMethod::brute).method, SumMethod::brute);
  EXPECT_EQ(gauss_eval(chi9, GaussMethod::brute).terms, 6u);

  UnitGroupContext c7 = UnitGroupContext::build(7, 1);
  const Character chi7 = Character::make(c7, 2);
  const SumResult fallback = gauss_eval(chi7);
  EXPECT_EQ(fallback.method, SumMethod::brute);
  EXPECT_EQ(fallback.notes, "m=1: brute fallback");
  EXPECT_THROW(gauss_closed(chi7), unsupported_regime_error);
}

TEST(GaussSum, BruteRespectsTheTermGuard) {
  UnitGroupContext ctx = UnitGroupContext::build(3, 9);
  const Character chi = Character::make(ctx, 1);
  EXPECT_THROW(gauss_brute(chi, 100), resource_limit_error);
  EXPECT_THROW(gauss_eval(chi, GaussMethod::brute, 100), resource_limit_error);
  EXPECT_NO_THROW(gauss_eval(chi, GaussMethod::closed, 100));
}
