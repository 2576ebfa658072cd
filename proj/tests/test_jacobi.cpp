#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "charsum/jacobi.hpp"
#include "oracle.hpp"

using namespace charsum;

namespace {

void expect_close(std::complex<double> got, std::complex<double> want, double tol) {
  EXPECT_NEAR(got.real(), want.real(), tol) << "got " << got << " want " << want;
  EXPECT_NEAR(got.imag(), want.imag(), tol) << "got " << got << " want " << want;
}

double cell_tol(int64_t p, int64_t m, int64_t n) {
  return 1e-9 * std::pow(static_cast<double>(p), (m + n) / 2.0);
}

}  // namespace

TEST(JacobiSum, FrozenValuesMod9) {
  UnitGroupContext ctx = UnitGroupContext::build(3, 2);
  const Character chi1 = Character::make(ctx, 1);
  const Character chi3 = Character::make(ctx, 3);
  const Character chi5 = Character::make(ctx, 5);

  const SumResult pair11 = jacobi_eval({{chi1, chi1}, 1}, JacobiMethod::closed);
  ASSERT_TRUE(pair11.exact);
  EXPECT_EQ(pair11.value, ExactValue::make(3, 2, Rotation::of(2, 3)));
  expect_close(pair11.approx, {-1.5, -3.0 * std::sqrt(3.0) / 2.0}, 1e-12);
  expect_close(oracle::jacobi_sum({chi1, chi1}, 1), pair11.approx, 1e-12);

  const SumResult withImprimitive = jacobi_eval({{chi1, chi3}, 1}, JacobiMethod::closed);
  ASSERT_TRUE(withImprimitive.exact);
  EXPECT_TRUE(withImprimitive.value.is_zero);
  expect_close(oracle::jacobi_sum({chi1, chi3}, 1), {0.0, 0.0}, 1e-12);

  // B = 9 = 0 mod 9 collapses to the top case; the product character is
  // principal here, so the sum has full magnitude phi(9) = 6.
  const SumResult top = jacobi_eval({{chi1, chi5}, 9}, JacobiMethod::automatic);
  ASSERT_TRUE(top.exact);
  EXPECT_EQ(top.value.scale, 6);
  EXPECT_EQ(top.value.half_exp, 0);
  expect_close(top.approx, {-6.0, 0.0}, 1e-12);
  expect_close(oracle::jacobi_sum({chi1, chi5}, 9), top.approx, 1e-12);
}

TEST(JacobiSum, AllPathsAgreeOnTheMod27PairGrid) {
  UnitGroupContext ctx = UnitGroupContext::build(3, 3);
  const auto chars = enumerate_characters(ctx);
  int cells = 0;
  for (const Character& a : chars) {
    for (const Character& b : chars) {
      // Every formula here presumes at least one primitive factor; pairs of
      // imprimitive characters are exercised through the brute path elsewhere.
      if (!a.is_primitive() && !b.is_primitive()) continue;
      const std::vector<Character> pair{a, b};
      for (int64_t n = 0; n <= 1; ++n) {
        const int64_t B = checked_pow(3, n);
        const std::complex<double> reference = oracle::jacobi_sum(pair, B);
        const double tol = cell_tol(3, 3, n);
        ++cells;

        const SumResult closed = jacobi_closed(pair, n);
        const SumResult quotient = jacobi_via_gauss(pair, n);
        const SumResult direct = jacobi_direct_k2(a, b, B);
        expect_close(closed.approx, reference, tol);
        expect_close(quotient.approx, reference, tol);
        expect_close(direct.approx, reference, tol);

        // Exact paths must agree exactly, not merely within tolerance.
        ASSERT_TRUE(closed.exact && direct.exact);
        EXPECT_EQ(closed.value, direct.value)
            << "c=(" << a.c() << "," << b.c() << ") n=" << n;
        if (quotient.exact) EXPECT_EQ(quotient.value, closed.value);

        // Zero classification: the closed form reports an exact zero exactly
        // when the brute sum vanishes.
        EXPECT_EQ(closed.value.is_zero, std::abs(reference) <= 1e-9)
            << "c=(" << a.c() << "," << b.c() << ") n=" << n;
      }
    }
  }
  EXPECT_EQ(cells, 2 * (18 * 18 - 6 * 6));
}

TEST(JacobiSum, TranslationToGeneralBMatchesTheOracle) {
  UnitGroupContext ctx = UnitGroupContext::build(3, 3);
  const Character a = Character::make(ctx, 1);
  const Character b = Character::make(ctx, 7);
  for (int64_t B : {2, 5, 10, 26, 3, 6, 15, 9, 18, 25}) {
    const SumResult got = jacobi_eval({{a, b}, B}, JacobiMethod::automatic);
    expect_close(got.approx, oracle::jacobi_sum({a, b}, B), cell_tol(3, 3, 3));
    if (B % 3 != 0 && B != 1) {
      EXPECT_NE(got.notes.find("translated"), std::string::npos) << "B=" << B;
    }
  }
}

TEST(JacobiSum, SampledTriplesAgreeAcrossPaths) {
  std::mt19937_64 rng(271828);
  for (int64_t q : {27, 125}) {
    const auto [p, m] = std::pair<int64_t, int64_t>{q == 27 ? 3 : 5, 3};
    UnitGroupContext ctx = UnitGroupContext::build(p, m);
    const auto chars = enumerate_characters(ctx);
    for (int trial = 0; trial < 25; ++trial) {
      const std::vector<Character> triple{chars[rng() % chars.size()],
                                          chars[rng() % chars.size()],
                                          chars[rng() % chars.size()]};
      if (!triple[0].is_primitive() && !triple[1].is_primitive() && !triple[2].is_primitive())
        continue;
      for (int64_t n = 0; n <= 1; ++n) {
        const std::complex<double> reference = oracle::jacobi_sum(triple, checked_pow(p, n));
        const double tol = 1e-9 * std::pow(static_cast<double>(p), (2.0 * m + n) / 2.0);
        expect_close(jacobi_closed(triple, n).approx, reference, tol);
        expect_close(jacobi_via_gauss(triple, n).approx, reference, tol);
      }
    }
  }
}

TEST(JacobiSum, EvalHandlesDegenerateShapes) {
  UnitGroupContext ctx = UnitGroupContext::build(3, 2);
  const Character chi = Character::make(ctx, 1);

  // k = 1 is the character itself.
  const SumResult single = jacobi_eval({{chi}, 4}, JacobiMethod::automatic);
  ASSERT_TRUE(single.exact);
  EXPECT_EQ(single.value, chi.value_at(4));

  // Characters must share one modulus.
  UnitGroupContext other = UnitGroupContext::build(3, 3);
  EXPECT_THROW(jacobi_eval({{chi, Character::make(other, 1)}, 1}, JacobiMethod::automatic),
               std::invalid_argument);
  EXPECT_THROW(jacobi_eval({{}, 1}, JacobiMethod::automatic), std::invalid_argument);

  // The direct path is a two-character formula.
  EXPECT_THROW(jacobi_eval({{chi, chi, chi}, 1}, JacobiMethod::direct), precondition_error);
}

TEST(JacobiSum, UnsupportedTwoPowerRegimesFallBackToTheQuotient) {
  UnitGroupContext ctx = UnitGroupContext::build(2, 4);
  const std::vector<Character> triple{Character::make(ctx, 1, 1), Character::make(ctx, 1, 1),
                                      Character::make(ctx, 1, 1)};

  EXPECT_THROW(jacobi_closed(triple, 0), unsupported_regime_error);

  const SumResult automatic = jacobi_eval({triple, 1}, JacobiMethod::automatic);
  EXPECT_EQ(automatic.method, SumMethod::gauss_quotient);
  EXPECT_NE(automatic.notes.find("after:"), std::string::npos);
  expect_close(automatic.approx, oracle::jacobi_sum(triple, 1),
               1e-9 * std::pow(2.0, (2.0 * 4) / 2.0));

  // The stationary-point formula needs an odd prime.
  EXPECT_THROW(jacobi_direct_k2(triple[0], triple[1], 1), unsupported_regime_error);
}

TEST(JacobiSum, BruteRespectsTheTermGuard) {
  UnitGroupContext ctx = UnitGroupContext::build(5, 3);
  const Character chi = Character::make(ctx, 1);
  const JacobiQuery query{{chi, chi, chi}, 1};
  EXPECT_THROW(jacobi_brute(query, 10'000), resource_limit_error);
  EXPECT_THROW(jacobi_eval(query, JacobiMethod::brute, 10'000), resource_limit_error);
  EXPECT_NO_THROW(jacobi_eval(query, JacobiMethod::closed, 10'000));
}

TEST(JacobiSum, PowerCharacterTuplesStayConsistentWithGaussQuotients) {
  // J(chi, ..., chi) against the Gauss-sum ratio it must equal when the power
  // character stays primitive: product over copies of G(chi) divided by
  // G(chi^k), for k = 3 on two odd moduli.
  for (int64_t q : {27, 125}) {
    const auto [p, m] = std::pair<int64_t, int64_t>{q == 27 ? 3 : 5, 3};
    UnitGroupContext ctx = UnitGroupContext::build(p, m);
    for (const Character& chi : enumerate_characters(ctx, true)) {
      const Character cube = chi.pow(3);
      if (!cube.is_primitive()) continue;
      const std::vector<Character> triple{chi, chi, chi};
      const SumResult lhs = jacobi_closed(triple, 0);
      const ExactValue rhs = gauss_closed(chi).value * gauss_closed(chi).value *
                             gauss_closed(chi).value / gauss_closed(cube).value;
      ASSERT_TRUE(lhs.exact);
      EXPECT_EQ(lhs.value, rhs) << "q=" << q << " c=" << chi.c();
    }
  }
}
