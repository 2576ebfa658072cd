#include <gtest/gtest.h>

#include <complex>

#include "charsum/algebraic.hpp"
#include "oracle.hpp"

using namespace charsum;

namespace {

void expect_close(std::complex<double> got, std::complex<double> want, double tol = 1e-12) {
  EXPECT_NEAR(got.real(), want.real(), tol);
  EXPECT_NEAR(got.imag(), want.imag(), tol);
}

}  // namespace

TEST(Rotation, NormalizesOnConstruction) {
  EXPECT_EQ(Rotation::of(2, 4), (Rotation{1, 2}));
  EXPECT_EQ(Rotation::of(-1, 4), (Rotation{3, 4}));
  EXPECT_EQ(Rotation::of(18, 6), (Rotation{0, 1}));
  EXPECT_EQ(Rotation::of(7, 18), (Rotation{7, 18}));
  EXPECT_THROW(Rotation::of(1, 0), std::invalid_argument);
  EXPECT_THROW(Rotation::of(1, -3), std::invalid_argument);
}

TEST(Rotation, ArithmeticReducesOverTheCommonDenominator) {
  EXPECT_EQ(Rotation::of(1, 3) + Rotation::of(1, 6), (Rotation{1, 2}));
  EXPECT_EQ(Rotation::of(1, 4) - Rotation::of(1, 2), (Rotation{3, 4}));
  EXPECT_EQ(-Rotation::of(1, 8), (Rotation{7, 8}));
  EXPECT_EQ(-Rotation::of(0, 5), (Rotation{0, 1}));
  EXPECT_EQ(Rotation::of(1, 8).times(3), (Rotation{3, 8}));
  EXPECT_EQ(Rotation::of(1, 8).times(-1), (Rotation{7, 8}));
  EXPECT_EQ(Rotation::of(5, 6).times(0), (Rotation{0, 1}));
  EXPECT_EQ(kRotI + kRotI, kRotMinusOne);
}

TEST(Rotation, ToComplexHitsTheUnitCircle) {
  expect_close(kRotOne.to_complex(), {1.0, 0.0});
  expect_close(kRotMinusOne.to_complex(), {-1.0, 0.0});
  expect_close(kRotI.to_complex(), {0.0, 1.0});
  expect_close(Rotation::of(1, 8).to_complex(), {std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2});
  expect_close(Rotation::of(2, 3).to_complex(), oracle::unit_root(2, 3));
}

TEST(ExactValue, FrozenComplexEmbeddings) {
  expect_close(ExactValue::make(2, 2, Rotation::of(1, 4)).to_complex(), {0.0, 2.0});
  expect_close(ExactValue::make(3, 2, Rotation::of(2, 3)).to_complex(),
               {-1.5, -3.0 * std::sqrt(3.0) / 2.0});
  expect_close(ExactValue::make(2, 3, kRotOne).to_complex(), {2.0 * std::numbers::sqrt2, 0.0});
  expect_close(ExactValue::make(3, -2, kRotMinusOne).to_complex(), {-1.0 / 3.0, 0.0});
  expect_close(ExactValue::zero(5).to_complex(), {0.0, 0.0});
  EXPECT_DOUBLE_EQ(ExactValue::make(3, 3, kRotOne).magnitude(), 3.0 * std::sqrt(3.0));
}

TEST(ExactValue, MultiplicationAndDivisionTrackAllFields) {
  const ExactValue a = ExactValue::make(3, 1, Rotation::of(1, 3));
  const ExactValue b = ExactValue::make(3, 1, Rotation::of(1, 3), 2);
  EXPECT_EQ(a * b, ExactValue::make(3, 2, Rotation::of(2, 3), 2));
  EXPECT_EQ(b / a, ExactValue::make(3, 0, kRotOne, 2));
  EXPECT_EQ(a * ExactValue::zero(3), ExactValue::zero(3));
  EXPECT_EQ(ExactValue::zero(3) / a, ExactValue::zero(3));
  EXPECT_EQ(a.conjugate(), ExactValue::make(3, 1, Rotation::of(2, 3)));
  EXPECT_EQ(ExactValue::one(3) * a, a);
}

TEST(ExactValue, RejectsIllegalOperands) {
  const ExactValue a = ExactValue::make(3, 1, kRotOne);
  EXPECT_THROW(a * ExactValue::make(5, 1, kRotOne), std::invalid_argument);
  EXPECT_THROW(a / ExactValue::zero(3), std::invalid_argument);
  EXPECT_THROW(a / ExactValue::make(3, 0, kRotOne, 2), std::invalid_argument);
  EXPECT_THROW(ExactValue::make(3, 0, kRotOne, -1), std::invalid_argument);
}

TEST(ExactValue, ZeroScaleCollapsesToTheCanonicalZero) {
  EXPECT_EQ(ExactValue::make(3, 5, Rotation::of(1, 3), 0), ExactValue::zero(3));
  EXPECT_TRUE(ExactValue::make(2, 1, kRotI, 0).is_zero);
}

TEST(SumResult, FactoriesPopulateTheApproximation) {
  const SumResult exact = SumResult::from_exact(ExactValue::make(2, 2, kRotI),
                                                SumMethod::gauss_closed, "why");
  EXPECT_TRUE(exact.exact);
  EXPECT_EQ(exact.terms, 0u);
  EXPECT_EQ(exact.notes, "why");
  expect_close(exact.approx, {0.0, 2.0});

  const SumResult numeric = SumResult::from_numeric({1.0, -2.0}, 42, SumMethod::brute);
  EXPECT_FALSE(numeric.exact);
  EXPECT_EQ(numeric.terms, 42u);
  expect_close(numeric.approx, {1.0, -2.0});
}

TEST(SumResult, ScaleResultKeepsExactnessOnlyWhenExact) {
  const ExactValue factor = ExactValue::make(3, 0, kRotMinusOne, 2);
  SumResult exact = scale_result(
      factor, SumResult::from_exact(ExactValue::make(3, 2, kRotOne), SumMethod::jacobi_closed));
  EXPECT_TRUE(exact.exact);
  EXPECT_EQ(exact.value, ExactValue::make(3, 2, kRotMinusOne, 2));

  SumResult numeric =
      scale_result(factor, SumResult::from_numeric({1.0, 0.0}, 5, SumMethod::brute));
  EXPECT_FALSE(numeric.exact);
  expect_close(numeric.approx, {-2.0, 0.0});
}

TEST(SumResult, ApproxEqualUsesExactComparisonWhenBothSidesAreExact) {
  const SumResult a = SumResult::from_exact(ExactValue::make(3, 2, Rotation::of(1, 18)),
                                            SumMethod::gauss_closed);
  SumResult b = a;
  EXPECT_TRUE(approx_equal(a, b, 0.0));
  b.value = ExactValue::make(3, 2, Rotation::of(1, 19));
  EXPECT_FALSE(approx_equal(a, b, 1e-2));  // close numerically, but exact fields differ

  const SumResult c = SumResult::from_numeric(a.approx + std::complex<double>{1e-9, 0.0}, 9,
                                              SumMethod::brute);
  EXPECT_TRUE(approx_equal(a, c, 1e-8));
  EXPECT_FALSE(approx_equal(a, c, 1e-12));
}
