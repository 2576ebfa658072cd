#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "charsum/modular.hpp"

using namespace charsum;

TEST(ModReduce, MapsIntoCanonicalRange) {
  EXPECT_EQ(mod_reduce(7, 5), 2);
  EXPECT_EQ(mod_reduce(-1, 5), 4);
  EXPECT_EQ(mod_reduce(-10, 5), 0);
  EXPECT_EQ(mod_reduce(0, 3), 0);
  EXPECT_EQ(mod_reduce(INT64_MIN + 1, 2), 1);
}

TEST(MulMod, MatchesWideArithmeticNearTheTypeLimit) {
  const int64_t m = (int64_t{1} << 62) - 57;
  const int64_t a = m - 12345;
  const int64_t b = m - 67;
  const auto expected =
      static_cast<int64_t>(static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b) %
                           static_cast<unsigned __int128>(m));
  EXPECT_EQ(mul_mod(a, b, m), expected);
  EXPECT_EQ(mul_mod(-3, 5, 7), mod_reduce(-15, 7));
}

TEST(PowMod, AgreesWithRepeatedMultiplication) {
  for (int64_t base : {2, 3, 10, 37}) {
    int64_t acc = 1;
    for (uint64_t e = 0; e <= 20; ++e) {
      EXPECT_EQ(pow_mod(base, e, 1'000'003), acc) << base << "^" << e;
      acc = mul_mod(acc, base, 1'000'003);
    }
  }
  EXPECT_EQ(pow_mod(5, 0, 7), 1);
}

TEST(InverseMod, ProducesTwoSidedInverses) {
  for (int64_t m : {5, 7, 9, 16, 27, 1'000'003}) {
    for (int64_t a = 1; a < std::min<int64_t>(m, 40); ++a) {
      if (std::gcd(a, m) != 1) continue;
      const int64_t inv = inverse_mod(a, m);
      EXPECT_EQ(mul_mod(a, inv, m), 1) << a << " mod " << m;
    }
  }
  EXPECT_EQ(mul_mod(-3, inverse_mod(-3, 25), 25), 1);
}

TEST(JacobiSymbol, MatchesEulerCriterionOnPrimes) {
  for (int64_t p : {3, 5, 7, 11, 13, 17, 19, 23}) {
    for (int64_t a = 0; a < 2 * p; ++a) {
      int expected = 0;
      if (a % p != 0) {
        const int64_t euler = pow_mod(a, static_cast<uint64_t>((p - 1) / 2), p);
        expected = (euler == 1) ? 1 : -1;
      }
      EXPECT_EQ(jacobi_symbol(a, p), expected) << "(" << a << "|" << p << ")";
    }
  }
}

TEST(JacobiSymbol, HandlesCompositeBottomAndNegativeTop) {
  EXPECT_EQ(jacobi_symbol(2, 15), 1);   // (2|3)(2|5) = (-1)(-1)
  EXPECT_EQ(jacobi_symbol(7, 15), -1);  // (7|3)(7|5) = (1)(-1)
  EXPECT_EQ(jacobi_symbol(3, 9), 0);
  EXPECT_EQ(jacobi_symbol(-1, 5), 1);
  EXPECT_EQ(jacobi_symbol(-1, 7), -1);
}

TEST(IsPrime, AgreesWithTrialDivisionBelowAThousand) {
  for (int64_t n = 0; n < 1000; ++n) {
    bool expected = n >= 2;
    for (int64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        expected = false;
        break;
      }
    }
    EXPECT_EQ(is_prime(n), expected) << n;
  }
}

TEST(IsPrime, HandlesCarmichaelNumbersAndLargePrimes) {
  EXPECT_FALSE(is_prime(561));
  EXPECT_FALSE(is_prime(41041));
  EXPECT_TRUE(is_prime(1'000'000'007));
  EXPECT_TRUE(is_prime((int64_t{1} << 61) - 1));
}

TEST(CheckedPow, ComputesSmallPowersAndRejectsOverflow) {
  EXPECT_EQ(checked_pow(2, 10), 1024);
  EXPECT_EQ(checked_pow(3, 0), 1);
  EXPECT_EQ(checked_pow(13, 3), 2197);
  EXPECT_THROW((void)checked_pow(2, 63), std::invalid_argument);
  EXPECT_THROW((void)checked_pow(10, 20), std::invalid_argument);
}

TEST(Valuation, CountsPrimeFactorsExactly) {
  EXPECT_EQ(valuation(24, 2), 3);
  EXPECT_EQ(valuation(24, 3), 1);
  EXPECT_EQ(valuation(7, 2), 0);
  EXPECT_EQ(valuation(-8, 2), 3);
  EXPECT_THROW((void)valuation(0, 2), std::invalid_argument);
}
