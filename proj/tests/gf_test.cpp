// Copyright 2026 The vqss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vqss/gf.hpp"

#include <cstdint>
#include <limits>

#include "gtest/gtest.h"

namespace vqss {
namespace {

// Oracle: trial division.
bool slow_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t i = 2; i * i <= n; ++i) {
    if (n % i == 0) return false;
  }
  return true;
}

// Oracle: linear search for the inverse.
std::uint64_t brute_inverse(std::uint64_t a, std::uint64_t d) {
  for (std::uint64_t x = 1; x < d; ++x) {
    if (a * x % d == 1) return x;
  }
  return 0;
}

FieldElement F(std::uint64_t d, std::uint64_t v) {
  return FieldElement(PrimeModulus(d), v);
}

TEST(PrimeModulusTest, RejectsNonPrimeAndEven) {
  EXPECT_THROW(PrimeModulus(1), ValidationError);
  EXPECT_THROW(PrimeModulus(2), ValidationError);
  EXPECT_THROW(PrimeModulus(9), ValidationError);
  EXPECT_THROW(PrimeModulus(15), ValidationError);
  EXPECT_NO_THROW(PrimeModulus(3));
  EXPECT_NO_THROW(PrimeModulus(101));
}

TEST(PrimeModulusTest, MillerRabinMatchesTrialDivision) {
  for (std::uint64_t n = 0; n < 20000; ++n) {
    ASSERT_EQ(is_prime(n), slow_is_prime(n)) << n;
  }
  // Strong pseudoprimes to several small bases.
  EXPECT_FALSE(is_prime(3215031751ULL));
  EXPECT_FALSE(is_prime(3825123056546413051ULL));
  EXPECT_TRUE(is_prime(18446744073709551557ULL));  // largest 64-bit prime
  EXPECT_FALSE(is_prime(18446744073709551615ULL));
}

TEST(FieldElementTest, Examples) {
  EXPECT_EQ((F(7, 3) + F(7, 5)).value(), 1u);
  EXPECT_EQ((F(7, 6) + F(7, 1)).value(), 0u);
  EXPECT_EQ((F(7, 3) * F(7, 2)).value(), 6u);
  EXPECT_EQ((F(7, 5) * F(7, 3)).value(), 1u);
  EXPECT_EQ(inv(F(7, 2)).value(), 4u);
  EXPECT_EQ(inv(F(5, 3)).value(), 2u);
  EXPECT_EQ(inv(F(11, 1)).value(), 1u);
  EXPECT_EQ(neg(F(7, 0)).value(), 0u);
  EXPECT_EQ(sub(F(7, 2), F(7, 5)).value(), 4u);
  EXPECT_EQ(pow(F(7, 3), 2).value(), 2u);
  EXPECT_EQ(pow(F(7, 0), 0).value(), 1u);
  for (std::uint64_t x = 0; x < 7; ++x) {
    EXPECT_EQ(add(F(7, x), F(7, 0)), F(7, x));
    EXPECT_EQ(mul(F(7, x), F(7, 1)), F(7, x));
  }
}

TEST(FieldElementTest, Errors) {
  EXPECT_THROW(F(7, 0).inverse(), ArithmeticError);
  EXPECT_THROW(F(7, 1) + F(5, 1), ArithmeticError);
  EXPECT_THROW(F(7, 1) * F(5, 1), ArithmeticError);
  EXPECT_THROW(F(7, 7), ValidationError);
  EXPECT_EQ(FieldElement::reduce(PrimeModulus(7), 15).value(), 1u);
  EXPECT_EQ(FieldElement::reduce_signed(PrimeModulus(7), -3).value(), 4u);
  EXPECT_EQ(FieldElement::reduce_signed(PrimeModulus(7), -14).value(), 0u);
}

// Full truth tables for the field axioms.
class FieldAxiomsTest : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(FieldAxiomsTest, Exhaustive) {
  const std::uint64_t d = GetParam();
  for (std::uint64_t a = 0; a < d; ++a) {
    const auto fa = F(d, a);
    EXPECT_EQ(fa + (-fa), F(d, 0));
    if (a != 0) {
      EXPECT_EQ(fa.inverse().value(), brute_inverse(a, d));
      EXPECT_EQ(fa * fa.inverse(), F(d, 1));
    }
    std::uint64_t power = 1;
    for (std::uint64_t e = 0; e < 2 * d; ++e) {
      EXPECT_EQ(fa.pow(e).value(), power);
      power = power * a % d;
    }
    for (std::uint64_t b = 0; b < d; ++b) {
      const auto fb = F(d, b);
      EXPECT_EQ((fa + fb).value(), (a + b) % d);
      EXPECT_EQ((fa * fb).value(), a * b % d);
      EXPECT_EQ((fa - fb).value(), (a + d - b) % d);
      EXPECT_EQ(fa + fb, fb + fa);
      EXPECT_EQ(fa * fb, fb * fa);
      for (std::uint64_t c = 0; c < d; ++c) {
        const auto fc = F(d, c);
        EXPECT_EQ((fa + fb) + fc, fa + (fb + fc));
        EXPECT_EQ((fa * fb) * fc, fa * (fb * fc));
        EXPECT_EQ(fa * (fb + fc), fa * fb + fa * fc);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SmallPrimes, FieldAxiomsTest,
                         ::testing::Values(3, 5, 7));

TEST(FieldElementTest, WideModulusDoesNotOverflow) {
  const PrimeModulus d(18446744073709551557ULL);
  const FieldElement a(d, d.value() - 1);
  const FieldElement b(d, d.value() - 2);
  EXPECT_EQ((a + b).value(), d.value() - 3);
  EXPECT_EQ((a * a).value(), 1u);  // (-1)^2
  EXPECT_EQ((b * b.inverse()).value(), 1u);
  EXPECT_EQ(a.pow(d.value() - 1).value(), 1u);  // Fermat
}

}  // namespace
}  // namespace vqss
