#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "so4/half_int.hpp"
#include "so4/pf_rational.hpp"
#include "so4/radical_sum.hpp"

using namespace so4;

namespace {

RadicalSum sqrt_of(int d) { return RadicalSum::term(1, d); }

PFRational random_pf(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> val(-500, 500);
  int num = 0;
  while (num == 0) num = val(gen);
  int den = 0;
  while (den == 0) den = val(gen);
  return PFRational::from_ratio(num, den);
}

}  // namespace

TEST(PfFactorial, SmallValues) {
  EXPECT_TRUE(pf_factorial(0).is_one());
  EXPECT_TRUE(pf_factorial(0).factors().empty());
  EXPECT_EQ(pf_factorial(0).sign(), 1);

  const auto& f4 = pf_factorial(4);
  EXPECT_EQ(f4.exponent(2), 3);
  EXPECT_EQ(f4.exponent(3), 1);
  EXPECT_EQ(f4.factors().size(), 2u);

  const auto& f10 = pf_factorial(10);
  EXPECT_EQ(f10.exponent(2), 8);
  EXPECT_EQ(f10.exponent(3), 4);
  EXPECT_EQ(f10.exponent(5), 2);
  EXPECT_EQ(f10.exponent(7), 1);
  EXPECT_EQ(f10.factors().size(), 4u);
}

TEST(PfFactorial, MatchesIntegerOracle) {
  for (int k = 0; k <= 60; ++k) {
    EXPECT_EQ(pf_factorial(k).numerator(), oracle::factorial(k)) << k;
    EXPECT_EQ(pf_factorial(k).denominator(), 1);
  }
}

TEST(PfFactorial, CapacityErrorNamesLimit) {
  FactorialTable small(12);
  EXPECT_NO_THROW(small.factorial(12));
  try {
    small.factorial(13);
    FAIL() << "expected TableCapacityError";
  } catch (const TableCapacityError& e) {
    EXPECT_EQ(e.needed_limit(), 13);
    EXPECT_NE(std::string(e.what()).find("13"), std::string::npos);
  }
  EXPECT_THROW(pf_factorial(kDefaultFactorialLimit + 1), TableCapacityError);
  EXPECT_THROW(small.factorial(-1), DomainError);
}

TEST(SqrtExtract, Examples) {
  auto e12 = sqrt_extract(PFRational::from_int(12));
  EXPECT_EQ(e12.rational_part.to_rational(), 2);
  EXPECT_EQ(e12.radicand, 3);

  auto e1 = sqrt_extract(PFRational::one());
  EXPECT_EQ(e1.rational_part.to_rational(), 1);
  EXPECT_EQ(e1.radicand, 1);

  auto e = sqrt_extract(PFRational::from_ratio(18, 25));
  EXPECT_EQ(e.rational_part.to_rational(), Rational(3, 5));
  EXPECT_EQ(e.radicand, 2);

  // sqrt(1/2) = (1/2) sqrt(2)
  auto half = sqrt_extract(PFRational::from_ratio(1, 2));
  EXPECT_EQ(half.rational_part.to_rational(), Rational(1, 2));
  EXPECT_EQ(half.radicand, 2);

  EXPECT_THROW(sqrt_extract(PFRational::from_int(-3)), DomainError);
}

TEST(SqrtExtract, IdempotentOnSquarefreeRadicand) {
  auto& gen = oracle::rng();
  for (int i = 0; i < 200; ++i) {
    PFRational r = random_pf(gen).abs();
    auto first = sqrt_extract(r);
    auto again = sqrt_extract(PFRational::from_rational(Rational(first.radicand)));
    EXPECT_TRUE(again.rational_part.is_one());
    EXPECT_EQ(again.radicand, first.radicand);
    // Reconstruction: rational_part^2 * radicand == r.
    Rational back = first.rational_part.to_rational() * first.rational_part.to_rational() * Rational(first.radicand);
    EXPECT_EQ(back, r.to_rational());
  }
}

TEST(RadicalSum, AddExamples) {
  EXPECT_TRUE(radical_add(sqrt_of(2), -sqrt_of(2)).is_zero());
  EXPECT_EQ(radical_add(RadicalSum(1) + sqrt_of(3), RadicalSum(2)), RadicalSum(3) + sqrt_of(3));
  RadicalSum half6 = RadicalSum::term(Rational(1, 2), 6);
  EXPECT_EQ(radical_add(half6, half6), sqrt_of(6));
}

TEST(RadicalSum, MulExamples) {
  EXPECT_EQ(radical_mul(sqrt_of(2), sqrt_of(2)), RadicalSum(2));
  EXPECT_EQ(radical_mul(sqrt_of(6), sqrt_of(10)), RadicalSum::term(2, 15));
  EXPECT_EQ(radical_mul(RadicalSum(1) + sqrt_of(2), RadicalSum(1) - sqrt_of(2)), RadicalSum(-1));
}

TEST(RadicalSum, CanonicalFormHasNoZeroTerms) {
  RadicalSum a = RadicalSum(3) + sqrt_of(5);
  a -= sqrt_of(5);
  EXPECT_EQ(a.terms().size(), 1u);
  EXPECT_TRUE(a.is_rational());
  EXPECT_EQ(a.rational_value(), 3);
  EXPECT_THROW((RadicalSum(1) + sqrt_of(7)).rational_value(), DomainError);
  EXPECT_THROW(RadicalSum::term(1, 0), DomainError);
}

TEST(RadicalSum, RenderGrammar) {
  EXPECT_EQ(RadicalSum().to_string(), "0");
  EXPECT_EQ(RadicalSum(Rational(-3, 4)).to_string(), "-3/4");
  EXPECT_EQ(RadicalSum(5).to_string(), "5");
  EXPECT_EQ(sqrt_of(2).to_string(), "sqrt(2)");
  RadicalSum mixed = RadicalSum(Rational(1, 2)) - RadicalSum::term(Rational(2, 3), 6) + sqrt_of(3);
  EXPECT_EQ(mixed.to_string(), "1/2 + sqrt(3) - (2/3)*sqrt(6)");
  EXPECT_EQ((-sqrt_of(5)).to_string(), "-sqrt(5)");
}

TEST(RadicalSum, ParseRoundTrip) {
  auto& gen = oracle::rng();
  std::uniform_int_distribution<int> coeff(-40, 40);
  const int radicands[] = {1, 2, 3, 5, 6, 7, 10, 11, 15, 30, 105};
  for (int i = 0; i < 300; ++i) {
    RadicalSum v;
    for (int d : radicands) {
      if (gen() % 3 == 0) continue;
      int num = coeff(gen);
      int den = 0;
      while (den == 0) den = coeff(gen);
      v += RadicalSum::term(make_rational(num, den), d);
    }
    const std::string text = v.to_string();
    EXPECT_EQ(RadicalSum::parse(text), v) << text;
    EXPECT_EQ(RadicalSum::parse(text).to_string(), text);
  }
}

TEST(RadicalSum, ParseRejectsMalformed) {
  EXPECT_THROW(RadicalSum::parse(""), ParseError);
  EXPECT_THROW(RadicalSum::parse("sqrt(4)"), ParseError);
  EXPECT_THROW(RadicalSum::parse("1 +"), ParseError);
  EXPECT_THROW(RadicalSum::parse("(1/2)*2"), ParseError);
  EXPECT_THROW(RadicalSum::parse("abc"), ParseError);
}

TEST(RadicalSum, RationalPredicateMatchesFloatingShadow) {
  auto& gen = oracle::rng();
  for (int i = 0; i < 200; ++i) {
    PFRational a = random_pf(gen).abs();
    PFRational b = random_pf(gen).abs();
    RadicalSum x = RadicalSum::scaled_sqrt(1, a);
    RadicalSum y = RadicalSum::scaled_sqrt(1, b);
    RadicalSum prod = x * y;
    const double shadow = std::sqrt(a.to_double() * b.to_double());
    EXPECT_NEAR(prod.to_double(), shadow, 1e-12 * shadow);
    if (prod.is_rational()) {
      EXPECT_NEAR(to_double(prod.rational_value()), shadow, 1e-12 * shadow);
    } else {
      // Irrational: the shadow is not within rounding of the nearest small-denominator rational.
      EXPECT_GT(prod.terms().begin()->first, 1);
    }
  }
}

TEST(PfRational, RandomProductQuotientAndSigns) {
  auto& gen = oracle::rng();
  for (int i = 0; i < 500; ++i) {
    PFRational a = random_pf(gen);
    PFRational b = random_pf(gen);
    EXPECT_EQ((a * b) / b, a);
    EXPECT_EQ((a * b).sign(), a.sign() * b.sign());
    EXPECT_EQ((a / b).sign(), a.sign() * b.sign());
    EXPECT_EQ((a * b).to_rational(), a.to_rational() * b.to_rational());
    EXPECT_EQ(a.pow(3).to_rational(), pow(a.to_rational(), 3));
    EXPECT_EQ(PFRational::from_rational(a.to_rational()), a);
  }
  EXPECT_TRUE((PFRational() * PFRational::from_int(7)).is_zero());
  EXPECT_THROW(PFRational::one() / PFRational(), DomainError);
  EXPECT_THROW(PFRational::from_ratio(1, 0), DomainError);
}

TEST(SqrtRational, SquareEqualsSelfProduct) {
  auto& gen = oracle::rng();
  for (int i = 0; i < 300; ++i) {
    PFRational v = random_pf(gen);
    SqrtRational s = SqrtRational::from_signed_square(v);
    RadicalSum r = s.to_radical();
    EXPECT_EQ((r * r).rational_value(), s.square().to_rational());
    EXPECT_EQ(s.signed_square(), v);
    EXPECT_EQ(SqrtRational::parse(s.to_string()), s);
  }
  EXPECT_THROW(SqrtRational(1, PFRational::from_int(-2)), DomainError);
  SqrtRational zero(1, PFRational());
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(zero.sign(), 0);
}

TEST(SqrtRational, SignedSqrtRendering) {
  EXPECT_EQ(render_signed_sqrt(RadicalSum::term(Rational(1, 6), 6)), "sqrt(1/6)");
  EXPECT_EQ(render_signed_sqrt(RadicalSum(Rational(-1, 3))), "-sqrt(1/9)");
  EXPECT_EQ(render_signed_sqrt(RadicalSum()), "0");
  EXPECT_EQ(parse_signed_sqrt("-sqrt(2/15)"), -RadicalSum::term(Rational(1, 15), 30));
  EXPECT_THROW(render_signed_sqrt(RadicalSum(1) + sqrt_of(2)), DomainError);
  EXPECT_THROW(SqrtRational::parse("sqrt(-1)"), ParseError);
}

TEST(Rational, RenderAndParse) {
  EXPECT_EQ(render_rational(Rational(6, 3)), "2");
  EXPECT_EQ(render_rational(Rational(-1, 6)), "-1/6");
  EXPECT_EQ(parse_rational("-10/4"), Rational(-5, 2));
  EXPECT_EQ(parse_rational("7"), 7);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("1.5"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(HalfInt, ParseForms) {
  EXPECT_EQ(HalfInt::parse("3").twice(), 6);
  EXPECT_EQ(HalfInt::parse("-2").twice(), -4);
  EXPECT_EQ(HalfInt::parse("1/2").twice(), 1);
  EXPECT_EQ(HalfInt::parse("-3/2").twice(), -3);
  EXPECT_EQ(HalfInt::parse("0.5").twice(), 1);
  EXPECT_EQ(HalfInt::parse("-1.5").twice(), -3);
  EXPECT_EQ(HalfInt::parse("-0.5").twice(), -1);
  EXPECT_EQ(HalfInt::parse("2.0").twice(), 4);
  EXPECT_EQ(HalfInt::parse("4/1").twice(), 8);
  EXPECT_THROW(HalfInt::parse("1/3"), ParseError);
  EXPECT_THROW(HalfInt::parse("0.25"), ParseError);
  EXPECT_THROW(HalfInt::parse(""), ParseError);
  EXPECT_THROW(HalfInt::parse("x"), ParseError);
}

TEST(HalfInt, ArithmeticAndParity) {
  HalfInt j = HalfInt::from_twice(3);
  EXPECT_TRUE(j.is_half_odd());
  EXPECT_EQ((j + HalfInt::from_int(1)).twice(), 5);
  EXPECT_EQ((j - j).twice(), 0);
  EXPECT_EQ(j.to_string(), "3/2");
  EXPECT_EQ(HalfInt::from_int(-2).to_string(), "-2");
  EXPECT_THROW(j.to_int(), DomainError);
  EXPECT_EQ(parity_sign(HalfInt::from_int(3)), -1);
  EXPECT_EQ(abs(HalfInt::from_twice(-5)).twice(), 5);
  // A ladder step keeps the parity of twice.
  EXPECT_EQ((j + HalfInt::from_int(1)).twice() % 2, j.twice() % 2);
}
