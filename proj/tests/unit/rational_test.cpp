#include <gtest/gtest.h>

#include <sstream>

#include "psched/rational.hpp"

namespace psched {
namespace {

TEST(Rational, NormalizesToLowestTerms) {
  EXPECT_EQ(Rational(6, 4).str(), "3/2");
  EXPECT_EQ(Rational(3, -6).str(), "-1/2");
  EXPECT_EQ(Rational(8, 4).str(), "2");
  EXPECT_TRUE(Rational(8, 4).is_integer());
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(1, 3) - Rational(1, 2), Rational(-1, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
  EXPECT_EQ(-Rational(2, 5), Rational(-2, 5));
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, Ordering) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  EXPECT_EQ(min(Rational(2), Rational(1, 2)), Rational(1, 2));
  EXPECT_EQ(max(Rational(2), Rational(1, 2)), Rational(2));
  EXPECT_EQ(Rational(0).sign(), 0);
  EXPECT_EQ(Rational(-3, 7).sign(), -1);
}

TEST(Rational, ParseAcceptsIntegersAndFractions) {
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_EQ(Rational::parse("-7"), Rational(-7));
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_EQ(Rational::parse("123456789012345678901234567890/3").str(), "41152263004115226300411522630");
}

TEST(Rational, ParseRejectsGarbage) {
  for (const char* bad : {"", "a", "1/", "/2", "1/0", "1.5", " 1", "1/2/3", "+-1"}) {
    EXPECT_THROW(Rational::parse(bad), std::invalid_argument) << bad;
  }
}

TEST(Rational, StrRoundTrips) {
  for (const Rational& r : {Rational(0), Rational(-5), Rational(22, 7), Rational(-1, 1000000007)}) {
    EXPECT_EQ(Rational::parse(r.str()), r);
  }
}

TEST(Rational, BitLengths) {
  EXPECT_EQ(Rational(1, 8).denominator_bits(), 4u);
  EXPECT_EQ(Rational(255).numerator_bits(), 8u);
  EXPECT_EQ(Rational(3).denominator_bits(), 1u);
}

TEST(Rational, StreamsAsStr) {
  std::ostringstream os;
  os << Rational(-9, 6);
  EXPECT_EQ(os.str(), "-3/2");
}

}  // namespace
}  // namespace psched
