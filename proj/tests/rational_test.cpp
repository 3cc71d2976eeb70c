#include <gtest/gtest.h>

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

#include "sigtest/rational.hpp"

using sigtest::Rational;

TEST(Rational, NormalizesSignAndLowestTerms) {
    Rational r(6, -8);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 4);
    EXPECT_EQ(Rational(0, -5), Rational(0));
    EXPECT_EQ(Rational(0, -5).den(), 1);
}

TEST(Rational, ZeroDenominatorThrows) {
    EXPECT_THROW(Rational(1, 0), std::domain_error);
    EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, Arithmetic) {
    EXPECT_EQ(Rational(47, 103) - Rational(25, 103), Rational(22, 103));
    EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
    EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
    EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
    EXPECT_EQ(-Rational(3, 7), Rational(-3, 7));
    EXPECT_EQ(Rational(-3, 7).abs(), Rational(3, 7));
}

TEST(Rational, OverflowIsReported) {
    const std::int64_t big = std::numeric_limits<std::int64_t>::max() / 3;
    EXPECT_THROW(Rational(big) * Rational(big), std::overflow_error);
    EXPECT_THROW(Rational(1, big) + Rational(1, big - 1), std::overflow_error);
}

TEST(Rational, ToFixedRoundsHalfAwayFromZero) {
    EXPECT_EQ(Rational(47, 103).to_fixed(1, 100), "45.6");
    EXPECT_EQ(Rational(25, 39).to_fixed(1, 100), "64.1");
    EXPECT_EQ(Rational(1, 8).to_fixed(2), "0.13");
    EXPECT_EQ(Rational(-1, 8).to_fixed(2), "-0.13");
    EXPECT_EQ(Rational(1, 3).to_fixed(0), "0");
    EXPECT_EQ(Rational(1).to_fixed(1, 100), "100.0");
    EXPECT_EQ(Rational(-1, 1000).to_fixed(1), "0.0");
    EXPECT_EQ(Rational(1, 20).to_fixed(3), "0.050");
}

TEST(Rational, ToString) {
    EXPECT_EQ(Rational(22, 103).to_string(), "22/103");
    EXPECT_EQ(Rational(4, 2).to_string(), "2");
}

// Property: ordering agrees with long double cross-multiplication and with
// subtraction sign on random small fractions.
TEST(Rational, OrderingMatchesCrossMultiplication) {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<std::int64_t> num(-1000000, 1000000);
    std::uniform_int_distribution<std::int64_t> den(1, 1000000);
    for (int i = 0; i < 20000; ++i) {
        const std::int64_t a = num(rng), b = den(rng), c = num(rng), d = den(rng);
        const Rational x(a, b), y(c, d);
        const __int128 lhs = static_cast<__int128>(a) * d;
        const __int128 rhs = static_cast<__int128>(c) * b;
        EXPECT_EQ(x < y, lhs < rhs);
        EXPECT_EQ(x == y, lhs == rhs);
        EXPECT_EQ((x - y).sign(), (lhs > rhs) - (lhs < rhs));
    }
}
