#include <catch2/catch_amalgamated.hpp>

#include "statgeo/rational.hpp"

using statgeo::Rational;

TEST_CASE("rational arithmetic and normalization") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(-6, -4) == Rational(3, 2));
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(0, 7) == Rational(0));

    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(-Rational(5, 7) == Rational(-5, 7));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(3, 2).to_double() == 1.5);
}

TEST_CASE("rational formatting and parsing") {
    CHECK(Rational(-6, 8).str() == "-3/4");
    CHECK(Rational(5).str() == "5");
    CHECK(Rational::parse("4/9") == Rational(4, 9));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational::parse("0.25") == Rational(1, 4));
    CHECK(Rational::parse("-1.5") == Rational(-3, 2));
    CHECK_THROWS_AS(Rational::parse("abc"), statgeo::ParseError);
    CHECK_THROWS_AS(Rational::parse(""), statgeo::ParseError);
}

TEST_CASE("rational error cases") {
    CHECK_THROWS_AS(Rational(1, 0), statgeo::Error);
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), statgeo::Error);
    // products overflowing int64 must throw, not wrap
    Rational big(INT64_MAX / 2, 1);
    CHECK_THROWS_AS(big * big, statgeo::Error);
}
