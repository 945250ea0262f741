#include <catch2/catch_amalgamated.hpp>

#include "statgeo/io.hpp"

using namespace statgeo;

TEST_CASE("matrix json round trip") {
    Spd sigma = random_spd(3, 131);
    Json j = to_json(sigma);
    CHECK(j.at("n") == 3);
    Spd back = spd_from_json(j);
    CHECK((back.mat() - sigma.mat()).cwiseAbs().maxCoeff() == 0.0);

    SymTan x = random_sym(4, 132);
    CHECK((sym_from_json(to_json(x)).mat() - x.mat()).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(matrix_from_json(Json{{"n", 2}, {"rows", Json::array()}}), ParseError);
    CHECK_THROWS_AS(matrix_from_json(Json::array()), ParseError);
}

TEST_CASE("cubic json") {
    InvCubic c(3, 0.5, -1.25, 2.0);
    Json j = to_json(c);
    InvCubic back = cubic_from_json(j);
    CHECK(back.a1 == c.a1);
    CHECK(back.a2 == c.a2);
    CHECK(back.a3 == c.a3);

    // rationals as "p/q" strings
    RationalCubic rc = c_prime(3);
    Json jr = to_json(rc);
    CHECK(jr.at("a2") == "-2");
    CHECK(jr.at("a3") == "4/9");
    CHECK(jr.at("a3_float").get<double>() == Catch::Approx(4.0 / 9.0));
    RationalCubic rback = rational_cubic_from_json(jr);
    CHECK(rback == rc);

    // mixed numeric/string coefficients parse into doubles
    Json mixed{{"n", 3}, {"a1", "1/2"}, {"a2", 0.25}, {"a3", "-3"}};
    InvCubic m = cubic_from_json(mixed);
    CHECK(m.a1 == 0.5);
    CHECK(m.a2 == 0.25);
    CHECK(m.a3 == -3.0);
}

TEST_CASE("isometry word json") {
    Matrix a(3, 3);
    a << 1, 0.5, 0, 0, 2, 0, 0, 0, 1;
    IsometryWord w(a, 1, 1);
    Json j = to_json(w);
    IsometryWord back = isometry_from_json(j);
    CHECK(back.eps1() == 1);
    CHECK(back.eps2() == 1);
    CHECK((back.a() - a).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("coefficient string parsing") {
    RationalCubic c = parse_coeffs(3, "1,-6/3,0.5");
    CHECK(c.a1 == Rational(1));
    CHECK(c.a2 == Rational(-2));
    CHECK(c.a3 == Rational(1, 2));

    RationalCubic two = parse_coeffs(2, "1,0");
    CHECK(two.a1 == Rational(1));
    CHECK(two.a3 == Rational(0));

    CHECK_THROWS_AS(parse_coeffs(3, "1,2"), ParseError);
    CHECK_THROWS_AS(parse_coeffs(3, "a,b,c"), ParseError);
}
