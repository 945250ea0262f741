#include <catch2/catch_amalgamated.hpp>

#include "statgeo/spd.hpp"

using namespace statgeo;

TEST_CASE("make_spd validates symmetry and definiteness") {
    Matrix id2 = Matrix::Identity(2, 2);
    CHECK_NOTHROW(make_spd(2, id2));

    Matrix indef(2, 2);
    indef << 1, 2, 2, 1;  // eigenvalues 3 and -1
    CHECK_THROWS_AS(make_spd(2, indef), NotPositiveDefinite);

    CHECK_THROWS_AS(make_spd(1, Matrix::Zero(1, 1)), NotPositiveDefinite);

    Matrix asym(2, 2);
    asym << 1, 0.5, -0.5, 1;
    CHECK_THROWS_AS(make_spd(2, asym), NotSymmetric);

    // a small asymmetry is symmetrized away
    Matrix nearly = id2;
    nearly(0, 1) = 1e-14;
    Spd s = make_spd(2, nearly);
    CHECK(s.mat()(0, 1) == s.mat()(1, 0));

    CHECK_THROWS_AS(make_spd(3, id2), DimensionMismatch);
    CHECK_THROWS_AS(make_spd(0, Matrix::Zero(0, 0)), DimensionMismatch);
}

TEST_CASE("fisher orthonormal basis layout") {
    auto b1 = fisher_orthonormal_basis(1);
    REQUIRE(b1.size() == 1);
    CHECK(b1[0].mat()(0, 0) == Catch::Approx(std::sqrt(2.0)));

    auto b2 = fisher_orthonormal_basis(2);
    REQUIRE(b2.size() == 3);
    CHECK(b2[0].mat()(0, 0) == Catch::Approx(std::sqrt(2.0)));
    CHECK(b2[0].mat()(1, 1) == 0.0);
    CHECK(b2[1].mat()(1, 1) == Catch::Approx(std::sqrt(2.0)));
    CHECK(b2[2].mat()(0, 1) == 1.0);
    CHECK(b2[2].mat()(1, 0) == 1.0);

    CHECK(fisher_orthonormal_basis(3).size() == 6);

    CHECK(fisher_basis_pair(3, 0) == std::pair<int, int>(0, 0));
    CHECK(fisher_basis_pair(3, 3) == std::pair<int, int>(0, 1));
    CHECK(fisher_basis_pair(3, 5) == std::pair<int, int>(1, 2));
    CHECK_THROWS_AS(fisher_basis_pair(3, 6), IndexOutOfRange);
}

TEST_CASE("chart vectorization") {
    Chart chart(2);
    REQUIRE(chart.dim() == 3);

    Matrix e(2, 2);
    e << 0, 1, 1, 0;
    Vector v = chart.vectorize(SymTan(2, e));
    CHECK(v[0] == 0.0);
    CHECK(v[1] == 1.0);
    CHECK(v[2] == 0.0);

    Vector vi = chart.vectorize(SymTan(2, Matrix::Identity(2, 2)));
    CHECK(vi[0] == 1.0);
    CHECK(vi[1] == 0.0);
    CHECK(vi[2] == 1.0);

    // exact round trip and linearity on random input
    SymTan x = random_sym(4, 11);
    SymTan y = random_sym(4, 12);
    Chart chart4(4);
    CHECK((chart4.devectorize(chart4.vectorize(x)).mat() - x.mat()).cwiseAbs().maxCoeff() == 0.0);
    Vector lin = chart4.vectorize(SymTan(4, 2.0 * x.mat() + 3.0 * y.mat())) -
                 (2.0 * chart4.vectorize(x) + 3.0 * chart4.vectorize(y));
    CHECK(lin.cwiseAbs().maxCoeff() == 0.0);

    CHECK(chart4.index_of(2, 1) == chart4.index_of(1, 2));
    CHECK_THROWS_AS(chart.devectorize(Vector::Zero(2)), DimensionMismatch);
}

TEST_CASE("random generators are deterministic and valid") {
    Spd a = random_spd(3, 42);
    Spd b = random_spd(3, 42);
    CHECK((a.mat() - b.mat()).cwiseAbs().maxCoeff() == 0.0);

    // pinned seed pair gives different matrices
    Spd c = random_spd(3, 43);
    CHECK((a.mat() - c.mat()).cwiseAbs().maxCoeff() > 1e-3);

    SymTan x = random_sym(3, 7);
    CHECK((x.mat() - x.mat().transpose()).cwiseAbs().maxCoeff() == 0.0);

    // every eigenvalue of a generated point is strictly positive
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Spd s = random_spd(4, seed);
        CHECK(s.eig_min() > 0.0);
    }

    Spd u = random_spd_unit(5, 3);
    CHECK(u.eig_min() >= 0.25);
    CHECK(u.eig_max() <= 1.75);
}
