#include <catch2/catch_amalgamated.hpp>

#include "statgeo/metric.hpp"

using namespace statgeo;

namespace {
const MetricParam kFisher = MetricParam::fisher();
double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("metric values") {
    Spd id2(2, Matrix::Identity(2, 2));
    auto basis = fisher_orthonormal_basis(2);

    CHECK(metric(kFisher, id2, basis[0], basis[0]) == Catch::Approx(1.0).margin(1e-14));
    CHECK(metric(kFisher, id2, basis[0], basis[2]) == Catch::Approx(0.0).margin(1e-14));

    Spd s1(1, Matrix::Constant(1, 1, 2.0));
    SymTan x1(1, Matrix::Constant(1, 1, 1.0));
    CHECK(metric(kFisher, s1, x1, x1) == Catch::Approx(0.125).margin(1e-16));

    CHECK(MetricParam::wishart(5.0).r == 2.5);
    CHECK_THROWS_AS(MetricParam(0.0), Error);
    CHECK_THROWS_AS(metric(kFisher, id2, random_sym(3, 1), random_sym(2, 1)),
                    DimensionMismatch);
}

TEST_CASE("levi_civita closed form") {
    int n = 3;
    Spd id(n, Matrix::Identity(n, n));
    SymTan x = random_sym(n, 1), y = random_sym(n, 2);

    Matrix expected = -(x.mat() * y.mat() + y.mat() * x.mat()) / 2.0;
    CHECK(max_abs(levi_civita(id, x, y).mat() - expected) < 1e-14);

    Spd sigma = random_spd(n, 3);
    CHECK(max_abs(levi_civita(sigma, x, SymTan::zero(n)).mat()) == 0.0);
    CHECK(max_abs(levi_civita(sigma, x, y).mat() - levi_civita(sigma, y, x).mat()) < 1e-15);
}

TEST_CASE("christoffel finite-difference oracle gates the closed form") {
    // sqrt(2)E11 squared at the identity: Gamma = -(XY+YX)/2 = -2 E11
    Spd id2(2, Matrix::Identity(2, 2));
    auto basis = fisher_orthonormal_basis(2);
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = -2.0;
    CHECK(max_abs(christoffel_numeric(kFisher, id2, basis[0], basis[0]).mat() - expected) < 1e-6);

    for (int n = 2; n <= 4; ++n) {
        double worst = 0.0, worst_r = 0.0;
        for (int t = 0; t < 20; ++t) {
            auto s = derive_seed(991, static_cast<std::uint64_t>(100 * n + t));
            Spd sigma = random_spd_unit(n, derive_seed(s, 0));
            SymTan x = random_sym(n, derive_seed(s, 1));
            SymTan y = random_sym(n, derive_seed(s, 2));
            SymTan numeric = christoffel_numeric(kFisher, sigma, x, y);
            worst = std::max(worst, max_abs(numeric.mat() - levi_civita(sigma, x, y).mat()));
            if (t < 4)
                worst_r = std::max(worst_r, max_abs(christoffel_numeric(MetricParam(3.0), sigma,
                                                                        x, y)
                                                        .mat() -
                                                    numeric.mat()));
        }
        INFO("n=" << n);
        CHECK(worst < 1e-6);
        CHECK(worst_r < 1e-8);
    }
}

TEST_CASE("riemann identity closed form") {
    auto basis = fisher_orthonormal_basis(2);
    // X = W = sqrt(2)E11, Y = Z = E12 + E21
    CHECK(riemann_identity(basis[0], basis[2], basis[2], basis[0]) ==
          Catch::Approx(-0.5).margin(1e-14));
    SymTan x = random_sym(3, 5), z = random_sym(3, 6), w = random_sym(3, 7);
    CHECK(riemann_identity(x, x, z, w) == Catch::Approx(0.0).margin(1e-14));
    SymTan a(1, Matrix::Constant(1, 1, 0.3)), b(1, Matrix::Constant(1, 1, -0.9));
    CHECK(riemann_identity(a, b, a, b) == 0.0);

    // antisymmetry in (Z, W) and pair symmetry
    SymTan y = random_sym(3, 8);
    CHECK(riemann_identity(x, y, z, w) == Catch::Approx(-riemann_identity(x, y, w, z)).margin(1e-13));
    CHECK(riemann_identity(x, y, z, w) == Catch::Approx(riemann_identity(z, w, x, y)).margin(1e-13));
}

TEST_CASE("riemann finite differences agree with the closed forms") {
    for (int n : {2, 3}) {
        Spd id(n, Matrix::Identity(n, n));
        double worst = 0.0;
        for (int t = 0; t < 8; ++t) {
            auto s = derive_seed(1313, static_cast<std::uint64_t>(10 * n + t));
            SymTan x = random_sym(n, derive_seed(s, 0));
            SymTan y = random_sym(n, derive_seed(s, 1));
            SymTan z = random_sym(n, derive_seed(s, 2));
            SymTan w = random_sym(n, derive_seed(s, 3));
            SymTan rn = riemann_numeric(kFisher, id, x, y, z);
            worst = std::max(worst, std::abs(metric(kFisher, id, rn, w) -
                                             riemann_identity(x, y, z, w)));
        }
        INFO("n=" << n);
        CHECK(worst < 1e-5);
    }

    // n = 1 flatness through the numeric path (unit-scale point: the FD
    // noise floor eps/h^2 scales with the metric magnitude)
    Spd s1 = random_spd_unit(1, 4);
    CHECK(max_abs(riemann_numeric(kFisher, s1, random_sym(1, 5), random_sym(1, 6),
                                  random_sym(1, 7))
                      .mat()) < 1e-8);

    // R(X, X)Z vanishes
    Spd sigma = random_spd_unit(3, 8);
    SymTan x = random_sym(3, 9), z = random_sym(3, 10);
    CHECK(max_abs(riemann_numeric(kFisher, sigma, x, x, z).mat()) < 1e-8);

    // the exact transported closed form matches the double-FD oracle away
    // from the identity
    SymTan y = random_sym(3, 11);
    CHECK(max_abs(riemann_numeric(kFisher, sigma, x, y, z).mat() -
                  riemann_lc_exact(sigma, x, y, z).mat()) < 1e-5);
}

TEST_CASE("metric GL invariance") {
    Rng rng(21);
    int n = 3;
    Spd sigma = random_spd(n, 22);
    SymTan x = random_sym(n, 23), y = random_sym(n, 24);
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng.uniform_sym();
    REQUIRE(std::abs(a.determinant()) > 1e-3);
    double base = metric(kFisher, sigma, x, y);
    double moved = metric(kFisher, Spd(n, a * sigma.mat() * a.transpose()),
                          SymTan(n, a * x.mat() * a.transpose()),
                          SymTan(n, a * y.mat() * a.transpose()));
    CHECK(std::abs(base - moved) / std::max(1.0, std::abs(base)) < 1e-10);
}
