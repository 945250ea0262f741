#include <catch2/catch_amalgamated.hpp>

#include "statgeo/divergence.hpp"
#include "statgeo/isometry.hpp"

using namespace statgeo;

namespace {
double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("isometry word construction") {
    Matrix eye3 = Matrix::Identity(3, 3);
    CHECK_NOTHROW(IsometryWord(eye3, 1, 1));
    CHECK_THROWS_AS(IsometryWord(Matrix::Zero(3, 3), 0, 0), SingularMatrix);
    CHECK_THROWS_AS(IsometryWord(eye3, 2, 0), Error);
    CHECK_THROWS_AS(IsometryWord(Matrix::Identity(2, 2), 0, 1), UnsupportedDimension);
    CHECK_THROWS_AS(IsometryWord(Matrix::Identity(1, 1), 0, 1), UnsupportedDimension);
}

TEST_CASE("apply") {
    Matrix d(2, 2);
    d << 2.0, 0.0, 0.0, 0.5;
    Spd sigma(2, d);
    Spd inv = apply(IsometryWord(Matrix::Identity(2, 2), 1, 0), sigma);
    CHECK(inv.mat()(0, 0) == Catch::Approx(0.5).margin(1e-15));
    CHECK(inv.mat()(1, 1) == Catch::Approx(2.0).margin(1e-15));

    // sigma2 on 2 I_n rescales to I_n / 2
    for (int n : {3, 4, 5}) {
        Spd two(n, 2.0 * Matrix::Identity(n, n));
        Spd scaled = apply(IsometryWord(Matrix::Identity(n, n), 0, 1), two);
        CHECK(max_abs(scaled.mat() - 0.5 * Matrix::Identity(n, n)) < 1e-14);
    }

    Spd same = apply(IsometryWord::identity(2), sigma);
    CHECK(max_abs(same.mat() - sigma.mat()) == 0.0);

    CHECK_THROWS_AS(apply(IsometryWord::identity(3), sigma), DimensionMismatch);
}

TEST_CASE("sigma2 raw map works in every dimension") {
    Spd sigma = random_spd(2, 91);
    Spd mapped = sigma2_map(sigma);
    double det = mapped.mat().determinant();
    // sigma2 lands on determinant (det Sigma)^{1-2} shape; for n = 2 the image
    // has determinant 1/det(Sigma)
    CHECK(det == Catch::Approx(1.0 / sigma.mat().determinant()).epsilon(1e-12));

    // against the word path for n >= 3
    Spd sigma3 = random_spd(3, 92);
    CHECK(max_abs(sigma2_map(sigma3).mat() -
                  apply(IsometryWord(Matrix::Identity(3, 3), 0, 1), sigma3).mat()) == 0.0);
}

TEST_CASE("differential closed forms at the identity") {
    int n = 3;
    Spd id(n, Matrix::Identity(n, n));
    SymTan x = random_sym(n, 93);

    SymTan d1 = differential(IsometryWord(Matrix::Identity(n, n), 1, 0), id, x);
    CHECK(max_abs(d1.mat() + x.mat()) < 1e-14);

    SymTan d2 = differential(IsometryWord(Matrix::Identity(n, n), 0, 1), id, x);
    Matrix expected = x.mat() - 2.0 / n * x.mat().trace() * Matrix::Identity(n, n);
    CHECK(max_abs(d2.mat() - expected) < 1e-14);
}

TEST_CASE("differential matches finite differences of apply") {
    for (int n : {2, 3, 4}) {
        double worst = 0.0;
        const double h = 1e-5;
        for (int t = 0; t < 6; ++t) {
            auto s = derive_seed(555, static_cast<std::uint64_t>(100 * n + t));
            Spd sigma = random_spd_unit(n, derive_seed(s, 0));
            SymTan x = random_sym(n, derive_seed(s, 1));
            Rng rng(derive_seed(s, 2));
            Matrix a(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) a(i, j) = rng.uniform_sym();
            if (std::abs(a.determinant()) < 0.2) continue;
            std::vector<IsometryWord> words;
            words.emplace_back(a, 0, 0);
            words.emplace_back(a, 1, 0);
            if (n >= 3) words.emplace_back(a, 1, 1);
            for (const auto& w : words) {
                Matrix fd = (apply(w, Spd(n, sigma.mat() + h * x.mat())).mat() -
                             apply(w, Spd(n, sigma.mat() - h * x.mat())).mat()) /
                            (2.0 * h);
                worst = std::max(worst, max_abs(fd - differential(w, sigma, x).mat()));
            }
        }
        INFO("n=" << n);
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("compose normal form") {
    int n = 3;
    Matrix eye = Matrix::Identity(n, n);
    IsometryWord s1(eye, 1, 0);

    IsometryWord twice = compose(s1, s1);
    CHECK(twice.eps1() == 0);
    CHECK(twice.eps2() == 0);
    CHECK(max_abs(twice.a() - eye) < 1e-14);

    // (A,1,0) o (B,0,0) = (A B^{-T}, 1, 0)
    Rng rng(95);
    Matrix a(n, n), b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            a(i, j) = rng.uniform_sym();
            b(i, j) = rng.uniform_sym();
        }
    a += 2.0 * eye;
    b += 2.0 * eye;
    IsometryWord composed = compose(IsometryWord(a, 1, 0), IsometryWord(b, 0, 0));
    CHECK(composed.eps1() == 1);
    CHECK(composed.eps2() == 0);
    CHECK(max_abs(composed.a() - a * b.inverse().transpose()) < 1e-12);

    // apply(compose(w1,w2), .) = apply(w1, apply(w2, .))
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        auto s = derive_seed(556, static_cast<std::uint64_t>(t));
        Rng flags(derive_seed(s, 0));
        auto word = [&](std::uint64_t k) {
            Rng r2(derive_seed(s, k));
            Matrix m(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m(i, j) = r2.uniform_sym();
            m += 2.0 * eye;
            return IsometryWord(m, static_cast<int>(flags.next_u64() % 2),
                                static_cast<int>(flags.next_u64() % 2));
        };
        IsometryWord w1 = word(1), w2 = word(2);
        Spd sigma = random_spd(n, derive_seed(s, 3));
        Matrix lhs = apply(compose(w1, w2), sigma).mat();
        Matrix rhs = apply(w1, apply(w2, sigma)).mat();
        worst = std::max(worst, max_abs(lhs - rhs) / std::max(1.0, max_abs(rhs)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("pullback on coefficients") {
    for (int n : {3, 4, 5}) {
        Matrix eye = Matrix::Identity(n, n);
        RationalCubic c1(n, Rational(1), Rational(0), Rational(0));

        RationalCubic neg = pullback_cubic(IsometryWord(eye, 1, 0), c1);
        CHECK(neg == RationalCubic(n, Rational(-1), Rational(0), Rational(0)));

        RationalCubic prime = pullback_cubic(IsometryWord(eye, 0, 1), c1);
        CHECK(prime == c_prime(n));

        Rng rng(derive_seed(96, static_cast<std::uint64_t>(n)));
        Matrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = rng.uniform_sym();
        a += 2.0 * eye;
        RationalCubic any(n, Rational(3, 2), Rational(-1, 3), Rational(7));
        CHECK(pullback_cubic(IsometryWord(a, 0, 0), any) == any);

        // contravariance through the rational path
        IsometryWord w1(a, 1, 1), w2(eye, 0, 1);
        CHECK(pullback_cubic(compose(w1, w2), any) ==
              pullback_cubic(w2, pullback_cubic(w1, any)));

        // linearity in the coefficients
        RationalCubic u(n, Rational(1, 2), Rational(2), Rational(-3));
        RationalCubic sum(n, any.a1 + u.a1, any.a2 + u.a2, any.a3 + u.a3);
        RationalCubic ps = pullback_cubic(w1, sum);
        RationalCubic pa = pullback_cubic(w1, any);
        RationalCubic pu = pullback_cubic(w1, u);
        CHECK(ps == RationalCubic(n, pa.a1 + pu.a1, pa.a2 + pu.a2, pa.a3 + pu.a3));
    }

    // n = 2: only eta1 exists through words
    RationalCubic c2(2, Rational(1), Rational(0), Rational(0));
    CHECK(pullback_cubic(IsometryWord(Matrix::Identity(2, 2), 1, 0), c2) ==
          RationalCubic(2, Rational(-1), Rational(0), Rational(0)));
}

TEST_CASE("pullback pointwise consistency") {
    for (int n : {2, 3}) {
        double worst = 0.0;
        for (int t = 0; t < 8; ++t) {
            auto s = derive_seed(97, static_cast<std::uint64_t>(100 * n + t));
            Rng rng(derive_seed(s, 0));
            Matrix a(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) a(i, j) = rng.uniform_sym();
            a += 2.0 * Matrix::Identity(n, n);
            int e2 = n >= 3 ? static_cast<int>(rng.next_u64() % 2) : 0;
            IsometryWord w(a, static_cast<int>(rng.next_u64() % 2), e2);
            InvCubic c(n, 2.0 * rng.uniform_sym(), 2.0 * rng.uniform_sym(),
                       2.0 * rng.uniform_sym());
            Spd sigma = random_spd(n, derive_seed(s, 1));
            SymTan x = random_sym(n, derive_seed(s, 2));
            SymTan y = random_sym(n, derive_seed(s, 3));
            SymTan z = random_sym(n, derive_seed(s, 4));
            double lhs = eval_inv(pullback_cubic(w, c), sigma, x, y, z);
            double rhs = eval_inv(c, apply(w, sigma), differential(w, sigma, x),
                                  differential(w, sigma, y), differential(w, sigma, z));
            worst = std::max(worst,
                             std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)}));
        }
        INFO("n=" << n);
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("isometry_check defects") {
    for (int n : {2, 3}) {
        Matrix eye = Matrix::Identity(n, n);
        CHECK(isometry_check(IsometryWord(eye, 1, 0), 10, 42) <= 1e-9);
        if (n >= 3) CHECK(isometry_check(IsometryWord(eye, 0, 1), 10, 42) <= 1e-9);
        Rng rng(derive_seed(98, static_cast<std::uint64_t>(n)));
        Matrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = rng.uniform_sym();
        a += 2.0 * eye;
        CHECK(isometry_check(IsometryWord(a, 0, 0), 10, 42) <= 1e-9);
    }

    // a non-isometry shows a visible defect
    Matrix stretch = Matrix::Identity(2, 2);
    Spd sigma = random_spd(2, 99);
    SymTan x = random_sym(2, 100);
    Spd moved(2, 2.0 * sigma.mat());
    double defect = std::abs(metric(MetricParam::fisher(), moved, x, x) -
                             metric(MetricParam::fisher(), sigma, x, x));
    CHECK(defect > 1e-3);  // scaling the point without the isometry action is not invariant
    (void)stretch;
}

TEST_CASE("sigma maps commute and are involutive") {
    int n = 4;
    Matrix eye = Matrix::Identity(n, n);
    IsometryWord s1(eye, 1, 0), s2(eye, 0, 1);
    // scale-normalized agreement: the intermediate images can have large
    // entries on badly conditioned points, so the absolute floor is
    // eps * |entries|
    double worst_comm = 0.0, worst_inv = 0.0;
    for (int t = 0; t < 10; ++t) {
        Spd sigma = random_spd(n, derive_seed(101, static_cast<std::uint64_t>(t)));
        Matrix ab = apply(s1, apply(s2, sigma)).mat();
        Matrix ba = apply(s2, apply(s1, sigma)).mat();
        worst_comm = std::max(worst_comm, max_abs(ab - ba) / std::max(1.0, max_abs(ab)));
        worst_inv = std::max(worst_inv, max_abs(apply(s1, apply(s1, sigma)).mat() - sigma.mat()) /
                                            std::max(1.0, max_abs(sigma.mat())));
        worst_inv = std::max(worst_inv, max_abs(apply(s2, apply(s2, sigma)).mat() - sigma.mat()) /
                                            std::max(1.0, max_abs(sigma.mat())));
    }
    CHECK(worst_comm <= 1e-12);
    CHECK(worst_inv <= 1e-12);
}
