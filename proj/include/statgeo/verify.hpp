#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "statgeo/classification.hpp"
#include "statgeo/connection.hpp"
#include "statgeo/divergence.hpp"
#include "statgeo/isometry.hpp"

namespace statgeo {

struct CheckResult {
    std::string name;
    double measured;
    double threshold;
    bool greater_is_pass;
    bool pass;
};

inline CheckResult check_le(std::string name, double measured, double threshold) {
    bool ok = measured <= threshold;
    return {std::move(name), measured, threshold, false, ok};
}

inline CheckResult check_gt(std::string name, double measured, double threshold) {
    bool ok = measured > threshold;
    return {std::move(name), measured, threshold, true, ok};
}

struct VerifyOptions {
    int n_from = 2;
    int n_to = 4;
    std::uint64_t seed = 42;
    double tol = 1e-8;  // residual-class checks only; FD tolerances stay pinned
    int samples = 20;
};

namespace detail {

/// |a - b| / max(1, |a|, |b|): coincides with the absolute defect at unit
/// scale, stays meaningful when the compared values are large.
inline double rel_defect(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

/// Random GL(n) element with |det| bounded away from zero.
inline Matrix random_gl(int n, std::uint64_t seed) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng(derive_seed(seed, attempt));
        Matrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = rng.uniform_sym();
        if (std::abs(a.partialPivLu().determinant()) > 0.3) return a;
        if (attempt > 200) throw Error("random_gl: rejection sampling failed");
    }
}

inline InvCubic random_cubic(int n, std::uint64_t seed, double scale = 2.0) {
    Rng rng(seed);
    return InvCubic(n, scale * rng.uniform_sym(), scale * rng.uniform_sym(),
                    scale * rng.uniform_sym());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// metric suite
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> verify_metric_n(int n, const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    const std::string tag = "[n=" + std::to_string(n) + "] ";
    const MetricParam fisher = MetricParam::fisher();
    const Spd id(n, Matrix::Identity(n, n));
    const auto basis = fisher_orthonormal_basis(n);
    const int nb = static_cast<int>(basis.size());
    Chart chart(n);

    {
        double worst = 0.0;
        for (int i = 0; i < nb; ++i)
            for (int j = 0; j < nb; ++j) {
                double g = metric(fisher, id, basis[static_cast<std::size_t>(i)],
                                  basis[static_cast<std::size_t>(j)]);
                worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
            }
        out.push_back(check_le(tag + "fisher_basis_gram_identity", worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (int t = 0; t < opt.samples; ++t) {
            auto s = derive_seed(opt.seed, 100 + static_cast<std::uint64_t>(t));
            Spd sigma = random_spd(n, derive_seed(s, 0));
            SymTan x = random_sym(n, derive_seed(s, 1));
            SymTan y = random_sym(n, derive_seed(s, 2));
            Matrix a = detail::random_gl(n, derive_seed(s, 3));
            Spd sigma_t(n, a * sigma.mat() * a.transpose());
            SymTan x_t(n, a * x.mat() * a.transpose());
            SymTan y_t(n, a * y.mat() * a.transpose());
            worst = std::max(worst, detail::rel_defect(metric(fisher, sigma_t, x_t, y_t),
                                                       metric(fisher, sigma, x, y)));
        }
        out.push_back(check_le(tag + "metric_gl_invariance", worst, 1e-10));
    }
    {
        // chart bijection and linearity (exact by construction)
        double worst = 0.0;
        for (int t = 0; t < 5; ++t) {
            SymTan x = random_sym(n, derive_seed(opt.seed, 200 + static_cast<std::uint64_t>(t)));
            SymTan y = random_sym(n, derive_seed(opt.seed, 300 + static_cast<std::uint64_t>(t)));
            worst = std::max(worst,
                             detail::max_abs(chart.devectorize(chart.vectorize(x)).mat() - x.mat()));
            Vector lin = chart.vectorize(SymTan(n, 2.0 * x.mat() - 3.0 * y.mat())) -
                         (2.0 * chart.vectorize(x) - 3.0 * chart.vectorize(y));
            worst = std::max(worst, lin.cwiseAbs().maxCoeff());
        }
        out.push_back(check_le(tag + "chart_bijection_linearity", worst, 1e-14));
    }
    {
        double worst = 0.0, worst_r = 0.0;
        int trials = std::min(opt.samples, 20);
        for (int t = 0; t < trials; ++t) {
            auto s = derive_seed(opt.seed, 400 + static_cast<std::uint64_t>(t));
            Spd sigma = random_spd_unit(n, derive_seed(s, 0));
            SymTan x = random_sym(n, derive_seed(s, 1));
            SymTan y = random_sym(n, derive_seed(s, 2));
            SymTan closed = levi_civita(sigma, x, y);
            SymTan numeric = christoffel_numeric(fisher, sigma, x, y);
            worst = std::max(worst, detail::max_abs(closed.mat() - numeric.mat()));
            if (t < 5) {
                SymTan other = christoffel_numeric(MetricParam(3.0), sigma, x, y);
                worst_r = std::max(worst_r, detail::max_abs(other.mat() - numeric.mat()));
            }
        }
        out.push_back(check_le(tag + "christoffel_closed_vs_fd", worst, 1e-6));
        out.push_back(check_le(tag + "christoffel_r_independence", worst_r, 1e-8));
    }
    {
        // metric compatibility: d/dt g(Sigma+tV)(X,Y) = g(Gamma(V,X),Y) + g(X,Gamma(V,Y))
        double worst = 0.0;
        const double h = 1e-4;
        for (int t = 0; t < std::min(opt.samples, 10); ++t) {
            auto s = derive_seed(opt.seed, 500 + static_cast<std::uint64_t>(t));
            Spd sigma = random_spd_unit(n, derive_seed(s, 0));
            SymTan v = random_sym(n, derive_seed(s, 1));
            SymTan x = random_sym(n, derive_seed(s, 2));
            SymTan y = random_sym(n, derive_seed(s, 3));
            double dplus = metric(fisher, Spd(n, sigma.mat() + h * v.mat()), x, y);
            double dminus = metric(fisher, Spd(n, sigma.mat() - h * v.mat()), x, y);
            double lhs = (dplus - dminus) / (2.0 * h);
            double rhs = metric(fisher, sigma, levi_civita(sigma, v, x), y) +
                         metric(fisher, sigma, x, levi_civita(sigma, v, y));
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        out.push_back(check_le(tag + "metric_compatibility_fd", worst, 1e-5));
    }
    {
        // FD Riemann against the closed forms
        double worst_id = 0.0, worst_exact = 0.0, worst_anti = 0.0, worst_bianchi = 0.0;
        int trials = std::min(opt.samples, n <= 3 ? 20 : 6);
        for (int t = 0; t < trials; ++t) {
            auto s = derive_seed(opt.seed, 600 + static_cast<std::uint64_t>(t));
            SymTan x = random_sym(n, derive_seed(s, 0));
            SymTan y = random_sym(n, derive_seed(s, 1));
            SymTan z = random_sym(n, derive_seed(s, 2));
            SymTan w = random_sym(n, derive_seed(s, 3));
            SymTan rnum = riemann_numeric(fisher, id, x, y, z);
            worst_id = std::max(worst_id, std::abs(metric(fisher, id, rnum, w) -
                                                   riemann_identity(x, y, z, w)));
            Spd sigma = random_spd_unit(n, derive_seed(s, 4));
            SymTan rn = riemann_numeric(fisher, sigma, x, y, z);
            worst_exact = std::max(
                worst_exact, detail::max_abs(rn.mat() - riemann_lc_exact(sigma, x, y, z).mat()));
            worst_anti = std::max(
                worst_anti, detail::max_abs(riemann_numeric(fisher, sigma, x, x, z).mat()));
            Matrix bianchi = rn.mat() + riemann_numeric(fisher, sigma, y, z, x).mat() +
                             riemann_numeric(fisher, sigma, z, x, y).mat();
            worst_bianchi = std::max(worst_bianchi, detail::max_abs(bianchi));
        }
        out.push_back(check_le(tag + "riemann_fd_vs_identity_at_I", worst_id, 1e-5));
        out.push_back(check_le(tag + "riemann_fd_vs_exact", worst_exact, 1e-5));
        out.push_back(check_le(tag + "riemann_fd_antisymmetry", worst_anti, 1e-8));
        out.push_back(check_le(tag + "riemann_fd_first_bianchi", worst_bianchi, 1e-5));
    }
    if (n == 1) {
        double worst = 0.0;
        for (int t = 0; t < 5; ++t) {
            auto s = derive_seed(opt.seed, 700 + static_cast<std::uint64_t>(t));
            Spd sigma = random_spd(1, derive_seed(s, 0));
            worst = std::max(worst, detail::max_abs(riemann_numeric(fisher, sigma,
                                                                    random_sym(1, derive_seed(s, 1)),
                                                                    random_sym(1, derive_seed(s, 2)),
                                                                    random_sym(1, derive_seed(s, 3)))
                                                        .mat()));
        }
        out.push_back(check_le(tag + "riemann_flat_in_1d", worst, 1e-8));
    }
    return out;
}

// ---------------------------------------------------------------------------
// connection suite (includes the cubic-tensor checks)
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> verify_connection_n(int n, const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    const std::string tag = "[n=" + std::to_string(n) + "] ";
    const MetricParam fisher = MetricParam::fisher();
    const Spd id(n, Matrix::Identity(n, n));
    Chart chart(n);

    {
        // total symmetry and GL-invariance of the basis cubics
        double worst_sym = 0.0, worst_gl = 0.0;
        for (int t = 0; t < std::min(opt.samples, 10); ++t) {
            auto s = derive_seed(opt.seed, 1000 + static_cast<std::uint64_t>(t));
            Spd sigma = random_spd(n, derive_seed(s, 0));
            SymTan x = random_sym(n, derive_seed(s, 1));
            SymTan y = random_sym(n, derive_seed(s, 2));
            SymTan z = random_sym(n, derive_seed(s, 3));
            Matrix a = detail::random_gl(n, derive_seed(s, 4));
            Spd sigma_t(n, a * sigma.mat() * a.transpose());
            SymTan x_t(n, a * x.mat() * a.transpose());
            SymTan y_t(n, a * y.mat() * a.transpose());
            SymTan z_t(n, a * z.mat() * a.transpose());
            using Eval = double (*)(const Spd&, const SymTan&, const SymTan&, const SymTan&);
            for (Eval f : {static_cast<Eval>(eval_c1), static_cast<Eval>(eval_c2),
                           static_cast<Eval>(eval_c3)}) {
                double base = f(sigma, x, y, z);
                worst_sym = std::max(worst_sym, detail::rel_defect(base, f(sigma, y, x, z)));
                worst_sym = std::max(worst_sym, detail::rel_defect(base, f(sigma, z, y, x)));
                worst_sym = std::max(worst_sym, detail::rel_defect(base, f(sigma, x, z, y)));
                worst_gl = std::max(worst_gl, detail::rel_defect(base, f(sigma_t, x_t, y_t, z_t)));
            }
        }
        out.push_back(check_le(tag + "cubic_total_symmetry", worst_sym, 1e-12));
        out.push_back(check_le(tag + "cubic_gl_invariance", worst_gl, 1e-9));
    }
    if (n == 2) {
        double worst = 0.0;
        for (int t = 0; t < 10; ++t) {
            auto s = derive_seed(opt.seed, 1100 + static_cast<std::uint64_t>(t));
            Spd sigma = random_spd(2, derive_seed(s, 0));
            SymTan x = random_sym(2, derive_seed(s, 1));
            SymTan y = random_sym(2, derive_seed(s, 2));
            SymTan z = random_sym(2, derive_seed(s, 3));
            double lhs = eval_c2(sigma, x, y, z);
            double rhs = (2.0 * eval_c1(sigma, x, y, z) + eval_c3(sigma, x, y, z)) / 3.0;
            worst = std::max(worst, detail::rel_defect(lhs, rhs));
        }
        out.push_back(check_le(tag + "c2_newton_relation", worst, 1e-10));
    }
    if (n == 1) {
        double worst = 0.0;
        for (int t = 0; t < 10; ++t) {
            auto s = derive_seed(opt.seed, 1100 + static_cast<std::uint64_t>(t));
            Spd sigma = random_spd(1, derive_seed(s, 0));
            SymTan x = random_sym(1, derive_seed(s, 1));
            double c1 = eval_c1(sigma, x, x, x);
            worst = std::max(worst, detail::rel_defect(c1, eval_c2(sigma, x, x, x)));
            worst = std::max(worst, detail::rel_defect(c1, eval_c3(sigma, x, x, x)));
        }
        out.push_back(check_le(tag + "cubic_1d_collapse", worst, 1e-12));
    }
    {
        // chevalley round trip on a random canonical cubic
        double worst = 0.0;
        for (int t = 0; t < 5; ++t) {
            InvCubic c = detail::random_cubic(n, derive_seed(opt.seed, 1200 + static_cast<std::uint64_t>(t)));
            auto fit = chevalley_decompose(n, [&](const SymTan& x, const SymTan& y, const SymTan& z) {
                return eval_inv(c, id, x, y, z);
            });
            worst = std::max({worst, std::abs(fit.coeffs.a1 - c.a1), std::abs(fit.coeffs.a2 - c.a2),
                              std::abs(fit.coeffs.a3 - c.a3)});
        }
        out.push_back(check_le(tag + "chevalley_roundtrip", worst, 1e-10));
    }
    {
        // K defining relation and the cubic-form round trip through nabla
        double worst = 0.0;
        for (int t = 0; t < std::min(opt.samples, 10); ++t) {
            auto s = derive_seed(opt.seed, 1300 + static_cast<std::uint64_t>(t));
            InvCubic c = detail::random_cubic(n, derive_seed(s, 0));
            StatConn conn(fisher, c);
            Spd sigma = random_spd(n, derive_seed(s, 1));
            SymTan x = random_sym(n, derive_seed(s, 2));
            SymTan y = random_sym(n, derive_seed(s, 3));
            Matrix diff = nabla(conn, sigma, x, y).mat() - levi_civita(sigma, x, y).mat();
            for (int k = 0; k < chart.dim(); ++k) {
                SymTan z = chart.basis(k);
                double lhs = -2.0 * metric(fisher, sigma, SymTan(n, diff), z);
                worst = std::max(worst, detail::rel_defect(lhs, eval_inv(c, sigma, x, y, z)));
            }
        }
        out.push_back(check_le(tag + "cubic_form_round_trip", worst, 1e-10));
    }
    {
        // duality: d/dt g(Sigma+tX)(Y,Z) = g(nabla_X Y, Z) + g(Y, nabla*_X Z)
        double worst = 0.0;
        const double h = 1e-4;
        for (int t = 0; t < std::min(opt.samples, 10); ++t) {
            auto s = derive_seed(opt.seed, 1400 + static_cast<std::uint64_t>(t));
            InvCubic c = detail::random_cubic(n, derive_seed(s, 0));
            StatConn conn(fisher, c);
            StatConn conn_dual = dual(conn);
            Spd sigma = random_spd_unit(n, derive_seed(s, 1));
            SymTan x = random_sym(n, derive_seed(s, 2));
            SymTan y = random_sym(n, derive_seed(s, 3));
            SymTan z = random_sym(n, derive_seed(s, 4));
            double dplus = metric(fisher, Spd(n, sigma.mat() + h * x.mat()), y, z);
            double dminus = metric(fisher, Spd(n, sigma.mat() - h * x.mat()), y, z);
            double lhs = (dplus - dminus) / (2.0 * h);
            double rhs = metric(fisher, sigma, nabla(conn, sigma, x, y), z) +
                         metric(fisher, sigma, y, nabla(conn_dual, sigma, x, z));
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        out.push_back(check_le(tag + "duality_fd", worst, 1e-5));
    }
    {
        // R = R^g + [K_X, K_Y] against the FD curvature of the full connection
        double worst_fd = 0.0, worst_conj_fd = 0.0;
        for (int t = 0; t < std::min(opt.samples, 5); ++t) {
            auto s = derive_seed(opt.seed, 1500 + static_cast<std::uint64_t>(t));
            InvCubic c = detail::random_cubic(n, derive_seed(s, 0), 1.0);
            StatConn conn(fisher, c);
            Spd sigma = random_spd_unit(n, derive_seed(s, 1));
            SymTan x = random_sym(n, derive_seed(s, 2));
            SymTan y = random_sym(n, derive_seed(s, 3));
            SymTan z = random_sym(n, derive_seed(s, 4));
            Matrix exact = curvature(conn, sigma, x, y, z).mat();
            Matrix numeric = riemann_conn_numeric(conn, sigma, x, y, z).mat();
            worst_fd = std::max(worst_fd, detail::max_abs(exact - numeric));
            Matrix numeric_dual = riemann_conn_numeric(dual(conn), sigma, x, y, z).mat();
            worst_conj_fd = std::max(worst_conj_fd, detail::max_abs(numeric - numeric_dual));
        }
        out.push_back(check_le(tag + "curvature_decomposition_fd", worst_fd, 1e-5));
        out.push_back(check_le(tag + "conjugate_symmetry_fd", worst_conj_fd, 1e-5));
    }
    {
        // conjugate symmetry through the exact path at pinned-generator points
        double worst = 0.0;
        for (int t = 0; t < std::min(opt.samples, 10); ++t) {
            auto s = derive_seed(opt.seed, 1600 + static_cast<std::uint64_t>(t));
            InvCubic c = detail::random_cubic(n, derive_seed(s, 0));
            StatConn conn(fisher, c);
            Spd sigma = random_spd(n, derive_seed(s, 1));
            SymTan x = random_sym(n, derive_seed(s, 2));
            SymTan y = random_sym(n, derive_seed(s, 3));
            SymTan z = random_sym(n, derive_seed(s, 4));
            worst = std::max(worst, detail::max_abs(curvature(conn, sigma, x, y, z).mat() -
                                                    curvature(dual(conn), sigma, x, y, z).mat()));
        }
        out.push_back(check_le(tag + "conjugate_symmetry_exact", worst, 1e-8));
    }
    if (n >= 2) {
        // closed-form sectional lemmas against the commutator formula
        double worst = 0.0;
        auto planes = lemma_planes(n);
        const double scale = n == 2 ? 1.0 : 4.0;
        for (int t = 0; t < 100; ++t) {
            InvCubic c = detail::random_cubic(n, derive_seed(opt.seed, 1700 + static_cast<std::uint64_t>(t)));
            auto vals = lemma_polynomials(n, c.a1, c.a2, c.a3);
            for (std::size_t k = 0; k < planes.size(); ++k) {
                double sb = sectional_basis(c, planes[k].first, planes[k].second);
                worst = std::max(worst, std::abs(vals[k] - scale * sb));
            }
        }
        out.push_back(check_le(tag + "lemma_vs_sectional_basis", worst, 1e-10));

        // general sectional at the identity against the basis formula, and
        // plane invariance
        double worst_sect = 0.0, worst_plane = 0.0;
        for (int t = 0; t < 10; ++t) {
            auto s = derive_seed(opt.seed, 1800 + static_cast<std::uint64_t>(t));
            InvCubic c = detail::random_cubic(n, derive_seed(s, 0));
            StatConn conn(fisher, c);
            auto basis = fisher_orthonormal_basis(n);
            for (auto [i, j] : planes) {
                double a = sectional(conn, id, basis[static_cast<std::size_t>(i)],
                                     basis[static_cast<std::size_t>(j)]);
                double b = sectional_basis(c, i, j);
                worst_sect = std::max(worst_sect, std::abs(a - b));
                SymTan vw(n, basis[static_cast<std::size_t>(i)].mat() +
                                 basis[static_cast<std::size_t>(j)].mat());
                double a2 = sectional(conn, id, vw, basis[static_cast<std::size_t>(j)]);
                worst_plane = std::max(worst_plane, std::abs(a - a2));
            }
        }
        out.push_back(check_le(tag + "sectional_vs_basis_formula", worst_sect, 1e-10));
        out.push_back(check_le(tag + "sectional_plane_invariance", worst_plane, 1e-10));
    }
    {
        // flatness of the classified solutions; a non-solution witness
        FlatSolutionSet fs = solve_flat(n);
        if (fs.kind == FlatSolutionSet::Kind::finite) {
            double worst = 0.0;
            for (const auto& sol : fs.solutions) {
                StatConn conn(fisher, InvCubic(sol));
                worst = std::max(worst, flatness_residual(conn, n, opt.samples, opt.seed));
            }
            out.push_back(check_le(tag + "flatness_of_solutions", worst, opt.tol));
            StatConn witness(fisher, InvCubic(n, 0.5, 0.0, 0.0));
            out.push_back(check_gt(tag + "nonflat_witness_residual",
                                   flatness_residual(witness, n, 3, opt.seed), 1e-3));
        } else {
            StatConn conn(fisher, InvCubic(1, 0.7, 0.0, 0.0));
            out.push_back(check_le(tag + "flatness_trivial_in_1d",
                                   flatness_residual(conn, 1, opt.samples, opt.seed), opt.tol));
        }
    }
    {
        // geodesics against the three chart closed forms
        auto s = derive_seed(opt.seed, 1900);
        Spd sigma0 = random_spd_unit(n, derive_seed(s, 0));
        SymTan x0(n, 0.5 * random_sym(n, derive_seed(s, 1)).mat());
        const int steps = 1000;

        StatConn lc(fisher, InvCubic::zero(n));
        auto path = geodesic(lc, Spd(n, Matrix::Identity(n, n)), x0, 1.0, steps);
        Eigen::SelfAdjointEigenSolver<Matrix> es(x0.mat());
        Matrix expm = es.eigenvectors() *
                      es.eigenvalues().array().exp().matrix().asDiagonal() *
                      es.eigenvectors().transpose();
        out.push_back(check_le(tag + "geodesic_lc_matches_exp",
                               detail::max_abs(path.back().mat() - expm), 1e-6));

        StatConn mixture(fisher, InvCubic(n, -1.0, 0.0, 0.0));
        path = geodesic(mixture, sigma0, x0, 1.0, steps);
        out.push_back(check_le(tag + "geodesic_straight_line",
                               detail::max_abs(path.back().mat() - (sigma0.mat() + x0.mat())),
                               1e-9));

        StatConn exponential(fisher, InvCubic(n, 1.0, 0.0, 0.0));
        path = geodesic(exponential, sigma0, x0, 1.0, steps);
        Matrix p0 = sigma0.mat().llt().solve(Matrix::Identity(n, n));
        Matrix yv = -p0 * x0.mat() * p0;
        Matrix target = (p0 + yv).llt().solve(Matrix::Identity(n, n));
        out.push_back(check_le(tag + "geodesic_inverse_chart_line",
                               detail::max_abs(path.back().mat() - target), 1e-6));
    }
    return out;
}

// ---------------------------------------------------------------------------
// isometry suite
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> verify_isometry_n(int n, const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    const std::string tag = "[n=" + std::to_string(n) + "] ";
    const Matrix eye = Matrix::Identity(n, n);
    const IsometryWord s1(eye, 1, 0);

    out.push_back(check_le(tag + "sigma1_isometry", isometry_check(s1, opt.samples, opt.seed),
                           1e-9));
    if (n >= 3)
        out.push_back(check_le(tag + "sigma2_isometry",
                               isometry_check(IsometryWord(eye, 0, 1), opt.samples, opt.seed),
                               1e-9));
    {
        Matrix a = detail::random_gl(n, derive_seed(opt.seed, 2000));
        out.push_back(check_le(tag + "gl_isometry",
                               isometry_check(IsometryWord(a, 0, 0), opt.samples, opt.seed),
                               1e-9));
    }
    {
        // involutions, and commutation for n >= 3 (scale-normalized: the
        // intermediate images can carry large entries on rough points)
        double worst_inv = 0.0, worst_comm = 0.0;
        for (int t = 0; t < std::min(opt.samples, 10); ++t) {
            Spd sigma = random_spd(n, derive_seed(opt.seed, 2100 + static_cast<std::uint64_t>(t)));
            double scale = std::max(1.0, detail::max_abs(sigma.mat()));
            worst_inv = std::max(worst_inv,
                                 detail::max_abs(apply(s1, apply(s1, sigma)).mat() - sigma.mat()) /
                                     scale);
            if (n >= 3) {
                IsometryWord s2(eye, 0, 1);
                worst_inv = std::max(
                    worst_inv,
                    detail::max_abs(apply(s2, apply(s2, sigma)).mat() - sigma.mat()) / scale);
                Matrix ab = apply(s1, apply(s2, sigma)).mat();
                Matrix ba = apply(s2, apply(s1, sigma)).mat();
                worst_comm = std::max(worst_comm, detail::max_abs(ab - ba) /
                                                      std::max(1.0, detail::max_abs(ab)));
            }
        }
        out.push_back(check_le(tag + "sigma_involutions", worst_inv, 1e-12));
        if (n >= 3) out.push_back(check_le(tag + "sigma12_commute", worst_comm, 1e-12));
    }
    {
        // differentials against central finite differences of apply
        double worst = 0.0;
        const double h = 1e-5;
        for (int t = 0; t < std::min(opt.samples, 10); ++t) {
            auto s = derive_seed(opt.seed, 2200 + static_cast<std::uint64_t>(t));
            Spd sigma = random_spd_unit(n, derive_seed(s, 0));
            SymTan x = random_sym(n, derive_seed(s, 1));
            std::vector<IsometryWord> words;
            words.push_back(s1);
            words.push_back(IsometryWord(detail::random_gl(n, derive_seed(s, 2)), 1, 0));
            if (n >= 3) words.push_back(IsometryWord(detail::random_gl(n, derive_seed(s, 3)), 1, 1));
            for (const auto& w : words) {
                Matrix fd_diff = (apply(w, Spd(n, sigma.mat() + h * x.mat())).mat() -
                                  apply(w, Spd(n, sigma.mat() - h * x.mat())).mat()) /
                                 (2.0 * h);
                worst = std::max(worst,
                                 detail::max_abs(fd_diff - differential(w, sigma, x).mat()));
            }
        }
        out.push_back(check_le(tag + "differential_vs_fd", worst, 1e-6));
    }
    {
        // compose agrees with sequential application
        double worst = 0.0;
        for (int t = 0; t < std::min(opt.samples, 10); ++t) {
            auto s = derive_seed(opt.seed, 2300 + static_cast<std::uint64_t>(t));
            Rng flags(derive_seed(s, 0));
            auto random_word = [&](std::uint64_t k) {
                int e1 = static_cast<int>(flags.next_u64() % 2);
                int e2 = n >= 3 ? static_cast<int>(flags.next_u64() % 2) : 0;
                return IsometryWord(detail::random_gl(n, derive_seed(s, k)), e1, e2);
            };
            IsometryWord w1 = random_word(1), w2 = random_word(2);
            Spd sigma = random_spd(n, derive_seed(s, 3));
            Matrix lhs = apply(compose(w1, w2), sigma).mat();
            Matrix rhs = apply(w1, apply(w2, sigma)).mat();
            worst = std::max(worst, detail::max_abs(lhs - rhs) /
                                        std::max(1.0, detail::max_abs(rhs)));
        }
        out.push_back(check_le(tag + "compose_consistency", worst, 1e-10));
    }
    {
        // exact pullback identities on coefficients
        RationalCubic c1(n, Rational(1), Rational(0), Rational(0));
        bool exact = pullback_cubic(s1, c1) == RationalCubic(n, Rational(-1), Rational(0), Rational(0));
        if (n >= 3)
            exact = exact && pullback_cubic(IsometryWord(eye, 0, 1), c1) == c_prime(n);
        exact = exact && pullback_cubic(IsometryWord(detail::random_gl(n, derive_seed(opt.seed, 2400)), 0, 0),
                                        c1) == c1;
        out.push_back(check_le(tag + "pullback_exact_identities", exact ? 0.0 : 1.0, 0.0));
    }
    {
        // contravariance and pointwise evaluator consistency
        double worst = 0.0;
        bool contra = true;
        for (int t = 0; t < std::min(opt.samples, 10); ++t) {
            auto s = derive_seed(opt.seed, 2500 + static_cast<std::uint64_t>(t));
            Rng flags(derive_seed(s, 0));
            auto random_word = [&](std::uint64_t k) {
                int e1 = static_cast<int>(flags.next_u64() % 2);
                int e2 = n >= 3 ? static_cast<int>(flags.next_u64() % 2) : 0;
                return IsometryWord(detail::random_gl(n, derive_seed(s, k)), e1, e2);
            };
            IsometryWord w1 = random_word(1), w2 = random_word(2);
            RationalCubic c(n, Rational(static_cast<long long>(derive_seed(s, 4) % 7) - 3),
                            Rational(static_cast<long long>(derive_seed(s, 5) % 7) - 3),
                            Rational(static_cast<long long>(derive_seed(s, 6) % 7) - 3));
            contra = contra && pullback_cubic(compose(w1, w2), c) ==
                                   pullback_cubic(w2, pullback_cubic(w1, c));

            InvCubic cd(c);
            Spd sigma = random_spd(n, derive_seed(s, 7));
            SymTan x = random_sym(n, derive_seed(s, 8));
            SymTan y = random_sym(n, derive_seed(s, 9));
            SymTan z = random_sym(n, derive_seed(s, 10));
            double lhs = eval_inv(pullback_cubic(w1, cd), sigma, x, y, z);
            double rhs = eval_inv(cd, apply(w1, sigma), differential(w1, sigma, x),
                                  differential(w1, sigma, y), differential(w1, sigma, z));
            worst = std::max(worst, detail::rel_defect(lhs, rhs));
        }
        out.push_back(check_le(tag + "pullback_contravariance", contra ? 0.0 : 1.0, 0.0));
        out.push_back(check_le(tag + "pullback_pointwise_consistency", worst, 1e-9));
    }
    return out;
}

// ---------------------------------------------------------------------------
// divergence suite
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> verify_divergence_n(int n, const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    const std::string tag = "[n=" + std::to_string(n) + "] ";

    {
        double most_negative = 0.0, worst_diag = 0.0, worst_pullback = 0.0;
        const int pairs = std::max(opt.samples, 100);
        for (int t = 0; t < pairs; ++t) {
            auto s = derive_seed(opt.seed, 3000 + static_cast<std::uint64_t>(t));
            Spd s1 = random_spd(n, derive_seed(s, 0));
            Spd s2 = random_spd(n, derive_seed(s, 1));
            double k = kl(s1, s2), d = dprime(s1, s2);
            most_negative = std::max({most_negative, -k, -d});
            worst_pullback = std::max(worst_pullback,
                                      std::abs(d - kl(sigma2_map(s1), sigma2_map(s2))));
            if (t < 10) {
                worst_diag = std::max({worst_diag, std::abs(kl(s1, s1)), std::abs(dprime(s1, s1))});
            }
        }
        out.push_back(check_le(tag + "divergence_nonnegative", most_negative, 1e-12));
        out.push_back(check_le(tag + "divergence_zero_on_diagonal", worst_diag, 1e-12));
        out.push_back(check_le(tag + "dprime_vs_sigma2_pullback", worst_pullback, 1e-10));
    }
    if (n == 2) {
        // pinned asymmetry witness
        Spd w1(2, Vector{{2.0, 1.0}}.asDiagonal().toDenseMatrix());
        Spd w2(2, Matrix::Identity(2, 2));
        out.push_back(check_gt(tag + "kl_asymmetry_witness",
                               std::abs(kl(w1, w2) - kl(w2, w1)), 1e-3));
    }
    {
        // Taylor defect halves with the step (first-order remainder)
        double worst_ratio = 0.0;
        for (int t = 0; t < 5; ++t) {
            auto s = derive_seed(opt.seed, 3100 + static_cast<std::uint64_t>(t));
            Spd sigma = random_spd_unit(n, derive_seed(s, 0));
            SymTan x = random_sym(n, derive_seed(s, 1));
            for (DivergenceKind kind : {DivergenceKind::kl, DivergenceKind::dprime}) {
                double d1 = taylor_metric_check(kind, sigma, x, 1e-3);
                double d2 = taylor_metric_check(kind, sigma, x, 5e-4);
                if (d1 > 1e-12) worst_ratio = std::max(worst_ratio, std::abs(d2 / d1 - 0.5));
            }
        }
        out.push_back(check_le(tag + "taylor_defect_halving", worst_ratio, 0.2));
        Spd sigma = random_spd_unit(n, derive_seed(opt.seed, 3200));
        out.push_back(check_le(tag + "taylor_zero_direction",
                               taylor_metric_check(DivergenceKind::kl, sigma, SymTan::zero(n)),
                               1e-12));
    }
    return out;
}

// ---------------------------------------------------------------------------

inline std::vector<CheckResult> verify_suite(const std::string& suite, const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    auto run = [&](auto&& fn) {
        for (int n = opt.n_from; n <= opt.n_to; ++n) {
            auto part = fn(n, opt);
            out.insert(out.end(), part.begin(), part.end());
        }
    };
    if (suite == "metric" || suite == "all") run(verify_metric_n);
    if (suite == "connection" || suite == "all") run(verify_connection_n);
    if (suite == "isometry" || suite == "all") run(verify_isometry_n);
    if (suite == "divergence" || suite == "all") run(verify_divergence_n);
    if (out.empty()) throw Error("verify: unknown suite '" + suite + "'");
    return out;
}

}  // namespace statgeo
