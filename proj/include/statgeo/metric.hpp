#pragma once

#include <functional>

#include "statgeo/detail/kernels.hpp"
#include "statgeo/spd.hpp"

namespace statgeo {

/// Scale r of the invariant metric g^(r)_Sigma(X,Y) = r tr(Sigma^-1 X Sigma^-1 Y).
/// The Fisher metric of the zero-mean Gaussian family is r = 1/2; the Wishart
/// family with nu degrees of freedom gives r = nu/2.
struct MetricParam {
    double r;
    explicit MetricParam(double r_in) : r(r_in) {
        if (!(r > 0.0)) throw Error("MetricParam: scale must be positive");
    }
    static MetricParam fisher() { return MetricParam(0.5); }
    static MetricParam wishart(double nu) { return MetricParam(nu / 2.0); }
};

namespace detail {

using MatLd = MatS<long double>;

inline MatLd inv_ld(const Matrix& m) { return spd_inverse(to_scalar<long double>(m)); }

}  // namespace detail

/// g^(r)_Sigma(X, Y) = r tr(Sigma^-1 X Sigma^-1 Y).
inline double metric(const MetricParam& r, const Spd& sigma, const SymTan& x, const SymTan& y) {
    require_same_dim(sigma.dim(), x.dim(), "metric");
    require_same_dim(sigma.dim(), y.dim(), "metric");
    auto p = detail::inv_ld(sigma.mat());
    return static_cast<double>(detail::metric_value<long double>(
        r.r, p, detail::to_scalar<long double>(x.mat()), detail::to_scalar<long double>(y.mat())));
}

/// Christoffel operator of the Levi-Civita connection of g^(r) (independent
/// of r): Gamma^g_Sigma(X, Y) = -(X Sigma^-1 Y + Y Sigma^-1 X)/2.
inline SymTan levi_civita(const Spd& sigma, const SymTan& x, const SymTan& y) {
    require_same_dim(sigma.dim(), x.dim(), "levi_civita");
    require_same_dim(sigma.dim(), y.dim(), "levi_civita");
    auto p = detail::inv_ld(sigma.mat());
    auto g = detail::lc_gamma<long double>(p, detail::to_scalar<long double>(x.mat()),
                                           detail::to_scalar<long double>(y.mat()));
    return SymTan(sigma.dim(), detail::to_double(g));
}

/// Lowered curvature of the Fisher metric at the identity:
/// g^F(R(X,Y)Z, W) = (tr(YXZW) - tr(XYZW)) / 4.
inline double riemann_identity(const SymTan& x, const SymTan& y, const SymTan& z,
                               const SymTan& w) {
    require_same_dim(x.dim(), y.dim(), "riemann_identity");
    require_same_dim(x.dim(), z.dim(), "riemann_identity");
    require_same_dim(x.dim(), w.dim(), "riemann_identity");
    detail::MatLd xl = detail::to_scalar<long double>(x.mat());
    detail::MatLd yl = detail::to_scalar<long double>(y.mat());
    detail::MatLd zw = detail::to_scalar<long double>(z.mat()) *
                       detail::to_scalar<long double>(w.mat());
    long double v = ((yl * xl * zw).trace() - (xl * yl * zw).trace()) / 4.0L;
    return static_cast<double>(v);
}

/// Levi-Civita curvature R^g(X,Y)Z at any point, exact closed form
/// -(XPYPZ - YPXPZ - ZPXPY + ZPYPX)/4 with P = Sigma^-1 (r-independent).
inline SymTan riemann_lc_exact(const Spd& sigma, const SymTan& x, const SymTan& y,
                               const SymTan& z) {
    require_same_dim(sigma.dim(), x.dim(), "riemann_lc_exact");
    require_same_dim(sigma.dim(), y.dim(), "riemann_lc_exact");
    require_same_dim(sigma.dim(), z.dim(), "riemann_lc_exact");
    auto p = detail::inv_ld(sigma.mat());
    auto r = detail::riemann_lc_value<long double>(p, detail::to_scalar<long double>(x.mat()),
                                                   detail::to_scalar<long double>(y.mat()),
                                                   detail::to_scalar<long double>(z.mat()));
    return SymTan(sigma.dim(), detail::to_double(r));
}

// ---------------------------------------------------------------------------
// Finite-difference oracles. Deliberately plain double precision with central
// differences at a fixed step: these validate the closed forms above through
// an independent route (metric components -> Koszul -> curvature), they are
// not meant as production evaluators. Accuracy degrades like cond(Sigma)^4,
// so oracle tests sample unit-scale points (random_spd_unit).
// ---------------------------------------------------------------------------

namespace fd {

/// Gram matrix g_ab(M) of g^(r) in the chart basis.
inline Matrix gram_matrix(double r, const Matrix& m, const Chart& chart) {
    const int nn = static_cast<int>(chart.dim());
    Matrix p = m.llt().solve(Matrix::Identity(m.rows(), m.cols()));
    std::vector<Matrix> pb;
    pb.reserve(nn);
    for (int a = 0; a < nn; ++a) pb.push_back(p * chart.basis(a).mat());
    Matrix g(nn, nn);
    for (int a = 0; a < nn; ++a)
        for (int b = a; b < nn; ++b) {
            double v = r * pb[static_cast<std::size_t>(a)]
                               .cwiseProduct(pb[static_cast<std::size_t>(b)].transpose())
                               .sum();
            g(a, b) = v;
            g(b, a) = v;
        }
    return g;
}

/// Christoffel contraction Gamma(X, Y) at an unvalidated matrix point.
inline Matrix christoffel_at(double r, const Matrix& m, const Matrix& x, const Matrix& y,
                             double h) {
    const int n = static_cast<int>(m.rows());
    Chart chart(n);
    const int nn = chart.dim();
    std::vector<Matrix> dg;
    dg.reserve(nn);
    for (int c = 0; c < nn; ++c) {
        Matrix bc = chart.basis(c).mat();
        dg.push_back((gram_matrix(r, m + h * bc, chart) - gram_matrix(r, m - h * bc, chart)) /
                     (2.0 * h));
    }
    Matrix g = gram_matrix(r, m, chart);
    Eigen::FullPivLU<Matrix> lu(g);
    if (!lu.isInvertible())
        throw SingularMetric("christoffel_numeric: chart Gram matrix is numerically singular");
    Vector xv(nn), yv(nn);
    for (int k = 0; k < nn; ++k) {
        auto [i, j] = chart.index_pair(k);
        xv[k] = x(i, j);
        yv[k] = y(i, j);
    }
    Vector first(nn);
    for (int c = 0; c < nn; ++c) {
        double s = 0.0;
        for (int a = 0; a < nn; ++a)
            for (int b = 0; b < nn; ++b)
                s += 0.5 * (dg[static_cast<std::size_t>(a)](c, b) +
                            dg[static_cast<std::size_t>(b)](c, a) -
                            dg[static_cast<std::size_t>(c)](a, b)) * xv[a] * yv[b];
        first[c] = s;
    }
    Vector second = lu.solve(first);
    Matrix out = Matrix::Zero(n, n);
    for (int k = 0; k < nn; ++k) {
        auto [i, j] = chart.index_pair(k);
        out(i, j) = second[k];
        out(j, i) = second[k];
    }
    return out;
}

/// R(X,Y)Z of an arbitrary Christoffel field by central differences:
/// D_X Gamma(Y,Z) - D_Y Gamma(X,Z) + Gamma(X, Gamma(Y,Z)) - Gamma(Y, Gamma(X,Z)).
/// Constant coordinate fields have vanishing brackets, so this is the full
/// coordinate curvature.
inline Matrix riemann_of_field(
    const std::function<Matrix(const Matrix&, const Matrix&, const Matrix&)>& gamma,
    const Matrix& m, const Matrix& x, const Matrix& y, const Matrix& z, double h) {
    Matrix dxg = (gamma(m + h * x, y, z) - gamma(m - h * x, y, z)) / (2.0 * h);
    Matrix dyg = (gamma(m + h * y, x, z) - gamma(m - h * y, x, z)) / (2.0 * h);
    Matrix gyz = gamma(m, y, z);
    Matrix gxz = gamma(m, x, z);
    return dxg - dyg + gamma(m, x, gyz) - gamma(m, y, gxz);
}

}  // namespace fd

/// Finite-difference Christoffel oracle from metric components (Koszul).
inline SymTan christoffel_numeric(const MetricParam& r, const Spd& sigma, const SymTan& x,
                                  const SymTan& y, double h = 1e-4) {
    require_same_dim(sigma.dim(), x.dim(), "christoffel_numeric");
    require_same_dim(sigma.dim(), y.dim(), "christoffel_numeric");
    if (!(h > 0.0)) throw Error("christoffel_numeric: step must be positive");
    return SymTan(sigma.dim(), fd::christoffel_at(r.r, sigma.mat(), x.mat(), y.mat(), h));
}

/// Finite-difference Riemann oracle of the Levi-Civita connection; the
/// Christoffel field itself comes from the Koszul finite differences, so this
/// route is fully independent of the closed forms.
inline SymTan riemann_numeric(const MetricParam& r, const Spd& sigma, const SymTan& x,
                              const SymTan& y, const SymTan& z, double h = 1e-4) {
    require_same_dim(sigma.dim(), x.dim(), "riemann_numeric");
    require_same_dim(sigma.dim(), y.dim(), "riemann_numeric");
    require_same_dim(sigma.dim(), z.dim(), "riemann_numeric");
    if (!(h > 0.0)) throw Error("riemann_numeric: step must be positive");
    auto gamma = [&](const Matrix& m, const Matrix& a, const Matrix& b) {
        return fd::christoffel_at(r.r, m, a, b, h);
    };
    return SymTan(sigma.dim(),
                  fd::riemann_of_field(gamma, sigma.mat(), x.mat(), y.mat(), z.mat(), h));
}

}  // namespace statgeo
