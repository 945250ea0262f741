#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "statgeo/errors.hpp"
#include "statgeo/quadfloat.hpp"

// Scalar-templated kernels shared by the double API, the long double internal
// paths and the __float128 verdict path. All formulas are purely rational in
// Sigma^{-1}, so no scalar-specific code is needed beyond the LLT solve.
namespace statgeo::detail {

template <class S>
using MatS = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
MatS<S> to_scalar(const Eigen::MatrixXd& m) {
    return m.template cast<S>();
}

template <class Derived>
Eigen::MatrixXd to_double(const Eigen::MatrixBase<Derived>& expr) {
    const auto& m = expr.eval();
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = static_cast<double>(m(i, j));
    return out;
}

template <class S>
MatS<S> spd_inverse(const MatS<S>& m) {
    Eigen::LLT<MatS<S>> llt(m);
    return llt.solve(MatS<S>::Identity(m.rows(), m.cols()));
}

template <class S>
S sym_product_trace(const MatS<S>& a, const MatS<S>& b) {
    // tr(a b) for symmetric a, b without forming the product
    return a.cwiseProduct(b).sum();
}

/// g^(r)_Sigma(X, Y) = r tr(P X P Y), P = Sigma^{-1}.
template <class S>
S metric_value(const S& r, const MatS<S>& p, const MatS<S>& x, const MatS<S>& y) {
    return r * ((p * x) * (p * y)).trace();
}

/// Levi-Civita Christoffel operator of g^(r): -(X P Y + Y P X)/2.
template <class S>
MatS<S> lc_gamma(const MatS<S>& p, const MatS<S>& x, const MatS<S>& y) {
    MatS<S> xpy = x * p * y;
    return S(-0.5) * (xpy + xpy.transpose());
}

/// Difference tensor K of the statistical connection with cubic coefficients
/// (a1, a2, a3): the unique symmetric solution of -2 g(K(X,Y), Z) = C(X,Y,Z),
/// which works out to
///   K = -(1/2r) [ a1 (X P Y + Y P X)/2
///               + (a2/3)(tr(P X P Y) Sigma + tr(P X) Y + tr(P Y) X)
///               + a3 tr(P X) tr(P Y) Sigma ].
template <class S>
MatS<S> k_value(const S& r, const S& a1, const S& a2, const S& a3, const MatS<S>& sigma,
                const MatS<S>& p, const MatS<S>& x, const MatS<S>& y) {
    const S c = S(-1) / (S(2) * r);
    MatS<S> px = p * x;
    MatS<S> py = p * y;
    MatS<S> xpy = x * py;
    MatS<S> out = a1 * S(0.5) * (xpy + xpy.transpose());
    if (a2 != S(0)) {
        out += (a2 / S(3)) * ((px * py).trace() * sigma + px.trace() * y + py.trace() * x);
    }
    if (a3 != S(0)) {
        out += a3 * px.trace() * py.trace() * sigma;
    }
    return c * out;
}

/// Levi-Civita curvature R^g(X,Y)Z of g^(r) at Sigma (r drops out):
/// -(1/4)(X P Y P Z - Y P X P Z - Z P X P Y + Z P Y P X).
/// At Sigma = I this is -(1/4)[[X, Y], Z]; the general form follows from
/// GL-invariance of the metric.
template <class S>
MatS<S> riemann_lc_value(const MatS<S>& p, const MatS<S>& x, const MatS<S>& y,
                         const MatS<S>& z) {
    MatS<S> px = p * x;
    MatS<S> py = p * y;
    MatS<S> pz = p * z;
    return S(-0.25) * (x * py * pz - y * px * pz - z * px * py + z * py * px);
}

/// Full statistical-connection curvature R = R^g + [K_X, K_Y].
template <class S>
MatS<S> curvature_value(const S& r, const S& a1, const S& a2, const S& a3, const MatS<S>& sigma,
                        const MatS<S>& p, const MatS<S>& x, const MatS<S>& y, const MatS<S>& z) {
    MatS<S> out = riemann_lc_value(p, x, y, z);
    if (a1 != S(0) || a2 != S(0) || a3 != S(0)) {
        MatS<S> kyz = k_value(r, a1, a2, a3, sigma, p, y, z);
        MatS<S> kxz = k_value(r, a1, a2, a3, sigma, p, x, z);
        out += k_value(r, a1, a2, a3, sigma, p, x, kyz) - k_value(r, a1, a2, a3, sigma, p, y, kxz);
    }
    return out;
}

/// C_1 = tr(P X P Y P Z).
template <class S>
S c1_value(const MatS<S>& p, const MatS<S>& x, const MatS<S>& y, const MatS<S>& z) {
    return ((p * x) * (p * y) * (p * z)).trace();
}

/// C_2 = (tr(PXPY) tr(PZ) + tr(PYPZ) tr(PX) + tr(PZPX) tr(PY)) / 3.
template <class S>
S c2_value(const MatS<S>& p, const MatS<S>& x, const MatS<S>& y, const MatS<S>& z) {
    MatS<S> px = p * x, py = p * y, pz = p * z;
    return ((px * py).trace() * pz.trace() + (py * pz).trace() * px.trace() +
            (pz * px).trace() * py.trace()) / S(3);
}

/// C_3 = tr(PX) tr(PY) tr(PZ).
template <class S>
S c3_value(const MatS<S>& p, const MatS<S>& x, const MatS<S>& y, const MatS<S>& z) {
    return (p * x).trace() * (p * y).trace() * (p * z).trace();
}

template <class S>
S eval_cubic_value(const S& a1, const S& a2, const S& a3, const MatS<S>& p, const MatS<S>& x,
                   const MatS<S>& y, const MatS<S>& z) {
    S out = S(0);
    if (a1 != S(0)) out += a1 * c1_value(p, x, y, z);
    if (a2 != S(0)) out += a2 * c2_value(p, x, y, z);
    if (a3 != S(0)) out += a3 * c3_value(p, x, y, z);
    return out;
}

/// log det via Cholesky (sum of log diagonal, doubled).
template <class S>
S logdet_spd(const MatS<S>& m) {
    Eigen::LLT<MatS<S>> llt(m);
    MatS<S> l = llt.matrixL();
    S out = S(0);
    using std::log;
    for (Eigen::Index i = 0; i < l.rows(); ++i) out += log(l(i, i));
    return S(2) * out;
}

}  // namespace statgeo::detail
