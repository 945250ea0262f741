#pragma once

#include "statgeo/classification.hpp"
#include "statgeo/metric.hpp"
#include "statgeo/parallel.hpp"

namespace statgeo {

/// Normal-form isometry word Gamma(A) o sigma1^eps1 o sigma2^eps2, applied
/// right to left: sigma2 first, then sigma1, then Sigma -> A Sigma A^T.
/// For n <= 2 the group presentation drops sigma2, so eps2 = 1 is rejected.
class IsometryWord {
public:
    IsometryWord(Matrix a, int eps1, int eps2) : a_(std::move(a)), eps1_(eps1), eps2_(eps2) {
        if (a_.rows() != a_.cols() || a_.rows() < 1)
            throw DimensionMismatch("IsometryWord: A must be square");
        if ((eps1 != 0 && eps1 != 1) || (eps2 != 0 && eps2 != 1))
            throw Error("IsometryWord: eps flags must be 0 or 1");
        if (dim() <= 2 && eps2 == 1)
            throw UnsupportedDimension(
                "IsometryWord: sigma2 is not a separate generator for n <= 2");
        double det = a_.partialPivLu().determinant();
        if (!(std::abs(det) > 1e-12))
            throw SingularMatrix("IsometryWord: |det A| must exceed 1e-12");
    }

    static IsometryWord identity(int n) {
        return IsometryWord(Matrix::Identity(n, n), 0, 0);
    }

    int dim() const { return static_cast<int>(a_.rows()); }
    const Matrix& a() const { return a_; }
    int eps1() const { return eps1_; }
    int eps2() const { return eps2_; }

private:
    Matrix a_;
    int eps1_;
    int eps2_;
};

namespace detail {

inline MatLd sigma2_ld(const MatLd& m) {
    const auto n = m.rows();
    long double c = std::exp(-2.0L / static_cast<long double>(n) * logdet_spd(m));
    return c * m;
}

inline MatLd apply_ld(const IsometryWord& w, MatLd m) {
    if (w.eps2()) m = sigma2_ld(m);
    if (w.eps1()) m = spd_inverse(m);
    MatLd a = to_scalar<long double>(w.a());
    return a * m * a.transpose();
}

inline MatLd differential_ld(const IsometryWord& w, MatLd m, MatLd d) {
    const long double n = static_cast<long double>(m.rows());
    if (w.eps2()) {
        MatLd p = spd_inverse(m);
        long double c = std::exp(-2.0L / n * logdet_spd(m));
        d = (c * (d - 2.0L / n * (p * d).trace() * m)).eval();
        m = (c * m).eval();
    }
    if (w.eps1()) {
        MatLd p = spd_inverse(m);
        d = (-p * d * p).eval();
        m = p;
    }
    MatLd a = to_scalar<long double>(w.a());
    return a * d * a.transpose();
}

}  // namespace detail

/// The raw map sigma2(Sigma) = (det Sigma)^{-2/n} Sigma, valid for every n.
/// (The group word constructor restricts eps2 for n <= 2; this map does not.)
inline Spd sigma2_map(const Spd& sigma) {
    auto m = detail::sigma2_ld(detail::to_scalar<long double>(sigma.mat()));
    return Spd(sigma.dim(), detail::to_double(m));
}

inline Spd apply(const IsometryWord& w, const Spd& sigma) {
    require_same_dim(w.dim(), sigma.dim(), "apply");
    return Spd(sigma.dim(),
               detail::to_double(detail::apply_ld(w, detail::to_scalar<long double>(sigma.mat()))));
}

/// Differential of apply(w, .) at Sigma, chain rule through the word order:
/// d sigma2|_S (X) = (det S)^{-2/n} (X - (2/n) tr(S^-1 X) S),
/// d sigma1|_S (X) = -S^-1 X S^-1, d Gamma(A)(X) = A X A^T.
inline SymTan differential(const IsometryWord& w, const Spd& sigma, const SymTan& x) {
    require_same_dim(w.dim(), sigma.dim(), "differential");
    require_same_dim(sigma.dim(), x.dim(), "differential");
    return SymTan(sigma.dim(), detail::to_double(detail::differential_ld(
                                   w, detail::to_scalar<long double>(sigma.mat()),
                                   detail::to_scalar<long double>(x.mat()))));
}

/// Normal-form composition: sigma's are pushed right through Gamma using
/// sigma1 Gamma(A) sigma1 = Gamma(A^{-T}) and
/// sigma2 Gamma(A) sigma2 = Gamma((det A)^{-2/n} A); the sigma's commute and
/// square to the identity.
inline IsometryWord compose(const IsometryWord& w1, const IsometryWord& w2) {
    require_same_dim(w1.dim(), w2.dim(), "compose");
    const long double n = static_cast<long double>(w1.dim());
    detail::MatLd a2 = detail::to_scalar<long double>(w2.a());
    if (w1.eps2()) {
        // (det A)^{-2/n} = ((det A)^2)^{-1/n}, positive for every invertible A
        long double det = a2.partialPivLu().determinant();
        long double c = std::exp(-2.0L / n * std::log(std::abs(det)));
        a2 = (c * a2).eval();
    }
    if (w1.eps1()) {
        a2 = a2.partialPivLu().solve(detail::MatLd::Identity(w1.dim(), w1.dim()))
                 .transpose()
                 .eval();
    }
    detail::MatLd a = detail::to_scalar<long double>(w1.a()) * a2;
    return IsometryWord(detail::to_double(a), w1.eps1() ^ w2.eps1(), w1.eps2() ^ w2.eps2());
}

/// Pullback action on invariant cubic coefficients: Gamma(A) acts trivially,
/// sigma1 negates, sigma2 acts by the exact eta2 matrix.
inline RationalCubic pullback_cubic(const IsometryWord& w, const RationalCubic& c) {
    require_same_dim(w.dim(), c.n, "pullback_cubic");
    RationalCubic out = c;
    if (w.eps1()) out = detail::apply_eta1(out);
    if (w.eps2()) out = detail::apply_eta2(out);
    return out;
}

inline InvCubic pullback_cubic(const IsometryWord& w, const InvCubic& c) {
    require_same_dim(w.dim(), c.n, "pullback_cubic");
    if (w.eps2()) {
        RationalMatrix3 m = eta2_matrix(c.n);
        double sign = w.eps1() ? -1.0 : 1.0;
        std::array<double, 3> in = {c.a1, c.a2, c.a3};
        std::array<double, 3> out = {0.0, 0.0, 0.0};
        for (int r = 0; r < 3; ++r)
            for (int k = 0; k < 3; ++k)
                out[static_cast<std::size_t>(r)] +=
                    m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)].to_double() *
                    in[static_cast<std::size_t>(k)];
        return InvCubic(c.n, sign * out[0], sign * out[1], sign * out[2]);
    }
    if (w.eps1()) return InvCubic(c.n, -c.a1, -c.a2, -c.a3);
    return c;
}

/// Max defect of Fisher-metric invariance,
/// |g^F(apply(w,S); dw X, dw Y) - g^F(S; X, Y)|, over random (Sigma, X, Y)
/// trials. The whole composite is evaluated in extended precision so the
/// defect reflects the isometry property rather than intermediate rounding.
inline double isometry_check(const IsometryWord& w, int trials, std::uint64_t seed) {
    if (trials < 1) throw Error("isometry_check: need at least one trial");
    const int n = w.dim();
    return parallel_max(trials, [&](int i) {
        const auto base = static_cast<std::uint64_t>(3 * i);
        detail::MatLd sigma =
            detail::to_scalar<long double>(random_spd(n, derive_seed(seed, base)).mat());
        detail::MatLd x =
            detail::to_scalar<long double>(random_sym(n, derive_seed(seed, base + 1)).mat());
        detail::MatLd y =
            detail::to_scalar<long double>(random_sym(n, derive_seed(seed, base + 2)).mat());
        detail::MatLd image = detail::apply_ld(w, sigma);
        detail::MatLd dx = detail::differential_ld(w, sigma, x);
        detail::MatLd dy = detail::differential_ld(w, sigma, y);
        const long double half = 0.5L;
        long double lhs = detail::metric_value<long double>(half, detail::spd_inverse(image), dx, dy);
        long double rhs = detail::metric_value<long double>(half, detail::spd_inverse(sigma), x, y);
        return static_cast<double>(std::abs(lhs - rhs));
    });
}

}  // namespace statgeo
