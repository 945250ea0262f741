#pragma once

#include <array>
#include <functional>
#include <vector>

#include "statgeo/metric.hpp"
#include "statgeo/rational.hpp"

namespace statgeo {

namespace detail {

// Canonical coefficient form: the invariant cubic basis degenerates in low
// dimension. Two variables satisfy f2 = (2 f1 + f3)/3, one variable collapses
// everything to f1; the same relations hold for C_1, C_2, C_3.
template <class F>
void canonicalize_coeffs(int n, F& a1, F& a2, F& a3) {
    if (n == 1) {
        a1 = a1 + a2 + a3;
        a2 = F(0);
        a3 = F(0);
    } else if (n == 2) {
        a1 = a1 + F(2) * a2 / F(3);
        a3 = a3 + a2 / F(3);
        a2 = F(0);
    }
}

}  // namespace detail

class RationalCubic;

/// Coefficient triple of the invariant cubic tensor a1 C1 + a2 C2 + a3 C3 on
/// the SPD cone of dimension n, stored in canonical form (a2 folded away for
/// n <= 2, everything folded into a1 for n = 1).
struct InvCubic {
    int n;
    double a1;
    double a2;
    double a3;

    InvCubic(int n_in, double a1_in, double a2_in, double a3_in)
        : n(n_in), a1(a1_in), a2(a2_in), a3(a3_in) {
        if (n < 1) throw DimensionMismatch("InvCubic: dimension must be >= 1");
        detail::canonicalize_coeffs(n, a1, a2, a3);
    }
    InvCubic(const RationalCubic& c);  // defined below

    static InvCubic zero(int n) { return InvCubic(n, 0.0, 0.0, 0.0); }
    bool is_zero() const { return a1 == 0.0 && a2 == 0.0 && a3 == 0.0; }
};

/// Exact-coefficient variant used by the classification and pullback paths.
struct RationalCubic {
    int n;
    Rational a1;
    Rational a2;
    Rational a3;

    RationalCubic(int n_in, Rational a1_in, Rational a2_in, Rational a3_in)
        : n(n_in), a1(a1_in), a2(a2_in), a3(a3_in) {
        if (n < 1) throw DimensionMismatch("RationalCubic: dimension must be >= 1");
        detail::canonicalize_coeffs(n, a1, a2, a3);
    }

    friend bool operator==(const RationalCubic& a, const RationalCubic& b) {
        return a.n == b.n && a.a1 == b.a1 && a.a2 == b.a2 && a.a3 == b.a3;
    }
    friend bool operator!=(const RationalCubic& a, const RationalCubic& b) { return !(a == b); }
};

inline InvCubic::InvCubic(const RationalCubic& c)
    : InvCubic(c.n, c.a1.to_double(), c.a2.to_double(), c.a3.to_double()) {}

/// C' = C1 - (6/n) C2 + (4/n^2) C3, returned canonically (so -C1 for n <= 2).
inline RationalCubic c_prime(int n) {
    if (n < 1) throw DimensionMismatch("c_prime: dimension must be >= 1");
    return RationalCubic(n, Rational(1), Rational(-6, n), Rational(4, n * static_cast<long long>(n)));
}

namespace detail {

inline MatLd cubic_inv(const Spd& sigma, const SymTan& x, const SymTan& y, const SymTan& z,
                       const char* where) {
    require_same_dim(sigma.dim(), x.dim(), where);
    require_same_dim(sigma.dim(), y.dim(), where);
    require_same_dim(sigma.dim(), z.dim(), where);
    return inv_ld(sigma.mat());
}

}  // namespace detail

/// C1(X,Y,Z) = tr(Sigma^-1 X Sigma^-1 Y Sigma^-1 Z).
inline double eval_c1(const Spd& sigma, const SymTan& x, const SymTan& y, const SymTan& z) {
    auto p = detail::cubic_inv(sigma, x, y, z, "eval_c1");
    return static_cast<double>(detail::c1_value<long double>(
        p, detail::to_scalar<long double>(x.mat()), detail::to_scalar<long double>(y.mat()),
        detail::to_scalar<long double>(z.mat())));
}

/// C2(X,Y,Z), the symmetrized tr(Sigma^-1 X Sigma^-1 Y) tr(Sigma^-1 Z) sum / 3.
inline double eval_c2(const Spd& sigma, const SymTan& x, const SymTan& y, const SymTan& z) {
    auto p = detail::cubic_inv(sigma, x, y, z, "eval_c2");
    return static_cast<double>(detail::c2_value<long double>(
        p, detail::to_scalar<long double>(x.mat()), detail::to_scalar<long double>(y.mat()),
        detail::to_scalar<long double>(z.mat())));
}

/// C3(X,Y,Z) = tr(Sigma^-1 X) tr(Sigma^-1 Y) tr(Sigma^-1 Z).
inline double eval_c3(const Spd& sigma, const SymTan& x, const SymTan& y, const SymTan& z) {
    auto p = detail::cubic_inv(sigma, x, y, z, "eval_c3");
    return static_cast<double>(detail::c3_value<long double>(
        p, detail::to_scalar<long double>(x.mat()), detail::to_scalar<long double>(y.mat()),
        detail::to_scalar<long double>(z.mat())));
}

/// a1 C1 + a2 C2 + a3 C3 evaluated at (Sigma; X, Y, Z).
inline double eval_inv(const InvCubic& c, const Spd& sigma, const SymTan& x, const SymTan& y,
                       const SymTan& z) {
    require_same_dim(c.n, sigma.dim(), "eval_inv");
    auto p = detail::cubic_inv(sigma, x, y, z, "eval_inv");
    return static_cast<double>(detail::eval_cubic_value<long double>(
        static_cast<long double>(c.a1), static_cast<long double>(c.a2),
        static_cast<long double>(c.a3), p, detail::to_scalar<long double>(x.mat()),
        detail::to_scalar<long double>(y.mat()), detail::to_scalar<long double>(z.mat())));
}

/// Symmetric cubic polynomial b1 f1 + b2 f2 + b3 f3 in n variables, where
/// f1 = sum x_i^3, f2 = sum_{i,j} x_i^2 x_j, f3 = (sum x_i)^3. Stored in the
/// same canonical form as InvCubic.
struct SymPoly3 {
    int n;
    double b1;
    double b2;
    double b3;

    SymPoly3(int n_in, double b1_in, double b2_in, double b3_in)
        : n(n_in), b1(b1_in), b2(b2_in), b3(b3_in) {
        if (n < 1) throw DimensionMismatch("SymPoly3: dimension must be >= 1");
        detail::canonicalize_coeffs(n, b1, b2, b3);
    }

    double eval(const Vector& lambda) const {
        if (lambda.size() != n) throw DimensionMismatch("SymPoly3::eval: wrong length");
        double p1 = lambda.sum();
        double p2 = lambda.cwiseProduct(lambda).sum();
        double p3 = lambda.cwiseProduct(lambda).cwiseProduct(lambda).sum();
        return b1 * p3 + b2 * p2 * p1 + b3 * p1 * p1 * p1;
    }
};

/// Under the restriction to diagonal matrices the bases correspond
/// coefficient-wise: C_i restricts to f_i.
inline SymPoly3 restrict_to_diagonal(const InvCubic& c) {
    return SymPoly3(c.n, c.a1, c.a2, c.a3);
}

/// A trilinear functional on Sym(n), e.g. an invariant cubic tensor frozen at
/// a base point.
using CubicEvaluator = std::function<double(const SymTan&, const SymTan&, const SymTan&)>;

struct ChevalleyFit {
    InvCubic coeffs;
    double residual;
};

namespace detail {

/// Deterministic diagonal sample vectors from the rational grid
/// {1, 2, 3, 5, 7, 11}; enough of them for the rank-3 fit plus held-out
/// residual points.
inline std::vector<Vector> chevalley_samples(int n) {
    static const double grid[6] = {1.0, 2.0, 3.0, 5.0, 7.0, 11.0};
    std::vector<Vector> out;
    for (int s = 0; s < 12; ++s) {
        Vector v(n);
        int step = 1 + (s % 4);
        for (int i = 0; i < n; ++i) v[i] = grid[(s + i * step) % 6];
        out.push_back(v);
    }
    return out;
}

inline double f_basis_value(int which, const Vector& lambda) {
    double p1 = lambda.sum();
    double p2 = lambda.cwiseProduct(lambda).sum();
    double p3 = lambda.cwiseProduct(lambda).cwiseProduct(lambda).sum();
    switch (which) {
        case 1: return p3;
        case 2: return p2 * p1;
        default: return p1 * p1 * p1;
    }
}

}  // namespace detail

/// Recovers the coefficients of an O(n)-invariant totally symmetric trilinear
/// functional in the (f1, f2, f3) basis by evaluating on diagonal matrices
/// and solving the resulting linear system (rank 3 for n >= 3, rank 2 for
/// n = 2, rank 1 for n = 1). The residual is the worst reconstruction defect
/// over held-out sample points.
inline ChevalleyFit chevalley_decompose(int n, const CubicEvaluator& evaluator) {
    if (n < 1) throw DimensionMismatch("chevalley_decompose: dimension must be >= 1");
    const std::vector<int> cols = n >= 3 ? std::vector<int>{1, 2, 3}
                                         : (n == 2 ? std::vector<int>{1, 3} : std::vector<int>{1});
    auto samples = detail::chevalley_samples(n);
    const int fit_count = 6;
    const int total = static_cast<int>(samples.size());

    Matrix a(fit_count, static_cast<int>(cols.size()));
    Vector q(fit_count);
    for (int s = 0; s < fit_count; ++s) {
        const Vector& lam = samples[static_cast<std::size_t>(s)];
        SymTan d(n, lam.asDiagonal().toDenseMatrix());
        q[s] = evaluator(d, d, d);
        for (std::size_t k = 0; k < cols.size(); ++k)
            a(s, static_cast<int>(k)) = detail::f_basis_value(cols[k], lam);
    }
    Eigen::ColPivHouseholderQR<Matrix> qr(a);
    qr.setThreshold(1e-10);
    if (qr.rank() < static_cast<Eigen::Index>(cols.size()))
        throw IllConditioned("chevalley_decompose: sample system is rank-deficient");
    Vector b = qr.solve(q);

    double residual = 0.0;
    for (int s = 0; s < total; ++s) {
        const Vector& lam = samples[static_cast<std::size_t>(s)];
        SymTan d(n, lam.asDiagonal().toDenseMatrix());
        double qs = evaluator(d, d, d);
        double rec = 0.0;
        for (std::size_t k = 0; k < cols.size(); ++k)
            rec += b[static_cast<int>(k)] * detail::f_basis_value(cols[k], lam);
        residual = std::max(residual, std::abs(qs - rec));
    }
    // normalize by the scale of the sampled values
    double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
    if (residual / scale > 1e-8)
        throw NotInvariant("chevalley_decompose: residual " + std::to_string(residual) +
                           " exceeds tolerance; evaluator is not an invariant cubic");

    double b1 = b[0];
    double b2 = n >= 3 ? b[1] : 0.0;
    double b3 = n >= 3 ? b[2] : (n == 2 ? b[1] : 0.0);
    return ChevalleyFit{InvCubic(n, b1, b2, b3), residual};
}

}  // namespace statgeo
