#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>
#include <vector>

#include "statgeo/errors.hpp"
#include "statgeo/rng.hpp"

namespace statgeo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace detail {

inline void check_square(int n, const Matrix& m, const char* what) {
    if (n < 1) throw DimensionMismatch(std::string(what) + ": dimension must be >= 1");
    if (m.rows() != n || m.cols() != n)
        throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(n) + "x" +
                                std::to_string(n) + " matrix");
}

/// Relative asymmetry max|M - M^T| / max(1, max|M|).
inline double asymmetry(const Matrix& m) {
    double a = (m - m.transpose()).cwiseAbs().maxCoeff();
    double s = m.cwiseAbs().maxCoeff();
    return a / std::max(1.0, s);
}

}  // namespace detail

/// A symmetric matrix regarded as a tangent vector in the global chart.
class SymTan {
public:
    SymTan(int n, Matrix entries) {
        detail::check_square(n, entries, "SymTan");
        if (!entries.allFinite()) throw NotSymmetric("SymTan: entries must be finite");
        if (detail::asymmetry(entries) > 1e-12)
            throw NotSymmetric("SymTan: matrix is not symmetric within tolerance");
        mat_ = ((entries + entries.transpose()) / 2.0).eval();
    }

    static SymTan zero(int n) { return SymTan(n, Matrix::Zero(n, n)); }

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Matrix& mat() const { return mat_; }

private:
    Matrix mat_;
};

/// A validated symmetric positive-definite matrix.
class Spd {
public:
    Spd(int n, Matrix entries) {
        detail::check_square(n, entries, "Spd");
        if (!entries.allFinite()) throw NotPositiveDefinite("Spd: entries must be finite");
        if (detail::asymmetry(entries) > 1e-12)
            throw NotSymmetric("Spd: matrix is not symmetric within tolerance");
        mat_ = ((entries + entries.transpose()) / 2.0).eval();
        Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
        eig_min_ = es.eigenvalues().minCoeff();
        eig_max_ = es.eigenvalues().maxCoeff();
        if (!(eig_max_ > 0.0) || !(eig_min_ > 1e-10 * eig_max_))
            throw NotPositiveDefinite("Spd: smallest eigenvalue " + std::to_string(eig_min_) +
                                      " fails the positive-definiteness test");
    }

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Matrix& mat() const { return mat_; }
    double eig_min() const { return eig_min_; }
    double eig_max() const { return eig_max_; }
    double cond() const { return eig_max_ / eig_min_; }

    SymTan as_tangent() const { return SymTan(dim(), mat_); }

private:
    Matrix mat_;
    double eig_min_ = 0.0;
    double eig_max_ = 0.0;
};

inline Spd make_spd(int n, const Matrix& entries) { return Spd(n, entries); }
inline SymTan make_sym(int n, const Matrix& entries) { return SymTan(n, entries); }

/// Global chart on the symmetric matrices: coordinates x_ij (i <= j) listed
/// row-major over the upper triangle, so coordinates equal matrix entries.
/// Basis vectors are E_ii and E_ij + E_ji (unnormalized).
class Chart {
public:
    explicit Chart(int n) : n_(n) {
        if (n < 1) throw DimensionMismatch("Chart: dimension must be >= 1");
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) pairs_.emplace_back(i, j);
    }

    int n() const { return n_; }
    int dim() const { return static_cast<int>(pairs_.size()); }

    std::pair<int, int> index_pair(int k) const {
        if (k < 0 || k >= dim()) throw IndexOutOfRange("Chart: coordinate index out of range");
        return pairs_[static_cast<std::size_t>(k)];
    }

    int index_of(int i, int j) const {
        if (i > j) std::swap(i, j);
        if (i < 0 || j >= n_) throw IndexOutOfRange("Chart: entry index out of range");
        // row-major upper triangle offset
        return i * n_ - i * (i - 1) / 2 + (j - i);
    }

    SymTan basis(int k) const {
        auto [i, j] = index_pair(k);
        Matrix m = Matrix::Zero(n_, n_);
        if (i == j) m(i, i) = 1.0;
        else { m(i, j) = 1.0; m(j, i) = 1.0; }
        return SymTan(n_, m);
    }

    Vector vectorize(const SymTan& x) const {
        require_same_dim(x.dim(), n_, "Chart::vectorize");
        Vector v(dim());
        for (int k = 0; k < dim(); ++k) {
            auto [i, j] = pairs_[static_cast<std::size_t>(k)];
            v[k] = x.mat()(i, j);
        }
        return v;
    }

    SymTan devectorize(const Vector& v) const {
        if (v.size() != dim()) throw DimensionMismatch("Chart::devectorize: wrong length");
        Matrix m(n_, n_);
        for (int k = 0; k < dim(); ++k) {
            auto [i, j] = pairs_[static_cast<std::size_t>(k)];
            m(i, j) = v[k];
            m(j, i) = v[k];
        }
        return SymTan(n_, m);
    }

private:
    int n_;
    std::vector<std::pair<int, int>> pairs_;
};

/// Orthonormal basis of Sym(n) for the Fisher inner product at the identity:
/// sqrt(2)*E_ii for i = 1..n first, then E_jk + E_kj for j < k (row-major).
inline std::vector<SymTan> fisher_orthonormal_basis(int n) {
    if (n < 1) throw DimensionMismatch("fisher_orthonormal_basis: dimension must be >= 1");
    std::vector<SymTan> basis;
    basis.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
    const double s = std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
        Matrix m = Matrix::Zero(n, n);
        m(i, i) = s;
        basis.emplace_back(n, m);
    }
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            Matrix m = Matrix::Zero(n, n);
            m(j, k) = 1.0;
            m(k, j) = 1.0;
            basis.emplace_back(n, m);
        }
    return basis;
}

/// The (i, j) entry pair behind a fisher_orthonormal_basis index.
inline std::pair<int, int> fisher_basis_pair(int n, int k) {
    int count = n * (n + 1) / 2;
    if (k < 0 || k >= count) throw IndexOutOfRange("fisher_basis_pair: index out of range");
    if (k < n) return {k, k};
    int t = k - n;
    for (int j = 0; j < n; ++j) {
        int row = n - 1 - j;
        if (t < row) return {j, j + 1 + t};
        t -= row;
    }
    throw IndexOutOfRange("fisher_basis_pair: index out of range");
}

/// Deterministic SPD sample: A A^T + 1e-3 I with A entries uniform on [-1, 1],
/// filled row-major.
inline Spd random_spd(int n, std::uint64_t seed) {
    Rng rng(seed);
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng.uniform_sym();
    Matrix m = a * a.transpose() + 1e-3 * Matrix::Identity(n, n);
    return Spd(n, m);
}

/// Deterministic symmetric sample: symmetrized uniform [-1, 1] matrix.
inline SymTan random_sym(int n, std::uint64_t seed) {
    Rng rng(seed);
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng.uniform_sym();
    return SymTan(n, (a + a.transpose()) / 2.0);
}

/// Unit-scale well-conditioned SPD sample, I + (0.6/sqrt(n)) * sym, rejected
/// until all eigenvalues lie in [0.25, 1.75]. Finite-difference oracles use
/// this sampler: at step h = 1e-4 in double precision their truncation error
/// grows like cond(Sigma)^4 and the pinned tolerances assume unit scale.
inline Spd random_spd_unit(int n, std::uint64_t seed) {
    for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
        SymTan s = random_sym(n, derive_seed(seed, attempt));
        Matrix m = Matrix::Identity(n, n) + (0.6 / std::sqrt(double(n))) * s.mat();
        Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() >= 0.25 && es.eigenvalues().maxCoeff() <= 1.75)
            return Spd(n, m);
    }
    throw Error("random_spd_unit: rejection sampling failed");
}

}  // namespace statgeo
