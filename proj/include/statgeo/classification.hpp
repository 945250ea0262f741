#pragma once

#include <array>
#include <string>
#include <vector>

#include "statgeo/connection.hpp"
#include "statgeo/rational.hpp"

namespace statgeo {

/// The group acting on invariant-cubic coefficients: eta1 = -id (induced by
/// Sigma -> Sigma^-1), eta2 induced by Sigma -> (det Sigma)^{-2/n} Sigma.
/// eta2 exists as a separate generator only for n >= 3.
enum class CoeffGroup { trivial, eta1_only, eta1_eta2 };

namespace detail {

inline std::vector<Rational> eta2_image(int n, const std::vector<Rational>& lam) {
    Rational s(0);
    for (const auto& v : lam) s += v;
    Rational shift = Rational(2, n) * s;
    std::vector<Rational> out;
    out.reserve(lam.size());
    for (const auto& v : lam) out.push_back(v - shift);
    return out;
}

inline Rational f_value_exact(int which, const std::vector<Rational>& lam) {
    Rational p1(0), p2(0), p3(0);
    for (const auto& v : lam) {
        p1 += v;
        p2 += v * v;
        p3 += v * v * v;
    }
    switch (which) {
        case 1: return p3;
        case 2: return p2 * p1;
        default: return p1 * p1 * p1;
    }
}

inline std::vector<std::vector<Rational>> rational_sample_diagonals(int n) {
    static const long long grid[6] = {1, 2, 3, 5, 7, 11};
    std::vector<std::vector<Rational>> out;
    for (int s = 0; s < 8; ++s) {
        std::vector<Rational> v;
        v.reserve(static_cast<std::size_t>(n));
        int step = 1 + (s % 4);
        for (int i = 0; i < n; ++i) v.emplace_back(grid[(s + i * step) % 6]);
        out.push_back(std::move(v));
    }
    return out;
}

/// Exact Gaussian elimination; returns true and writes the solution if the
/// 3x3 system is nonsingular.
inline bool solve3_exact(std::array<std::array<Rational, 3>, 3> a, std::array<Rational, 3> b,
                         std::array<Rational, 3>& x) {
    std::array<int, 3> perm = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int pivot = -1;
        for (int row = col; row < 3; ++row)
            if (!a[static_cast<std::size_t>(perm[static_cast<std::size_t>(row)])]
                  [static_cast<std::size_t>(col)].is_zero()) {
                pivot = row;
                break;
            }
        if (pivot < 0) return false;
        std::swap(perm[static_cast<std::size_t>(col)], perm[static_cast<std::size_t>(pivot)]);
        const auto pr = static_cast<std::size_t>(perm[static_cast<std::size_t>(col)]);
        for (int row = col + 1; row < 3; ++row) {
            const auto rr = static_cast<std::size_t>(perm[static_cast<std::size_t>(row)]);
            Rational f = a[rr][static_cast<std::size_t>(col)] / a[pr][static_cast<std::size_t>(col)];
            if (f.is_zero()) continue;
            for (int k = col; k < 3; ++k)
                a[rr][static_cast<std::size_t>(k)] -= f * a[pr][static_cast<std::size_t>(k)];
            b[rr] -= f * b[pr];
        }
    }
    for (int col = 2; col >= 0; --col) {
        const auto pr = static_cast<std::size_t>(perm[static_cast<std::size_t>(col)]);
        Rational s = b[pr];
        for (int k = col + 1; k < 3; ++k)
            s -= a[pr][static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(col)] = s / a[pr][static_cast<std::size_t>(col)];
    }
    return true;
}

}  // namespace detail

using RationalMatrix3 = std::array<std::array<Rational, 3>, 3>;

/// Exact matrix of the eta2 pullback action on (a1, a2, a3), computed by
/// substituting x_i -> x_i - (2/n) sum_j x_j into the basis polynomials and
/// solving the resulting exact linear systems on sampled diagonals.
inline RationalMatrix3 eta2_matrix(int n) {
    if (n < 3)
        throw UnsupportedDimension("eta2_matrix: eta2 is a separate generator only for n >= 3");
    auto samples = detail::rational_sample_diagonals(n);
    const int count = static_cast<int>(samples.size());
    for (int i = 0; i < count; ++i)
        for (int j = i + 1; j < count; ++j)
            for (int k = j + 1; k < count; ++k) {
                std::array<std::array<Rational, 3>, 3> a;
                const std::array<int, 3> rows = {i, j, k};
                for (int r = 0; r < 3; ++r)
                    for (int fidx = 0; fidx < 3; ++fidx)
                        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(fidx)] =
                            detail::f_value_exact(fidx + 1,
                                                  samples[static_cast<std::size_t>(
                                                      rows[static_cast<std::size_t>(r)])]);
                RationalMatrix3 m;
                bool ok = true;
                for (int col = 0; col < 3 && ok; ++col) {
                    std::array<Rational, 3> rhs;
                    for (int r = 0; r < 3; ++r) {
                        auto image = detail::eta2_image(
                            n, samples[static_cast<std::size_t>(rows[static_cast<std::size_t>(r)])]);
                        rhs[static_cast<std::size_t>(r)] = detail::f_value_exact(col + 1, image);
                    }
                    std::array<Rational, 3> sol;
                    if (!detail::solve3_exact(a, rhs, sol)) {
                        ok = false;
                        break;
                    }
                    for (int r = 0; r < 3; ++r)
                        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] =
                            sol[static_cast<std::size_t>(r)];
                }
                if (ok) return m;
            }
    throw IllConditioned("eta2_matrix: no invertible sample triple found");
}

namespace detail {

inline RationalCubic apply_eta1(const RationalCubic& c) {
    return RationalCubic(c.n, -c.a1, -c.a2, -c.a3);
}

inline RationalCubic apply_eta2(const RationalCubic& c) {
    RationalMatrix3 m = eta2_matrix(c.n);
    std::array<Rational, 3> in = {c.a1, c.a2, c.a3};
    std::array<Rational, 3> out = {Rational(0), Rational(0), Rational(0)};
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 3; ++k)
            out[static_cast<std::size_t>(r)] +=
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] *
                in[static_cast<std::size_t>(k)];
    return RationalCubic(c.n, out[0], out[1], out[2]);
}

}  // namespace detail

struct FlatSolutionSet {
    enum class Kind { finite, continuum };
    int n;
    Kind kind;
    std::vector<RationalCubic> solutions;  // empty for the continuum case
};

/// Exact solutions of the dually-flat system, following the closed-form
/// elimination: subtracting the second sectional equation from the first
/// forces a1^2 = 1; the third factors a2 as a2 (6 a1 + a2 n) = 0; the second
/// is then linear in a3. Every candidate is verified against all equations.
inline FlatSolutionSet solve_flat(int n) {
    if (n < 1) throw DimensionMismatch("solve_flat: dimension must be >= 1");
    if (n == 1) return {1, FlatSolutionSet::Kind::continuum, {}};

    std::vector<RationalCubic> sols;
    auto all_vanish = [n](const RationalCubic& c) {
        for (const auto& v : lemma_polynomials_t<Rational>(n, c.a1, c.a2, c.a3))
            if (!v.is_zero()) return false;
        return true;
    };

    if (n == 2) {
        // 4 a1 a3 = 0 and -1/2 + a1^2/2 + 2 a1 a3 = 0: a1 = 0 is inconsistent,
        // so a3 = 0 and a1 = +-1.
        for (long long a1 : {1LL, -1LL}) {
            RationalCubic c(2, Rational(a1), Rational(0), Rational(0));
            if (all_vanish(c)) sols.push_back(c);
        }
        return {2, FlatSolutionSet::Kind::finite, sols};
    }

    for (long long a1v : {1LL, -1LL}) {
        Rational a1(a1v);
        for (const Rational& a2 : {Rational(0), Rational(-6 * a1v, n)}) {
            // second equation, linear in a3:
            // (8/9)(6 a1 a2 + a2^2 (1 + n) + (9 a1 + 3 a2 n) a3) = 0
            Rational coeff = Rational(9) * a1 + Rational(3) * a2 * Rational(n);
            Rational constant = Rational(6) * a1 * a2 + a2 * a2 * Rational(1 + n);
            if (coeff.is_zero()) continue;
            Rational a3 = -constant / coeff;
            RationalCubic c(n, a1, a2, a3);
            if (all_vanish(c)) sols.push_back(c);
        }
    }
    return {n, FlatSolutionSet::Kind::finite, sols};
}

/// Orbit of c under the chosen coefficient group (at most 4 elements).
inline std::vector<RationalCubic> orbit(int n, const RationalCubic& c, CoeffGroup group) {
    require_same_dim(n, c.n, "orbit");
    if (group == CoeffGroup::eta1_eta2 && n < 3)
        throw UnsupportedDimension("orbit: the eta1_eta2 group requires n >= 3");
    std::vector<RationalCubic> out{c};
    auto push = [&out](const RationalCubic& v) {
        for (const auto& e : out)
            if (e == v) return;
        out.push_back(v);
    };
    if (group == CoeffGroup::trivial) return out;
    push(detail::apply_eta1(c));
    if (group == CoeffGroup::eta1_eta2) {
        RationalCubic e2 = detail::apply_eta2(c);
        push(e2);
        push(detail::apply_eta1(e2));
    }
    return out;
}

namespace detail {

inline int coeff_space_dim(int n) { return n >= 3 ? 3 : (n == 2 ? 2 : 1); }

inline std::vector<Rational> to_coeff_vector(const RationalCubic& c) {
    if (c.n >= 3) return {c.a1, c.a2, c.a3};
    if (c.n == 2) return {c.a1, c.a3};
    return {c.a1};
}

inline RationalCubic from_coeff_vector(int n, const std::vector<Rational>& v) {
    if (n >= 3) return RationalCubic(n, v[0], v[1], v[2]);
    if (n == 2) return RationalCubic(n, v[0], Rational(0), v[1]);
    return RationalCubic(n, v[0], Rational(0), Rational(0));
}

/// Exact null-space basis of a rational matrix (row-major), by Gauss-Jordan.
inline std::vector<std::vector<Rational>> nullspace_exact(
    std::vector<std::vector<Rational>> rows, int cols) {
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (!rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
        Rational inv = Rational(1) / rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
        for (int k = 0; k < cols; ++k)
            rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(k)] *= inv;
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank) continue;
            Rational f = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            if (f.is_zero()) continue;
            for (int k = 0; k < cols; ++k)
                rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -=
                    f * rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(k)];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<std::vector<Rational>> basis;
    for (int col = 0; col < cols; ++col) {
        bool is_pivot = false;
        for (int pc : pivot_col)
            if (pc == col) { is_pivot = true; break; }
        if (is_pivot) continue;
        std::vector<Rational> v(static_cast<std::size_t>(cols), Rational(0));
        v[static_cast<std::size_t>(col)] = Rational(1);
        for (int r = 0; r < rank; ++r)
            v[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] =
                -rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace detail

/// Exact basis of the coefficient subspace fixed by the group (empty when the
/// subspace is {0}).
inline std::vector<RationalCubic> fixed_points(int n, CoeffGroup group) {
    if (n < 1) throw DimensionMismatch("fixed_points: dimension must be >= 1");
    if (group == CoeffGroup::eta1_eta2 && n < 3)
        throw UnsupportedDimension("fixed_points: the eta1_eta2 group requires n >= 3");
    const int d = detail::coeff_space_dim(n);
    std::vector<RationalCubic> out;
    if (group == CoeffGroup::trivial) {
        for (int k = 0; k < d; ++k) {
            std::vector<Rational> v(static_cast<std::size_t>(d), Rational(0));
            v[static_cast<std::size_t>(k)] = Rational(1);
            out.push_back(detail::from_coeff_vector(n, v));
        }
        return out;
    }
    // stack (M_g - I) for the generators and take the exact null space
    std::vector<std::vector<Rational>> rows;
    auto add_generator = [&rows, d](const std::vector<std::vector<Rational>>& m) {
        for (int r = 0; r < d; ++r) {
            std::vector<Rational> row = m[static_cast<std::size_t>(r)];
            row[static_cast<std::size_t>(r)] -= Rational(1);
            rows.push_back(std::move(row));
        }
    };
    {
        // eta1 = -identity
        std::vector<std::vector<Rational>> m(static_cast<std::size_t>(d),
                                             std::vector<Rational>(static_cast<std::size_t>(d),
                                                                   Rational(0)));
        for (int r = 0; r < d; ++r) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)] = Rational(-1);
        add_generator(m);
    }
    if (group == CoeffGroup::eta1_eta2) {
        RationalMatrix3 e2 = eta2_matrix(n);
        std::vector<std::vector<Rational>> m(3, std::vector<Rational>(3, Rational(0)));
        for (int r = 0; r < 3; ++r)
            for (int k = 0; k < 3; ++k)
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] =
                    e2[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
        add_generator(m);
    }
    for (const auto& v : detail::nullspace_exact(std::move(rows), d))
        out.push_back(detail::from_coeff_vector(n, v));
    return out;
}

struct DfModuli {
    int n;
    std::string moduli;  // "singleton" or "ray"
    int orbit_count;
    std::vector<std::vector<int>> orbits;  // index lists into solutions
    std::vector<RationalCubic> representatives;
};

/// Orbit decomposition of the dually-flat solution set under the coefficient
/// group; a single orbit for n >= 2, the nonnegative ray of alpha C1 for n = 1.
inline DfModuli df_moduli(int n) {
    if (n < 1) throw DimensionMismatch("df_moduli: dimension must be >= 1");
    if (n == 1) {
        DfModuli out{1, "ray", 1, {}, {}};
        out.representatives.push_back(RationalCubic(1, Rational(1), Rational(0), Rational(0)));
        return out;
    }
    FlatSolutionSet fs = solve_flat(n);
    CoeffGroup group = n >= 3 ? CoeffGroup::eta1_eta2 : CoeffGroup::eta1_only;
    DfModuli out{n, "singleton", 0, {}, {}};
    std::vector<bool> seen(fs.solutions.size(), false);
    for (std::size_t i = 0; i < fs.solutions.size(); ++i) {
        if (seen[i]) continue;
        auto orb = orbit(n, fs.solutions[i], group);
        std::vector<int> members;
        for (std::size_t j = 0; j < fs.solutions.size(); ++j)
            for (const auto& o : orb)
                if (fs.solutions[j] == o && !seen[j]) {
                    seen[j] = true;
                    members.push_back(static_cast<int>(j));
                }
        out.orbits.push_back(members);
        out.representatives.push_back(fs.solutions[i]);
        ++out.orbit_count;
    }
    out.moduli = out.orbit_count == 1 ? "singleton" : "multiple";
    return out;
}

}  // namespace statgeo
