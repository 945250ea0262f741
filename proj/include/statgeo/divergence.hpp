#pragma once

#include "statgeo/isometry.hpp"
#include "statgeo/metric.hpp"

namespace statgeo {

enum class DivergenceKind { kl, dprime };

namespace detail {

struct DivergenceParts {
    long double trace;   // tr(Sigma1 Sigma2^-1)
    long double logdet;  // log det(Sigma1 Sigma2^-1)
    long double n;
};

inline DivergenceParts divergence_parts(const Spd& sigma1, const Spd& sigma2,
                                        const char* where) {
    require_same_dim(sigma1.dim(), sigma2.dim(), where);
    MatLd a = to_scalar<long double>(sigma1.mat());
    MatLd b = to_scalar<long double>(sigma2.mat());
    Eigen::LLT<MatLd> llt(b);
    long double tr = llt.solve(a).trace();
    long double ld = logdet_spd(a) - logdet_spd(b);
    return {tr, ld, static_cast<long double>(sigma1.dim())};
}

}  // namespace detail

/// Kullback-Leibler divergence of zero-mean Gaussians:
/// (tr(S1 S2^-1) - log det(S1 S2^-1) - n) / 2.
inline double kl(const Spd& sigma1, const Spd& sigma2) {
    auto p = detail::divergence_parts(sigma1, sigma2, "kl");
    return static_cast<double>(0.5L * (p.trace - p.logdet - p.n));
}

/// The canonical divergence of the sigma2-transported flat structure:
/// (det(S1 S2^-1)^{-2/n} tr(S1 S2^-1) - log det(S1^-1 S2) - n) / 2.
inline double dprime(const Spd& sigma1, const Spd& sigma2) {
    auto p = detail::divergence_parts(sigma1, sigma2, "dprime");
    long double scaled = std::exp(-2.0L / p.n * p.logdet) * p.trace;
    return static_cast<double>(0.5L * (scaled + p.logdet - p.n));
}

inline double divergence(DivergenceKind kind, const Spd& sigma1, const Spd& sigma2) {
    return kind == DivergenceKind::kl ? kl(sigma1, sigma2) : dprime(sigma1, sigma2);
}

/// Second-order Taylor defect |D(Sigma + tX, Sigma) - (t^2/2) g^F(X,X)| / t^2.
/// Both divergences induce the Fisher metric, so the defect is O(t).
inline double taylor_metric_check(DivergenceKind kind, const Spd& sigma, const SymTan& x,
                                  double t = 1e-3) {
    require_same_dim(sigma.dim(), x.dim(), "taylor_metric_check");
    if (!(t > 0.0)) throw Error("taylor_metric_check: step must be positive");
    Matrix shifted = sigma.mat() + t * x.mat();
    Spd moved = [&]() -> Spd {
        try {
            return Spd(sigma.dim(), shifted);
        } catch (const NotPositiveDefinite&) {
            throw LeftManifold("taylor_metric_check: Sigma + tX is not positive definite");
        }
    }();
    double d = divergence(kind, moved, sigma);
    double quad = 0.5 * t * t * metric(MetricParam::fisher(), sigma, x, x);
    return std::abs(d - quad) / (t * t);
}

}  // namespace statgeo
