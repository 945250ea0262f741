#pragma once

#include <quadmath.h>

#include <Eigen/Core>
#include <limits>

namespace statgeo {

/// __float128 wrapped so Eigen accepts it as a scalar type. Used for the
/// curvature verdict path on badly conditioned points, where the intrinsic
/// cancellation scales like cond(Sigma)^3 * eps.
struct Quad {
    __float128 v;

    Quad() : v(0) {}
    Quad(double d) : v(d) {}
    Quad(long double d) : v(d) {}
    Quad(int i) : v(i) {}
    explicit Quad(__float128 q) : v(q) {}

    explicit operator double() const { return static_cast<double>(v); }
    explicit operator long double() const { return static_cast<long double>(v); }

    Quad operator-() const { return Quad(-v); }
    Quad& operator+=(const Quad& o) { v += o.v; return *this; }
    Quad& operator-=(const Quad& o) { v -= o.v; return *this; }
    Quad& operator*=(const Quad& o) { v *= o.v; return *this; }
    Quad& operator/=(const Quad& o) { v /= o.v; return *this; }

    friend Quad operator+(Quad a, const Quad& b) { return a += b; }
    friend Quad operator-(Quad a, const Quad& b) { return a -= b; }
    friend Quad operator*(Quad a, const Quad& b) { return a *= b; }
    friend Quad operator/(Quad a, const Quad& b) { return a /= b; }

    friend bool operator==(const Quad& a, const Quad& b) { return a.v == b.v; }
    friend bool operator!=(const Quad& a, const Quad& b) { return a.v != b.v; }
    friend bool operator<(const Quad& a, const Quad& b) { return a.v < b.v; }
    friend bool operator<=(const Quad& a, const Quad& b) { return a.v <= b.v; }
    friend bool operator>(const Quad& a, const Quad& b) { return a.v > b.v; }
    friend bool operator>=(const Quad& a, const Quad& b) { return a.v >= b.v; }
};

inline Quad sqrt(const Quad& a) { return Quad(sqrtq(a.v)); }
inline Quad abs(const Quad& a) { return Quad(fabsq(a.v)); }
inline Quad log(const Quad& a) { return Quad(logq(a.v)); }
inline Quad exp(const Quad& a) { return Quad(expq(a.v)); }
inline Quad pow(const Quad& a, const Quad& b) { return Quad(powq(a.v, b.v)); }
inline bool isfinite(const Quad& a) { return finiteq(a.v) != 0; }
inline bool isnan(const Quad& a) { return isnanq(a.v) != 0; }
inline bool isinf(const Quad& a) { return isinfq(a.v) != 0; }

}  // namespace statgeo

namespace std {
template <>
struct numeric_limits<statgeo::Quad> {
    static constexpr bool is_specialized = true;
    static constexpr bool is_signed = true;
    static constexpr bool is_integer = false;
    static constexpr bool is_exact = false;
    static constexpr int digits = 113;
    static constexpr int digits10 = 33;
    // spelled via scalbnq so the FLT128_* macros (which need the Q literal
    // extension) are not required
    static statgeo::Quad epsilon() { return statgeo::Quad(scalbnq(1.0, -112)); }
    static statgeo::Quad min() { return statgeo::Quad(scalbnq(1.0, -16382)); }
    static statgeo::Quad max() {
        return statgeo::Quad((__float128(2) - scalbnq(1.0, -112)) * scalbnq(1.0, 16383));
    }
    static statgeo::Quad lowest() { return statgeo::Quad(-max().v); }
    static statgeo::Quad quiet_NaN() { return statgeo::Quad(nanq("")); }
    static statgeo::Quad infinity() { return statgeo::Quad(HUGE_VALQ); }
};
}  // namespace std

namespace Eigen {
template <>
struct NumTraits<statgeo::Quad> {
    using Real = statgeo::Quad;
    using NonInteger = statgeo::Quad;
    using Literal = statgeo::Quad;
    using Nested = statgeo::Quad;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 2,
        AddCost = 8,
        MulCost = 16
    };
    static statgeo::Quad epsilon() { return std::numeric_limits<statgeo::Quad>::epsilon(); }
    static statgeo::Quad dummy_precision() { return statgeo::Quad(1e-30); }
    static statgeo::Quad highest() { return std::numeric_limits<statgeo::Quad>::max(); }
    static statgeo::Quad lowest() { return std::numeric_limits<statgeo::Quad>::lowest(); }
    static int digits10() { return 33; }
};
}  // namespace Eigen
