#pragma once

#include <json.hpp>
#include <string>

#include "statgeo/classification.hpp"
#include "statgeo/cubic.hpp"
#include "statgeo/isometry.hpp"
#include "statgeo/spd.hpp"

namespace statgeo {

using Json = nlohmann::ordered_json;

/// Matrix wire format shared by every CLI command:
/// {"n": int, "rows": [[...], ...]} with row-major rows.
inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return Json{{"n", m.rows()}, {"rows", std::move(rows)}};
}

inline Matrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("rows"))
        throw ParseError("matrix JSON must be {\"n\": int, \"rows\": [[...], ...]}");
    const int n = j.at("n").get<int>();
    const auto& rows = j.at("rows");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw ParseError("matrix JSON: expected " + std::to_string(n) + " rows");
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const auto& row = rows.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ParseError("matrix JSON: row " + std::to_string(i) + " has wrong length");
        for (int k = 0; k < n; ++k) m(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
    }
    return m;
}

inline Json to_json(const Spd& s) { return matrix_to_json(s.mat()); }
inline Json to_json(const SymTan& s) { return matrix_to_json(s.mat()); }

inline Spd spd_from_json(const Json& j) {
    Matrix m = matrix_from_json(j);
    return Spd(static_cast<int>(m.rows()), m);
}

inline SymTan sym_from_json(const Json& j) {
    Matrix m = matrix_from_json(j);
    return SymTan(static_cast<int>(m.rows()), m);
}

/// InvCubic JSON: {"n": int, "a1": number|"p/q", "a2": ..., "a3": ...}.
inline Json to_json(const InvCubic& c) {
    return Json{{"n", c.n}, {"a1", c.a1}, {"a2", c.a2}, {"a3", c.a3}};
}

/// Rational coefficients serialize as "p/q" strings with float approximations
/// alongside, so exactness survives the round trip.
inline Json to_json(const RationalCubic& c) {
    return Json{{"n", c.n},
                {"a1", c.a1.str()},
                {"a2", c.a2.str()},
                {"a3", c.a3.str()},
                {"a1_float", c.a1.to_double()},
                {"a2_float", c.a2.to_double()},
                {"a3_float", c.a3.to_double()}};
}

namespace detail {

inline double coeff_from_json(const Json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>()).to_double();
    return j.get<double>();
}

inline Rational rational_from_json(const Json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw ParseError("expected an exact coefficient (integer or \"p/q\" string)");
}

}  // namespace detail

inline InvCubic cubic_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n"))
        throw ParseError("InvCubic JSON must be {\"n\", \"a1\", \"a2\", \"a3\"}");
    return InvCubic(j.at("n").get<int>(), detail::coeff_from_json(j.at("a1")),
                    detail::coeff_from_json(j.at("a2")), detail::coeff_from_json(j.at("a3")));
}

inline RationalCubic rational_cubic_from_json(const Json& j) {
    return RationalCubic(j.at("n").get<int>(), detail::rational_from_json(j.at("a1")),
                         detail::rational_from_json(j.at("a2")),
                         detail::rational_from_json(j.at("a3")));
}

/// IsometryWord JSON: {"A": matrix, "eps1": 0|1, "eps2": 0|1}.
inline Json to_json(const IsometryWord& w) {
    return Json{{"A", matrix_to_json(w.a())}, {"eps1", w.eps1()}, {"eps2", w.eps2()}};
}

inline IsometryWord isometry_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("A"))
        throw ParseError("IsometryWord JSON must be {\"A\", \"eps1\", \"eps2\"}");
    return IsometryWord(matrix_from_json(j.at("A")), j.value("eps1", 0), j.value("eps2", 0));
}

/// "a1,a2,a3" with exact entries ("p/q", integers, or finite decimals).
inline RationalCubic parse_coeffs(int n, const std::string& text) {
    std::vector<Rational> parts;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        parts.push_back(Rational::parse(text.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (parts.size() == 2 && n == 2) return RationalCubic(n, parts[0], Rational(0), parts[1]);
    if (parts.size() == 1 && n == 1) return RationalCubic(n, parts[0], Rational(0), Rational(0));
    if (parts.size() != 3)
        throw ParseError("coefficients: expected a1,a2,a3 (or the reduced low-dimension form)");
    return RationalCubic(n, parts[0], parts[1], parts[2]);
}

}  // namespace statgeo
