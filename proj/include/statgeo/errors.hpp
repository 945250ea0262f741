#pragma once

#include <stdexcept>
#include <string>

namespace statgeo {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotSymmetric : Error {
    using Error::Error;
};
struct NotPositiveDefinite : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct SingularMetric : Error {
    using Error::Error;
};
struct DegeneratePlane : Error {
    using Error::Error;
};
struct IndexOutOfRange : Error {
    using Error::Error;
};
struct EqualIndices : Error {
    using Error::Error;
};
struct UnsupportedDimension : Error {
    using Error::Error;
};
struct IllConditioned : Error {
    using Error::Error;
};
struct NotInvariant : Error {
    using Error::Error;
};
struct LeftManifold : Error {
    using Error::Error;
};
struct SingularMatrix : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

inline void require_same_dim(int a, int b, const char* where) {
    if (a != b)
        throw DimensionMismatch(std::string(where) + ": dimensions " + std::to_string(a) +
                                " and " + std::to_string(b) + " do not match");
}

}  // namespace statgeo
