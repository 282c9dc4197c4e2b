#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace latlab {

// Everything in this project lives in dimension 2 or 3, so the dense types
// are fixed-capacity: no heap traffic in the enumeration loops.
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 3, 3>;
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;
using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateBasis : Error {
    explicit DegenerateBasis(const std::string& what) : Error(what) {}
};
struct EqualRoots : Error {
    explicit EqualRoots(const std::string& what) : Error(what) {}
};
struct BallTooLarge : Error {
    explicit BallTooLarge(const std::string& what) : Error(what) {}
};
struct EmptyBall : Error {
    explicit EmptyBall(const std::string& what) : Error(what) {}
};
struct NumZero : Error {
    explicit NumZero(const std::string& what) : Error(what) {}
};
struct NotUnimodular : Error {
    explicit NotUnimodular(const std::string& what) : Error(what) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};
struct BadDensity : Error {
    explicit BadDensity(const std::string& what) : Error(what) {}
};
struct CapExceeded : Error {
    explicit CapExceeded(const std::string& what) : Error(what) {}
};
struct IoError : Error {
    explicit IoError(const std::string& what) : Error(what) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace latlab
