#pragma once

#include <stdexcept>
#include <string>

namespace hyperp {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

/// All known digits of a sum cancelled: the valuation of the result cannot
/// be determined from the operands' precision. `known_modulus_exp` is the
/// exponent m such that the result is known to be ≡ 0 mod p^m.
struct CancellationBeyondPrecision : Error {
    long known_modulus_exp;
    explicit CancellationBeyondPrecision(long m)
        : Error("cancellation beyond precision (value ≡ 0 mod p^" + std::to_string(m) + ")"),
          known_modulus_exp(m) {}
};

struct InsufficientPrecision : Error {
    explicit InsufficientPrecision(const std::string& what) : Error("insufficient precision: " + what) {}
};

struct MalformedLiteral : Error {
    explicit MalformedLiteral(const std::string& text) : Error("malformed literal: " + text) {}
};

struct PointsOutsideBall : Error {
    PointsOutsideBall() : Error("point lies outside the base ball") {}
};

struct CoincidentPoints : Error {
    CoincidentPoints() : Error("points coincide") {}
};

struct IndistinguishablePoints : Error {
    IndistinguishablePoints() : Error("points are equal within tracked precision") {}
};

struct DegenerateConstant : Error {
    DegenerateConstant() : Error("constant map induces no ball image") {}
};

struct ZeroPolynomial : Error {
    ZeroPolynomial() : Error("operation undefined for the zero polynomial") {}
};

struct NotInvertibleAtOrigin : Error {
    NotInvertibleAtOrigin() : Error("series inverse requires f(0) = 0 and f'(0) a unit") {}
};

/// Thrown by cross-ratio preservation checks when the map collides on the
/// given quadruple, i.e. the image cross-ratio is undefined.
struct ImageCollision : Error {
    ImageCollision() : Error("map collides on the quadruple; image cross-ratio undefined") {}
};

struct NotInjectiveOnBall : Error {
    NotInjectiveOnBall() : Error("reduced map does not have degree 1; not injective on the unit ball") {}
};

struct FractionalExponent : Error {
    FractionalExponent() : Error("radius exponent is not an integer; not realizable over Q_p") {}
};

struct DomainNotLatticeCompatible : Error {
    DomainNotLatticeCompatible() : Error("domain is not compatible with the integer residue lattice") {}
};

}  // namespace hyperp
