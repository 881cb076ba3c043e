#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

#include "hyperp/errors.hpp"

namespace hyperp {

/// Exact base-p logarithm of a length: a radius p^q is stored as the
/// rational q. All radius/distance arithmetic is exact.
using RadiusExp = mpq_class;

/// Valuation extended with +infinity (the valuation of zero).
struct ExtInt {
    bool infinite = false;
    long value = 0;

    static ExtInt inf() { return ExtInt{true, 0}; }
    static ExtInt of(long v) { return ExtInt{false, v}; }

    ExtInt operator+(const ExtInt& o) const {
        if (infinite || o.infinite) return inf();
        return of(value + o.value);
    }
    friend bool operator==(const ExtInt& a, const ExtInt& b) {
        if (a.infinite != b.infinite) return false;
        return a.infinite || a.value == b.value;
    }
    friend bool operator!=(const ExtInt& a, const ExtInt& b) { return !(a == b); }
    /// +infinity compares greater than every finite value.
    friend bool operator<(const ExtInt& a, const ExtInt& b) {
        if (a.infinite) return false;
        if (b.infinite) return true;
        return a.value < b.value;
    }
    std::string str() const { return infinite ? "+inf" : std::to_string(value); }
};

/// An element of F_p, or the point at infinity of the residue sphere P^1(F_p).
class ResidueElement {
public:
    static ResidueElement finite(long p, long value);
    static ResidueElement infinity(long p);

    long prime() const { return p_; }
    bool is_infinity() const { return infinite_; }
    long value() const;  // requires finite

    ResidueElement operator+(const ResidueElement& o) const;
    ResidueElement operator*(const ResidueElement& o) const;
    friend bool operator==(const ResidueElement& a, const ResidueElement& b) {
        return a.p_ == b.p_ && a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend bool operator!=(const ResidueElement& a, const ResidueElement& b) { return !(a == b); }

    std::string str() const;

private:
    ResidueElement(long p, long value, bool inf) : p_(p), value_(value), infinite_(inf) {}
    long p_;
    long value_;
    bool infinite_;
};

/// An element of Q_p. Exact rationals are carried exactly; values read from
/// "x + O(p^m)" literals (or derived from them) track an absolute precision:
/// the number p^v * u is known modulo p^{v+k}, u a unit with k significant
/// base-p digits. Arithmetic mixing exact and tracked values follows the
/// usual interval rules; a sum whose known digits all cancel throws
/// CancellationBeyondPrecision instead of pretending to know its valuation.
/// Zero is always exact.
class PadicNumber {
public:
    static PadicNumber zero(long p);
    static PadicNumber from_integer(long p, const mpz_class& n);
    static PadicNumber from_integer(long p, long n) { return from_integer(p, mpz_class(n)); }
    static PadicNumber from_rational(long p, const mpq_class& q);
    /// Value known only modulo p^{abs_prec} (must not be ≡ 0 mod p^{abs_prec}).
    static PadicNumber approximate(long p, const mpq_class& value, long abs_prec);

    long prime() const { return p_; }
    bool is_zero() const { return kind_ == Kind::Zero; }
    bool exact() const { return kind_ != Kind::Approx; }

    /// The exact rational value; requires exact().
    const mpq_class& rational() const;
    /// The tracked representative (equals rational() when exact).
    const mpq_class& representative() const { return value_; }

    ExtInt valuation() const;
    long finite_valuation() const;  // requires nonzero
    /// Number of significant digits of the unit part (k); requires inexact.
    long precision_digits() const;
    /// v + k for tracked values; meaningless for exact ones.
    long known_modulus_exp() const;

    /// Unit part modulo p^digits, an integer in [1, p^digits); requires
    /// nonzero, and digits ≤ k for tracked values.
    mpz_class unit_mod(long digits) const;

    PadicNumber operator-() const;
    PadicNumber operator+(const PadicNumber& o) const;
    PadicNumber operator-(const PadicNumber& o) const;
    PadicNumber operator*(const PadicNumber& o) const;
    PadicNumber inverse() const;
    PadicNumber operator/(const PadicNumber& o) const;

    /// Reduction to the residue sphere: unit part mod p for v = 0, 0 for
    /// v > 0, the point at infinity for v < 0.
    ResidueElement residue() const;

    /// Exact equality; requires both operands exact.
    bool exact_equals(const PadicNumber& o) const;

    /// True when a - b is zero or indistinguishable from zero at the
    /// operands' precision.
    static bool indistinguishable(const PadicNumber& a, const PadicNumber& b);

    /// Literal in the input grammar ("4/3", "-2", "4/3 + O(3^5)").
    std::string to_literal() const;
    /// Display form "p^v * u mod p^m"; `digits` bounds u's digits for exact
    /// values.
    std::string to_padic_string(long digits = 64) const;

    /// Parses the grammar INT | INT/INT | RATIONAL + O(p^m).
    static PadicNumber parse(long p, std::string_view text);

private:
    enum class Kind { Zero, Exact, Approx };

    PadicNumber(long p, Kind kind) : p_(p), kind_(kind) {}

    static PadicNumber make_exact(long p, mpq_class value);
    /// Truncates a nonzero exact rational to the representative known mod
    /// p^{abs_prec}; throws CancellationBeyondPrecision if nothing survives.
    static PadicNumber truncate(long p, const mpq_class& value, long abs_prec);

    long p_;
    Kind kind_;
    mpq_class value_;  // Zero: 0; Exact: the value; Approx: p^v * u with u in [1, p^k)
    long v_ = 0;       // valuation (nonzero values)
    long k_ = 0;       // significant digits (Approx only)
};

// ---- small exact-arithmetic helpers shared across modules ----

/// Throws MalformedLiteral unless p is a prime ≥ 2.
void require_prime(long p);

/// p-adic valuation of a nonzero integer.
long int_valuation(const mpz_class& n, long p);
/// p-adic valuation of a nonzero rational.
long rational_valuation(const mpq_class& q, long p);

mpz_class pow_p(long p, long e);  // p^e, e ≥ 0

/// ceil of an exact rational.
mpz_class ceil_q(const mpq_class& q);

/// Parses "a" or "a/b" into an exact rational; throws MalformedLiteral.
mpq_class parse_rational(std::string_view text);

}  // namespace hyperp
