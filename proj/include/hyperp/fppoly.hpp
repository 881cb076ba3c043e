#pragma once

#include <string>
#include <vector>

#include "hyperp/padic.hpp"

namespace hyperp {

/// Dense polynomial over F_p. Used for reductions of maps modulo the
/// maximal ideal; coefficients low-to-high, trailing zeros trimmed.
class FpPoly {
public:
    FpPoly(long p, std::vector<long> coeffs);
    static FpPoly zero(long p) { return FpPoly(p, {}); }
    static FpPoly constant(long p, long c) { return FpPoly(p, {c}); }

    long prime() const { return p_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    long coeff(long i) const;
    const std::vector<long>& coeffs() const { return coeffs_; }

    long eval(long x) const;
    FpPoly operator+(const FpPoly& o) const;
    FpPoly operator-(const FpPoly& o) const;
    FpPoly operator*(const FpPoly& o) const;
    FpPoly compose(const FpPoly& inner) const;  // this(inner(z))
    /// Euclidean division; returns {quotient, remainder}.
    std::pair<FpPoly, FpPoly> divmod(const FpPoly& divisor) const;
    FpPoly monic() const;

    friend bool operator==(const FpPoly& a, const FpPoly& b) {
        return a.p_ == b.p_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const FpPoly& a, const FpPoly& b) { return !(a == b); }

    /// "1 + 2z + z^2" (low-to-high, caret exponents); "0" when zero.
    std::string str() const;

private:
    long p_;
    std::vector<long> coeffs_;
};

/// Monic gcd over F_p[z].
FpPoly fp_gcd(FpPoly a, FpPoly b);

long fp_inverse(long a, long p);

}  // namespace hyperp
