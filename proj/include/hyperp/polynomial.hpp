#pragma once

#include <string>
#include <vector>

#include "hyperp/fppoly.hpp"
#include "hyperp/hpoint.hpp"
#include "hyperp/padic.hpp"

namespace hyperp {

/// Dense polynomial over Q_p, coefficients low-to-high, trailing zeros
/// trimmed.
class Polynomial {
public:
    Polynomial(long p, std::vector<PadicNumber> coeffs);
    static Polynomial zero(long p) { return Polynomial(p, {}); }
    static Polynomial constant(long p, PadicNumber c);
    static Polynomial identity(long p);  // z
    static Polynomial from_integers(long p, const std::vector<long>& coeffs);

    /// Comma-separated p-adic literals (low-to-high), or a symbolic
    /// integer-coefficient expression like "z+z^2" or "2z^3 - z + 7".
    static Polynomial parse(long p, std::string_view text);

    long prime() const { return p_; }
    bool is_zero() const { return coeffs_.empty(); }
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    PadicNumber coeff(long i) const;
    const std::vector<PadicNumber>& coeffs() const { return coeffs_; }

    PadicNumber eval(const PadicNumber& x) const;
    Polynomial derivative() const;
    Polynomial compose(const Polynomial& inner) const;  // this(inner(z))
    /// Coefficients of h -> f(a + h).
    Polynomial taylor_shift(const PadicNumber& a) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scale(const PadicNumber& c) const;

    std::string str() const;  // symbolic when exact, else coefficient list

private:
    long p_;
    std::vector<PadicNumber> coeffs_;
};

/// Quotient of two polynomials; the denominator is nonzero and, when the
/// coefficients are exact, common factors are cancelled on construction.
class RationalMap {
public:
    RationalMap(Polynomial num, Polynomial den);
    RationalMap(Polynomial num);  // implicit: num / 1

    long prime() const { return num_.prime(); }
    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_polynomial() const { return den_.degree() == 0; }
    long degree() const { return std::max(num_.degree(), den_.degree()); }

    PadicNumber eval(const PadicNumber& x) const;  // throws DivisionByZero at poles
    RationalMap derivative() const;

private:
    Polynomial num_, den_;
};

/// Lower convex hull of (i, v(c_i)); slopes give root valuations (a segment
/// of slope s carries `length` roots of valuation -s), lengths count roots.
struct NewtonPolygon {
    struct Segment {
        mpq_class slope;
        long length;
    };
    std::vector<std::pair<long, long>> vertices;  // (index, valuation), left to right
    std::vector<Segment> segments;
    long order_at_zero;  // multiplicity of the root z = 0
};

NewtonPolygon newton_polygon(const Polynomial& f);

/// Number of roots (with multiplicity, over C_p) in the closed ball.
long count_zeros_in_ball(const Polynomial& f, const HPoint& ball);

/// log_p sup_{z in ball} |f(z)| = max_i (log_p|c'_i| + i r) after recentering.
RadiusExp gauss_norm_exp(const Polynomial& f, const HPoint& ball);

/// Image ball of a non-constant polynomial: (c'_0, max_{i>=1}(log_p|c'_i| + i r)).
HPoint induced_image(const Polynomial& f, const HPoint& P);

/// Reduction of a map modulo the maximal ideal after joint max-norm-1
/// normalization of numerator and denominator, with common factors over F_p
/// cancelled. Classification: trivial (constant), good (degree preserved),
/// nontrivial otherwise.
struct ReductionReport {
    enum class Label { Trivial, NonTrivial, Good };
    FpPoly num, den;  // after cancellation; den == 1 for polynomial input
    bool constant;
    bool degree_preserved;
    Label label() const {
        if (constant) return Label::Trivial;
        return degree_preserved ? Label::Good : Label::NonTrivial;
    }
    std::string label_str() const {
        switch (label()) {
            case Label::Trivial: return "trivial";
            case Label::Good: return "good";
            default: return "nontrivial";
        }
    }
    std::string reduced_str() const;
};

ReductionReport reduce_polynomial(const Polynomial& f);
ReductionReport reduce_rational_map(const RationalMap& R);

/// Degree-N truncation of the inverse series g with g(f(z)) = z + O(z^{N+1});
/// requires f(0) = 0 and f'(0) a unit.
Polynomial lagrange_inverse_truncation(const Polynomial& f, long N);

}  // namespace hyperp
