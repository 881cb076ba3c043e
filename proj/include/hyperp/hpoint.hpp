#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperp/padic.hpp"

namespace hyperp {

/// A point of the p-adic hyperbolic space: the closed ball B(w, p^r)
/// given by a center w in Q_p and the exact radius exponent r. Two pairs
/// represent the same point iff the radii agree and the centers differ by
/// at most the radius; equality compares canonical forms.
class HPoint {
public:
    HPoint(PadicNumber center, RadiusExp rexp);

    long prime() const { return center_.prime(); }
    const PadicNumber& center() const { return center_; }
    const RadiusExp& rexp() const { return rexp_; }

    /// Canonical representative: center digits at base-p positions >= ceil(-r)
    /// zeroed, giving the smallest representative.
    HPoint canonical() const;
    bool same_point(const HPoint& o) const;
    friend bool operator==(const HPoint& a, const HPoint& b) { return a.same_point(b); }
    friend bool operator!=(const HPoint& a, const HPoint& b) { return !a.same_point(b); }

    /// |z - w| <= p^r, exact.
    bool contains_value(const PadicNumber& z) const;
    /// Ball containment: o's ball inside this ball.
    bool contains_ball(const HPoint& o) const;

    std::string str() const;  // "center;rexp"
    static HPoint parse(long p, std::string_view text);

private:
    PadicNumber center_;
    RadiusExp rexp_;
};

/// Hyperbolic distance 2 max{r, r', log_p|w - w'|} - r - r'.
RadiusExp distance(const HPoint& P, const HPoint& Q);

/// Smallest ball containing both: (w_P, max{r_P, r_Q, log_p|w_P - w_Q|}).
HPoint join(const HPoint& P, const HPoint& Q);

/// Tree median of three points (deepest of the three pairwise joins).
HPoint median(const HPoint& P, const HPoint& Q, const HPoint& S);

/// Meet point S_{x,y}: the smallest ball containing the two field points.
HPoint meet_point(const PadicNumber& x, const PadicNumber& y);

/// The point on the geodesic segment [S, P] at distance t from S.
HPoint point_on_segment(const HPoint& P, const HPoint& S, const RadiusExp& t);

/// log_p|x - y| recovered geometrically as r_S - d(S_{x,y}, S); x, y must
/// lie in the ball of S.
RadiusExp distance_to_norm(const PadicNumber& x, const PadicNumber& y, const HPoint& S);

// Generator actions of the homography group.
HPoint act_translate(const PadicNumber& t, const HPoint& P);
HPoint act_scale(const PadicNumber& lambda, const HPoint& P);
HPoint act_invert(const HPoint& P);

/// A point of P^1(Q_p): a field value or the point at infinity.
class ProjPoint {
public:
    static ProjPoint infinity(long p) { return ProjPoint(p, std::nullopt); }
    static ProjPoint of(PadicNumber z) {
        long p = z.prime();
        return ProjPoint(p, std::move(z));
    }
    long prime() const { return p_; }
    bool is_infinity() const { return !value_.has_value(); }
    const PadicNumber& value() const;

private:
    ProjPoint(long p, std::optional<PadicNumber> v) : p_(p), value_(std::move(v)) {}
    long p_;
    std::optional<PadicNumber> value_;
};

/// An invertible 2x2 matrix over Q_p up to scale, acting on P^1 and on H_p.
class Homography {
public:
    Homography(PadicNumber a, PadicNumber b, PadicNumber c, PadicNumber d);
    static Homography identity(long p);
    static Homography translation(const PadicNumber& t);
    static Homography scaling(const PadicNumber& lambda);
    static Homography inversion(long p);

    long prime() const { return a_.prime(); }
    const PadicNumber& a() const { return a_; }
    const PadicNumber& b() const { return b_; }
    const PadicNumber& c() const { return c_; }
    const PadicNumber& d() const { return d_; }
    PadicNumber determinant() const;

    Homography compose(const Homography& inner) const;  // this after inner
    Homography inverse() const;

    ProjPoint apply(const ProjPoint& z) const;
    PadicNumber apply(const PadicNumber& z) const;  // requires a finite image

private:
    PadicNumber a_, b_, c_, d_;
};

/// Isometric action on H_p via the generator decomposition.
HPoint act(const Homography& phi, const HPoint& P);

/// An affine map sending P (integer radius exponent required) to the Gauss
/// point (0, 0).
Homography to_gauss_map(const HPoint& P);

/// Extension of the residue reduction to P^1: points outside the unit ball
/// (and the point at infinity) project to the residue point at infinity.
ResidueElement project_to_residue_sphere(const ProjPoint& z);
ResidueElement project_to_residue_sphere(const PadicNumber& z);

/// A closed ball minus finitely many open balls.
struct OpenBall {
    PadicNumber center;
    RadiusExp rexp;
};

class Affinoid {
public:
    Affinoid(HPoint outer, std::vector<OpenBall> removed);
    static Affinoid closed_ball(HPoint outer) { return Affinoid(std::move(outer), {}); }
    /// The unit circle {|z| = 1}: closed unit ball minus the open unit ball.
    static Affinoid unit_circle(long p);

    long prime() const { return outer_.prime(); }
    const HPoint& outer() const { return outer_; }
    const std::vector<OpenBall>& removed() const { return removed_; }

    bool contains(const PadicNumber& z) const;

private:
    HPoint outer_;
    std::vector<OpenBall> removed_;
};

/// Convex hull of finitely many field points together with the base point S:
/// internal vertices are S and all pairwise meet points, each input value
/// hangs as a leaf under the smallest vertex containing it. Parent links
/// point toward S; edge lengths are hyperbolic distances.
struct HullTree {
    struct Vertex {
        HPoint point;
        long parent;          // index into vertices, -1 for S
        RadiusExp edge_length;  // to parent (0 for S)
    };
    struct Leaf {
        PadicNumber value;
        long parent;  // index into vertices
    };
    std::vector<Vertex> vertices;  // vertices[0] = S
    std::vector<Leaf> leaves;
};

HullTree hull(const std::vector<PadicNumber>& points, const HPoint& S);

}  // namespace hyperp
