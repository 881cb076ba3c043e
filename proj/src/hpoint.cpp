#include "hyperp/hpoint.hpp"

#include <algorithm>

namespace hyperp {

namespace {

long to_long(const mpz_class& z) {
    if (!z.fits_slong_p()) throw Error("exponent out of range");
    return z.get_si();
}

/// log_p|a - b| classified: a finite valuation, -infinity (equal values), or
/// only a bound v(a-b) >= v from tracked precision.
struct LogNorm {
    enum class Kind { Finite, NegInf, LowerBoundV } kind;
    long v;
};

LogNorm diff_valuation(const PadicNumber& a, const PadicNumber& b) {
    try {
        PadicNumber d = a - b;
        if (d.is_zero()) return {LogNorm::Kind::NegInf, 0};
        return {LogNorm::Kind::Finite, d.finite_valuation()};
    } catch (const CancellationBeyondPrecision& e) {
        return {LogNorm::Kind::LowerBoundV, e.known_modulus_exp};
    }
}

void require_same_prime(long a, long b) {
    if (a != b) throw Error("mixed primes");
}

}  // namespace

HPoint::HPoint(PadicNumber center, RadiusExp rexp) : center_(std::move(center)), rexp_(std::move(rexp)) {}

HPoint HPoint::canonical() const {
    long p = prime();
    if (center_.is_zero()) return *this;
    long cutoff = to_long(ceil_q(mpq_class(-rexp_)));
    long v = center_.finite_valuation();
    if (v >= cutoff) return HPoint(PadicNumber::zero(p), rexp_);
    long digits = cutoff - v;
    if (!center_.exact() && center_.precision_digits() < digits)
        throw InsufficientPrecision("center digits near the radius cutoff are unknown");
    mpz_class u = center_.unit_mod(digits);
    mpq_class w = (v >= 0) ? mpq_class(u * pow_p(p, v)) : mpq_class(u, pow_p(p, -v));
    w.canonicalize();
    return HPoint(PadicNumber::from_rational(p, w), rexp_);
}

bool HPoint::same_point(const HPoint& o) const {
    if (prime() != o.prime() || rexp_ != o.rexp_) return false;
    LogNorm ln = diff_valuation(center_, o.center_);
    switch (ln.kind) {
        case LogNorm::Kind::NegInf:
            return true;
        case LogNorm::Kind::Finite:
            return mpq_class(-ln.v) <= rexp_;
        case LogNorm::Kind::LowerBoundV:
            if (mpq_class(-ln.v) <= rexp_) return true;
            throw InsufficientPrecision("cannot compare centers at this radius");
    }
    return false;
}

bool HPoint::contains_value(const PadicNumber& z) const {
    LogNorm ln = diff_valuation(z, center_);
    switch (ln.kind) {
        case LogNorm::Kind::NegInf:
            return true;
        case LogNorm::Kind::Finite:
            return mpq_class(-ln.v) <= rexp_;
        case LogNorm::Kind::LowerBoundV:
            if (mpq_class(-ln.v) <= rexp_) return true;
            throw InsufficientPrecision("cannot decide ball membership");
    }
    return false;
}

bool HPoint::contains_ball(const HPoint& o) const {
    return o.rexp_ <= rexp_ && contains_value(o.center_);
}

std::string HPoint::str() const { return center_.to_literal() + ";" + rexp_.get_str(); }

HPoint HPoint::parse(long p, std::string_view text) {
    auto sep = text.find(';');
    if (sep == std::string_view::npos) throw MalformedLiteral(std::string(text) + " (expected center;rexp)");
    PadicNumber center = PadicNumber::parse(p, text.substr(0, sep));
    mpq_class r = parse_rational(text.substr(sep + 1));
    return HPoint(std::move(center), std::move(r));
}

RadiusExp distance(const HPoint& P, const HPoint& Q) {
    require_same_prime(P.prime(), Q.prime());
    RadiusExp base = std::max(P.rexp(), Q.rexp());
    LogNorm ln = diff_valuation(P.center(), Q.center());
    RadiusExp m = base;
    if (ln.kind == LogNorm::Kind::Finite) {
        m = std::max(base, RadiusExp(-ln.v));
    } else if (ln.kind == LogNorm::Kind::LowerBoundV && RadiusExp(-ln.v) > base) {
        throw InsufficientPrecision("center difference dominates but its valuation is unknown");
    }
    return 2 * m - P.rexp() - Q.rexp();
}

HPoint join(const HPoint& P, const HPoint& Q) {
    require_same_prime(P.prime(), Q.prime());
    RadiusExp base = std::max(P.rexp(), Q.rexp());
    LogNorm ln = diff_valuation(P.center(), Q.center());
    RadiusExp m = base;
    if (ln.kind == LogNorm::Kind::Finite) {
        m = std::max(base, RadiusExp(-ln.v));
    } else if (ln.kind == LogNorm::Kind::LowerBoundV && RadiusExp(-ln.v) > base) {
        throw InsufficientPrecision("center difference dominates but its valuation is unknown");
    }
    return HPoint(P.center(), m);
}

HPoint median(const HPoint& P, const HPoint& Q, const HPoint& S) {
    HPoint j1 = join(P, Q);
    HPoint j2 = join(P, S);
    HPoint j3 = join(Q, S);
    const HPoint* best = &j1;
    if (j2.rexp() < best->rexp()) best = &j2;
    if (j3.rexp() < best->rexp()) best = &j3;
    return *best;
}

HPoint meet_point(const PadicNumber& x, const PadicNumber& y) {
    PadicNumber d = x - y;
    if (d.is_zero()) throw CoincidentPoints();
    return HPoint(x, RadiusExp(-d.finite_valuation()));
}

HPoint point_on_segment(const HPoint& P, const HPoint& S, const RadiusExp& t) {
    if (t < 0) throw Error("negative arc length");
    HPoint j = join(P, S);
    RadiusExp up = j.rexp() - S.rexp();
    RadiusExp total = up + (j.rexp() - P.rexp());
    if (t > total) throw Error("arc length exceeds the segment");
    if (t <= up) return HPoint(S.center(), S.rexp() + t);
    return HPoint(P.center(), j.rexp() - (t - up));
}

RadiusExp distance_to_norm(const PadicNumber& x, const PadicNumber& y, const HPoint& S) {
    if (!S.contains_value(x) || !S.contains_value(y)) throw PointsOutsideBall();
    HPoint meet = meet_point(x, y);
    return S.rexp() - distance(meet, S);
}

HPoint act_translate(const PadicNumber& t, const HPoint& P) {
    return HPoint(P.center() + t, P.rexp());
}

HPoint act_scale(const PadicNumber& lambda, const HPoint& P) {
    if (lambda.is_zero()) throw DivisionByZero();
    return HPoint(lambda * P.center(), P.rexp() - lambda.finite_valuation());
}

HPoint act_invert(const HPoint& P) {
    // The image ball of z -> 1/z; constant on equivalence classes, and equal
    // to the paper's (1/w, -r) on representatives with |w| = p^r.
    if (P.center().is_zero()) return HPoint(P.center(), -P.rexp());
    long v = P.center().finite_valuation();
    if (RadiusExp(-v) > P.rexp())
        return HPoint(P.center().inverse(), P.rexp() + 2 * RadiusExp(v));
    return HPoint(PadicNumber::zero(P.prime()), -P.rexp());
}

// ---- ProjPoint / Homography ----

const PadicNumber& ProjPoint::value() const {
    if (!value_) throw Error("point at infinity has no field value");
    return *value_;
}

Homography::Homography(PadicNumber a, PadicNumber b, PadicNumber c, PadicNumber d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    PadicNumber det = determinant();
    if (det.is_zero()) throw Error("homography matrix is singular");
}

PadicNumber Homography::determinant() const {
    try {
        return a_ * d_ - b_ * c_;
    } catch (const CancellationBeyondPrecision&) {
        throw InsufficientPrecision("determinant valuation is indeterminate");
    }
}

Homography Homography::identity(long p) {
    PadicNumber one = PadicNumber::from_integer(p, 1);
    PadicNumber z = PadicNumber::zero(p);
    return Homography(one, z, z, one);
}

Homography Homography::translation(const PadicNumber& t) {
    long p = t.prime();
    PadicNumber one = PadicNumber::from_integer(p, 1);
    return Homography(one, t, PadicNumber::zero(p), one);
}

Homography Homography::scaling(const PadicNumber& lambda) {
    if (lambda.is_zero()) throw DivisionByZero();
    long p = lambda.prime();
    PadicNumber z = PadicNumber::zero(p);
    return Homography(lambda, z, z, PadicNumber::from_integer(p, 1));
}

Homography Homography::inversion(long p) {
    PadicNumber one = PadicNumber::from_integer(p, 1);
    PadicNumber z = PadicNumber::zero(p);
    return Homography(z, one, one, z);
}

Homography Homography::compose(const Homography& inner) const {
    return Homography(a_ * inner.a_ + b_ * inner.c_, a_ * inner.b_ + b_ * inner.d_,
                      c_ * inner.a_ + d_ * inner.c_, c_ * inner.b_ + d_ * inner.d_);
}

Homography Homography::inverse() const { return Homography(d_, -b_, -c_, a_); }

ProjPoint Homography::apply(const ProjPoint& z) const {
    if (z.is_infinity()) {
        if (c_.is_zero()) return ProjPoint::infinity(prime());
        return ProjPoint::of(a_ / c_);
    }
    PadicNumber den = c_ * z.value() + d_;
    if (den.is_zero()) return ProjPoint::infinity(prime());
    return ProjPoint::of((a_ * z.value() + b_) / den);
}

PadicNumber Homography::apply(const PadicNumber& z) const {
    ProjPoint im = apply(ProjPoint::of(z));
    if (im.is_infinity()) throw DivisionByZero();
    return im.value();
}

HPoint act(const Homography& phi, const HPoint& P) {
    require_same_prime(phi.prime(), P.prime());
    if (phi.c().is_zero()) {
        // z -> (a z + b)/d
        return act_translate(phi.b() / phi.d(), act_scale(phi.a() / phi.d(), P));
    }
    // z -> a/c + ((bc - ad)/c^2) * 1/(z + d/c)
    HPoint t1 = act_translate(phi.d() / phi.c(), P);
    HPoint t2 = act_invert(t1);
    PadicNumber factor = (phi.b() * phi.c() - phi.a() * phi.d()) / (phi.c() * phi.c());
    HPoint t3 = act_scale(factor, t2);
    return act_translate(phi.a() / phi.c(), t3);
}

Homography to_gauss_map(const HPoint& P) {
    if (P.rexp().get_den() != 1) throw FractionalExponent();
    long r = to_long(mpz_class(P.rexp().get_num()));
    long p = P.prime();
    mpq_class lambda = (r >= 0) ? mpq_class(pow_p(p, r)) : mpq_class(1, pow_p(p, -r));
    Homography scale = Homography::scaling(PadicNumber::from_rational(p, lambda));
    Homography shift = Homography::translation(-P.center());
    return scale.compose(shift);
}

ResidueElement project_to_residue_sphere(const ProjPoint& z) {
    if (z.is_infinity()) return ResidueElement::infinity(z.prime());
    return z.value().residue();
}

ResidueElement project_to_residue_sphere(const PadicNumber& z) { return z.residue(); }

// ---- Affinoid ----

Affinoid::Affinoid(HPoint outer, std::vector<OpenBall> removed) : outer_(std::move(outer)) {
    for (auto& b : removed) {
        require_same_prime(outer_.prime(), b.center.prime());
        if (!outer_.contains_value(b.center)) throw PointsOutsideBall();
    }
    // drop open balls nested inside another removed ball
    for (size_t i = 0; i < removed.size(); ++i) {
        bool nested = false;
        for (size_t j = 0; j < removed.size() && !nested; ++j) {
            if (i == j) continue;
            if (removed[i].rexp > removed[j].rexp) continue;
            if (removed[i].rexp == removed[j].rexp && i < j) continue;  // keep one of equals
            LogNorm ln = diff_valuation(removed[i].center, removed[j].center);
            if (ln.kind == LogNorm::Kind::NegInf)
                nested = true;
            else if (ln.kind == LogNorm::Kind::Finite)
                nested = RadiusExp(-ln.v) < removed[j].rexp;
            else
                throw InsufficientPrecision("cannot normalize removed balls");
        }
        if (!nested) removed_.push_back(removed[i]);
    }
}

Affinoid Affinoid::unit_circle(long p) {
    PadicNumber zero = PadicNumber::zero(p);
    HPoint outer(zero, RadiusExp(0));
    return Affinoid(outer, {OpenBall{zero, RadiusExp(0)}});
}

bool Affinoid::contains(const PadicNumber& z) const {
    if (!outer_.contains_value(z)) return false;
    for (const auto& b : removed_) {
        LogNorm ln = diff_valuation(z, b.center);
        if (ln.kind == LogNorm::Kind::NegInf) return false;  // at the removed center
        if (ln.kind == LogNorm::Kind::Finite) {
            if (RadiusExp(-ln.v) < b.rexp) return false;
        } else {
            if (RadiusExp(-ln.v) < b.rexp) return false;  // bound already inside
            throw InsufficientPrecision("cannot decide membership in a removed ball");
        }
    }
    return true;
}

// ---- hull ----

HullTree hull(const std::vector<PadicNumber>& points, const HPoint& S) {
    if (points.empty()) throw Error("hull of an empty point set");
    std::vector<PadicNumber> pts;
    for (const auto& z : points) {
        require_same_prime(z.prime(), S.prime());
        if (!S.contains_value(z)) throw PointsOutsideBall();
        bool dup = false;
        for (const auto& w : pts)
            if (PadicNumber::indistinguishable(z, w)) dup = true;
        if (!dup) pts.push_back(z);
    }

    std::vector<HPoint> verts;
    verts.push_back(S);
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = i + 1; j < pts.size(); ++j) {
            HPoint m = meet_point(pts[i], pts[j]);
            bool dup = false;
            for (const auto& v : verts)
                if (v.same_point(m)) dup = true;
            if (!dup) verts.push_back(m);
        }
    }

    HullTree tree;
    for (size_t i = 0; i < verts.size(); ++i) {
        long parent = -1;
        if (i > 0) {
            const RadiusExp* best = nullptr;
            for (size_t j = 0; j < verts.size(); ++j) {
                if (j == i || verts[i].same_point(verts[j])) continue;
                if (!verts[j].contains_ball(verts[i])) continue;
                if (!best || verts[j].rexp() < *best) {
                    best = &verts[j].rexp();
                    parent = static_cast<long>(j);
                }
            }
        }
        RadiusExp len = (parent < 0) ? RadiusExp(0) : distance(verts[i], verts[parent]);
        tree.vertices.push_back({verts[i], parent, len});
    }
    for (const auto& z : pts) {
        long parent = 0;
        const RadiusExp* best = &verts[0].rexp();
        for (size_t j = 1; j < verts.size(); ++j) {
            if (!verts[j].contains_value(z)) continue;
            if (verts[j].rexp() < *best) {
                best = &verts[j].rexp();
                parent = static_cast<long>(j);
            }
        }
        tree.leaves.push_back({z, parent});
    }
    return tree;
}

}  // namespace hyperp
