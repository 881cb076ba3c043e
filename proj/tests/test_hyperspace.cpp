#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hyperp/hpoint.hpp"

using namespace hyperp;

namespace {

PadicNumber qp(long p, long num, long den = 1) {
    return PadicNumber::from_rational(p, mpq_class(num, den));
}

HPoint hp(long p, long cnum, long cden, long rnum, long rden = 1) {
    return HPoint(qp(p, cnum, cden), RadiusExp(rnum, rden));
}

PadicNumber random_qp(long p, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> unit(1, 40);
    std::uniform_int_distribution<long> expo(-4, 4);
    long a = unit(rng), b = unit(rng);
    while (a % p == 0) ++a;
    while (b % p == 0) ++b;
    long e = expo(rng);
    mpq_class q(a, b);
    q.canonicalize();
    if (e >= 0)
        q *= mpq_class(pow_p(p, e));
    else
        q /= mpq_class(pow_p(p, -e));
    if (rng() & 1) q = -q;
    return PadicNumber::from_rational(p, q);
}

RadiusExp random_rexp(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-24, 24);
    std::uniform_int_distribution<long> den(1, 4);
    RadiusExp r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

HPoint random_hpoint(long p, std::mt19937_64& rng) {
    if ((rng() & 7) == 0) return HPoint(PadicNumber::zero(p), random_rexp(rng));
    return HPoint(random_qp(p, rng), random_rexp(rng));
}

Homography random_homography(long p, std::mt19937_64& rng) {
    while (true) {
        PadicNumber a = random_qp(p, rng), b = random_qp(p, rng);
        PadicNumber c = (rng() & 3) == 0 ? PadicNumber::zero(p) : random_qp(p, rng);
        PadicNumber d = random_qp(p, rng);
        PadicNumber det = a * d - b * c;
        if (!det.is_zero()) return Homography(a, b, c, d);
    }
}

// ---- lattice oracles (independent of the HPoint code paths) ----

long oracle_int_val(const mpz_class& n, long p, long cap) {
    if (n == 0) return cap;
    mpz_class m = n < 0 ? mpz_class(-n) : n;
    long v = 0;
    while (v < cap && m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

/// Members of the closed ball (c, p^r) among integer lifts mod p^M (integer
/// centers, integer r in [-M, 0]).
std::vector<long> oracle_ball(long p, long c, long r, long M) {
    mpz_class mod = pow_p(p, M);
    std::vector<long> out;
    for (long x = 0; x < mod.get_si(); ++x) {
        if (oracle_int_val(mpz_class(x - c), p, M) >= -r) out.push_back(x);
    }
    return out;
}

bool subset(const std::vector<long>& a, const std::vector<long>& b) {
    for (long x : a)
        if (std::find(b.begin(), b.end(), x) == b.end()) return false;
    return true;
}

}  // namespace

TEST_CASE("canonical representatives") {
    // p=3: (1, 0) is the unit ball, canonical center 0
    auto c1 = hp(3, 1, 1, 0).canonical();
    CHECK(c1.center().is_zero());
    CHECK(c1.rexp() == 0);

    auto c2 = hp(3, 0, 1, 2).canonical();
    CHECK(c2.center().is_zero());
    CHECK(c2.rexp() == 2);

    // p=3: (1+3, -1): the digit at position >= 1 is zeroed
    auto c3 = hp(3, 4, 1, -1).canonical();
    CHECK(c3.center().rational() == 1);

    CHECK(hp(3, 1, 1, 0).same_point(c1));
    // fractional exponent keeps digits at position <= floor(-r)
    auto c4 = HPoint(qp(3, 4), RadiusExp(-3, 2)).canonical();  // cutoff ceil(3/2) = 2
    CHECK(c4.center().rational() == 4);
    auto c5 = HPoint(qp(3, 10), RadiusExp(-3, 2)).canonical();
    CHECK(c5.center().rational() == 1);
}

TEST_CASE("distance formula") {
    CHECK(distance(hp(5, 0, 1, 0), hp(5, 0, 1, 1)) == 1);
    CHECK(distance(hp(5, 0, 1, -1), hp(5, 1, 1, -1)) == 2);

    // p=3: (0,-2) vs (9,-3): nested balls, distance |r - r'| = 1
    CHECK(distance(hp(3, 0, 1, -2), hp(3, 9, 1, -3)) == 1);
    // lattice oracle over Z/3^4: B(9, 3^-3) inside B(0, 3^-2), join = outer
    auto b1 = oracle_ball(3, 0, -2, 4);
    auto b2 = oracle_ball(3, 9, -3, 4);
    CHECK(subset(b2, b1));
    long join_r = -2;  // smallest ball containing both, by containment scan
    for (long r = -3; r <= 0; ++r) {
        if (subset(b2, oracle_ball(3, 0, r, 4)) && subset(b1, oracle_ball(3, 0, r, 4))) {
            join_r = r;
            break;
        }
    }
    CHECK(RadiusExp((join_r - -2) + (join_r - -3)) == distance(hp(3, 0, 1, -2), hp(3, 9, 1, -3)));
}

TEST_CASE("generator actions") {
    // translation by 5 at p=5 lands back on the Gauss point
    auto t = act_translate(qp(5, 5), hp(5, 0, 1, 0));
    CHECK(t.same_point(hp(5, 0, 1, 0)));

    auto s = act_scale(qp(3, 3), hp(3, 0, 1, 0));
    CHECK(s.same_point(hp(3, 0, 1, -1)));

    auto i1 = act_invert(hp(3, 1, 1, -1));
    CHECK(i1.same_point(hp(3, 1, 1, -1)));

    auto i2 = act_invert(hp(3, 0, 1, 2));
    CHECK(i2.same_point(hp(3, 0, 1, -2)));

    // p=3: invert (3, -3) -> (1/3, -1), cross-checked by the image-ball oracle
    auto i3 = act_invert(hp(3, 3, 1, -3));
    CHECK(i3.same_point(HPoint(qp(3, 1, 3), RadiusExp(-1))));
    {
        // sample z = 3 + h over v(h) >= 3 lifts mod 3^6 and bound the image spread
        long worst = 100;
        for (long j = 0; j < 27; ++j) {
            mpq_class z = 3 + 27 * j;
            if (z == 0) continue;
            mpq_class img = 1 / z - mpq_class(1, 3);
            if (img == 0) continue;
            long v = rational_valuation(img, 3);
            worst = std::min(worst, v);
        }
        CHECK(worst == 1);  // largest distance to 1/3 is 3^-1: the ball (1/3, -1)
    }
}

TEST_CASE("homography action by decomposition") {
    auto P = hp(3, 2, 1, -1);
    CHECK(act(Homography::identity(3), P).same_point(P));

    CHECK(act(Homography::inversion(3), hp(3, 1, 1, -1)).same_point(act_invert(hp(3, 1, 1, -1))));

    // phi(z) = (z+3)/3 maps (0,-1) to (1, 0)
    Homography phi(qp(3, 1), qp(3, 3), PadicNumber::zero(3), qp(3, 3));
    auto img = act(phi, hp(3, 0, 1, -1));
    CHECK(img.same_point(hp(3, 1, 1, 0)));
    {
        // image-ball sampling oracle: phi over lifts of (0, 3^-1) mod 3^5
        long worst = 100;
        bool all_in = true;
        for (long j = 1; j < 81; ++j) {
            mpq_class z = 3 * j;
            mpq_class w = (z + 3) / 3;
            mpq_class d = w - 1;
            if (d == 0) continue;
            long v = rational_valuation(d, 3);
            worst = std::min(worst, v);
            if (v < 0) all_in = false;
        }
        CHECK(all_in);        // every image is in the unit ball around 1
        CHECK(worst == 0);    // and the radius 3^0 is attained
    }
}

TEST_CASE("join") {
    CHECK(join(hp(3, 0, 1, -2), hp(3, 0, 1, -5)).same_point(hp(3, 0, 1, -2)));
    CHECK(join(hp(3, 0, 1, -3), hp(3, 1, 1, -3)).same_point(hp(3, 0, 1, 0)));

    auto j = join(hp(3, 3, 1, -4), hp(3, 6, 1, -4));
    CHECK(j.same_point(hp(3, 3, 1, -1)));
    // containment oracle: (3, -1) is the smallest lattice ball over both
    auto a = oracle_ball(3, 3, -4, 4), b = oracle_ball(3, 6, -4, 4);
    long found = 99;
    for (long r = -4; r <= 0; ++r) {
        auto cand = oracle_ball(3, 3, r, 4);
        if (subset(a, cand) && subset(b, cand)) {
            found = r;
            break;
        }
    }
    CHECK(RadiusExp(found) == j.rexp());
}

TEST_CASE("median") {
    auto P = hp(3, 0, 1, -2);
    CHECK(median(P, P, hp(3, 0, 1, 0)).same_point(P));

    CHECK(median(hp(3, 0, 1, -2), hp(3, 1, 1, -2), hp(3, 0, 1, 0)).same_point(hp(3, 0, 1, 0)));

    CHECK(median(hp(3, 3, 1, -4), hp(3, 6, 1, -4), hp(3, 0, 1, 0)).same_point(hp(3, 3, 1, -1)));
}

TEST_CASE("distance recovers the norm") {
    CHECK(distance_to_norm(qp(3, 0), qp(3, 3), hp(3, 0, 1, 0)) == -1);
    CHECK(rational_valuation(mpq_class(0 - 3), 3) == 1);

    CHECK(distance_to_norm(qp(5, 1), qp(5, 6), hp(5, 0, 1, 0)) == -1);

    // p=3, x=3, y=12, S=(0,1): meet at depth 3 below S
    auto meet = meet_point(qp(3, 3), qp(3, 12));
    CHECK(distance(meet, hp(3, 0, 1, 1)) == 3);
    CHECK(distance_to_norm(qp(3, 3), qp(3, 12), hp(3, 0, 1, 1)) == -2);

    CHECK_THROWS_AS(distance_to_norm(qp(3, 1), qp(3, 9), hp(3, 0, 1, -1)), PointsOutsideBall);
    CHECK_THROWS_AS(distance_to_norm(qp(3, 1), qp(3, 1), hp(3, 0, 1, 0)), CoincidentPoints);
}

TEST_CASE("projection to the residue sphere") {
    CHECK(project_to_residue_sphere(qp(3, 1, 3)).is_infinity());
    CHECK(project_to_residue_sphere(qp(3, 3)) == ResidueElement::finite(3, 0));
    CHECK(project_to_residue_sphere(qp(5, 7)) == ResidueElement::finite(5, 2));
    CHECK(project_to_residue_sphere(ProjPoint::infinity(3)).is_infinity());
}

TEST_CASE("hull trees") {
    auto S = hp(3, 0, 1, 0);

    // single point: the path (z, S] with just the base vertex
    auto t1 = hull({qp(3, 2)}, S);
    CHECK(t1.vertices.size() == 1);
    CHECK(t1.leaves.size() == 1);
    CHECK(t1.leaves[0].parent == 0);

    // {0, 3, 1}: leaves 0 and 3 under (0,-1), leaf 1 under S
    auto t2 = hull({qp(3, 0), qp(3, 3), qp(3, 1)}, S);
    REQUIRE(t2.vertices.size() == 2);
    CHECK(t2.vertices[0].point.same_point(S));
    CHECK(t2.vertices[1].point.same_point(hp(3, 0, 1, -1)));
    CHECK(t2.vertices[1].parent == 0);
    CHECK(t2.vertices[1].edge_length == 1);
    REQUIRE(t2.leaves.size() == 3);
    CHECK(t2.leaves[0].parent == 1);  // 0
    CHECK(t2.leaves[1].parent == 1);  // 3
    CHECK(t2.leaves[2].parent == 0);  // 1

    // two points: single branch vertex = meet
    auto t3 = hull({qp(3, 3), qp(3, 6)}, S);
    REQUIRE(t3.vertices.size() == 2);
    CHECK(t3.vertices[1].point.same_point(hp(3, 3, 1, -1)));

    // duplicates tolerated
    auto t4 = hull({qp(3, 2), qp(3, 2)}, S);
    CHECK(t4.leaves.size() == 1);

    CHECK_THROWS_AS(hull({qp(3, 1, 3)}, S), PointsOutsideBall);
}

TEST_CASE("metric axioms on random triples") {
    std::mt19937_64 rng(23);
    for (long p : {2L, 3L, 5L}) {
        for (int i = 0; i < 400; ++i) {
            auto P = random_hpoint(p, rng);
            auto Q = random_hpoint(p, rng);
            auto R = random_hpoint(p, rng);
            CHECK(distance(P, Q) == distance(Q, P));
            CHECK(distance(P, P) == 0);
            CHECK((distance(P, Q) == 0) == P.same_point(Q));
            CHECK(distance(P, R) <= distance(P, Q) + distance(Q, R));
            CHECK(distance(P, Q) >= 0);
        }
    }
}

TEST_CASE("two-case presentation collapses to the formula") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 500; ++i) {
        auto P = random_hpoint(3, rng);
        auto Q = HPoint(P.center() + random_qp(3, rng), random_rexp(rng));
        PadicNumber d = P.center() - Q.center();
        RadiusExp top = std::max(P.rexp(), Q.rexp());
        if (!d.is_zero() && RadiusExp(-d.finite_valuation()) <= top) {
            CHECK(distance(P, Q) == abs(P.rexp() - Q.rexp()));
        }
    }
}

TEST_CASE("homographies act by isometries, functorially") {
    std::mt19937_64 rng(31);
    for (long p : {3L, 5L}) {
        for (int i = 0; i < 200; ++i) {
            auto phi = random_homography(p, rng);
            auto psi = random_homography(p, rng);
            auto P = random_hpoint(p, rng);
            auto Q = random_hpoint(p, rng);
            CHECK(distance(act(phi, P), act(phi, Q)) == distance(P, Q));
            CHECK(act(phi.compose(psi), P).same_point(act(phi, act(psi, P))));
        }
    }
}

TEST_CASE("actions are well defined on equivalence classes") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 200; ++i) {
        auto P = random_hpoint(3, rng);
        // equivalent representative: nudge the center within the ball
        mpz_class c = ceil_q(mpq_class(-P.rexp()));
        if (!c.fits_slong_p()) continue;
        long cut = c.get_si();
        mpq_class nudge = (cut >= 0) ? mpq_class(pow_p(3, cut)) : mpq_class(1, pow_p(3, -cut));
        auto P2 = HPoint(P.center() + PadicNumber::from_rational(3, nudge), P.rexp());
        REQUIRE(P.same_point(P2));
        auto phi = random_homography(3, rng);
        CHECK(act(phi, P).same_point(act(phi, P2)));
        CHECK(act_invert(P).same_point(act_invert(P2)));
    }
}

TEST_CASE("inversion is an involution where the paper formula applies") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 200; ++i) {
        auto P = random_hpoint(3, rng);
        bool zero_center = P.center().is_zero();
        bool outside = !zero_center && RadiusExp(-P.center().finite_valuation()) >= P.rexp();
        if (zero_center || outside) {
            CHECK(act_invert(act_invert(P)).same_point(P));
        }
    }
}

TEST_CASE("transitivity on integer-exponent points") {
    std::mt19937_64 rng(43);
    auto gauss = hp(3, 0, 1, 0);
    for (int i = 0; i < 100; ++i) {
        auto P = HPoint(random_qp(3, rng), RadiusExp(static_cast<long>(rng() % 9) - 4));
        auto phi = to_gauss_map(P);
        CHECK(act(phi, P).same_point(gauss));
    }
    CHECK_THROWS_AS(to_gauss_map(HPoint(qp(3, 1), RadiusExp(1, 2))), FractionalExponent);
}

TEST_CASE("median by joins equals median by Gromov product") {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 500; ++i) {
        auto P = random_hpoint(5, rng);
        auto Q = random_hpoint(5, rng);
        auto S = random_hpoint(5, rng);
        auto m = median(P, Q, S);
        RadiusExp t = (distance(P, S) + distance(Q, S) - distance(P, Q)) / 2;
        auto m2 = point_on_segment(P, S, t);  // the point at distance t from S toward P
        CHECK(distance(m, S) == t);
        CHECK(m.same_point(m2));
    }
}

TEST_CASE("projection fibers match geodesic intersections below the Gauss point") {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 1000; ++i) {
        auto z = random_qp(3, rng);
        auto w = random_qp(3, rng);
        bool same_fiber = project_to_residue_sphere(z) == project_to_residue_sphere(w);
        bool both_inf = z.finite_valuation() < 0 && w.finite_valuation() < 0;
        PadicNumber d = z - w;
        bool meet_below = !d.is_zero() ? RadiusExp(-d.finite_valuation()) < 0 : true;
        CHECK(same_fiber == (both_inf || meet_below));
    }
}
