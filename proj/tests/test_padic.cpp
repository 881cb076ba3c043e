#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hyperp/padic.hpp"

using namespace hyperp;

namespace {

PadicNumber qp(long p, long num, long den = 1) {
    return PadicNumber::from_rational(p, mpq_class(num, den));
}

/// Random nonzero element of Q_p with small height and valuation in [-4, 4].
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

}  // namespace

TEST_CASE("addition follows the ultrametric rules") {
    // p=3: 1 + 2 = 3 = 3^1 * 1
    auto s = qp(3, 1) + qp(3, 2);
    CHECK(s.finite_valuation() == 1);
    CHECK(s.unit_mod(1) == 1);
    CHECK(s.rational() == 3);

    // additive identity
    auto x = qp(5, 7, 3);
    CHECK((x + PadicNumber::zero(5)).exact_equals(x));

    // full cancellation of known digits
    auto a = PadicNumber::parse(3, "1 + O(3^2)");
    auto b = PadicNumber::parse(3, "-1 + O(3^2)");
    CHECK_THROWS_AS(a + b, CancellationBeyondPrecision);
}

TEST_CASE("multiplication, inversion, negation") {
    CHECK((qp(3, 6) * qp(3, 9)).finite_valuation() == 3);

    auto inv5 = qp(5, 5).inverse();
    CHECK(inv5.finite_valuation() == -1);
    CHECK(inv5.rational() == mpq_class(1, 5));
    CHECK_THROWS_AS(PadicNumber::zero(5).inverse(), DivisionByZero);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        auto a = random_qp(7, rng);
        CHECK((a * a.inverse()).rational() == 1);
    }
}

TEST_CASE("valuation") {
    CHECK(qp(3, 18).finite_valuation() == 2);
    CHECK(PadicNumber::zero(3).valuation().infinite);
    CHECK(qp(2, 3, 4).finite_valuation() == -2);
}

TEST_CASE("reduction to the residue sphere") {
    CHECK(qp(5, 7).residue() == ResidueElement::finite(5, 2));
    CHECK(qp(3, 1, 3).residue().is_infinity());
    CHECK(qp(3, 6).residue() == ResidueElement::finite(3, 0));
}

TEST_CASE("parse and format") {
    auto x = PadicNumber::parse(3, "4/3");
    CHECK(x.finite_valuation() == -1);
    CHECK(x.rational() == mpq_class(4, 3));

    CHECK(PadicNumber::parse(7, "0").is_zero());

    auto y = PadicNumber::parse(5, "7 + O(5^3)");
    CHECK_FALSE(y.exact());
    CHECK(y.finite_valuation() == 0);
    CHECK(y.unit_mod(3) == 7);
    CHECK(y.precision_digits() == 3);

    CHECK_THROWS_AS(PadicNumber::parse(3, "abc"), MalformedLiteral);
    CHECK_THROWS_AS(PadicNumber::parse(3, "1/0"), MalformedLiteral);
    CHECK_THROWS_AS(PadicNumber::parse(3, "7 + O(5^3)"), MalformedLiteral);
    // an O-literal all of whose digits vanish has no determinable valuation
    CHECK_THROWS_AS(PadicNumber::parse(3, "9 + O(3^2)"), CancellationBeyondPrecision);
}

TEST_CASE("precision rules of tracked arithmetic") {
    // add: absolute precision is the min of the operands' v + k
    auto a = PadicNumber::parse(3, "2 + O(3^4)");
    auto b = PadicNumber::parse(3, "3 + O(3^2)");
    auto s = a + b;  // = 5 known mod 3^2
    CHECK(s.finite_valuation() == 0);
    CHECK(s.known_modulus_exp() == 2);
    CHECK(s.unit_mod(2) == 5);

    // mul: k = min(k_a, k_b)
    auto m = a * b;  // v = 1, k = min(4, 1) = 1
    CHECK(m.finite_valuation() == 1);
    CHECK(m.precision_digits() == 1);

    // valuation shift after partial cancellation eats precision
    auto c = PadicNumber::parse(3, "1 + O(3^3)");
    auto d = PadicNumber::parse(3, "8 + O(3^3)");
    auto t = c + d;  // 9, known mod 3^3 -> one significant digit
    CHECK(t.finite_valuation() == 2);
    CHECK(t.precision_digits() == 1);

    // exact operands never lose precision
    auto u = qp(3, 1) + qp(3, -1);
    CHECK(u.is_zero());
}

TEST_CASE("ultrametric and multiplicativity invariants") {
    std::mt19937_64 rng(11);
    for (long p : {2L, 3L, 5L}) {
        for (int i = 0; i < 300; ++i) {
            auto a = random_qp(p, rng);
            auto b = random_qp(p, rng);
            long va = a.finite_valuation(), vb = b.finite_valuation();
            auto s = a + b;
            if (!s.is_zero()) {
                CHECK(s.finite_valuation() >= std::min(va, vb));
            }
            if (va != vb) {
                REQUIRE_FALSE(s.is_zero());
                CHECK(s.finite_valuation() == std::min(va, vb));
            }
            CHECK((a * b).finite_valuation() == va + vb);
            CHECK(a.inverse().finite_valuation() == -va);
        }
    }
}

TEST_CASE("residue reduction is a ring homomorphism on v >= 0") {
    std::mt19937_64 rng(13);
    for (long p : {3L, 5L, 7L}) {
        int done = 0;
        while (done < 200) {
            auto a = random_qp(p, rng);
            auto b = random_qp(p, rng);
            if (a.finite_valuation() < 0 || b.finite_valuation() < 0) continue;
            ++done;
            CHECK((a + b).residue() == a.residue() + b.residue());
            CHECK((a * b).residue() == a.residue() * b.residue());
        }
    }
}

TEST_CASE("format/parse round trip") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        auto a = random_qp(3, rng);
        auto back = PadicNumber::parse(3, a.to_literal());
        CHECK(back.exact_equals(a));
    }
    // tracked values round-trip through the O() annotation
    auto y = PadicNumber::parse(5, "12/7 + O(5^4)");
    auto z = PadicNumber::parse(5, y.to_literal());
    CHECK(z.finite_valuation() == y.finite_valuation());
    CHECK(z.precision_digits() == y.precision_digits());
    CHECK(z.unit_mod(4) == y.unit_mod(4));

    CHECK(PadicNumber::parse(3, "22/3").to_padic_string(4) ==
          "3^-1 * 22 mod 3^3");
}

TEST_CASE("radius exponents stay exact rationals") {
    RadiusExp r(-5, 2);
    RadiusExp s(1, 3);
    CHECK(r + s == RadiusExp(-13, 6));
    CHECK(ceil_q(mpq_class(7, 2)) == 4);
    CHECK(ceil_q(mpq_class(-7, 2)) == -3);
    CHECK(ceil_q(mpq_class(3)) == 3);
}
