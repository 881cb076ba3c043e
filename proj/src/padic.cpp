#include "hyperp/padic.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace hyperp {

void require_prime(long p) {
    if (p < 2) throw MalformedLiteral("prime must be >= 2, got " + std::to_string(p));
    if (p == 2 || p == 3) return;
    if (p % 2 == 0 || p % 3 == 0) throw MalformedLiteral(std::to_string(p) + " is not prime");
    for (long d = 5; d * d <= p; d += 6) {
        if (p % d == 0 || p % (d + 2) == 0) throw MalformedLiteral(std::to_string(p) + " is not prime");
    }
}

long int_valuation(const mpz_class& n, long p) {
    mpz_class rest;
    mpz_class pz(p);
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

long rational_valuation(const mpq_class& q, long p) {
    return int_valuation(q.get_num(), p) - int_valuation(q.get_den(), p);
}

mpz_class pow_p(long p, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

mpz_class ceil_q(const mpq_class& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

namespace {

/// unit-part of a nonzero rational as residue mod p^digits; the rational's
/// p-part must already be removed from both num and den.
mpz_class unit_residue(const mpz_class& num, const mpz_class& den, long p, long digits) {
    mpz_class mod = pow_p(p, digits);
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw Error("internal: denominator not invertible mod p^k");
    mpz_class r = (num % mod) * dinv % mod;
    if (r < 0) r += mod;
    return r;
}

}  // namespace

// ---- ResidueElement ----

ResidueElement ResidueElement::finite(long p, long value) {
    require_prime(p);
    long v = value % p;
    if (v < 0) v += p;
    return ResidueElement(p, v, false);
}

ResidueElement ResidueElement::infinity(long p) {
    require_prime(p);
    return ResidueElement(p, 0, true);
}

long ResidueElement::value() const {
    if (infinite_) throw Error("residue element is the point at infinity");
    return value_;
}

ResidueElement ResidueElement::operator+(const ResidueElement& o) const {
    if (infinite_ || o.infinite_) throw Error("arithmetic with the residue point at infinity");
    return finite(p_, value_ + o.value_);
}

ResidueElement ResidueElement::operator*(const ResidueElement& o) const {
    if (infinite_ || o.infinite_) throw Error("arithmetic with the residue point at infinity");
    return finite(p_, value_ * o.value_);
}

std::string ResidueElement::str() const { return infinite_ ? "inf" : std::to_string(value_); }

// ---- PadicNumber ----

PadicNumber PadicNumber::zero(long p) {
    require_prime(p);
    PadicNumber r(p, Kind::Zero);
    r.value_ = 0;
    return r;
}

PadicNumber PadicNumber::make_exact(long p, mpq_class value) {
    if (value == 0) return zero(p);
    PadicNumber r(p, Kind::Exact);
    r.v_ = rational_valuation(value, p);
    r.value_ = std::move(value);
    return r;
}

PadicNumber PadicNumber::from_integer(long p, const mpz_class& n) {
    require_prime(p);
    return make_exact(p, mpq_class(n));
}

PadicNumber PadicNumber::from_rational(long p, const mpq_class& q) {
    require_prime(p);
    if (q.get_den() == 0) throw DivisionByZero();
    mpq_class c(q);
    c.canonicalize();
    return make_exact(p, c);
}

PadicNumber PadicNumber::truncate(long p, const mpq_class& value, long abs_prec) {
    if (value == 0) throw CancellationBeyondPrecision(abs_prec);
    long v = rational_valuation(value, p);
    if (v >= abs_prec) throw CancellationBeyondPrecision(abs_prec);
    long k = abs_prec - v;
    // strip the p-part, then reduce the unit num/den mod p^k
    mpz_class num = value.get_num(), den = value.get_den(), tmp;
    mpz_class pz(p);
    mpz_remove(tmp.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t());
    num = tmp;
    mpz_remove(tmp.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
    den = tmp;
    mpz_class u = unit_residue(num, den, p, k);
    PadicNumber r(p, Kind::Approx);
    r.v_ = v;
    r.k_ = k;
    if (v >= 0)
        r.value_ = mpq_class(u * pow_p(p, v));
    else
        r.value_ = mpq_class(u, pow_p(p, -v));
    r.value_.canonicalize();
    return r;
}

PadicNumber PadicNumber::approximate(long p, const mpq_class& value, long abs_prec) {
    require_prime(p);
    mpq_class c(value);
    c.canonicalize();
    return truncate(p, c, abs_prec);
}

const mpq_class& PadicNumber::rational() const {
    if (kind_ == Kind::Approx) throw InsufficientPrecision("value is not exact");
    return value_;
}

ExtInt PadicNumber::valuation() const {
    if (kind_ == Kind::Zero) return ExtInt::inf();
    return ExtInt::of(v_);
}

long PadicNumber::finite_valuation() const {
    if (kind_ == Kind::Zero) throw DivisionByZero();
    return v_;
}

long PadicNumber::precision_digits() const {
    if (kind_ != Kind::Approx) throw Error("exact value has unbounded precision");
    return k_;
}

long PadicNumber::known_modulus_exp() const {
    if (kind_ != Kind::Approx) throw Error("exact value has unbounded precision");
    return v_ + k_;
}

mpz_class PadicNumber::unit_mod(long digits) const {
    if (kind_ == Kind::Zero) throw DivisionByZero();
    if (digits < 1) throw Error("unit_mod requires digits >= 1");
    if (kind_ == Kind::Approx && digits > k_)
        throw InsufficientPrecision("only " + std::to_string(k_) + " digits tracked");
    mpz_class num = value_.get_num(), den = value_.get_den(), tmp;
    mpz_class pz(p_);
    mpz_remove(tmp.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t());
    num = tmp;
    mpz_remove(tmp.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
    den = tmp;
    return unit_residue(num, den, p_, digits);
}

PadicNumber PadicNumber::operator-() const {
    switch (kind_) {
        case Kind::Zero:
            return *this;
        case Kind::Exact:
            return make_exact(p_, mpq_class(-value_));
        case Kind::Approx: {
            PadicNumber r(p_, Kind::Approx);
            r.v_ = v_;
            r.k_ = k_;
            mpz_class u = pow_p(p_, k_) - unit_mod(k_);
            if (v_ >= 0)
                r.value_ = mpq_class(u * pow_p(p_, v_));
            else
                r.value_ = mpq_class(u, pow_p(p_, -v_));
            r.value_.canonicalize();
            return r;
        }
    }
    throw Error("unreachable");
}

PadicNumber PadicNumber::operator+(const PadicNumber& o) const {
    if (p_ != o.p_) throw Error("mixed primes");
    if (kind_ == Kind::Zero) return o;
    if (o.kind_ == Kind::Zero) return *this;
    if (kind_ == Kind::Exact && o.kind_ == Kind::Exact)
        return make_exact(p_, mpq_class(value_ + o.value_));
    long m = std::numeric_limits<long>::max();
    if (kind_ == Kind::Approx) m = std::min(m, v_ + k_);
    if (o.kind_ == Kind::Approx) m = std::min(m, o.v_ + o.k_);
    return truncate(p_, mpq_class(value_ + o.value_), m);
}

PadicNumber PadicNumber::operator-(const PadicNumber& o) const { return *this + (-o); }

PadicNumber PadicNumber::operator*(const PadicNumber& o) const {
    if (p_ != o.p_) throw Error("mixed primes");
    if (kind_ == Kind::Zero || o.kind_ == Kind::Zero) return zero(p_);
    if (kind_ == Kind::Exact && o.kind_ == Kind::Exact)
        return make_exact(p_, mpq_class(value_ * o.value_));
    long k = std::numeric_limits<long>::max();
    if (kind_ == Kind::Approx) k = std::min(k, k_);
    if (o.kind_ == Kind::Approx) k = std::min(k, o.k_);
    return truncate(p_, mpq_class(value_ * o.value_), v_ + o.v_ + k);
}

PadicNumber PadicNumber::inverse() const {
    if (kind_ == Kind::Zero) throw DivisionByZero();
    if (kind_ == Kind::Exact) return make_exact(p_, mpq_class(1 / value_));
    return truncate(p_, mpq_class(1 / value_), -v_ + k_);
}

PadicNumber PadicNumber::operator/(const PadicNumber& o) const { return *this * o.inverse(); }

ResidueElement PadicNumber::residue() const {
    if (kind_ == Kind::Zero) return ResidueElement::finite(p_, 0);
    if (v_ > 0) return ResidueElement::finite(p_, 0);
    if (v_ < 0) return ResidueElement::infinity(p_);
    return ResidueElement::finite(p_, unit_mod(1).get_si());
}

bool PadicNumber::exact_equals(const PadicNumber& o) const {
    if (kind_ == Kind::Approx || o.kind_ == Kind::Approx)
        throw InsufficientPrecision("exact equality of tracked values");
    return p_ == o.p_ && value_ == o.value_;
}

bool PadicNumber::indistinguishable(const PadicNumber& a, const PadicNumber& b) {
    try {
        return (a - b).is_zero();
    } catch (const CancellationBeyondPrecision&) {
        return true;
    }
}

std::string PadicNumber::to_literal() const {
    if (kind_ != Kind::Approx) return value_.get_str();
    return value_.get_str() + " + O(" + std::to_string(p_) + "^" + std::to_string(v_ + k_) + ")";
}

std::string PadicNumber::to_padic_string(long digits) const {
    if (kind_ == Kind::Zero) return "0";
    long k = (kind_ == Kind::Approx) ? k_ : digits;
    mpz_class u = unit_mod(k);
    return std::to_string(p_) + "^" + std::to_string(v_) + " * " + u.get_str() + " mod " +
           std::to_string(p_) + "^" + std::to_string(v_ + k);
}

// ---- parsing ----

namespace {

void skip_ws(std::string_view& s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
}

bool take(std::string_view& s, char c) {
    skip_ws(s);
    if (s.empty() || s.front() != c) return false;
    s.remove_prefix(1);
    return true;
}

std::string take_int(std::string_view& s) {
    skip_ws(s);
    std::string out;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        out.push_back(s.front());
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isdigit(static_cast<unsigned char>(s.front()))) {
        out.push_back(s.front());
        s.remove_prefix(1);
    }
    if (out.empty() || out.back() == '-' || out.back() == '+') return {};
    return out;
}

}  // namespace

mpq_class parse_rational(std::string_view text) {
    std::string_view s = text;
    std::string num = take_int(s);
    if (num.empty()) throw MalformedLiteral(std::string(text));
    mpz_class n(num, 10);
    mpz_class d(1);
    if (take(s, '/')) {
        std::string den = take_int(s);
        if (den.empty()) throw MalformedLiteral(std::string(text));
        d = mpz_class(den, 10);
        if (d == 0) throw MalformedLiteral(std::string(text) + " (zero denominator)");
    }
    skip_ws(s);
    if (!s.empty()) throw MalformedLiteral(std::string(text));
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

PadicNumber PadicNumber::parse(long p, std::string_view text) {
    require_prime(p);
    std::string_view s = text;
    skip_ws(s);
    // rational part
    std::string num = take_int(s);
    if (num.empty()) throw MalformedLiteral(std::string(text));
    mpz_class n(num, 10);
    mpz_class d(1);
    if (take(s, '/')) {
        std::string den = take_int(s);
        if (den.empty()) throw MalformedLiteral(std::string(text));
        d = mpz_class(den, 10);
        if (d == 0) throw MalformedLiteral(std::string(text) + " (zero denominator)");
    }
    mpq_class base(n, d);
    base.canonicalize();
    skip_ws(s);
    if (s.empty()) return from_rational(p, base);
    // "+ O(p^m)" tail
    if (!take(s, '+')) throw MalformedLiteral(std::string(text));
    skip_ws(s);
    if (s.empty() || (s.front() != 'O' && s.front() != 'o')) throw MalformedLiteral(std::string(text));
    s.remove_prefix(1);
    if (!take(s, '(')) throw MalformedLiteral(std::string(text));
    std::string ps = take_int(s);
    if (ps.empty()) throw MalformedLiteral(std::string(text));
    if (mpz_class(ps, 10) != p)
        throw MalformedLiteral(std::string(text) + " (O-term prime differs from --p)");
    if (!take(s, '^')) throw MalformedLiteral(std::string(text));
    std::string ms = take_int(s);
    if (ms.empty()) throw MalformedLiteral(std::string(text));
    long m = std::stol(ms);
    if (!take(s, ')')) throw MalformedLiteral(std::string(text));
    skip_ws(s);
    if (!s.empty()) throw MalformedLiteral(std::string(text));
    return approximate(p, base, m);
}

}  // namespace hyperp
