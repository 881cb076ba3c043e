#include "hyperp/polynomial.hpp"

#include <algorithm>
#include <cctype>

namespace hyperp {

Polynomial::Polynomial(long p, std::vector<PadicNumber> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
    require_prime(p_);
    for (const auto& c : coeffs_)
        if (c.prime() != p_) throw Error("mixed primes in coefficients");
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Polynomial Polynomial::constant(long p, PadicNumber c) {
    std::vector<PadicNumber> cs;
    cs.push_back(std::move(c));
    return Polynomial(p, std::move(cs));
}

Polynomial Polynomial::identity(long p) {
    return Polynomial(p, {PadicNumber::zero(p), PadicNumber::from_integer(p, 1)});
}

Polynomial Polynomial::from_integers(long p, const std::vector<long>& coeffs) {
    std::vector<PadicNumber> cs;
    cs.reserve(coeffs.size());
    for (long c : coeffs) cs.push_back(PadicNumber::from_integer(p, c));
    return Polynomial(p, std::move(cs));
}

PadicNumber Polynomial::coeff(long i) const {
    if (i >= 0 && i < static_cast<long>(coeffs_.size())) return coeffs_[i];
    return PadicNumber::zero(p_);
}

PadicNumber Polynomial::eval(const PadicNumber& x) const {
    PadicNumber acc = PadicNumber::zero(p_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    std::vector<PadicNumber> out;
    for (long i = 1; i <= degree(); ++i)
        out.push_back(coeffs_[i] * PadicNumber::from_integer(p_, i));
    return Polynomial(p_, std::move(out));
}

Polynomial Polynomial::compose(const Polynomial& inner) const {
    Polynomial acc = zero(p_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * inner + constant(p_, *it);
    return acc;
}

Polynomial Polynomial::taylor_shift(const PadicNumber& a) const {
    // Ruffini-Horner: repeated synthetic division by (z - a).
    if (is_zero()) return *this;
    std::vector<PadicNumber> work(coeffs_);
    std::vector<PadicNumber> out;
    out.reserve(coeffs_.size());
    for (size_t round = 0; round < coeffs_.size(); ++round) {
        for (size_t i = work.size() - 1; i + 1 >= 2 + round; --i) {
            work[i - 1] = work[i - 1] + work[i] * a;
        }
        out.push_back(work[round]);
    }
    return Polynomial(p_, std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<PadicNumber> out;
    long n = std::max(degree(), o.degree());
    for (long i = 0; i <= n; ++i) out.push_back(coeff(i) + o.coeff(i));
    return Polynomial(p_, std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    std::vector<PadicNumber> out;
    long n = std::max(degree(), o.degree());
    for (long i = 0; i <= n; ++i) out.push_back(coeff(i) - o.coeff(i));
    return Polynomial(p_, std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return zero(p_);
    std::vector<PadicNumber> out(coeffs_.size() + o.coeffs_.size() - 1, PadicNumber::zero(p_));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j)
            out[i + j] = out[i + j] + coeffs_[i] * o.coeffs_[j];
    return Polynomial(p_, std::move(out));
}

Polynomial Polynomial::scale(const PadicNumber& c) const {
    std::vector<PadicNumber> out;
    out.reserve(coeffs_.size());
    for (const auto& ci : coeffs_) out.push_back(ci * c);
    return Polynomial(p_, std::move(out));
}

std::string Polynomial::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (long i = 0; i <= degree(); ++i) {
        const PadicNumber& c = coeffs_[i];
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string cs = c.to_literal();
        if (i == 0) {
            out += cs;
        } else {
            if (cs != "1") out += "(" + cs + ")";
            out += "z";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

// ---- parsing ----

namespace {

bool is_symbolic(std::string_view text) { return text.find('z') != std::string_view::npos; }

}  // namespace

Polynomial Polynomial::parse(long p, std::string_view text) {
    require_prime(p);
    if (!is_symbolic(text)) {
        std::vector<PadicNumber> cs;
        size_t start = 0;
        std::string s(text);
        while (start <= s.size()) {
            size_t comma = s.find(',', start);
            std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            cs.push_back(PadicNumber::parse(p, tok));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return Polynomial(p, std::move(cs));
    }
    // symbolic: signed integer-coefficient terms c z^k
    std::vector<mpz_class> acc;
    auto add_term = [&](const mpz_class& c, long k) {
        if (k >= static_cast<long>(acc.size())) acc.resize(k + 1, mpz_class(0));
        acc[k] += c;
    };
    std::string s(text);
    size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
    bool first = true;
    while (true) {
        skip_ws();
        if (i >= s.size()) {
            if (first) throw MalformedLiteral(std::string(text));
            break;
        }
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = (s[i] == '-') ? -1 : 1;
            ++i;
        } else if (!first) {
            throw MalformedLiteral(std::string(text));
        }
        skip_ws();
        std::string digits;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits.push_back(s[i++]);
        mpz_class c = digits.empty() ? mpz_class(1) : mpz_class(digits, 10);
        skip_ws();
        long k = 0;
        if (i < s.size() && s[i] == '*') {  // optional "2*z"
            ++i;
            skip_ws();
        }
        if (i < s.size() && s[i] == 'z') {
            ++i;
            k = 1;
            skip_ws();
            if (i < s.size() && s[i] == '^') {
                ++i;
                skip_ws();
                std::string ed;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ed.push_back(s[i++]);
                if (ed.empty()) throw MalformedLiteral(std::string(text));
                k = std::stol(ed);
            }
        } else if (digits.empty()) {
            throw MalformedLiteral(std::string(text));
        }
        add_term(sign * c, k);
        first = false;
    }
    std::vector<PadicNumber> cs;
    cs.reserve(acc.size());
    for (const auto& c : acc) cs.push_back(PadicNumber::from_integer(p, c));
    return Polynomial(p, std::move(cs));
}

// ---- RationalMap ----

namespace {

/// Euclidean remainder over exact rational coefficients; both nonzero.
Polynomial poly_rem(const Polynomial& a, const Polynomial& b) {
    long p = a.prime();
    std::vector<PadicNumber> rem(a.coeffs());
    long db = b.degree();
    PadicNumber lead = b.coeff(db);
    for (long i = a.degree(); i >= db; --i) {
        if (rem[i].is_zero()) continue;
        PadicNumber q = rem[i] / lead;
        for (long j = 0; j <= db; ++j) rem[i - db + j] = rem[i - db + j] - q * b.coeff(j);
    }
    return Polynomial(p, std::move(rem));
}

Polynomial poly_div_exact(const Polynomial& a, const Polynomial& b) {
    long p = a.prime();
    std::vector<PadicNumber> rem(a.coeffs());
    long db = b.degree();
    PadicNumber lead = b.coeff(db);
    std::vector<PadicNumber> quot(std::max<long>(0, a.degree() - db + 1), PadicNumber::zero(p));
    for (long i = a.degree(); i >= db; --i) {
        if (rem[i].is_zero()) continue;
        PadicNumber q = rem[i] / lead;
        quot[i - db] = q;
        for (long j = 0; j <= db; ++j) rem[i - db + j] = rem[i - db + j] - q * b.coeff(j);
    }
    return Polynomial(p, std::move(quot));
}

Polynomial poly_gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = a.scale(a.coeff(a.degree()).inverse());  // monic
    return a;
}

bool all_exact(const Polynomial& f) {
    for (const auto& c : f.coeffs())
        if (!c.exact()) return false;
    return true;
}

}  // namespace

RationalMap::RationalMap(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero();
    if (num_.prime() != den_.prime()) throw Error("mixed primes");
    if (!num_.is_zero() && all_exact(num_) && all_exact(den_)) {
        Polynomial g = poly_gcd(num_, den_);
        if (g.degree() >= 1) {
            num_ = poly_div_exact(num_, g);
            den_ = poly_div_exact(den_, g);
        }
    }
}

RationalMap::RationalMap(Polynomial num)
    : num_(std::move(num)),
      den_(Polynomial::constant(num_.prime(), PadicNumber::from_integer(num_.prime(), 1))) {}

PadicNumber RationalMap::eval(const PadicNumber& x) const {
    PadicNumber d = den_.eval(x);
    if (d.is_zero()) throw DivisionByZero();
    return num_.eval(x) / d;
}

RationalMap RationalMap::derivative() const {
    Polynomial n = num_.derivative() * den_ - num_ * den_.derivative();
    return RationalMap(std::move(n), den_ * den_);
}

// ---- Newton polygon ----

NewtonPolygon newton_polygon(const Polynomial& f) {
    if (f.is_zero()) throw ZeroPolynomial();
    NewtonPolygon np;
    std::vector<std::pair<long, long>> pts;  // (i, v(c_i)) for nonzero c_i
    for (long i = 0; i <= f.degree(); ++i) {
        if (f.coeff(i).is_zero()) continue;
        pts.emplace_back(i, f.coeff(i).finite_valuation());
    }
    np.order_at_zero = pts.front().first;
    // monotone-chain lower hull, left to right
    std::vector<std::pair<long, long>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& [x1, y1] = hull[hull.size() - 2];
            const auto& [x2, y2] = hull[hull.size() - 1];
            // keep strictly convex turns: cross >= 0 means (x2,y2) is not below
            if ((mpz_class(x2 - x1) * (pt.second - y1) - mpz_class(pt.first - x1) * (y2 - y1)) <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    np.vertices = hull;
    for (size_t i = 1; i < hull.size(); ++i) {
        mpq_class slope(hull[i].second - hull[i - 1].second, hull[i].first - hull[i - 1].first);
        slope.canonicalize();
        np.segments.push_back({slope, hull[i].first - hull[i - 1].first});
    }
    return np;
}

long count_zeros_in_ball(const Polynomial& f, const HPoint& ball) {
    if (f.is_zero()) throw ZeroPolynomial();
    Polynomial g = f.taylor_shift(ball.center());
    NewtonPolygon np = newton_polygon(g);
    long count = np.order_at_zero;
    for (const auto& seg : np.segments)
        if (seg.slope <= ball.rexp()) count += seg.length;
    return count;
}

// ---- Gauss norm / induced image ----

RadiusExp gauss_norm_exp(const Polynomial& f, const HPoint& ball) {
    if (f.is_zero()) throw ZeroPolynomial();
    Polynomial g = f.taylor_shift(ball.center());
    bool have = false;
    RadiusExp best(0);
    for (long i = 0; i <= g.degree(); ++i) {
        if (g.coeff(i).is_zero()) continue;
        RadiusExp term = RadiusExp(-g.coeff(i).finite_valuation()) + i * ball.rexp();
        if (!have || term > best) {
            best = term;
            have = true;
        }
    }
    return best;
}

HPoint induced_image(const Polynomial& f, const HPoint& P) {
    if (f.degree() < 1) throw DegenerateConstant();
    Polynomial g = f.taylor_shift(P.center());
    bool have = false;
    RadiusExp best(0);
    for (long i = 1; i <= g.degree(); ++i) {
        if (g.coeff(i).is_zero()) continue;
        RadiusExp term = RadiusExp(-g.coeff(i).finite_valuation()) + i * P.rexp();
        if (!have || term > best) {
            best = term;
            have = true;
        }
    }
    // deg f >= 1 guarantees a nonzero leading coefficient survives the shift
    return HPoint(g.coeff(0), best);
}

// ---- reduction ----

namespace {

FpPoly reduce_scaled(const Polynomial& f, long shift, long p) {
    // coefficients of p^shift * f reduced mod p; requires v(c_i) + shift >= 0
    std::vector<long> out;
    for (long i = 0; i <= f.degree(); ++i) {
        const PadicNumber& c = f.coeff(i);
        if (c.is_zero()) {
            out.push_back(0);
            continue;
        }
        long v = c.finite_valuation() + shift;
        if (v < 0) throw Error("internal: normalization left a negative valuation");
        if (v > 0) {
            out.push_back(0);
            continue;
        }
        // unit part mod p of p^shift * c equals unit part of c mod p
        out.push_back(c.unit_mod(1).get_si());
    }
    return FpPoly(p, std::move(out));
}

long min_valuation(const Polynomial& f) {
    bool have = false;
    long m = 0;
    for (long i = 0; i <= f.degree(); ++i) {
        if (f.coeff(i).is_zero()) continue;
        long v = f.coeff(i).finite_valuation();
        if (!have || v < m) {
            m = v;
            have = true;
        }
    }
    if (!have) throw ZeroPolynomial();
    return m;
}

}  // namespace

ReductionReport reduce_rational_map(const RationalMap& R) {
    long p = R.prime();
    if (R.num().is_zero()) throw ZeroPolynomial();
    long m = std::min(min_valuation(R.num()), min_valuation(R.den()));
    FpPoly tn = reduce_scaled(R.num(), -m, p);
    FpPoly td = reduce_scaled(R.den(), -m, p);
    if (!tn.is_zero() && !td.is_zero()) {
        FpPoly g = fp_gcd(tn, td);
        if (g.degree() >= 1) {
            tn = tn.divmod(g).first;
            td = td.divmod(g).first;
        }
    }
    bool constant;
    if (td.is_zero() || tn.is_zero())
        constant = true;  // the constant map to infinity resp. zero
    else
        constant = tn.degree() <= 0 && td.degree() <= 0;
    long reduced_deg = std::max(tn.degree(), td.degree());
    bool preserved = !constant && reduced_deg == R.degree();
    return ReductionReport{std::move(tn), std::move(td), constant, preserved};
}

ReductionReport reduce_polynomial(const Polynomial& f) {
    if (f.is_zero()) throw ZeroPolynomial();
    return reduce_rational_map(RationalMap(f));
}

std::string ReductionReport::reduced_str() const {
    if (den.is_zero()) return "inf";
    if (den.degree() == 0 && den.coeff(0) == 1) return num.str();
    return "(" + num.str() + ")/(" + den.str() + ")";
}

// ---- series inverse ----

Polynomial lagrange_inverse_truncation(const Polynomial& f, long N) {
    long p = f.prime();
    if (N < 1) throw Error("truncation order must be >= 1");
    if (f.degree() < 1 || !f.coeff(0).is_zero()) throw NotInvertibleAtOrigin();
    const PadicNumber& c1 = f.coeff(1);
    if (c1.is_zero() || c1.valuation() != ExtInt::of(0)) throw NotInvertibleAtOrigin();

    // powers of f truncated to degree N
    auto trunc_mul = [&](const Polynomial& a, const Polynomial& b) {
        std::vector<PadicNumber> out(std::min<long>(N + 1, a.degree() + b.degree() + 1),
                                     PadicNumber::zero(p));
        for (long i = 0; i <= a.degree(); ++i) {
            if (a.coeff(i).is_zero()) continue;
            for (long j = 0; j <= b.degree() && i + j <= N; ++j)
                out[i + j] = out[i + j] + a.coeff(i) * b.coeff(j);
        }
        return Polynomial(p, std::move(out));
    };

    std::vector<Polynomial> pw;  // pw[j] = f^{j+1} mod z^{N+1}
    pw.push_back(Polynomial(
        p, std::vector<PadicNumber>(f.coeffs().begin(),
                                    f.coeffs().begin() + std::min<long>(N + 1, f.degree() + 1))));
    for (long j = 1; j < N; ++j) pw.push_back(trunc_mul(pw.back(), f));

    // triangular solve for g_1..g_N from sum_j g_j [z^n] f^j = [n == 1]
    std::vector<PadicNumber> g(N + 1, PadicNumber::zero(p));
    for (long n = 1; n <= N; ++n) {
        PadicNumber rhs = (n == 1) ? PadicNumber::from_integer(p, 1) : PadicNumber::zero(p);
        for (long j = 1; j < n; ++j) rhs = rhs - g[j] * pw[j - 1].coeff(n);
        g[n] = rhs / pw[n - 1].coeff(n);  // [z^n] f^n = c1^n, a unit
    }
    return Polynomial(p, std::move(g));
}

}  // namespace hyperp
