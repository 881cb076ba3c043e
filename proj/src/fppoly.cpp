#include "hyperp/fppoly.hpp"

namespace hyperp {

long fp_inverse(long a, long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) throw DivisionByZero();
    // extended Euclid on machine words; p is small
    long t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        long q = r / new_r;
        std::swap(t -= q * new_t, new_t);
        std::swap(r -= q * new_r, new_r);
    }
    if (t < 0) t += p;
    return t;
}

FpPoly::FpPoly(long p, std::vector<long> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
    require_prime(p_);
    for (auto& c : coeffs_) {
        c %= p_;
        if (c < 0) c += p_;
    }
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

long FpPoly::coeff(long i) const {
    if (i < 0 || i >= static_cast<long>(coeffs_.size())) return 0;
    return coeffs_[i];
}

long FpPoly::eval(long x) const {
    x %= p_;
    if (x < 0) x += p_;
    long acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = (acc * x + *it) % p_;
    return acc;
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
    std::vector<long> out(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) + o.coeff(i);
    return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
    std::vector<long> out(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) - o.coeff(i);
    return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
    if (is_zero() || o.is_zero()) return zero(p_);
    std::vector<long> out(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j)
            out[i + j] = (out[i + j] + coeffs_[i] * o.coeffs_[j]) % p_;
    return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::compose(const FpPoly& inner) const {
    FpPoly acc = zero(p_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * inner + constant(p_, *it);
    return acc;
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& divisor) const {
    if (divisor.is_zero()) throw DivisionByZero();
    std::vector<long> rem(coeffs_);
    long dd = divisor.degree();
    long lead_inv = fp_inverse(divisor.coeffs_.back(), p_);
    std::vector<long> quot(std::max<long>(0, degree() - dd + 1), 0);
    for (long i = degree(); i >= dd; --i) {
        long c = rem[i] % p_;
        if (c == 0) continue;
        long q = c * lead_inv % p_;
        quot[i - dd] = q;
        for (long j = 0; j <= dd; ++j) {
            rem[i - dd + j] = (rem[i - dd + j] - q * divisor.coeffs_[j]) % p_;
        }
    }
    return {FpPoly(p_, std::move(quot)), FpPoly(p_, std::move(rem))};
}

FpPoly FpPoly::monic() const {
    if (is_zero()) return *this;
    long inv = fp_inverse(coeffs_.back(), p_);
    std::vector<long> out(coeffs_);
    for (auto& c : out) c = c * inv % p_;
    return FpPoly(p_, std::move(out));
}

std::string FpPoly::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        long c = coeffs_[i];
        if (c == 0) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += std::to_string(c);
        } else {
            if (c != 1) out += std::to_string(c);
            out += "z";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

FpPoly fp_gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

}  // namespace hyperp
