#include "hyperp/criterion.hpp"

#include <algorithm>
#include <thread>

namespace hyperp {

Eq1Outcome eq_one_holds(const RationalMap& f, const PadicNumber& x, const PadicNumber& y) {
    PadicNumber dx = [&] {
        try {
            return x - y;
        } catch (const CancellationBeyondPrecision&) {
            throw IndistinguishablePoints();
        }
    }();
    if (dx.is_zero()) throw CoincidentPoints();

    ExtInt lhs = ExtInt::inf(), rhs = ExtInt::inf();
    try {
        PadicNumber df = f.eval(x) - f.eval(y);
        if (!df.is_zero())
            lhs = ExtInt::of(2 * (df.finite_valuation() - dx.finite_valuation()));
        RationalMap fp = f.derivative();
        rhs = fp.eval(x).valuation() + fp.eval(y).valuation();
    } catch (const CancellationBeyondPrecision&) {
        return {Eq1Status::Indeterminate, lhs, rhs, "valuation indeterminate at this precision"};
    }

    if (lhs.infinite && rhs.infinite)
        return {Eq1Status::Indeterminate, lhs, rhs, "constant-direction degenerate: collision with vanishing derivative"};
    if (lhs == rhs) return {Eq1Status::Holds, lhs, rhs, ""};
    return {Eq1Status::Fails, lhs, rhs, ""};
}

std::vector<mpz_class> residue_lifts(const Affinoid& domain, long depth) {
    if (depth < 1) throw Error("depth must be >= 1");
    long p = domain.prime();
    mpz_class bound = pow_p(p, depth);
    std::vector<mpz_class> lifts;
    for (mpz_class j(0); j < bound; ++j) {
        if (domain.contains(PadicNumber::from_integer(p, j))) lifts.push_back(j);
    }
    return lifts;
}

namespace {

struct SweepSlice {
    std::optional<unsigned long> first_fail;   // linear pair index
    std::optional<unsigned long> first_indet;
    Eq1Outcome fail_outcome{Eq1Status::Holds, {}, {}, ""};
    Eq1Outcome indet_outcome{Eq1Status::Holds, {}, {}, ""};
    unsigned long tested = 0;
    unsigned long indets = 0;
};

}  // namespace

CriterionVerdict eq_one_sweep(const RationalMap& f, const Affinoid& domain, long depth, int workers) {
    long p = domain.prime();
    std::vector<mpz_class> lifts = residue_lifts(domain, depth);
    std::vector<PadicNumber> xs;
    xs.reserve(lifts.size());
    for (const auto& j : lifts) xs.push_back(PadicNumber::from_integer(p, j));

    // precompute values and derivative valuations once per lift
    const size_t n = xs.size();
    std::vector<PadicNumber> fx;
    std::vector<ExtInt> dfv;
    fx.reserve(n);
    dfv.reserve(n);
    RationalMap fp = f.derivative();
    for (const auto& x : xs) {
        fx.push_back(f.eval(x));
        dfv.push_back(fp.eval(x).valuation());
    }

    auto pair_index = [n](size_t i, size_t j) {
        // lexicographic rank of (i, j), i < j
        return static_cast<unsigned long>(i * (2 * n - i - 1) / 2 + (j - i - 1));
    };

    auto run_rows = [&](size_t start, size_t stride, SweepSlice& out) {
        for (size_t i = start; i + 1 < n; i += stride) {
            for (size_t j = i + 1; j < n; ++j) {
                ++out.tested;
                ExtInt lhs = ExtInt::inf();
                bool indet = false;
                try {
                    PadicNumber dv = xs[i] - xs[j];
                    PadicNumber df = fx[i] - fx[j];
                    if (!df.is_zero())
                        lhs = ExtInt::of(2 * (df.finite_valuation() - dv.finite_valuation()));
                } catch (const CancellationBeyondPrecision&) {
                    indet = true;
                }
                ExtInt rhs = dfv[i] + dfv[j];
                Eq1Status st;
                std::string note;
                if (indet) {
                    st = Eq1Status::Indeterminate;
                    note = "valuation indeterminate at this precision";
                } else if (lhs.infinite && rhs.infinite) {
                    st = Eq1Status::Indeterminate;
                    note = "constant-direction degenerate: collision with vanishing derivative";
                } else {
                    st = (lhs == rhs) ? Eq1Status::Holds : Eq1Status::Fails;
                }
                if (st == Eq1Status::Fails) {
                    unsigned long idx = pair_index(i, j);
                    if (!out.first_fail || idx < *out.first_fail) {
                        out.first_fail = idx;
                        out.fail_outcome = {st, lhs, rhs, note};
                    }
                } else if (st == Eq1Status::Indeterminate) {
                    ++out.indets;
                    unsigned long idx = pair_index(i, j);
                    if (!out.first_indet || idx < *out.first_indet) {
                        out.first_indet = idx;
                        out.indet_outcome = {st, lhs, rhs, note};
                    }
                }
            }
        }
    };

    int w = std::max(1, workers);
    std::vector<SweepSlice> slices(w);
    if (w == 1) {
        run_rows(0, 1, slices[0]);
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < w; ++t)
            threads.emplace_back([&, t] { run_rows(t, w, slices[t]); });
        for (auto& th : threads) th.join();
    }

    SweepSlice merged;
    for (const auto& s : slices) {
        merged.tested += s.tested;
        merged.indets += s.indets;
        if (s.first_fail && (!merged.first_fail || *s.first_fail < *merged.first_fail)) {
            merged.first_fail = s.first_fail;
            merged.fail_outcome = s.fail_outcome;
        }
        if (s.first_indet && (!merged.first_indet || *s.first_indet < *merged.first_indet)) {
            merged.first_indet = s.first_indet;
            merged.indet_outcome = s.indet_outcome;
        }
    }

    auto unrank = [n](unsigned long idx) {
        size_t i = 0;
        unsigned long row = static_cast<unsigned long>(n) - 1;
        while (idx >= row) {
            idx -= row;
            --row;
            ++i;
        }
        return std::pair<size_t, size_t>(i, i + 1 + idx);
    };

    CriterionVerdict verdict;
    verdict.pairs_tested = merged.tested;
    verdict.indeterminate_pairs = merged.indets;
    verdict.lifts = static_cast<unsigned long>(n);
    verdict.depth = depth;
    verdict.prime = p;
    if (merged.first_fail) {
        auto [i, j] = unrank(*merged.first_fail);
        verdict.status = Eq1Status::Fails;
        verdict.witness = PairWitness{xs[i], xs[j], merged.fail_outcome.lhs, merged.fail_outcome.rhs,
                                      merged.fail_outcome.note};
    } else if (merged.first_indet) {
        auto [i, j] = unrank(*merged.first_indet);
        verdict.status = Eq1Status::Indeterminate;
        verdict.witness = PairWitness{xs[i], xs[j], merged.indet_outcome.lhs,
                                      merged.indet_outcome.rhs, merged.indet_outcome.note};
    } else {
        verdict.status = Eq1Status::Holds;
    }
    return verdict;
}

CrossRatioResult cross_ratio(const PadicNumber& a, const PadicNumber& b, const PadicNumber& c,
                             const PadicNumber& d) {
    auto diff = [](const PadicNumber& u, const PadicNumber& v) {
        PadicNumber w = [&] {
            try {
                return u - v;
            } catch (const CancellationBeyondPrecision&) {
                throw CoincidentPoints();
            }
        }();
        if (w.is_zero()) throw CoincidentPoints();
        return w;
    };
    PadicNumber num = diff(a, c) * diff(b, d);
    PadicNumber den = diff(a, d) * diff(b, c);
    PadicNumber value = num / den;
    return {value, -value.finite_valuation()};
}

CrossRatioCheck cross_ratio_preserved(const RationalMap& f, const PadicNumber& a,
                                      const PadicNumber& b, const PadicNumber& c,
                                      const PadicNumber& d) {
    CrossRatioResult dom = cross_ratio(a, b, c, d);
    CrossRatioResult img = [&] {
        try {
            return cross_ratio(f.eval(a), f.eval(b), f.eval(c), f.eval(d));
        } catch (const CoincidentPoints&) {
            throw ImageCollision();
        }
    }();
    return {dom.norm_exp == img.norm_exp, dom.norm_exp, img.norm_exp};
}

IsometryCertificate isometry_certificate(const Polynomial& f) {
    if (f.degree() < 1) throw DegenerateConstant();
    long p = f.prime();
    std::vector<PadicNumber> diag;
    for (long m = 0; m + 1 <= f.degree(); ++m) diag.push_back(f.coeff(m + 1));

    long minv = 0;
    bool have = false;
    for (const auto& c : diag) {
        if (c.is_zero()) continue;
        long v = c.finite_valuation();
        if (!have || v < minv) {
            minv = v;
            have = true;
        }
    }
    // deg >= 1 ensures some nonzero diagonal
    RadiusExp exp(-minv);

    // reduction of p^{-minv} g over F_p, expanded over monomials z^a w^b
    std::string red;
    bool constant_reduction = true;
    for (size_t m = 0; m < diag.size(); ++m) {
        const auto& c = diag[m];
        if (c.is_zero() || c.finite_valuation() > minv) continue;
        long t = c.unit_mod(1).get_si();
        if (m > 0) constant_reduction = false;
        for (size_t a = 0; a <= m; ++a) {
            size_t b = m - a;
            if (!red.empty()) red += " + ";
            std::string mono;
            if (a > 0) mono += (a > 1) ? "z^" + std::to_string(a) : "z";
            if (b > 0) {
                if (!mono.empty()) mono += "*";
                mono += (b > 1) ? "w^" + std::to_string(b) : "w";
            }
            if (mono.empty())
                red += std::to_string(t);
            else
                red += (t == 1 ? mono : std::to_string(t) + mono);
        }
    }

    bool valid = (exp == 0) && constant_reduction;
    return {p, std::move(diag), std::move(exp), valid, std::move(red)};
}

Normalization normalize_to_gauss_fixing(const Polynomial& f) {
    if (f.degree() < 1) throw DegenerateConstant();
    long p = f.prime();
    HPoint gauss(PadicNumber::zero(p), RadiusExp(0));
    HPoint image = induced_image(f, gauss);
    if (image.rexp().get_den() != 1) throw FractionalExponent();
    if (!image.rexp().get_num().fits_slong_p()) throw Error("image radius exponent out of range");
    long s = image.rexp().get_num().get_si();

    // phi1 = p^s (w - f(0)) maps the image Gauss point back to the Gauss point
    mpq_class lam = (s >= 0) ? mpq_class(pow_p(p, s)) : mpq_class(1, pow_p(p, -s));
    PadicNumber lambda = PadicNumber::from_rational(p, lam);
    PadicNumber f0 = f.coeff(0);
    Polynomial h1 = (f - Polynomial::constant(p, f0)).scale(lambda);

    ReductionReport red = reduce_polynomial(h1);
    if (red.constant || red.num.degree() != 1 || red.den.degree() != 0)
        throw NotInjectiveOnBall();
    // tilde h1 = alpha z (its constant term reduces to 0 since h1(0) = 0)
    long alpha = red.num.coeff(1);
    PadicNumber a_lift = PadicNumber::from_integer(p, alpha);
    Polynomial h = h1.scale(a_lift.inverse());

    Homography phi1 = Homography::scaling(lambda).compose(Homography::translation(-f0));
    Homography phi = Homography::scaling(a_lift.inverse()).compose(phi1);

    // postconditions: h fixes the Gauss point and reduces to the identity
    if (!induced_image(h, gauss).same_point(gauss)) throw Error("internal: Gauss point not fixed");
    ReductionReport hred = reduce_polynomial(h);
    if (hred.num != FpPoly(p, {0, 1}) || hred.den != FpPoly::constant(p, 1))
        throw Error("internal: reduction is not the identity");
    return {std::move(phi), std::move(h)};
}

OracleReport exhaustive_injectivity_oracle(const Polynomial& f, long depth, const Affinoid& domain) {
    long p = f.prime();
    if (depth < 1) throw Error("depth must be >= 1");
    for (long i = 0; i <= f.degree(); ++i) {
        const auto v = f.coeff(i).valuation();
        if (!v.infinite && v.value < 0) throw DomainNotLatticeCompatible();
    }
    if (domain.outer().rexp() > 0) throw DomainNotLatticeCompatible();
    {
        const PadicNumber& w = domain.outer().center();
        if (!w.is_zero() && w.finite_valuation() < 0) throw DomainNotLatticeCompatible();
    }

    std::vector<mpz_class> lifts = residue_lifts(domain, depth);
    mpz_class mod = pow_p(p, depth);
    std::vector<std::pair<mpz_class, mpz_class>> table;  // (f(j) mod p^depth, j)
    table.reserve(lifts.size());
    for (const auto& j : lifts) {
        PadicNumber val = f.eval(PadicNumber::from_integer(p, j));
        mpz_class r = 0;
        if (!val.is_zero()) {
            long v = val.finite_valuation();
            if (v < depth) {
                mpz_class u = val.unit_mod(depth - v);
                r = u * pow_p(p, v) % mod;
            }
        }
        table.emplace_back(r, j);
    }
    std::sort(table.begin(), table.end());
    OracleReport rep;
    rep.lifts = static_cast<unsigned long>(lifts.size());
    rep.depth = depth;
    rep.injective = true;
    std::optional<std::pair<mpz_class, mpz_class>> best;
    for (size_t i = 1; i < table.size(); ++i) {
        if (table[i].first == table[i - 1].first) {
            std::pair<mpz_class, mpz_class> hit(table[i - 1].second, table[i].second);
            if (!best || hit < *best) best = hit;
        }
    }
    if (best) {
        rep.injective = false;
        rep.collision = best;
    }
    return rep;
}

}  // namespace hyperp
