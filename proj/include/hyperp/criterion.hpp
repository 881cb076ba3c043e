#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperp/hpoint.hpp"
#include "hyperp/polynomial.hpp"

namespace hyperp {

/// Outcome of the valuation identity 2(v(f(x)-f(y)) - v(x-y)) = v(f'(x)) + v(f'(y))
/// at one pair. Valuations are extended integers; an infinite left side with
/// finite right side is a failure, both infinite is the constant-direction
/// degenerate case.
enum class Eq1Status { Holds, Fails, Indeterminate };

struct Eq1Outcome {
    Eq1Status status;
    ExtInt lhs;  // 2(v(f(x)-f(y)) - v(x-y)); infinite iff f(x) = f(y)
    ExtInt rhs;  // v(f'(x)) + v(f'(y))
    std::string note;
};

Eq1Outcome eq_one_holds(const RationalMap& f, const PadicNumber& x, const PadicNumber& y);

struct PairWitness {
    PadicNumber x, y;
    ExtInt lhs, rhs;
    std::string note;
};

/// Verdict of a sweep over all pairs of integer residue lifts mod p^depth
/// that lie in the affinoid. Deterministic: the witness is the first
/// failing (respectively first indeterminate) pair in lexicographic order,
/// independent of the worker count.
struct CriterionVerdict {
    Eq1Status status;
    std::optional<PairWitness> witness;
    unsigned long pairs_tested = 0;
    unsigned long indeterminate_pairs = 0;
    unsigned long lifts = 0;
    long depth = 0;
    long prime = 0;
};

CriterionVerdict eq_one_sweep(const RationalMap& f, const Affinoid& domain, long depth,
                              int workers = 1);

struct CrossRatioResult {
    PadicNumber value;
    long norm_exp;  // log_p|R|
};

/// R(a,b;c,d) = (a-c)(b-d)/((a-d)(b-c)); throws CoincidentPoints when any of
/// the four differences vanishes.
CrossRatioResult cross_ratio(const PadicNumber& a, const PadicNumber& b, const PadicNumber& c,
                             const PadicNumber& d);

struct CrossRatioCheck {
    bool holds;
    long domain_exp;
    long image_exp;
};

/// |R(a,b;c,d)| = |R(f(a),f(b);f(c),f(d))|; throws ImageCollision when the
/// images are not pairwise distinct.
CrossRatioCheck cross_ratio_preserved(const RationalMap& f, const PadicNumber& a,
                                      const PadicNumber& b, const PadicNumber& c,
                                      const PadicNumber& d);

/// Exact closed-unit-ball isometry certificate from the difference quotient
/// g(z,w) = (f(z)-f(w))/(z-w) = sum_m c_{m+1} (z^m + z^{m-1}w + ... + w^m):
/// valid iff the Gauss norm of g on the unit bidisk is 1 and its reduction
/// is a nonzero constant, which holds iff |f(x)-f(y)| = |x-y| for all x, y
/// in the closed unit ball of C_p.
struct IsometryCertificate {
    long prime;
    std::vector<PadicNumber> diagonal;  // diagonal[m] = f coefficient m+1
    RadiusExp gauss_norm_exp;
    bool valid;
    std::string reduction_str;  // bivariate reduction over F_p, e.g. "1 + z + w"
};

IsometryCertificate isometry_certificate(const Polynomial& f);

/// Affine change of coordinates phi with h = phi o f fixing the Gauss point
/// and reducing to the identity; requires f injective on the closed unit
/// ball (verified through the reduced degree).
struct Normalization {
    Homography phi;
    Polynomial h;
};

Normalization normalize_to_gauss_fixing(const Polynomial& f);

/// Evaluates f on every integer lift mod p^depth inside the domain and
/// compares residues mod p^depth; a collision disproves injectivity, no
/// collision certifies it at this depth.
struct OracleReport {
    bool injective;
    std::optional<std::pair<mpz_class, mpz_class>> collision;
    unsigned long lifts = 0;
    long depth = 0;
};

OracleReport exhaustive_injectivity_oracle(const Polynomial& f, long depth, const Affinoid& domain);

/// Integer lifts j in [0, p^depth) lying in the affinoid, ascending.
std::vector<mpz_class> residue_lifts(const Affinoid& domain, long depth);

}  // namespace hyperp
