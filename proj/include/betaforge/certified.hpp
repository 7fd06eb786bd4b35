#pragma once

#include "betaforge/algebraic.hpp"
#include "betaforge/digit_sequence.hpp"

namespace betaforge {

/// A double together with an honest absolute error bound: the true value lies
/// in [value - error_bound, value + error_bound].
struct CertifiedValue {
    double value = 0.0;
    double error_bound = 0.0;

    /// Encloses the exact rational bracket [lo, hi], padding for the
    /// double roundings involved.
    static CertifiedValue from_bracket(const Rational& lo, const Rational& hi);

    double lo() const { return value - error_bound; }
    double hi() const { return value + error_bound; }
    bool contains(double x) const { return lo() <= x && x <= hi(); }
};

using AlgebraicNumber = QBeta;

/// Isolates the unique root of p in (lo, hi) by bisection down to an interval
/// of width <= tol and returns it as an element of Q(root). Throws
/// NoSignChange if p(lo)*p(hi) >= 0 and MultipleRoots if a Sturm count finds
/// more than one root in the bracket.
AlgebraicNumber isolate_root(const IntPolynomial& p, const Rational& lo,
                             const Rational& hi, const Rational& tol);

/// Exact rational enclosure of sum_{i=1..n_terms} digits[i-1] / beta^i plus
/// the geometric tail bound  max_digit * beta^{-n_terms} / (beta - 1)  for an
/// arbitrary continuation over {0,...,max_digit}. Requires beta_lo > 1.
std::pair<Rational, Rational> series_enclosure(const std::vector<int>& digits,
                                               int max_digit,
                                               const Rational& beta_lo,
                                               const Rational& beta_hi,
                                               size_t n_terms);

/// Partial series sum with a certified tail bound, per the enclosure above.
/// Throws BetaNotGreaterThanOne when the certified lower edge of beta <= 1.
CertifiedValue eval_tail_bounded_series(const DigitSequence& digits,
                                        const CertifiedValue& beta,
                                        size_t n_terms);

/// A positive scalar known only through a rational bracket that can be
/// tightened on demand (e.g. beta_c(m) mid-bisection).
class RefinableScalar {
public:
    virtual ~RefinableScalar() = default;
    virtual std::pair<Rational, Rational> bracket() const = 0;
    virtual void refine() = 0;
};

} // namespace betaforge
