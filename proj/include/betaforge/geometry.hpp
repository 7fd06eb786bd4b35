#pragma once

#include <optional>
#include <vector>

#include "betaforge/certified.hpp"

namespace betaforge {

/// How beta was specified; decides whether boundary-sensitive verdicts
/// (uniqueness certificates) may be issued with full confidence.
enum class BetaSpecKind { symbolic, rational, decimal };

/// Alphabet {0,...,m} with base beta in (1, m+1]. Owns the field context via
/// the QBeta value; k = floor(m/2) as used throughout the interval geometry.
struct ExpansionParams {
    int m = 1;
    QBeta beta;
    int k = 0;
    BetaSpecKind kind = BetaSpecKind::symbolic;

    ExpansionParams(int m_, QBeta beta_, BetaSpecKind kind_ = BetaSpecKind::symbolic);

    QBeta q(const Rational& r) const { return QBeta::constant(beta.ctx(), r); }
    QBeta q(long v) const { return q(Rational(v)); }

    /// Right endpoint of the self-similar interval: m / (beta - 1).
    QBeta right_endpoint() const;
};

/// Closed interval with exact endpoints in Q(beta).
struct Interval {
    QBeta lo, hi;

    bool contains(const QBeta& x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
    QBeta width() const { return hi - lo; }
    QBeta midpoint() const { return (lo + hi) / Rational(2); }
    bool is_degenerate() const { return lo == hi; }
};

/// The digit / choice / switch / fixed-digit intervals for given (m, beta).
/// digit[i] for i = 0..m; choice[i] indexed 1..m via choice_interval(i);
/// interior fixed-digit intervals exist only when beta >= (m+2)/2.
struct IntervalCatalog {
    std::vector<Interval> digit;           // size m+1
    std::vector<Interval> choice;          // size m, choice[i-1] is the i-th
    Interval switch_region;
    Interval fixed0;                       // [0, 1/beta]
    Interval fixed_m;                      // [right switch endpoint, m/(beta-1)]
    std::optional<std::vector<Interval>> fixed_interior; // size m-1 when present

    const Interval& choice_interval(int i) const { return choice.at(static_cast<size_t>(i - 1)); }
};

/// Classification of a point against the catalog. Boundary points report
/// every choice interval they belong to.
struct Location {
    bool outside = false;
    std::vector<int> choices;             // indices i of containing choice intervals
    std::optional<int> fixed_digit;       // set when exactly one digit is legal
};

/// T_{beta,i}(x) = beta*x - i. Throws DigitOutOfRange for i outside 0..m.
QBeta apply_map(const ExpansionParams& params, int i, const QBeta& x);

IntervalCatalog build_catalog(const ExpansionParams& params);

Location locate(const ExpansionParams& params, const IntervalCatalog& catalog, const QBeta& x);

/// Digits i such that T_{beta,i}(x) stays inside I_{beta,m}; equivalently the
/// digit intervals containing x. Empty only for x outside I.
std::vector<int> valid_digits(const ExpansionParams& params, const QBeta& x);

} // namespace betaforge
