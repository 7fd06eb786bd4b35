#include "betaforge/geometry.hpp"

namespace betaforge {

ExpansionParams::ExpansionParams(int m_, QBeta beta_, BetaSpecKind kind_)
    : m(m_), beta(std::move(beta_)), k(m_ / 2), kind(kind_) {
    if (m < 1) throw Error("ExpansionParams: m must be >= 1");
    if (!(beta > q(1)) || !(beta <= q(m + 1))) throw BetaOutOfRange();
}

QBeta ExpansionParams::right_endpoint() const {
    return q(m) / (beta - Rational(1));
}

QBeta apply_map(const ExpansionParams& params, int i, const QBeta& x) {
    if (i < 0 || i > params.m) throw DigitOutOfRange();
    return params.beta * x - Rational(i);
}

namespace {

// [i/beta, (i*beta + m - i) / (beta*(beta-1))]
Interval digit_interval(const ExpansionParams& p, int i) {
    QBeta inv_beta = p.beta.inverse();
    QBeta denom_inv = (p.beta * (p.beta - Rational(1))).inverse();
    return {p.q(i) * inv_beta, (p.beta * Rational(i) + Rational(p.m - i)) * denom_inv};
}

} // namespace

IntervalCatalog build_catalog(const ExpansionParams& p) {
    IntervalCatalog cat;
    QBeta inv_beta = p.beta.inverse();
    QBeta denom_inv = (p.beta * (p.beta - Rational(1))).inverse();

    for (int i = 0; i <= p.m; ++i) cat.digit.push_back(digit_interval(p, i));
    for (int i = 1; i <= p.m; ++i) {
        cat.choice.push_back({cat.digit[static_cast<size_t>(i)].lo,
                              cat.digit[static_cast<size_t>(i - 1)].hi});
    }
    cat.switch_region = {cat.digit[1].lo, cat.digit[static_cast<size_t>(p.m - 1)].hi};
    cat.fixed0 = {p.q(0), inv_beta};
    cat.fixed_m = {cat.switch_region.hi, p.right_endpoint()};

    // Interior fixed-digit intervals exist iff beta >= (m+2)/2 (kept even when
    // degenerate at beta == (m+2)/2).
    if (p.beta >= p.q(Rational(p.m + 2, 2))) {
        std::vector<Interval> fixed;
        for (int i = 1; i <= p.m - 1; ++i) {
            fixed.push_back({cat.digit[static_cast<size_t>(i - 1)].hi,
                             cat.digit[static_cast<size_t>(i + 1)].lo});
        }
        cat.fixed_interior = std::move(fixed);
    }
    return cat;
}

std::vector<int> valid_digits(const ExpansionParams& p, const QBeta& x) {
    std::vector<int> out;
    // x is in digit interval i iff i/beta <= x <= (i*beta+m-i)/(beta(beta-1));
    // scan the (at most two) candidates around floor(beta*x).
    for (int i = 0; i <= p.m; ++i) {
        QBeta mapped = p.beta * x - Rational(i);
        if (mapped.sign() >= 0 && mapped <= p.right_endpoint()) out.push_back(i);
    }
    return out;
}

Location locate(const ExpansionParams& p, const IntervalCatalog& cat, const QBeta& x) {
    Location loc;
    if (x.sign() < 0 || x > p.right_endpoint()) {
        loc.outside = true;
        return loc;
    }
    std::vector<int> digits;
    for (int i = 0; i <= p.m; ++i) {
        if (cat.digit[static_cast<size_t>(i)].contains(x)) digits.push_back(i);
    }
    if (digits.empty()) {
        loc.outside = true; // cannot happen for beta <= m+1
        return loc;
    }
    for (size_t j = 1; j < digits.size(); ++j) {
        if (digits[j] == digits[j - 1] + 1) loc.choices.push_back(digits[j]);
    }
    if (loc.choices.empty()) loc.fixed_digit = digits.front();
    return loc;
}

} // namespace betaforge
