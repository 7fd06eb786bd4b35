#include "betaforge/certified.hpp"

#include <cmath>
#include <limits>

namespace betaforge {

CertifiedValue CertifiedValue::from_bracket(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw Error("CertifiedValue::from_bracket: inverted bracket");
    Rational mid = (lo + hi) / 2;
    Rational half = (hi - lo) / 2;
    double v = to_double(mid);
    double e = to_double(half);
    // Pad for the two double conversions.
    double pad = std::abs(v) * std::numeric_limits<double>::epsilon() * 4 +
                 e * 1e-9 + std::numeric_limits<double>::denorm_min();
    return {v, e + pad};
}

AlgebraicNumber isolate_root(const IntPolynomial& p, const Rational& lo,
                             const Rational& hi, const Rational& tol) {
    if (tol <= 0) throw Error("isolate_root: nonpositive tolerance");
    Rational plo = p.eval(lo), phi = p.eval(hi);
    if (plo == 0 || phi == 0 || sign_of(plo) == sign_of(phi)) throw NoSignChange();
    if (count_roots_in(p, lo, hi) != 1) throw MultipleRoots();

    Rational a = lo, b = hi;
    int sign_a = sign_of(plo);
    while (b - a > tol) {
        Rational mid = (a + b) / 2;
        int s = sign_of(p.eval(mid));
        if (s == 0) {
            // Rational root; shrink a symmetric sign-changing bracket around it.
            Rational delta = std::min(std::min(Rational(mid - a), Rational(b - mid)), tol) / 2;
            a = mid - delta;
            b = mid + delta;
            break;
        }
        if (s == sign_a) {
            a = mid;
        } else {
            b = mid;
        }
    }
    auto ctx = std::make_shared<const BetaContext>(p, a, b);
    return QBeta::beta(std::move(ctx));
}

std::pair<Rational, Rational> series_enclosure(const std::vector<int>& digits,
                                               int max_digit,
                                               const Rational& beta_lo,
                                               const Rational& beta_hi,
                                               size_t n_terms) {
    if (beta_lo <= 1) throw BetaNotGreaterThanOne();
    if (beta_hi < beta_lo) throw Error("series_enclosure: inverted beta bracket");
    auto partial = [&](const Rational& beta) {
        Rational x = Rational(1) / beta;
        Rational acc(0);
        size_t n = std::min(n_terms, digits.size());
        for (size_t i = n; i-- > 0;) {
            acc = (acc + digits[i]) * x;
        }
        return acc;
    };
    // Nonnegative digits make the series monotone decreasing in beta.
    Rational s_min = partial(beta_hi);
    Rational s_max = partial(beta_lo);
    size_t n = std::min(n_terms, digits.size());
    Rational tail = Rational(max_digit) * rational_pow(Rational(1) / beta_lo,
                                                       static_cast<unsigned long>(n)) /
                    (beta_lo - 1);
    return {s_min, s_max + tail};
}

CertifiedValue eval_tail_bounded_series(const DigitSequence& digits,
                                        const CertifiedValue& beta,
                                        size_t n_terms) {
    // Doubles are exact rationals; build the bracket from them directly.
    Rational blo = Rational(beta.value) - Rational(beta.error_bound);
    Rational bhi = Rational(beta.value) + Rational(beta.error_bound);
    if (blo <= 1) throw BetaNotGreaterThanOne();
    auto prefix = digits.prefix(n_terms);
    auto [lo, hi] = series_enclosure(prefix, digits.alphabet_max, blo, bhi, n_terms);
    return CertifiedValue::from_bracket(lo, hi);
}

} // namespace betaforge
