#include "betaforge/constants.hpp"

namespace betaforge {

int ThueMorseGenerator::bit(size_t i) const {
    std::lock_guard lock(mu_);
    while (cache_.size() <= i) {
        size_t j = cache_.size();
        uint8_t half = cache_[j / 2];
        cache_.push_back(j % 2 == 0 ? half : static_cast<uint8_t>(1 - half));
    }
    return cache_[i];
}

IntPolynomial golden_ratio_polynomial(int m) {
    int k = m / 2;
    if (m % 2 == 0) return IntPolynomial{-(k + 1), 1};
    return IntPolynomial{-(k + 1), -(k + 1), 1};
}

IntPolynomial beta_f_polynomial(int m) {
    int k = m / 2;
    if (m % 2 == 0) return IntPolynomial{-k, -(k + 1), 1};
    return IntPolynomial{-(k + 1), 1, -(k + 2), 1};
}

QBeta golden_ratio(int m) {
    if (m < 1) throw Error("golden_ratio: m must be >= 1");
    int k = m / 2;
    if (m % 2 == 0) {
        return QBeta::beta(BetaContext::exact_rational(Rational(k + 1)));
    }
    // positive root of x^2-(k+1)x-(k+1) lies in (k+1, k+2)
    return isolate_root(golden_ratio_polynomial(m), Rational(k + 1), Rational(k + 2),
                        Rational(1, 1 << 20));
}

QBeta beta_f(int m) {
    if (m < 1) throw Error("beta_f: m must be >= 1");
    int k = m / 2;
    // Both parities' polynomials have their dominant root in (k+1, k+2).
    return isolate_root(beta_f_polynomial(m), Rational(k + 1), Rational(k + 2),
                        Rational(1, 1 << 20));
}

DigitSequence generalized_thue_morse(int m, int n) {
    if (n < 1) throw Error("generalized_thue_morse: n must be >= 1");
    static const ThueMorseGenerator tm;
    DigitSequence seq;
    seq.alphabet_max = m;
    seq.preperiod.reserve(static_cast<size_t>(n));
    int k = m / 2;
    for (int i = 1; i <= n; ++i) {
        int digit;
        if (m == 1) {
            digit = tm.bit(static_cast<size_t>(i));
        } else if (m % 2 == 0) {
            digit = k + tm.bit(static_cast<size_t>(i)) - tm.bit(static_cast<size_t>(i - 1));
        } else {
            digit = k + tm.bit(static_cast<size_t>(i));
        }
        seq.preperiod.push_back(digit);
    }
    return seq;
}

const std::vector<int>& BetaCSolver::digits(size_t n) const {
    if (lambda_.size() < n) {
        lambda_ = generalized_thue_morse(m_, static_cast<int>(n)).preperiod;
    }
    return lambda_;
}

int BetaCSolver::certified_sign_at(const Rational& beta) const {
    for (size_t n = 32; n <= (1u << 20); n *= 2) {
        const auto& lam = digits(n);
        auto [slo, shi] = series_enclosure(lam, m_, beta, beta, n);
        if (slo > 1) return 1;
        if (shi < 1) return -1;
    }
    return 0; // series value indistinguishable from 1 at the term cap
}

BetaCSolver::BetaCSolver(int m) : m_(m) {
    if (m < 1) throw Error("BetaCSolver: m must be >= 1");
    if (m % 2 == 0) {
        lo_ = Rational(m / 2 + 1);
    } else {
        // rational upper bound of G(m), still strictly below beta_c(m)
        QBeta g = golden_ratio(m);
        g.ctx()->refine_to_width(Rational(1, 1000000));
        lo_ = g.ctx()->enclosure().second;
    }
    hi_ = Rational(m + 1);
    if (certified_sign_at(lo_) <= 0 || certified_sign_at(hi_) >= 0) throw BracketFailure();
}

void BetaCSolver::refine() {
    Rational mid = (lo_ + hi_) / 2;
    int s = certified_sign_at(mid);
    if (s == 0) {
        // Flat spot at the term cap: retry at an off-centre split point.
        mid = lo_ + (hi_ - lo_) * Rational(5, 11);
        s = certified_sign_at(mid);
        if (s == 0) throw Error("BetaCSolver: sign undetermined at term cap");
    }
    if (s > 0) {
        lo_ = mid;
    } else {
        hi_ = mid;
    }
}

void BetaCSolver::refine_to_width(const Rational& width) {
    // Fast path: locate the root in double precision, then certify a bracket
    // of the requested width around it with the exact sign test. Certification
    // keeps the bracket sound; on failure plain bisection takes over.
    if (hi_ - lo_ > width * 4 && width >= Rational(1, BigInt("1000000000000"))) {
        const auto& lam = digits(160);
        auto series = [&](double x) {
            double inv = 1.0 / x, sum = 0.0;
            for (size_t i = lam.size(); i-- > 0;) sum = (sum + lam[i]) * inv;
            return sum;
        };
        double flo = to_double(lo_), fhi = to_double(hi_);
        for (int round = 0; round < 60 && fhi - flo > 1e-14 * fhi; ++round) {
            double mid = (flo + fhi) / 2;
            (series(mid) > 1 ? flo : fhi) = mid;
        }
        Rational guess((flo + fhi) / 2);
        Rational cand_lo = guess - width / 2, cand_hi = guess + width / 2;
        if (cand_lo > lo_ && cand_hi < hi_ && certified_sign_at(cand_lo) > 0 &&
            certified_sign_at(cand_hi) < 0) {
            lo_ = cand_lo;
            hi_ = cand_hi;
            return;
        }
    }
    while (hi_ - lo_ > width) refine();
}

CertifiedValue beta_c(int m, const Rational& tol) {
    if (tol < Rational(1, BigInt("1000000000000"))) {
        throw Error("beta_c: tolerance below 1e-12 floor");
    }
    BetaCSolver solver(m);
    solver.refine_to_width(tol);
    auto [lo, hi] = solver.bracket();
    return CertifiedValue::from_bracket(lo, hi);
}

ConstantTriple constant_triple(int m, const Rational& tol) {
    ConstantTriple t{m, golden_ratio(m), beta_f(m), beta_c(m, tol)};
    // Certified strict chain G(m) < beta_f(m) < beta_c(m) < m+1.
    auto separated = [](const Rational& a_hi, const Rational& b_lo) { return a_hi < b_lo; };
    Rational width(1, 1024);
    for (int round = 0; round < 60; ++round) {
        auto ge = t.g.enclosure(width);
        auto fe = t.bf.enclosure(width);
        Rational bc_lo = Rational(t.bc.value) - Rational(t.bc.error_bound);
        Rational bc_hi = Rational(t.bc.value) + Rational(t.bc.error_bound);
        if (separated(ge.second, fe.first) && separated(fe.second, bc_lo) &&
            bc_hi < Rational(m + 1)) {
            return t;
        }
        width /= 16;
    }
    throw Error("constant_triple: chain G < beta_f < beta_c not certified");
}

std::vector<AsymptoticRow> asymptotic_report(int k_max) {
    if (k_max < 2) throw Error("asymptotic_report: k_max must be >= 2");
    const Rational tol(1, BigInt("1000000000"));
    std::vector<AsymptoticRow> rows;
    rows.reserve(static_cast<size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) {
        AsymptoticRow row;
        row.k = k;
        row.g_even_dev = 0.0; // G(2k) = k+1 exactly
        row.bf_even_dev = beta_f(2 * k).to_double() - (k + 2);
        row.bc_even_dev = beta_c(2 * k, tol).value - (k + 2);
        row.g_odd_dev = golden_ratio(2 * k + 1).to_double() - (k + 2);
        row.bf_odd_dev = beta_f(2 * k + 1).to_double() - (k + 2);
        row.bc_odd_dev = beta_c(2 * k + 1, tol).value - (k + 2);
        rows.push_back(row);
    }
    return rows;
}

} // namespace betaforge
