#include "betaforge/algebraic.hpp"

#include <algorithm>

namespace betaforge {

namespace {

struct RatInterval {
    Rational lo, hi;
};

RatInterval iv_mul(const RatInterval& a, const RatInterval& b) {
    Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}

/// Interval Horner evaluation of p over [x.lo, x.hi].
RatInterval iv_eval(const RatPoly& p, const RatInterval& x) {
    RatInterval acc{Rational(0), Rational(0)};
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = iv_mul(acc, x);
        acc.lo += *it;
        acc.hi += *it;
    }
    return acc;
}

} // namespace

BetaContext::BetaContext(IntPolynomial minpoly, Rational lo, Rational hi)
    : minpoly_(std::move(minpoly)), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (minpoly_.degree() < 1) throw Error("BetaContext: constant polynomial");
    if (minpoly_.degree() == 1) {
        Rational root = Rational(-minpoly_.coeff(0)) / Rational(minpoly_.coeff(1));
        lo_ = hi_ = root;
        exact_ = true;
        return;
    }
    if (lo_ >= hi_) throw Error("BetaContext: empty interval");
    int slo = sign_of(minpoly_.eval(lo_));
    int shi = sign_of(minpoly_.eval(hi_));
    if (slo == 0 || shi == 0 || slo == shi) throw NoSignChange();
    sign_lo_ = slo;
}

BetaCtxPtr BetaContext::exact_rational(const Rational& value) {
    BigInt num = numerator(value);
    BigInt den = denominator(value);
    // minpoly = den*x - num
    return std::make_shared<const BetaContext>(
        IntPolynomial{-num, den}, value - 1, value + 1);
}

std::pair<Rational, Rational> BetaContext::enclosure() const {
    std::lock_guard lock(mu_);
    return {lo_, hi_};
}

void BetaContext::refine(int rounds) const {
    std::lock_guard lock(mu_);
    for (int r = 0; r < rounds && !exact_; ++r) {
        Rational mid = (lo_ + hi_) / 2;
        int s = sign_of(minpoly_.eval(mid));
        if (s == 0) {
            lo_ = hi_ = mid;
            exact_ = true;
        } else if (s == sign_lo_) {
            lo_ = mid;
        } else {
            hi_ = mid;
        }
    }
}

void BetaContext::refine_to_width(const Rational& width) const {
    for (int guard = 0; guard < 100000; ++guard) {
        auto [lo, hi] = enclosure();
        if (hi - lo <= width) return;
        refine(8);
    }
    throw Error("BetaContext::refine_to_width: refinement stalled");
}

QBeta QBeta::beta(BetaCtxPtr ctx) {
    if (ctx->minpoly().degree() == 1) {
        Rational root = ctx->enclosure().first;
        return QBeta(std::move(ctx), rp_trim({root}));
    }
    return QBeta(std::move(ctx), {Rational(0), Rational(1)});
}

QBeta QBeta::constant(BetaCtxPtr ctx, const Rational& value) {
    return QBeta(std::move(ctx), rp_trim({value}));
}

QBeta QBeta::from_poly(BetaCtxPtr ctx, RatPoly rep) {
    RatPoly reduced = rp_mod(std::move(rep), rp_from_int(ctx->minpoly()));
    return QBeta(std::move(ctx), std::move(reduced));
}

void QBeta::check_same_field(const QBeta& o) const {
    if (ctx_ == o.ctx_) return;
    if (ctx_ && o.ctx_ && ctx_->minpoly() == o.ctx_->minpoly()) return;
    throw IncompatibleField();
}

QBeta QBeta::operator+(const QBeta& o) const {
    check_same_field(o);
    return QBeta(ctx_, rp_add(rep_, o.rep_));
}

QBeta QBeta::operator-(const QBeta& o) const {
    check_same_field(o);
    return QBeta(ctx_, rp_sub(rep_, o.rep_));
}

QBeta QBeta::operator-() const {
    return QBeta(ctx_, rp_scale(rep_, Rational(-1)));
}

QBeta QBeta::operator*(const QBeta& o) const {
    check_same_field(o);
    return QBeta(ctx_, rp_mod(rp_mul(rep_, o.rep_), rp_from_int(ctx_->minpoly())));
}

QBeta QBeta::operator*(const Rational& r) const {
    return QBeta(ctx_, rp_scale(rep_, r));
}

QBeta QBeta::operator/(const Rational& r) const {
    if (r == 0) throw Error("QBeta: division by zero");
    return QBeta(ctx_, rp_scale(rep_, Rational(1) / r));
}

QBeta QBeta::inverse() const {
    if (is_zero()) throw Error("QBeta: inverse of zero");
    if (auto r = as_rational()) {
        return QBeta(ctx_, rp_trim({Rational(1) / *r}));
    }
    RatPoly inv = rp_invmod(rep_, rp_from_int(ctx_->minpoly()));
    return QBeta(ctx_, rp_mod(std::move(inv), rp_from_int(ctx_->minpoly())));
}

QBeta QBeta::operator/(const QBeta& o) const {
    return *this * o.inverse();
}

int QBeta::sign() const {
    if (rep_.empty()) return 0;
    if (rp_degree(rep_) == 0) return sign_of(rep_[0]);
    // Interval evaluation, refining beta's enclosure by bisection (capped),
    // then a symbolic zero test via gcd with the defining polynomial.
    constexpr int kRefineCap = 256;
    constexpr int kHardCap = 4096;
    bool symbolic_done = false;
    for (int round = 0; round <= kHardCap; ++round) {
        auto [lo, hi] = ctx_->enclosure();
        RatInterval v = iv_eval(rep_, {lo, hi});
        if (v.lo > 0) return 1;
        if (v.hi < 0) return -1;
        if (lo == hi) return sign_of(rp_eval(rep_, lo));
        if (round >= kRefineCap && !symbolic_done) {
            RatPoly g = rp_gcd(rep_, rp_from_int(ctx_->minpoly()));
            if (rp_degree(g) >= 1) {
                int s1 = sign_of(rp_eval(g, lo));
                int s2 = sign_of(rp_eval(g, hi));
                if (s1 == 0 || s2 == 0 || s1 != s2) return 0;
            }
            symbolic_done = true; // provably nonzero, keep refining
        }
        ctx_->refine(1);
    }
    throw SignUndetermined();
}

std::optional<Rational> QBeta::as_rational() const {
    if (rep_.empty()) return Rational(0);
    if (rp_degree(rep_) == 0) return rep_[0];
    if (ctx_->exact()) return rp_eval(rep_, ctx_->enclosure().first);
    return std::nullopt;
}

std::pair<Rational, Rational> QBeta::enclosure(const Rational& width) const {
    if (auto r = as_rational()) return {*r, *r};
    for (int guard = 0; guard < 100000; ++guard) {
        auto [lo, hi] = ctx_->enclosure();
        RatInterval v = iv_eval(rep_, {lo, hi});
        if (v.hi - v.lo <= width) return {v.lo, v.hi};
        ctx_->refine(4);
    }
    throw Error("QBeta::enclosure: refinement stalled");
}

double QBeta::to_double() const {
    auto rough = enclosure(Rational(1));
    Rational scale = rational_abs(rough.first) + rational_abs(rough.second) + 1;
    auto [lo, hi] = enclosure(scale / Rational(BigInt(1) << 64));
    return betaforge::to_double((lo + hi) / 2);
}

std::optional<int> certified_compare(const QBeta& a, const QBeta& b, const Rational& gap) {
    Rational width(1, 4);
    while (true) {
        auto ea = a.enclosure(width);
        auto eb = b.enclosure(width);
        if (ea.second < eb.first) return -1;
        if (eb.second < ea.first) return 1;
        if (width <= gap / 4) return std::nullopt;
        width /= 16;
    }
}

} // namespace betaforge
