#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <utility>

#include "betaforge/polynomial.hpp"

namespace betaforge {

/// The field context for Q(beta): a square-free defining polynomial together
/// with an isolating interval containing exactly one real root. The interval
/// is refined lazily (under a lock) when sign decisions need more precision;
/// refinement only ever nests, so shared contexts stay consistent.
class BetaContext {
public:
    /// Requires p(lo)*p(hi) < 0 and exactly one root of p in (lo, hi).
    BetaContext(IntPolynomial minpoly, Rational lo, Rational hi);

    /// Context for an exactly known rational beta = value.
    static std::shared_ptr<const BetaContext> exact_rational(const Rational& value);

    const IntPolynomial& minpoly() const { return minpoly_; }
    bool exact() const { return exact_; }

    /// Current enclosure [lo, hi] of beta (lo == hi when exact).
    std::pair<Rational, Rational> enclosure() const;

    /// Bisect the isolating interval `rounds` times.
    void refine(int rounds) const;

    /// Refine until hi - lo <= width (no-op when exact).
    void refine_to_width(const Rational& width) const;

private:
    IntPolynomial minpoly_;
    mutable Rational lo_, hi_;
    mutable bool exact_ = false;
    int sign_lo_ = 0;
    mutable std::mutex mu_;
};

using BetaCtxPtr = std::shared_ptr<const BetaContext>;

/// An element of Q(beta), stored as a rational-coefficient polynomial in beta
/// reduced modulo the context's defining polynomial. Immutable value type;
/// all arithmetic is exact and sign determination is certified.
class QBeta {
public:
    QBeta() = default;

    static QBeta beta(BetaCtxPtr ctx);
    static QBeta constant(BetaCtxPtr ctx, const Rational& value);
    static QBeta from_poly(BetaCtxPtr ctx, RatPoly rep);

    const BetaCtxPtr& ctx() const { return ctx_; }
    const RatPoly& rep() const { return rep_; }
    bool is_zero() const { return rep_.empty(); }

    QBeta operator+(const QBeta& o) const;
    QBeta operator-(const QBeta& o) const;
    QBeta operator-() const;
    QBeta operator*(const QBeta& o) const;
    QBeta operator/(const QBeta& o) const;
    QBeta inverse() const;

    QBeta operator+(const Rational& r) const { return *this + constant(ctx_, r); }
    QBeta operator-(const Rational& r) const { return *this - constant(ctx_, r); }
    QBeta operator*(const Rational& r) const;
    QBeta operator/(const Rational& r) const;

    /// Certified sign: -1, 0, +1. Refines the context's isolating interval up
    /// to a hard cap, then falls back to a symbolic zero test (gcd with the
    /// defining polynomial). Throws SignUndetermined only if both fail, which
    /// cannot happen for a square-free defining polynomial.
    int sign() const;

    int compare(const QBeta& o) const { return (*this - o).sign(); }
    bool operator==(const QBeta& o) const { return compare(o) == 0; }
    bool operator<(const QBeta& o) const { return compare(o) < 0; }
    bool operator<=(const QBeta& o) const { return compare(o) <= 0; }
    bool operator>(const QBeta& o) const { return compare(o) > 0; }
    bool operator>=(const QBeta& o) const { return compare(o) >= 0; }

    /// If this element is rational (degree-0 representation), its value.
    std::optional<Rational> as_rational() const;

    /// Rational enclosure [lo, hi] of the real value with hi - lo <= width.
    std::pair<Rational, Rational> enclosure(const Rational& width) const;

    double to_double() const;

private:
    QBeta(BetaCtxPtr ctx, RatPoly rep) : ctx_(std::move(ctx)), rep_(std::move(rep)) {}
    void check_same_field(const QBeta& o) const;

    BetaCtxPtr ctx_;
    RatPoly rep_;
};

inline QBeta operator*(const Rational& r, const QBeta& x) { return x * r; }
inline QBeta operator+(const Rational& r, const QBeta& x) { return x + r; }
inline QBeta operator-(const Rational& r, const QBeta& x) { return -(x - r); }

/// Compares two algebraic numbers that may live in different fields, by
/// refining both enclosures down to `gap`. Returns nullopt if the values are
/// still not separated at that resolution (they may be equal or merely close).
std::optional<int> certified_compare(const QBeta& a, const QBeta& b, const Rational& gap);

} // namespace betaforge
