#pragma once

#include <initializer_list>
#include <vector>

#include "betaforge/rational.hpp"

namespace betaforge {

/// Polynomial with arbitrary-precision integer coefficients, ascending degree.
/// The zero polynomial has an empty coefficient list and degree -1.
class IntPolynomial {
public:
    IntPolynomial() = default;
    IntPolynomial(std::initializer_list<BigInt> ascending);
    explicit IntPolynomial(std::vector<BigInt> ascending);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    const BigInt& coeff(int i) const { return coeffs_.at(static_cast<size_t>(i)); }

    Rational eval(const Rational& x) const;
    IntPolynomial derivative() const;

    bool operator==(const IntPolynomial& other) const { return coeffs_ == other.coeffs_; }

private:
    void trim();
    std::vector<BigInt> coeffs_;
};

/// Number of distinct real roots of p in the open interval (lo, hi),
/// via a Sturm sequence. Requires p(lo) != 0 and p(hi) != 0.
int count_roots_in(const IntPolynomial& p, const Rational& lo, const Rational& hi);

// Dense rational polynomials, ascending degree, used for arithmetic in Q[x].
using RatPoly = std::vector<Rational>;

RatPoly rp_trim(RatPoly p);
bool rp_is_zero(const RatPoly& p);
int rp_degree(const RatPoly& p);
RatPoly rp_add(const RatPoly& a, const RatPoly& b);
RatPoly rp_sub(const RatPoly& a, const RatPoly& b);
RatPoly rp_mul(const RatPoly& a, const RatPoly& b);
RatPoly rp_scale(const RatPoly& a, const Rational& s);
/// Remainder of a modulo b (b nonzero).
RatPoly rp_mod(const RatPoly& a, const RatPoly& b);
/// Monic gcd in Q[x]; returns {1} for coprime inputs.
RatPoly rp_gcd(RatPoly a, RatPoly b);
Rational rp_eval(const RatPoly& p, const Rational& x);
RatPoly rp_from_int(const IntPolynomial& p);

/// Extended Euclid: returns u with u*a == gcd(a, b) (mod b).
/// Used for inversion modulo a minimal polynomial.
RatPoly rp_invmod(const RatPoly& a, const RatPoly& modulus);

} // namespace betaforge
