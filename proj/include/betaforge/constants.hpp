#pragma once

#include <vector>

#include "betaforge/certified.hpp"
#include "betaforge/thue_morse.hpp"

namespace betaforge {

/// The generalised golden ratio G(m): k+1 for m = 2k (exact rational), the
/// positive root of x^2 - (k+1)x - (k+1) for m = 2k+1.
QBeta golden_ratio(int m);

/// The bifurcation constant beta_f(m): root of x^2 - (k+1)x - k in
/// (G(m), m+1] for m = 2k, root of x^3 - (k+2)x^2 + x - (k+1) for m = 2k+1.
QBeta beta_f(int m);

/// Defining polynomial of beta_f(m) (quadratic for even m, cubic for odd m).
IntPolynomial beta_f_polynomial(int m);
/// Defining polynomial of G(m) (linear for even m, quadratic for odd m).
IntPolynomial golden_ratio_polynomial(int m);

/// First n digits lambda_1(m)..lambda_n(m) of the generalised Thue-Morse
/// sequence: k + lambda_i - lambda_{i-1} for m = 2k, k + lambda_i for
/// m = 2k+1, and the classical bits lambda_i for m = 1.
DigitSequence generalized_thue_morse(int m, int n);

/// Bisection state for beta_c(m), the unique solution of
/// sum_i lambda_i(m) beta^{-i} = 1. Every bisection step certifies the sign
/// of the series against exact rational partial sums plus a geometric tail
/// bound, so the bracket always contains beta_c(m). Refinable on demand.
class BetaCSolver final : public RefinableScalar {
public:
    explicit BetaCSolver(int m);

    std::pair<Rational, Rational> bracket() const override { return {lo_, hi_}; }
    void refine() override;
    void refine_to_width(const Rational& width);
    int m() const { return m_; }

private:
    int certified_sign_at(const Rational& beta) const; // sign of F(beta) = S(beta) - 1
    const std::vector<int>& digits(size_t n) const;

    int m_;
    Rational lo_, hi_;
    mutable std::vector<int> lambda_;
};

/// beta_c(m) to an absolute tolerance (tol >= 1e-12).
CertifiedValue beta_c(int m, const Rational& tol);

struct ConstantTriple {
    int m;
    QBeta g;
    QBeta bf;
    CertifiedValue bc;
};

/// The full constant triple with the ordering G(m) < beta_f(m) < beta_c(m)
/// < m+1 verified with certified margins.
ConstantTriple constant_triple(int m, const Rational& tol);

struct AsymptoticRow {
    int k;
    double g_even_dev;    // G(2k) - (k+1), identically zero
    double bf_even_dev;   // beta_f(2k) - (k+2)
    double bc_even_dev;   // beta_c(2k) - (k+2)
    double g_odd_dev;     // G(2k+1) - (k+2)
    double bf_odd_dev;    // beta_f(2k+1) - (k+2)
    double bc_odd_dev;    // beta_c(2k+1) - (k+2)
};

/// Deviation table for k = 1..k_max (k_max >= 2).
std::vector<AsymptoticRow> asymptotic_report(int k_max);

} // namespace betaforge
