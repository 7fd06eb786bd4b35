#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "betaforge/algebraic.hpp"
#include "betaforge/certified.hpp"
#include "betaforge/digit_sequence.hpp"
#include "betaforge/polynomial.hpp"
#include "betaforge/rational.hpp"

using namespace betaforge;

namespace {

const IntPolynomial kGoldenPoly{-1, -1, 1};        // x^2 - x - 1
const IntPolynomial kTribLikePoly{-1, 1, -2, 1};   // x^3 - 2x^2 + x - 1

QBeta golden() {
    return isolate_root(kGoldenPoly, Rational(1), Rational(2), Rational(1, 1000000));
}

} // namespace

TEST_CASE("parse_rational accepts integers, fractions and decimals") {
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("2.47098") == Rational(247098, 100000));
    CHECK(parse_rational("-1.5") == Rational(-3, 2));
    CHECK(parse_rational("0.000001") == Rational(1, 1000000));
    CHECK_THROWS_AS(parse_rational("1.2.3"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("rational_pow matches repeated multiplication") {
    CHECK(rational_pow(Rational(3, 2), 0) == Rational(1));
    CHECK(rational_pow(Rational(3, 2), 5) == Rational(243, 32));
    CHECK(rational_pow(Rational(-2), 3) == Rational(-8));
}

TEST_CASE("IntPolynomial eval and derivative") {
    IntPolynomial p{-6, 11, -6, 1}; // (x-1)(x-2)(x-3)
    CHECK(p.degree() == 3);
    CHECK(p.eval(Rational(1)) == 0);
    CHECK(p.eval(Rational(4)) == Rational(6));
    CHECK(p.eval(Rational(1, 2)) == Rational(-6) + Rational(11, 2) - Rational(6, 4) + Rational(1, 8));
    IntPolynomial d = p.derivative();
    CHECK((d == IntPolynomial{11, -12, 3}));
    CHECK(IntPolynomial{}.derivative().is_zero());
}

TEST_CASE("Sturm root counting") {
    CHECK(count_roots_in(kGoldenPoly, Rational(1), Rational(2)) == 1);
    CHECK(count_roots_in(kGoldenPoly, Rational(-2), Rational(2)) == 2);
    CHECK(count_roots_in(kGoldenPoly, Rational(2), Rational(3)) == 0);
    IntPolynomial cubic{-6, 11, -6, 1};
    CHECK(count_roots_in(cubic, Rational(0), Rational(4)) == 3);
    CHECK(count_roots_in(cubic, Rational(3, 2), Rational(5, 2)) == 1);
}

TEST_CASE("isolate_root brackets the golden ratio") {
    QBeta phi = isolate_root(kGoldenPoly, Rational(1), Rational(2), Rational(1, BigInt(1000000000000)));
    auto [lo, hi] = phi.enclosure(Rational(1, BigInt(1000000000000)));
    CHECK(lo <= hi);
    CHECK(Rational(hi - lo) <= Rational(1, BigInt(1000000000000)));
    // 1.6180339887498948 to 12 digits
    CHECK(to_double(lo) == doctest::Approx(1.618033988749895).epsilon(1e-12));
}

TEST_CASE("isolate_root rejects bad brackets") {
    CHECK_THROWS_AS(isolate_root(kGoldenPoly, Rational(2), Rational(3), Rational(1, 100)),
                    NoSignChange);
    IntPolynomial cubic{-6, 11, -6, 1};
    CHECK_THROWS_AS(isolate_root(cubic, Rational(0), Rational(4), Rational(1, 100)),
                    MultipleRoots);
}

TEST_CASE("Q(beta) arithmetic satisfies the defining relation") {
    QBeta phi = golden();
    auto ctx = phi.ctx();
    QBeta one = QBeta::constant(ctx, Rational(1));

    CHECK(phi * phi == phi + one);             // phi^2 = phi + 1
    CHECK(phi.inverse() == phi - Rational(1)); // 1/phi = phi - 1
    CHECK(phi * phi.inverse() == one);
    CHECK(phi / phi == one);
    CHECK((phi + one) - one == phi);
    CHECK(-(-phi) == phi);
    CHECK((phi + phi) == phi * Rational(2));

    // distributivity spot check
    QBeta a = phi * Rational(3, 7) + Rational(2);
    QBeta b = phi - Rational(5, 3);
    CHECK(a * (b + one) == a * b + a);
}

TEST_CASE("Q(beta) arithmetic in a cubic field") {
    QBeta g = isolate_root(kTribLikePoly, Rational(1), Rational(2), Rational(1, 1000000));
    auto ctx = g.ctx();
    QBeta one = QBeta::constant(ctx, Rational(1));
    // g^3 = 2g^2 - g + 1
    CHECK(g * g * g == g * g * Rational(2) - g + one);
    CHECK(g * g.inverse() == one);
    CHECK((g * g).inverse() * g * g == one);
}

TEST_CASE("certified sign and ordering") {
    QBeta phi = golden();
    CHECK(phi.sign() == 1);
    CHECK((-phi).sign() == -1);
    CHECK((phi - phi).sign() == 0);
    CHECK((phi * phi - phi - Rational(1)).is_zero());
    CHECK(phi > QBeta::constant(phi.ctx(), Rational(1618033, 1000000)));
    CHECK(phi < QBeta::constant(phi.ctx(), Rational(1618034, 1000000)));
}

TEST_CASE("as_rational detects rational elements") {
    QBeta phi = golden();
    CHECK_FALSE(phi.as_rational().has_value());
    CHECK((phi * phi - phi).as_rational() == Rational(1));
    QBeta r = QBeta::beta(BetaContext::exact_rational(Rational(5, 3)));
    CHECK(r.as_rational() == Rational(5, 3));
}

TEST_CASE("certified_compare separates values in different fields") {
    QBeta phi = golden();
    QBeta phi2 = golden(); // fresh context
    QBeta near = QBeta::beta(BetaContext::exact_rational(Rational(1618, 1000)));
    auto cmp = certified_compare(phi, near, Rational(1, BigInt(1000000000)));
    REQUIRE(cmp.has_value());
    CHECK(*cmp == 1);
    // equal values in distinct contexts are never separated
    CHECK_FALSE(certified_compare(phi, phi2, Rational(1, BigInt(1000000000))).has_value());
}

TEST_CASE("series_enclosure: exact partial sum plus geometric tail") {
    // digits 1,1 at beta = 2: sum = 3/4, tail = 1 * 2^-2 / (2-1) = 1/4
    auto [lo, hi] = series_enclosure({1, 1}, 1, Rational(2), Rational(2), 2);
    CHECK(lo == Rational(3, 4));
    CHECK(hi == Rational(1));
    // wider beta bracket still encloses both endpoint evaluations
    auto [lo2, hi2] = series_enclosure({1, 0, 1}, 2, Rational(3, 2), Rational(2), 3);
    CHECK(lo2 <= Rational(1, 2) + Rational(1, 8));
    CHECK(hi2 >= Rational(2, 3) + Rational(8, 27));
}

TEST_CASE("eval_tail_bounded_series honest enclosure") {
    DigitSequence ones{{}, {1}, 1};
    CertifiedValue beta{2.0, 0.0};
    CertifiedValue s = eval_tail_bounded_series(ones, beta, 20);
    CHECK(s.contains(1.0)); // sum 2^-i = 1
    CHECK(s.error_bound < 1e-4);
    CertifiedValue bad{0.5, 0.0};
    CHECK_THROWS_AS(eval_tail_bounded_series(ones, bad, 4), BetaNotGreaterThanOne);
}

TEST_CASE("CertifiedValue::from_bracket covers the bracket") {
    CertifiedValue v = CertifiedValue::from_bracket(Rational(1, 3), Rational(2, 5));
    CHECK(v.lo() <= 1.0 / 3.0);
    CHECK(v.hi() >= 2.0 / 5.0);
    CHECK(v.contains(0.35));
}

TEST_CASE("DigitSequence canonical forms and shifts") {
    DigitSequence w{{1}, {0, 1}, 1}; // 1(01)^inf = (10)^inf
    DigitSequence v{{}, {1, 0}, 1};
    CHECK(w.canonical() == v.canonical());
    CHECK(w.at(0) == 1);
    CHECK(w.at(5) == 0);
    CHECK(w.at(6) == 1);
    DigitSequence doubled{{}, {2, 1, 2, 1}, 2};
    CHECK((doubled.canonical().period == std::vector<int>{2, 1}));
    CHECK((v.shifted(1).canonical() == DigitSequence{{}, {0, 1}, 1}.canonical()));
    CHECK((v.reflected().period == std::vector<int>{0, 1}));
    CHECK((v.prefix(5) == std::vector<int>{1, 0, 1, 0, 1}));
}

TEST_CASE("lex_compare on periodic and finite words") {
    DigitSequence a{{}, {1, 0}, 1};
    DigitSequence b{{}, {0, 1}, 1};
    CHECK(lex_compare(a, b, 64) == Lex::greater);
    CHECK(lex_compare(b, a, 64) == Lex::less);
    CHECK((lex_compare(a, DigitSequence{{1}, {0, 1}, 1}, 64) == Lex::equal));
    DigitSequence fin{{1, 0, 1}, {}, 1};
    CHECK(lex_compare(fin, a, 64) == Lex::unknown); // tie past the finite knowledge
    CHECK((lex_compare(DigitSequence{{1, 1}, {}, 1}, a, 64) == Lex::greater));
}
