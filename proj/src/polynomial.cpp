#include "betaforge/polynomial.hpp"

#include <sstream>

namespace betaforge {

Rational rational_pow(const Rational& base, unsigned long n) {
    Rational acc(1);
    Rational b = base;
    while (n > 0) {
        if (n & 1UL) acc *= b;
        b *= b;
        n >>= 1UL;
    }
    return acc;
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

// optional sign followed by digits
bool valid_integer(const std::string& s) {
    if (s.empty()) return false;
    size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    return all_digits(s.substr(start));
}

} // namespace

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw Error("empty rational literal");
    {
        auto slash = text.find('/');
        auto dot = text.find('.');
        bool ok;
        if (slash != std::string::npos) {
            ok = dot == std::string::npos && valid_integer(text.substr(0, slash)) &&
                 all_digits(text.substr(slash + 1));
        } else if (dot != std::string::npos) {
            std::string head = text.substr(0, dot);
            std::string frac = text.substr(dot + 1);
            bool head_ok = head.empty() || head == "-" || head == "+" || valid_integer(head);
            bool has_digit = text.find_first_of("0123456789") != std::string::npos;
            ok = head_ok && (frac.empty() || all_digits(frac)) && has_digit;
        } else {
            ok = valid_integer(text);
        }
        if (!ok) throw Error("malformed rational literal: " + text);
    }
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw Error("zero denominator: " + text);
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        return Rational(BigInt(text));
    }
    std::string head = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (neg) head = head.substr(1);
    if (head.empty()) head = "0";
    if (frac.empty()) frac = "0";
    BigInt scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt value = BigInt(head) * scale + BigInt(frac);
    if (neg) value = -value;
    return Rational(value, scale);
}

IntPolynomial::IntPolynomial(std::initializer_list<BigInt> ascending)
    : coeffs_(ascending) {
    trim();
}

IntPolynomial::IntPolynomial(std::vector<BigInt> ascending)
    : coeffs_(std::move(ascending)) {
    trim();
}

void IntPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational IntPolynomial::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + Rational(*it);
    }
    return acc;
}

IntPolynomial IntPolynomial::derivative() const {
    std::vector<BigInt> d;
    for (size_t i = 1; i < coeffs_.size(); ++i) {
        d.push_back(coeffs_[i] * BigInt(i));
    }
    return IntPolynomial(std::move(d));
}

namespace {

int sign_changes(const std::vector<RatPoly>& chain, const Rational& x) {
    int changes = 0;
    int prev = 0;
    for (const auto& p : chain) {
        int s = sign_of(rp_eval(p, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

} // namespace

int count_roots_in(const IntPolynomial& p, const Rational& lo, const Rational& hi) {
    if (p.eval(lo) == 0 || p.eval(hi) == 0) {
        throw Error("count_roots_in: endpoint is a root");
    }
    std::vector<RatPoly> chain;
    chain.push_back(rp_from_int(p));
    chain.push_back(rp_from_int(p.derivative()));
    while (!rp_is_zero(chain.back())) {
        RatPoly r = rp_mod(chain[chain.size() - 2], chain.back());
        if (rp_is_zero(r)) break;
        chain.push_back(rp_scale(r, Rational(-1)));
    }
    return sign_changes(chain, lo) - sign_changes(chain, hi);
}

RatPoly rp_trim(RatPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

bool rp_is_zero(const RatPoly& p) {
    for (const auto& c : p)
        if (c != 0) return false;
    return true;
}

int rp_degree(const RatPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[static_cast<size_t>(i)] != 0) return i;
    return -1;
}

RatPoly rp_add(const RatPoly& a, const RatPoly& b) {
    RatPoly out(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return rp_trim(std::move(out));
}

RatPoly rp_sub(const RatPoly& a, const RatPoly& b) {
    RatPoly out(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return rp_trim(std::move(out));
}

RatPoly rp_mul(const RatPoly& a, const RatPoly& b) {
    if (rp_is_zero(a) || rp_is_zero(b)) return {};
    RatPoly out(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return rp_trim(std::move(out));
}

RatPoly rp_scale(const RatPoly& a, const Rational& s) {
    RatPoly out = a;
    for (auto& c : out) c *= s;
    return rp_trim(std::move(out));
}

RatPoly rp_mod(const RatPoly& a, const RatPoly& b) {
    RatPoly r = rp_trim(a);
    RatPoly d = rp_trim(b);
    if (d.empty()) throw Error("rp_mod: division by zero polynomial");
    while (r.size() >= d.size() && !r.empty()) {
        Rational factor = r.back() / d.back();
        size_t shift = r.size() - d.size();
        for (size_t i = 0; i < d.size(); ++i) {
            r[shift + i] -= factor * d[i];
        }
        r = rp_trim(std::move(r));
    }
    return r;
}

RatPoly rp_gcd(RatPoly a, RatPoly b) {
    a = rp_trim(std::move(a));
    b = rp_trim(std::move(b));
    while (!b.empty()) {
        RatPoly r = rp_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        a = rp_scale(a, Rational(1) / a.back());
    }
    return a;
}

Rational rp_eval(const RatPoly& p, const Rational& x) {
    Rational acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RatPoly rp_from_int(const IntPolynomial& p) {
    RatPoly out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.emplace_back(c);
    return out;
}

RatPoly rp_invmod(const RatPoly& a, const RatPoly& modulus) {
    // Extended Euclid on (a, modulus) tracking Bezout coefficient of a.
    RatPoly r0 = rp_trim(modulus), r1 = rp_trim(a);
    RatPoly u0 = {}, u1 = {Rational(1)};
    while (!r1.empty()) {
        // quotient of r0 by r1
        RatPoly q;
        RatPoly r = r0;
        while (r.size() >= r1.size() && !r.empty()) {
            Rational factor = r.back() / r1.back();
            size_t shift = r.size() - r1.size();
            if (q.size() < shift + 1) q.resize(shift + 1, Rational(0));
            q[shift] += factor;
            for (size_t i = 0; i < r1.size(); ++i) r[shift + i] -= factor * r1[i];
            r = rp_trim(std::move(r));
        }
        RatPoly u2 = rp_sub(u0, rp_mul(q, u1));
        r0 = std::move(r1);
        r1 = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (rp_degree(r0) != 0) {
        throw Error("rp_invmod: element not invertible modulo minimal polynomial");
    }
    return rp_scale(u0, Rational(1) / r0[0]);
}

} // namespace betaforge
