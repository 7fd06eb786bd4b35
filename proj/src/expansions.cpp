#include "betaforge/expansions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "betaforge/constants.hpp"

namespace betaforge {

namespace {

struct QBetaLess {
    bool operator()(const QBeta& a, const QBeta& b) const { return a.compare(b) < 0; }
};

// Strict weak order on canonical representations; within one field context
// equal reps are equal values, which is all the frontier maps need.
struct RepLess {
    bool operator()(const RatPoly& a, const RatPoly& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

using Iv = std::pair<Rational, Rational>;

Iv iv_mul(const Iv& a, const Iv& b) {
    Rational p1 = a.first * b.first, p2 = a.first * b.second;
    Rational p3 = a.second * b.first, p4 = a.second * b.second;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}

// Interval Horner evaluation of an integer-coefficient polynomial over
// [lo, hi]; the result certainly encloses every value on the interval.
Iv iv_eval_int(const std::vector<BigInt>& c, const Rational& lo, const Rational& hi) {
    Iv acc{Rational(0), Rational(0)};
    for (size_t i = c.size(); i-- > 0;) {
        acc = iv_mul(acc, {lo, hi});
        Rational ci(c[i]);
        acc.first += ci;
        acc.second += ci;
    }
    return acc;
}

double log2_big(const BigInt& n) {
    if (n <= 0) return -std::numeric_limits<double>::infinity();
    size_t bits = boost::multiprecision::msb(n);
    if (bits <= 512) return std::log2(n.convert_to<double>());
    BigInt top = n >> (bits - 52);
    return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 52);
}

std::vector<double> growth_from_counts(const std::vector<BigInt>& per_level, int m) {
    std::vector<double> g;
    const double denom = std::log2(static_cast<double>(m + 1));
    for (size_t j = 1; j < per_level.size(); ++j)
        g.push_back(log2_big(per_level[j]) / (static_cast<double>(j) * denom));
    return g;
}

constexpr size_t kTreeNodeCap = 2'000'000;

} // namespace

int poly_sign_at_beta(const ExpansionParams& params, const IntPolynomial& p) {
    QBeta acc = params.q(0);
    for (size_t i = p.coeffs().size(); i-- > 0;)
        acc = acc * params.beta + params.q(Rational(p.coeffs()[i]));
    return acc.sign();
}

std::vector<std::vector<int>> BranchTree::prefixes() const {
    std::vector<std::vector<int>> out;
    if (levels.empty()) {
        out.push_back({});
        return out;
    }
    for (size_t leaf = 0; leaf < levels.back().size(); ++leaf) {
        std::vector<int> word(levels.size());
        size_t idx = leaf;
        for (size_t depth = levels.size(); depth-- > 0;) {
            word[depth] = levels[depth][idx].digit;
            idx = levels[depth][idx].parent;
        }
        out.push_back(std::move(word));
    }
    std::sort(out.begin(), out.end());
    return out;
}

BranchTree expand_tree(const ExpansionParams& params, const QBeta& x, int n) {
    const QBeta zero = params.q(0);
    const QBeta right = params.right_endpoint();
    if (x < zero || x > right) throw PointOutsideI();

    BranchTree tree;
    tree.root = x;
    std::vector<QBeta> frontier{x};
    for (int depth = 0; depth < n; ++depth) {
        std::vector<BranchTree::Node> level;
        std::vector<QBeta> next;
        for (size_t p = 0; p < frontier.size(); ++p) {
            for (int d : valid_digits(params, frontier[p])) {
                QBeta image = apply_map(params, d, frontier[p]);
                level.push_back({p, d, image});
                next.push_back(image);
            }
            if (level.size() > kTreeNodeCap) throw TooLarge("expand_tree: node cap exceeded");
        }
        tree.levels.push_back(std::move(level));
        frontier = std::move(next);
    }
    return tree;
}

namespace {

// Fast path for rational beta = p/q, rational x = a/b: the level-j orbit
// points are N / (q^j * b) for integer N, so the frontier is a map over
// big-integer numerators with the interval test done in integers.
CountResult count_prefixes_rational(const ExpansionParams& params, const Rational& beta,
                                    const Rational& x, int n, size_t cap) {
    const BigInt p = numerator(beta), q = denominator(beta);
    const BigInt a = numerator(x), b = denominator(x);
    const BigInt pq = p - q; // beta > 1 so pq > 0
    const BigInt mB(params.m);

    CountResult res;
    res.per_level.push_back(BigInt(1));

    std::unordered_map<BigInt, BigInt> frontier;
    frontier.emplace(a, BigInt(1));
    BigInt scale = b; // denominator q^j * b at the current level
    for (int j = 0; j < n; ++j) {
        BigInt next_scale = scale * q;
        BigInt rhs = mB * q * next_scale; // valid iff 0 <= M and M*(p-q) <= rhs
        std::unordered_map<BigInt, BigInt> next;
        next.reserve(frontier.size() * 2);
        BigInt total = 0;
        for (const auto& [num, mult] : frontier) {
            BigInt base = p * num;
            for (int d = 0; d <= params.m; ++d) {
                BigInt M = base - d * next_scale;
                if (M < 0 || M * pq > rhs) continue;
                total += mult;
                auto it = next.find(M);
                if (it != next.end()) {
                    it->second += mult;
                } else if (next.size() < cap) {
                    next.emplace(M, mult);
                } else {
                    res.truncated = true;
                    total -= mult;
                }
            }
        }
        res.per_level.push_back(total);
        frontier = std::move(next);
        scale = std::move(next_scale);
        if (frontier.empty()) break;
    }
    while (res.per_level.size() < static_cast<size_t>(n) + 1)
        res.per_level.push_back(BigInt(0));
    res.growth = growth_from_counts(res.per_level, params.m);
    return res;
}

} // namespace

CountResult count_prefixes(const ExpansionParams& params, const QBeta& x, int n,
                           size_t frontier_cap) {
    const QBeta zero = params.q(0);
    const QBeta right = params.right_endpoint();
    if (x < zero || x > right) throw PointOutsideI();

    auto beta_rat = params.beta.as_rational();
    auto x_rat = x.as_rational();
    if (params.beta.ctx()->exact() && beta_rat && x_rat)
        return count_prefixes_rational(params, *beta_rat, *x_rat, n, frontier_cap);

    CountResult res;
    res.per_level.push_back(BigInt(1));
    std::map<RatPoly, BigInt, RepLess> frontier;
    frontier.emplace(x.rep(), BigInt(1));
    const auto ctx = x.ctx();
    for (int j = 0; j < n; ++j) {
        std::map<RatPoly, BigInt, RepLess> next;
        BigInt total = 0;
        for (const auto& [rep, mult] : frontier) {
            QBeta pt = QBeta::from_poly(ctx, rep);
            for (int d = 0; d <= params.m; ++d) {
                QBeta image = apply_map(params, d, pt);
                if (image.sign() < 0 || (right - image).sign() < 0) continue;
                total += mult;
                auto it = next.find(image.rep());
                if (it != next.end()) {
                    it->second += mult;
                } else if (next.size() < frontier_cap) {
                    next.emplace(image.rep(), mult);
                } else {
                    res.truncated = true;
                    total -= mult;
                }
            }
        }
        res.per_level.push_back(total);
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    while (res.per_level.size() < static_cast<size_t>(n) + 1)
        res.per_level.push_back(BigInt(0));
    res.growth = growth_from_counts(res.per_level, params.m);
    return res;
}

DigitSequence quasi_greedy_one(const ExpansionParams& params, int n) {
    DigitSequence out;
    out.alphabet_max = params.m;

    std::map<QBeta, size_t, QBetaLess> seen; // remainder -> number of digits emitted
    QBeta r = params.q(1);
    std::vector<int> digits;
    for (int step = 0; step < n; ++step) {
        auto it = seen.find(r);
        if (it != seen.end()) {
            // digits (it->second .. current) repeat forever
            out.preperiod.assign(digits.begin(), digits.begin() + static_cast<long>(it->second));
            out.period.assign(digits.begin() + static_cast<long>(it->second), digits.end());
            return out.canonical();
        }
        seen.emplace(r, digits.size());
        QBeta s = params.beta * r;
        int chosen = -1;
        for (int d = params.m; d >= 0; --d) {
            QBeta t = s - params.q(d);
            if (t.sign() > 0) {
                chosen = d;
                r = t;
                break;
            }
        }
        if (chosen < 0) throw Error("quasi_greedy_one: remainder collapsed to <= 0");
        digits.push_back(chosen);
    }
    out.preperiod = std::move(digits);
    return out;
}

DigitSequence quasi_greedy_one_certified(RefinableScalar& beta, int m, int n) {
    DigitSequence out;
    out.alphabet_max = m;

    // Remainder as an integer polynomial in beta, evaluated over the bracket.
    std::vector<BigInt> r{BigInt(1)};
    size_t refinements = 0;
    constexpr size_t kRefineBudget = 200'000;
    for (int step = 0; step < n; ++step) {
        std::vector<BigInt> s(r.size() + 1);
        for (size_t i = 0; i < r.size(); ++i) s[i + 1] = r[i]; // s = beta * r
        int chosen = -1;
        for (int d = m; d >= 0 && chosen < 0;) {
            std::vector<BigInt> t = s;
            t[0] -= d;
            auto [lo, hi] = beta.bracket();
            Iv box = iv_eval_int(t, lo, hi);
            if (box.first > 0) {
                chosen = d;
                r = std::move(t);
            } else if (box.second <= 0) {
                --d;
            } else {
                if (++refinements > kRefineBudget)
                    throw CertificationFailure("quasi_greedy_one_certified: refinement budget");
                beta.refine();
            }
        }
        if (chosen < 0) throw Error("quasi_greedy_one_certified: remainder collapsed to <= 0");
        out.preperiod.push_back(chosen);
    }
    return out;
}

namespace {

DigitSequence drop_prefix(const DigitSequence& w, size_t s) {
    if (!w.is_finite()) return w.shifted(s);
    DigitSequence out = w;
    out.preperiod.erase(out.preperiod.begin(),
                        out.preperiod.begin() + static_cast<long>(std::min(s, out.preperiod.size())));
    return out;
}

} // namespace

bool is_admissible(const ExpansionParams& params, const DigitSequence& word, int n_check) {
    return is_admissible(quasi_greedy_one(params, n_check), word, n_check);
}

bool is_admissible(const DigitSequence& quasi_greedy_of_one, const DigitSequence& word,
                   int n_check) {
    const size_t horizon = static_cast<size_t>(n_check);
    const DigitSequence& d = quasi_greedy_of_one;
    DigitSequence db = d.reflected();

    size_t shifts = word.preperiod.size() + std::max<size_t>(word.period.size(), 1);
    if (word.is_finite()) shifts = std::max<size_t>(word.preperiod.size(), 1);
    for (size_t s = 0; s < shifts; ++s) {
        DigitSequence w = drop_prefix(word, s);
        Lex upper = lex_compare(w, d, horizon);
        if (upper == Lex::unknown) throw HorizonTooShort("is_admissible: tie against d at horizon");
        if (upper != Lex::less) return false;
        Lex lower = lex_compare(db, w, horizon);
        if (lower == Lex::unknown)
            throw HorizonTooShort("is_admissible: tie against reflected d at horizon");
        if (lower != Lex::less) return false;
    }
    return true;
}

UniquenessCertificate uniqueness_certificate(const ExpansionParams& params, const QBeta& x,
                                             size_t max_steps) {
    const QBeta zero = params.q(0);
    const QBeta right = params.right_endpoint();
    if (x < zero || x > right) throw PointOutsideI();

    UniquenessCertificate cert;

    // Verdicts degrade to `undecided` within 1e-6 of the phase transition at
    // G(m): the classification flips there and nearby inputs are usually
    // truncations of the exact constant.
    {
        const Rational guard(1, 1000000);
        auto [blo, bhi] = params.beta.enclosure(guard / 8);
        auto [glo, ghi] = golden_ratio(params.m).enclosure(guard / 8);
        if (!(blo - ghi >= guard || glo - bhi >= guard)) {
            cert.verdict = Verdict::undecided;
            cert.reason = UndecidedReason::boundary;
            return cert;
        }
    }

    std::map<QBeta, size_t, QBetaLess> visited;
    QBeta cur = x;
    for (size_t step = 0; step < max_steps; ++step) {
        auto it = visited.find(cur);
        if (it != visited.end()) {
            cert.verdict = Verdict::unique;
            cert.cycle_start = it->second;
            return cert;
        }
        std::vector<int> digits = valid_digits(params, cur);
        if (digits.empty()) throw PointOutsideI("uniqueness_certificate: orbit escaped I");
        if (digits.size() >= 2) {
            cert.verdict = Verdict::not_unique;
            cert.branch_step = step;
            cert.branch_digits = std::move(digits);
            return cert;
        }
        visited.emplace(cur, step);
        cert.orbit_points.push_back(cur);
        cert.orbit_digits.push_back(digits[0]);
        cur = apply_map(params, digits[0], cur);
    }
    cert.verdict = Verdict::undecided;
    cert.reason = UndecidedReason::horizon;
    return cert;
}

std::vector<QBeta> uniqueness_preimage_family(const ExpansionParams& params, int n) {
    if (poly_sign_at_beta(params, golden_ratio_polynomial(params.m)) <= 0)
        throw BetaBelowThreshold("uniqueness_preimage_family: beta <= G(m)");

    const QBeta& beta = params.beta;
    const int k = params.k;
    QBeta x0 = (params.m % 2 == 0)
                   ? params.q(k) / (beta - params.q(1))
                   : (params.q(k) * beta + params.q(k + 1)) / (beta * beta - params.q(1));
    std::vector<QBeta> out;
    if (n == 0) {
        out.push_back(x0);
        return out;
    }
    QBeta cur = x0;
    for (int j = 1; j <= n; ++j) {
        cur = cur / beta;
        out.push_back(cur);
    }
    return out;
}

DigitSequence greedy_expansion(const ExpansionParams& params, const QBeta& x, int n) {
    const QBeta zero = params.q(0);
    const QBeta right = params.right_endpoint();
    if (x < zero || x > right) throw PointOutsideI();

    DigitSequence out;
    out.alphabet_max = params.m;
    QBeta cur = x;
    for (int step = 0; step < n; ++step) {
        std::vector<int> digits = valid_digits(params, cur);
        if (digits.empty()) throw PointOutsideI("greedy_expansion: orbit escaped I");
        int d = *std::max_element(digits.begin(), digits.end());
        out.preperiod.push_back(d);
        cur = apply_map(params, d, cur);
    }
    return out;
}

} // namespace betaforge
