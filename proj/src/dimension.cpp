#include "betaforge/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "betaforge/constants.hpp"
#include "betaforge/expansions.hpp"

namespace betaforge {

namespace {

// Upper endpoint of the i-th choice interval, i.e. the top of the (i-1)-th
// digit interval: ((i-1)beta + m - (i-1)) / (beta(beta-1)).
QBeta choice_hi(const ExpansionParams& p, int i) {
    const QBeta& b = p.beta;
    return (p.q(i - 1) * b + p.q(p.m - (i - 1))) / (b * (b - p.q(1)));
}

QBeta switch_hi(const ExpansionParams& p) { return choice_hi(p, p.m); }

QBeta half(const QBeta& v) { return v / Rational(2); }

ParityCase classify(const ExpansionParams& p) {
    if (p.m % 2 == 0) return ParityCase::even_case;
    // odd m: odd_high iff beta >= (2k+3)/2 = (m+2)/2
    QBeta threshold = p.q(Rational(p.m + 2, 2));
    return p.beta >= threshold ? ParityCase::odd_high : ParityCase::odd_low;
}

} // namespace

void EpsilonSchedule::halve() {
    eps0 = eps0 / Rational(2);
    for (auto& e : eps) e = e / Rational(2);
    for (auto& e : eps_star) e = e / Rational(2);
}

EpsilonSchedule epsilon_schedule(const ExpansionParams& params) {
    if (poly_sign_at_beta(params, golden_ratio_polynomial(params.m)) >= 0)
        throw NotBelowGoldenRatio();

    const QBeta& b = params.beta;
    const int m = params.m, k = params.k;
    const QBeta one = params.q(1);
    const QBeta inv_b = one / b;
    const QBeta rsw = switch_hi(params);
    const QBeta top_fix = (params.q(m + 1) - b) / (b - one); // (m+1-beta)/(beta-1)

    EpsilonSchedule s;
    s.parity = classify(params);

    // eps0: half the slack in the four strict inequalities behind the
    // "smaller switch" lemmas (both parities share them).
    QBeta c1 = one - inv_b;
    QBeta c2 = (rsw - one) / (b + one);
    QBeta c3 = rsw - top_fix;
    QBeta c4 = (top_fix - inv_b) / (b + one);
    QBeta slack = std::min({c1, c2, c3, c4},
                           [](const QBeta& a, const QBeta& c) { return a < c; });
    // Additionally cap at 1/(2 beta^2) so the doubling interval keeps the
    // whole switch region.
    QBeta cap = one / (b * b * Rational(2));
    s.eps0 = half(std::min(slack, cap * Rational(2),
                           [](const QBeta& a, const QBeta& c) { return a < c; }));

    for (int i = 1; i <= m - 1; ++i) {
        QBeta e;
        if (s.parity == ParityCase::odd_high) {
            if (i <= k)
                e = half(choice_hi(params, i) - params.q(i) / (b - one));
            else
                e = half(params.q(i) / (b - one) - params.q(i + 1) / b);
        } else {
            e = half(choice_hi(params, i) - params.q(i + 1) / b);
        }
        s.eps.push_back(e);
    }

    if (s.parity == ParityCase::odd_high && m >= 3) {
        s.eps_star.assign(s.eps.size(), params.q(0));
        // i in {1..k-1}: T_i((i+1)/beta) = 1, needs to stay below
        // (k+2)/beta + eps_{k+1}.
        if (k >= 2) {
            QBeta margin = params.q(k + 2) / b + s.eps[static_cast<size_t>(k)] - one;
            QBeta star = margin / (b * Rational(2));
            for (int i = 1; i <= k - 1; ++i) s.eps_star[static_cast<size_t>(i - 1)] = star;
        }
        // i in {k+2..m-1}: T_i(choice_hi(i)) = (m+1-beta)/(beta-1), needs to
        // stay above choice_hi(k) - eps_k.
        if (k + 2 <= m - 1) {
            QBeta margin = top_fix - choice_hi(params, k) + s.eps[static_cast<size_t>(k - 1)];
            QBeta star = margin / (b * Rational(2));
            for (int i = k + 2; i <= m - 1; ++i) s.eps_star[static_cast<size_t>(i - 1)] = star;
        }
    }

    if (s.eps0.sign() <= 0) throw DegenerateInterval("epsilon_schedule: eps0 <= 0");
    for (const auto& e : s.eps)
        if (e.sign() <= 0) throw DegenerateInterval("epsilon_schedule: eps_i <= 0");
    return s;
}

namespace {

Interval interval_from_schedule(const ExpansionParams& params, const EpsilonSchedule& s) {
    const QBeta& b = params.beta;
    const int m = params.m, k = params.k;
    const QBeta one = params.q(1);
    const QBeta inv_b = one / b;
    const QBeta rsw = switch_hi(params);

    auto T = [&](int d, const QBeta& x) { return apply_map(params, d, x); };
    auto qmin = [](std::vector<QBeta> v) {
        return *std::min_element(v.begin(), v.end(),
                                 [](const QBeta& a, const QBeta& c) { return a < c; });
    };
    auto qmax = [](std::vector<QBeta> v) {
        return *std::max_element(v.begin(), v.end(),
                                 [](const QBeta& a, const QBeta& c) { return a < c; });
    };

    std::vector<QBeta> lo_cands, hi_cands;
    if (s.parity == ParityCase::odd_high) {
        QBeta denom = b * b - one;
        QBeta cyc_a = (params.q(k) * b + params.q(k + 1)) / denom;
        QBeta cyc_b = (params.q(k + 1) * b + params.q(k)) / denom;
        lo_cands.push_back(T(1, inv_b + s.eps0));
        lo_cands.push_back(T(k + 1, cyc_a));
        for (int i = 2; i <= k; ++i)
            lo_cands.push_back(T(i, params.q(i) / b + s.eps_star[static_cast<size_t>(i - 2)]));
        for (int i = k + 2; i <= m; ++i)
            lo_cands.push_back(T(i, params.q(i) / b + s.eps[static_cast<size_t>(i - 2)]));

        hi_cands.push_back(T(k, cyc_b));
        hi_cands.push_back(T(m - 1, rsw - s.eps0));
        for (int i = 1; i <= k; ++i)
            hi_cands.push_back(T(i - 1, choice_hi(params, i) - s.eps[static_cast<size_t>(i - 1)]));
        for (int i = k + 2; i <= m - 1; ++i)
            hi_cands.push_back(T(i - 1, choice_hi(params, i) - s.eps_star[static_cast<size_t>(i - 1)]));
    } else {
        lo_cands.push_back(T(1, inv_b + s.eps0));
        hi_cands.push_back(T(m - 1, rsw - s.eps0));
        for (int i = 1; i <= m - 1; ++i) {
            QBeta probe = params.q(i + 1) / b + s.eps[static_cast<size_t>(i - 1)];
            lo_cands.push_back(T(i + 1, probe));
            hi_cands.push_back(T(i - 1, probe));
        }
    }
    return Interval{qmin(std::move(lo_cands)), qmax(std::move(hi_cands))};
}

DoublingInterval build_from_schedule(const ExpansionParams& params, EpsilonSchedule s) {
    const QBeta zero = params.q(0);
    const QBeta inv_b = params.q(1) / params.beta;
    const QBeta rsw = switch_hi(params);
    const QBeta right = params.right_endpoint();

    for (int round = 0; round < 60; ++round) {
        Interval iv = interval_from_schedule(params, s);
        bool ok = iv.lo > zero && iv.hi < right && iv.lo < iv.hi &&
                  iv.lo <= inv_b && iv.hi >= rsw; // contains the switch region
        if (ok) {
            DoublingInterval di;
            di.interval = std::move(iv);
            di.epsilons = std::move(s);
            return di;
        }
        s.halve();
    }
    throw DegenerateInterval("build_doubling_interval: no valid interval after shrinking");
}

} // namespace

DoublingInterval build_doubling_interval(const ExpansionParams& params) {
    return build_from_schedule(params, epsilon_schedule(params));
}

namespace {

struct Certifier {
    const ExpansionParams& params;
    const IntervalCatalog& cat;
    const Interval& target;
    QBeta target_width;
    int n = 0;

    // DFS for up to two length-n digit words valid on all of K whose exact
    // affine images land inside the target. Returns true once two are found.
    bool find_words(const Interval& K, std::vector<int>& cur,
                    std::vector<std::vector<int>>& found) const {
        if (static_cast<int>(cur.size()) == n) {
            if (target.contains(K)) found.push_back(cur);
            return found.size() >= 2;
        }
        if (K.width() > target_width) return false; // widths only grow
        for (int d = 0; d <= params.m; ++d) {
            if (!cat.digit[static_cast<size_t>(d)].contains(K)) continue;
            Interval img{apply_map(params, d, K.lo), apply_map(params, d, K.hi)};
            cur.push_back(d);
            bool done = find_words(img, cur, found);
            cur.pop_back();
            if (done) return true;
        }
        return found.size() >= 2;
    }

    void certify_piece(const Interval& K, const QBeta& min_width,
                       std::vector<CoverPiece>& out) const {
        std::vector<int> cur;
        std::vector<std::vector<int>> found;
        find_words(K, cur, found);
        if (found.size() >= 2) {
            out.push_back({K, std::move(found[0]), std::move(found[1])});
            return;
        }
        if (!(K.width() > min_width))
            throw CertificationFailure("certify_n_beta: uncovered piece at minimal width");
        QBeta mid = K.midpoint();
        certify_piece(Interval{K.lo, mid}, min_width, out);
        certify_piece(Interval{mid, K.hi}, min_width, out);
    }
};

constexpr int kMaxNBeta = 24;

} // namespace

int certify_n_beta(DoublingInterval& di, const ExpansionParams& params) {
    IntervalCatalog cat = build_catalog(params);
    QBeta min_width = di.interval.width() / Rational(4096);
    for (int n = 2; n <= kMaxNBeta; ++n) {
        Certifier c{params, cat, di.interval, di.interval.width(), n};
        std::vector<CoverPiece> pieces;
        try {
            c.certify_piece(di.interval, min_width, pieces);
        } catch (const CertificationFailure&) {
            continue;
        }
        di.n_beta = n;
        di.certificate = std::move(pieces);
        return n;
    }
    throw CertificationFailure("certify_n_beta: no n up to cap certifies");
}

DoublingInterval certified_doubling_interval(const ExpansionParams& params) {
    EpsilonSchedule s = epsilon_schedule(params);
    for (int attempt = 0;; ++attempt) {
        DoublingInterval di = build_from_schedule(params, s);
        try {
            certify_n_beta(di, params);
            return di;
        } catch (const CertificationFailure&) {
            if (attempt >= 3) throw;
            s.halve();
        }
    }
}

namespace {

struct RepLess {
    bool operator()(const RatPoly& a, const RatPoly& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

int find_jx(const ExpansionParams& params, const QBeta& x, const Interval& target) {
    double beta_d = params.beta.to_double();
    double width_i = params.right_endpoint().to_double();
    double delta = std::min(target.lo.to_double(),
                            width_i - target.hi.to_double());
    int horizon = 64;
    if (delta > 0.0)
        horizon += static_cast<int>(std::ceil(std::log(width_i / delta) / std::log(beta_d)));

    constexpr size_t kFrontierCap = 200'000;
    std::map<RatPoly, char, RepLess> frontier;
    frontier.emplace(x.rep(), 0);
    const auto ctx = x.ctx();
    for (int j = 0; j <= horizon; ++j) {
        std::map<RatPoly, char, RepLess> next;
        for (const auto& [rep, unused] : frontier) {
            QBeta pt = QBeta::from_poly(ctx, rep);
            if (target.contains(pt)) return j;
            for (int d : valid_digits(params, pt)) {
                if (next.size() >= kFrontierCap) break;
                next.emplace(apply_map(params, d, pt).rep(), 0);
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    throw JxNotFound("dimension_lower_bound: x never reached the doubling interval");
}

} // namespace

DimensionBound dimension_lower_bound(const ExpansionParams& params, const QBeta& x,
                                     const DoublingInterval& certified) {
    if (x.sign() <= 0 || (params.right_endpoint() - x).sign() <= 0)
        throw PointOutsideI("dimension_lower_bound: x must be interior");
    if (certified.n_beta <= 0)
        throw CertificationFailure("dimension_lower_bound: doubling interval not certified");

    DimensionBound bound;
    bound.x = x;
    bound.n_beta = certified.n_beta;
    bound.lower_bound = std::log2(2.0) / (certified.n_beta * std::log2(static_cast<double>(params.m + 1)));
    bound.j_x = find_jx(params, x, certified.interval);

    constexpr int kProbeDepth = 40;
    size_t cap = params.beta.ctx()->exact() ? 20'000 : 2'000;
    CountResult counts = count_prefixes(params, x, kProbeDepth, cap);
    bound.growth = counts.growth;
    bound.empirical_lower = counts.growth.empty() ? 0.0 : counts.growth.back();
    return bound;
}

DimensionBound dimension_lower_bound(const ExpansionParams& params, const QBeta& x) {
    return dimension_lower_bound(params, x, certified_doubling_interval(params));
}

} // namespace betaforge
