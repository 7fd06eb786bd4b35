#include "betaforge/oracle.hpp"

#include <algorithm>
#include <set>

#include "betaforge/expansions.hpp"

namespace betaforge {

namespace {

// Sound prunes for the series criterion: once the remainder dips below zero
// it can only shrink, and once it exceeds m*beta^{-j}/(beta-1) not even an
// all-m continuation can pull it back into the final window.
void enumerate(const ExpansionParams& params, const QBeta& rem,
               const std::vector<QBeta>& bounds, const std::vector<QBeta>& pow_inv,
               int depth, int n, std::vector<int>& word,
               std::vector<std::vector<int>>& out) {
    if (rem.sign() < 0 || (bounds[static_cast<size_t>(depth)] - rem).sign() < 0) return;
    if (depth == n) {
        out.push_back(word);
        return;
    }
    const QBeta& step = pow_inv[static_cast<size_t>(depth + 1)];
    for (int d = 0; d <= params.m; ++d) {
        word.push_back(d);
        enumerate(params, rem - params.q(d) * step, bounds, pow_inv, depth + 1, n, word, out);
        word.pop_back();
    }
}

} // namespace

OracleResult brute_force_prefixes(const ExpansionParams& params, const QBeta& x, int n) {
    double words = std::pow(static_cast<double>(params.m + 1), n);
    if (words > 1e7) throw TooLarge("brute_force_prefixes: (m+1)^n > 1e7");

    // bound at depth j is m * beta^{-j} / (beta - 1); at depth 0 that is the
    // right endpoint of I, so the initial check doubles as the domain check.
    std::vector<QBeta> bounds{params.right_endpoint()};
    std::vector<QBeta> pow_inv{params.q(1)};
    QBeta inv_beta = params.q(1) / params.beta;
    for (int j = 1; j <= n; ++j) {
        bounds.push_back(bounds.back() * inv_beta);
        pow_inv.push_back(pow_inv.back() * inv_beta);
    }
    OracleResult res;
    std::vector<int> word;
    enumerate(params, x, bounds, pow_inv, 0, n, word, res.prefixes);
    res.count = res.prefixes.size();
    return res;
}

namespace {

struct SeqLess {
    bool operator()(const DigitSequence& a, const DigitSequence& b) const {
        if (a.preperiod != b.preperiod) return a.preperiod < b.preperiod;
        return a.period < b.period;
    }
};

} // namespace

std::vector<DigitSequence> exhaustive_admissible_words(const ExpansionParams& params,
                                                       int max_total_length) {
    if (max_total_length > 10) throw TooLarge("exhaustive_admissible_words: length > 10");

    // Necessary digit restriction straight from the admissibility criterion:
    // every digit of an admissible word lies in [m - d_1, d_1].
    int d1 = 0;
    for (int d = params.m; d >= 1; --d) {
        if ((params.beta - params.q(d)).sign() > 0) {
            d1 = d;
            break;
        }
    }
    const int lo = params.m - d1, hi = d1;
    if (lo > hi) return {};

    constexpr int kNCheck = 256;
    const DigitSequence qg_one = quasi_greedy_one(params, kNCheck);
    std::set<DigitSequence, SeqLess> seen;
    std::vector<DigitSequence> out;

    std::vector<int> digits;
    auto consider = [&](int pre_len) {
        DigitSequence w;
        w.alphabet_max = params.m;
        w.preperiod.assign(digits.begin(), digits.begin() + pre_len);
        w.period.assign(digits.begin() + pre_len, digits.end());
        w = w.canonical();
        if (!seen.insert(w).second) return;
        if (is_admissible(qg_one, w, kNCheck)) out.push_back(w);
    };

    // Enumerate every digit string up to the length cap and every split of it
    // into preperiod | period.
    auto rec = [&](auto&& self, int remaining) -> void {
        if (!digits.empty())
            for (int pre = 0; pre < static_cast<int>(digits.size()); ++pre) consider(pre);
        if (remaining == 0) return;
        for (int d = lo; d <= hi; ++d) {
            digits.push_back(d);
            self(self, remaining - 1);
            digits.pop_back();
        }
    };
    rec(rec, max_total_length);

    std::sort(out.begin(), out.end(), [](const DigitSequence& a, const DigitSequence& b) {
        return SeqLess{}(a, b);
    });
    return out;
}

} // namespace betaforge
