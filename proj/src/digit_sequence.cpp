#include "betaforge/digit_sequence.hpp"

#include <algorithm>
#include <numeric>

namespace betaforge {

DigitSequence DigitSequence::shifted(size_t s) const {
    if (period.empty()) throw Error("DigitSequence::shifted: finite word");
    DigitSequence out;
    out.alphabet_max = alphabet_max;
    if (s < preperiod.size()) {
        out.preperiod.assign(preperiod.begin() + static_cast<long>(s), preperiod.end());
        out.period = period;
    } else {
        size_t r = (s - preperiod.size()) % period.size();
        out.period.assign(period.begin() + static_cast<long>(r), period.end());
        out.period.insert(out.period.end(), period.begin(), period.begin() + static_cast<long>(r));
    }
    return out;
}

DigitSequence DigitSequence::canonical() const {
    if (period.empty()) return *this;
    DigitSequence out = *this;
    // Reduce the period to its primitive root.
    for (size_t d = 1; d <= out.period.size() / 2; ++d) {
        if (out.period.size() % d != 0) continue;
        bool repeats = true;
        for (size_t i = d; i < out.period.size() && repeats; ++i) {
            repeats = out.period[i] == out.period[i % d];
        }
        if (repeats) {
            out.period.resize(d);
            break;
        }
    }
    // Absorb a preperiod tail that already matches the cycle.
    while (!out.preperiod.empty() && out.preperiod.back() == out.period.back()) {
        out.preperiod.pop_back();
        std::rotate(out.period.rbegin(), out.period.rbegin() + 1, out.period.rend());
    }
    return out;
}

Lex lex_compare(const DigitSequence& a, const DigitSequence& b, size_t horizon) {
    size_t limit = horizon;
    bool exact = !a.period.empty() && !b.period.empty();
    if (exact) {
        size_t la = a.period.size(), lb = b.period.size();
        size_t l = std::lcm(la, lb);
        limit = std::max(a.preperiod.size(), b.preperiod.size()) + l;
    } else {
        size_t ka = a.period.empty() ? a.preperiod.size() : horizon;
        size_t kb = b.period.empty() ? b.preperiod.size() : horizon;
        limit = std::min(horizon, std::min(ka, kb));
    }
    for (size_t i = 0; i < limit; ++i) {
        int da = a.at(i), db = b.at(i);
        if (da < db) return Lex::less;
        if (da > db) return Lex::greater;
    }
    return exact ? Lex::equal : Lex::unknown;
}

} // namespace betaforge
