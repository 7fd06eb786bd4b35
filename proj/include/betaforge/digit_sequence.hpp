#pragma once

#include <cstddef>
#include <vector>

#include "betaforge/errors.hpp"

namespace betaforge {

/// A finite or eventually periodic word over {0,...,alphabet_max}.
/// Empty period means a finite word; nonempty period means the infinite
/// word preperiod . period^inf.
struct DigitSequence {
    std::vector<int> preperiod;
    std::vector<int> period;
    int alphabet_max = 0;

    bool is_finite() const { return period.empty(); }
    size_t known_length() const { return preperiod.size() + period.size(); }

    /// Digit at 0-based position i of the infinite word (or finite word;
    /// out-of-range access on a finite word throws).
    int at(size_t i) const {
        if (i < preperiod.size()) return preperiod[i];
        if (period.empty()) throw Error("DigitSequence: index past end of finite word");
        return period[(i - preperiod.size()) % period.size()];
    }

    /// First n digits as a flat vector.
    std::vector<int> prefix(size_t n) const {
        std::vector<int> out;
        out.reserve(n);
        for (size_t i = 0; i < n; ++i) out.push_back(at(i));
        return out;
    }

    /// Digit-reflected word (m - digit), same shape.
    DigitSequence reflected() const {
        DigitSequence out = *this;
        for (auto& d : out.preperiod) d = alphabet_max - d;
        for (auto& d : out.period) d = alphabet_max - d;
        return out;
    }

    /// Infinite-word shift by s positions (requires nonempty period).
    DigitSequence shifted(size_t s) const;

    /// Canonical representation of the infinite word: primitive period,
    /// preperiod maximally absorbed into the period. Finite words unchanged.
    DigitSequence canonical() const;

    bool operator==(const DigitSequence& o) const = default;
};

enum class Lex { less, equal, greater, unknown };

/// Lexicographic comparison of two digit sequences viewed as infinite words.
/// When both are eventually periodic the answer is exact (including equality).
/// A finite sequence only encodes its listed digits; if the comparison is
/// still tied when the finite knowledge (or `horizon`) runs out, returns
/// Lex::unknown.
Lex lex_compare(const DigitSequence& a, const DigitSequence& b, size_t horizon);

} // namespace betaforge
