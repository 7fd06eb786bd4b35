#pragma once

#include "betaforge/digit_sequence.hpp"
#include "betaforge/geometry.hpp"

namespace betaforge {

struct OracleResult {
    std::vector<std::vector<int>> prefixes; // lexicographically sorted, no duplicates
    size_t count = 0;
};

/// Reference enumeration of the n-prefixes of x straight from the series
/// criterion: a word qualifies iff x minus its partial sum lies in
/// [0, m / (beta^n (beta-1))]. Exact arithmetic, independent of the orbit
/// based counting path. Guard: (m+1)^n <= 1e7.
OracleResult brute_force_prefixes(const ExpansionParams& params, const QBeta& x, int n);

/// All eventually periodic words with preperiod+period <= max_total_length
/// passing is_admissible, deduplicated as infinite words (canonical forms).
/// Guard: max_total_length <= 10.
std::vector<DigitSequence> exhaustive_admissible_words(const ExpansionParams& params,
                                                       int max_total_length);

} // namespace betaforge
