#pragma once

#include <vector>

#include "betaforge/geometry.hpp"

namespace betaforge {

/// Which construction of the doubling interval applies. Below (m+2)/2 every
/// choice interval has nonempty interior and the even-style construction
/// works for both parities; odd m in [(2k+3)/2, G(m)) needs the centre
/// 2-cycle construction.
enum class ParityCase { even_case, odd_low, odd_high };

/// The margin schedule trimming the switch/choice intervals. eps[i-1] holds
/// epsilon_i for i = 1..m-1; eps_star is populated (same indexing) only in
/// the odd_high case for i in {1..k-1} and {k+2..m-1}.
struct EpsilonSchedule {
    ParityCase parity = ParityCase::even_case;
    QBeta eps0;
    std::vector<QBeta> eps;
    std::vector<QBeta> eps_star;

    void halve();
};

EpsilonSchedule epsilon_schedule(const ExpansionParams& params);

/// One certified cover element: both digit words, applied left to right,
/// send every point of `piece` back into the doubling interval.
struct CoverPiece {
    Interval piece;
    std::vector<int> word_a;
    std::vector<int> word_b;
};

struct DoublingInterval {
    Interval interval;          // [L(beta), R(beta)]
    EpsilonSchedule epsilons;
    int n_beta = 0;             // 0 until certified
    std::vector<CoverPiece> certificate;
};

/// Builds [L(beta), R(beta)] with exact endpoints, shrinking the epsilon
/// schedule as needed so the interval contains the switch region and sits
/// strictly inside the interior of I_{beta,m}.
DoublingInterval build_doubling_interval(const ExpansionParams& params);

/// Certifies the doubling constant: the smallest n such that an adaptive
/// cover of the interval exists where every piece carries two digit words of
/// length n mapping it back inside. Fills di.n_beta and di.certificate.
/// Throws CertificationFailure when no n up to the cap certifies.
int certify_n_beta(DoublingInterval& di, const ExpansionParams& params);

/// build + certify, retrying with halved epsilons on failure.
DoublingInterval certified_doubling_interval(const ExpansionParams& params);

struct DimensionBound {
    double lower_bound = 0.0;     // log_{m+1} 2 / n_beta
    double empirical_lower = 0.0; // log_{m+1} N_{beta,m,n}(x) / n at the probe depth
    QBeta x;
    int j_x = 0;                  // fewest steps mapping x into the interval
    int n_beta = 0;
    std::vector<double> growth;   // empirical growth sequence from count_prefixes
};

DimensionBound dimension_lower_bound(const ExpansionParams& params, const QBeta& x);
DimensionBound dimension_lower_bound(const ExpansionParams& params, const QBeta& x,
                                     const DoublingInterval& certified);

} // namespace betaforge
