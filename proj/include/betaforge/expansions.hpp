#pragma once

#include <cstddef>
#include <optional>

#include "betaforge/certified.hpp"
#include "betaforge/digit_sequence.hpp"
#include "betaforge/geometry.hpp"
#include "betaforge/polynomial.hpp"

namespace betaforge {

/// Full enumeration tree of the valid digit prefixes of x up to depth n.
/// Nodes at each level carry the orbit point reached by their prefix; the
/// prefixes read off the deepest level are exactly the n-prefixes of x.
struct BranchTree {
    struct Node {
        size_t parent;
        int digit;
        QBeta point;
    };
    QBeta root;
    std::vector<std::vector<Node>> levels; // levels[j] = nodes at depth j+1

    size_t leaf_count() const { return levels.empty() ? 1 : levels.back().size(); }
    /// All depth-n prefixes, lexicographically sorted.
    std::vector<std::vector<int>> prefixes() const;
};

BranchTree expand_tree(const ExpansionParams& params, const QBeta& x, int n);

/// Prefix counts per depth, computed by a level frontier of deduplicated
/// orbit points carrying prefix multiplicities (never materializes the tree).
struct CountResult {
    std::vector<BigInt> per_level;  // per_level[j] = N_{beta,m,j}(x), j = 0..n
    std::vector<double> growth;     // log_{m+1} N_j / j for j = 1..n
    bool truncated = false;         // true when the frontier cap dropped points

    const BigInt& count() const { return per_level.back(); }
};

/// Exact N_{beta,m,n}(x) when frontier_cap is unlimited. With a finite cap the
/// result is a certified lower bound (points past the cap are discarded
/// together with their multiplicities) and `truncated` is set.
CountResult count_prefixes(const ExpansionParams& params, const QBeta& x, int n,
                           size_t frontier_cap = static_cast<size_t>(-1));

/// Quasi-greedy expansion of 1: at each step the largest digit keeping the
/// partial sums strictly below 1, decided exactly in Q(beta). Detects when
/// the digit stream becomes periodic and returns the closed form.
DigitSequence quasi_greedy_one(const ExpansionParams& params, int n);

/// Quasi-greedy expansion of 1 for a beta known only through a refinable
/// bracket (e.g. beta_c(m)). Remainders are kept as integer polynomials in
/// beta and evaluated over the bracket, which is tightened on demand until
/// every digit decision is certified.
DigitSequence quasi_greedy_one_certified(RefinableScalar& beta, int m, int n);

/// Parry-style admissibility: every shift of the (eventually periodic) word
/// lies lexicographically strictly between the reflected quasi-greedy
/// expansion of 1 and the quasi-greedy expansion itself. Throws
/// HorizonTooShort if some comparison is still tied after n_check digits.
bool is_admissible(const ExpansionParams& params, const DigitSequence& word, int n_check);

/// Same check against a caller-supplied quasi-greedy expansion of 1 (at least
/// n_check digits), so bulk callers pay for the orbit only once.
bool is_admissible(const DigitSequence& quasi_greedy_of_one, const DigitSequence& word,
                   int n_check);

enum class Verdict { unique, not_unique, undecided };
enum class UndecidedReason { horizon, boundary };

struct UniquenessCertificate {
    Verdict verdict = Verdict::undecided;
    std::optional<UndecidedReason> reason;
    std::vector<int> orbit_digits;      // forced digits along the walked orbit
    std::vector<QBeta> orbit_points;    // visited orbit points, starting at x
    std::optional<size_t> cycle_start;  // unique: orbit closes back to this index
    std::optional<size_t> branch_step;  // not_unique: first step with >= 2 digits
    std::vector<int> branch_digits;     // the digits available at the branch
};

/// Walks the orbit of x with exact arithmetic. `unique` requires a closed
/// orbit every point of which admits exactly one digit; `not_unique` reports
/// the first branching point. When beta is within 1e-6 of G(m) the verdict is
/// `undecided` (boundary) rather than a possibly misleading classification.
UniquenessCertificate uniqueness_certificate(const ExpansionParams& params, const QBeta& x,
                                             size_t max_steps = 4096);

/// The T_{beta,0}-preimages of the distinguished uniquely-expandable point
/// (k/(beta-1) for even m, (k*beta+k+1)/(beta^2-1) for odd m); n = 0 returns
/// the base point itself. Requires beta > G(m).
std::vector<QBeta> uniqueness_preimage_family(const ExpansionParams& params, int n);

/// Greedy expansion of x: the largest valid digit at every step.
DigitSequence greedy_expansion(const ExpansionParams& params, const QBeta& x, int n);

/// Exact sign of p evaluated at params.beta; used for threshold tests such as
/// beta vs G(m) (the golden polynomial is positive exactly above its
/// dominant root for beta > 1).
int poly_sign_at_beta(const ExpansionParams& params, const IntPolynomial& p);

} // namespace betaforge
