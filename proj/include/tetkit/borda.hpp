// Borda scores and margins, the sign map, the three unweighted Borda rules,
// and pattern classification of pairwise tables.
#pragma once

#include "tetkit/core.hpp"

namespace tetkit {

// Allowed Borda weights are -1, 0 and +1.
inline void check_borda_weight(int w) {
    if (w < -1 || w > 1) throw std::invalid_argument("borda weight must be -1, 0 or +1");
}

// Pairwise table: canonical margin distribution -> outcome, possibly partial.
// Entries for a vector and its reflection must be negations of each other.
struct RelativeSwfTable {
    int k = 0;
    Mode mode = Mode::finite;
    Rat total = 0;           // n in finite mode, 1 in weighted mode
    bool sampled = false;    // domain is a sample, not all distributions of this total
    std::map<MarginDist, Outcome> assignments;

    // Inserts and enforces the reflection invariant (throws std::runtime_error).
    void set(const MarginDist& a, Outcome o);
    std::optional<Outcome> get(const MarginDist& a) const;
};

// w * sum of weight(r) * position of candidate i under r.
Rat borda_score(const WeightedElection& e, int i, int w);

// w * sum over d of d * alpha_d.
Rat borda_margin(const MarginDist& a, int w);

// W for positive, T for zero, L for negative.
Outcome sign_outcome(const Rat& x);

// Candidates ordered by descending borda_score; equal scores share a tier.
WeakOrdering borda_rule(const WeightedElection& e, int w);

// All margin distributions with k classes and the given non-negative integer
// total, lexicographic in the ascending-vector encoding.
std::vector<MarginDist> all_margin_dists(int k, long n);

// +1, 0 or -1 when the table is exactly that unweighted Borda pattern,
// nullopt otherwise. A finite-mode non-sampled table must cover every
// distribution of its total (throws std::domain_error if some are missing).
std::optional<int> classify_borda_pattern(const RelativeSwfTable& f);

}  // namespace tetkit
