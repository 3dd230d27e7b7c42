// Consistent multisets, per-ballot feasibility of margin pairs, couplings of
// two margin distributions into a three-candidate election, constraint
// triples, and the Pareto / positive-responsiveness predicates.
#pragma once

#include "tetkit/borda.hpp"
#include "tetkit/core.hpp"

#include <array>
#include <utility>

namespace tetkit {

// Joint distribution over feasible margin pairs (d1, d2); the row marginal
// is the (1,2) projection, the column marginal the (2,3) projection.
struct Coupling {
    int k = 0;
    Mode mode = Mode::finite;
    std::map<std::pair<int, int>, Rat> cells;  // weight > 0 per cell

    Rat total() const;
    MarginDist row_marginal() const;
    MarginDist col_marginal() const;
    // Throws std::runtime_error on infeasible keys or non-positive weights.
    void check() const;
};

// True iff the three outcomes form {W,W,L}, {W,T,L}, {W,L,L} or {T,T,T}.
// Throws std::domain_error unless exactly three outcomes are given.
bool multiset_consistent(const std::vector<Outcome>& xs);

// A single ballot can realize margins d1 on (1,2) and d2 on (2,3) iff
// d1, d2 and d1+d2 all lie in D_k.
bool margin_pair_feasible(int d1, int d2, int k);

// All feasible (d1, d2) pairs, lexicographic.
std::vector<std::pair<int, int>> feasible_pairs(int k);

// A ranking with (1,2) margin d1 and (2,3) margin d2: c2 takes the highest
// position the pair allows and candidates beyond c3 fill the remaining
// positions bottom-up in ascending index order. Throws std::domain_error on
// an infeasible pair.
Ranking construct_ranking(int d1, int d2, int k);

// A coupling with the given row and column marginals, or nullopt when none
// exists. Finite-mode cells come out integral. Throws std::domain_error on
// mismatched k or totals.
std::optional<Coupling> couple(const MarginDist& a1, const MarginDist& a2, Mode mode);

// The election that places weight cells[(d1,d2)] on construct_ranking(d1,d2).
// Throws std::domain_error on an empty coupling.
WeightedElection coupling_to_election(const Coupling& c);

// Distribution of d1+d2 over the cells; the (1,3) projection of the coupled
// election.
MarginDist third_margin(const Coupling& c);

// All distinct (row marginal, column marginal, third margin) triples over
// multisets of n feasible pairs. Guards: feasible pairs <= 40 and n <= 6
// (CapacityError beyond).
std::vector<std::array<MarginDist, 3>> enumerate_constraint_triples(int k, long n);

// True iff every assigned vector supported on positive margins maps to W.
// A finite non-sampled table must cover all of them (std::domain_error).
bool check_pareto(const RelativeSwfTable& f);

// True iff majorization never ranks below: majorizes(a, b) implies
// f(a) >= f(b) under W > T > L. Totality as in check_pareto.
bool check_positive_responsiveness(const RelativeSwfTable& f);

}  // namespace tetkit
