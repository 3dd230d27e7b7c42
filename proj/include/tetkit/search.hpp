// Exhaustive enumeration of every consistent relative SWF at desk scale:
// one ternary variable per reflection pair, coupling triples as constraints,
// backtracking with unit propagation, and Borda-pattern classification.
#pragma once

#include "tetkit/consistency.hpp"

namespace tetkit {

// A constraint literal: the outcome of variables[var], negated when sign is
// -1. var == -1 is the constant T carried by a symmetric distribution.
struct SearchLiteral {
    int var = -1;
    int sign = +1;

    friend bool operator==(const SearchLiteral& a, const SearchLiteral& b) {
        return a.var == b.var && a.sign == b.sign;
    }
    friend bool operator<(const SearchLiteral& a, const SearchLiteral& b) {
        return a.var != b.var ? a.var < b.var : a.sign < b.sign;
    }
};

// One variable per reflection pair, represented by the lexicographically
// smaller vector; antisymmetry is compiled away and symmetric vectors fold
// to the constant T. Triples are deduplicated up to slot order and
// simultaneous reflection of all three slots.
struct SearchProblem {
    int k = 0;
    long n = 0;
    std::vector<MarginDist> variables;  // decision order: |margin sum| ascending
    std::vector<std::array<SearchLiteral, 3>> triples;
};

// All margin distributions with the given total, lexicographic in the
// ascending encoding. CapacityError when the count would exceed 10^6.
std::vector<MarginDist> enumerate_margin_distributions(int k, long n);

// CapacityError under the same guards as enumerate_constraint_triples plus
// the distribution-count guard above.
SearchProblem build_search_problem(int k, long n);

// The complete duplicate-free list of satisfying assignments as full tables,
// in deterministic order (decision order with values W, T, L). Disabling
// propagation falls back to plain backtracking with identical results.
std::vector<RelativeSwfTable> enumerate_solutions(const SearchProblem& problem,
                                                  bool propagate = true);

// Borda-pattern tally over solutions. The witness for a non-Borda solution
// is a zero-margin vector it does not send to T when one exists (such a
// vector defeats every pattern at once), otherwise the first vector where
// it leaves the positive pattern.
struct ClassifyReport {
    long plus = 0;
    long zero = 0;
    long minus = 0;
    struct NonBorda {
        std::size_t solution;
        MarginDist witness;
    };
    std::vector<NonBorda> non_borda;
};
ClassifyReport classify_solutions(const std::vector<RelativeSwfTable>& solutions);

// Checks each solution sends every zero-margin vector to T and takes one
// constant value across all negative-margin vectors of the domain.
struct CrossValidateReport {
    std::size_t solutions = 0;
    long zero_margin_checks = 0;
    long negative_checks = 0;
    struct Violation {
        std::size_t solution;
        MarginDist witness;
        std::string what;
    };
    std::vector<Violation> violations;
};
CrossValidateReport cross_validate(const std::vector<RelativeSwfTable>& solutions, int k,
                                   long n);

}  // namespace tetkit
