// Deterministic random draws. std::uniform_int_distribution is not pinned
// across standard library implementations, so bounded draws use explicit
// rejection sampling on top of mt19937_64.
#pragma once

#include "tetkit/core.hpp"

#include <cstdint>
#include <random>

namespace tetkit {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound);
    // Uniform in [lo, hi], inclusive.
    long range(long lo, long hi);

  private:
    std::mt19937_64 gen_;
};

// n ballots drawn uniformly from the k! rankings.
WeightedElection random_election(Rng& rng, int k, long n);

}  // namespace tetkit
