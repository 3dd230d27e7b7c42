#include "tetkit/rng.hpp"

namespace tetkit {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below(0)");
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = gen_();
    } while (x >= limit);
    return x % bound;
}

long Rng::range(long lo, long hi) {
    if (lo > hi) throw std::invalid_argument("Rng::range: empty interval");
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

WeightedElection random_election(Rng& rng, int k, long n) {
    auto rankings = all_rankings(k);
    WeightedElection e;
    e.k = k;
    e.mode = Mode::finite;
    e.total = n;
    for (long i = 0; i < n; ++i) e.add(rankings[rng.below(rankings.size())], 1);
    return e;
}

}  // namespace tetkit
