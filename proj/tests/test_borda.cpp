#include <doctest.h>

#include "tetkit/borda.hpp"
#include "tetkit/rng.hpp"

using namespace tetkit;

namespace {

WeightedElection single(int k, const std::vector<int>& bf) {
    WeightedElection e;
    e.k = k;
    e.mode = Mode::finite;
    e.total = 1;
    e.add(Ranking::from_best_first(k, bf), 1);
    return e;
}

}  // namespace

TEST_CASE("borda_score sums weighted positions") {
    auto e = single(4, {1, 2, 3, 4});
    CHECK(borda_score(e, 1, 1) == 3);
    CHECK(borda_score(e, 4, 1) == 0);
    CHECK(borda_score(e, 2, 0) == 0);
    CHECK(borda_score(e, 1, -1) == -3);

    auto e2 = e;
    e2.add(Ranking::from_best_first(4, {4, 3, 2, 1}), 1);
    e2.total = 2;
    CHECK(borda_score(e2, 2, 1) == 3);
    CHECK(borda_score(e2, 1, 1) == 3);
    CHECK_THROWS_AS(borda_score(e, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(borda_score(e, 1, 2), std::invalid_argument);
}

TEST_CASE("borda_margin weights the margin sum") {
    MarginDist half(4);
    half.at(2) = Rat(1, 2);
    half.at(1) = Rat(1, 2);
    CHECK(borda_margin(half, 1) == Rat(3, 2));

    auto a = MarginDist::from_map(4, {{1, 2}, {-2, 1}});
    CHECK(borda_margin(a, 1) == 0);
    CHECK(borda_margin(a, -1) == 0);
    auto b = MarginDist::from_map(4, {{3, 1}, {-1, 1}});
    CHECK(borda_margin(b, 1) == 2);
    CHECK(borda_margin(b, -1) == -2);
    CHECK(borda_margin(b, 0) == 0);
}

TEST_CASE("sign_outcome maps sign to outcome") {
    CHECK(sign_outcome(Rat(5, 2)) == Outcome::W);
    CHECK(sign_outcome(Rat(0)) == Outcome::T);
    CHECK(sign_outcome(Rat(-1)) == Outcome::L);
}

TEST_CASE("borda_rule ranks by score with shared tiers") {
    auto e = single(4, {1, 2, 3, 4});
    CHECK(ordering_str(borda_rule(e, 1)) == "1 | 2 | 3 | 4");
    CHECK(ordering_str(borda_rule(e, -1)) == "4 | 3 | 2 | 1");
    CHECK(ordering_str(borda_rule(e, 0)) == "1 2 3 4");

    auto e2 = e;
    e2.add(Ranking::from_best_first(4, {4, 3, 2, 1}), 1);
    e2.total = 2;
    CHECK(ordering_str(borda_rule(e2, 1)) == "1 2 3 4");
}

TEST_CASE("positive and negative Borda rules are exact reversals") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        int k = 2 + static_cast<int>(rng.below(5));
        auto e = random_election(rng, k, rng.range(1, 8));
        auto up = borda_rule(e, 1);
        auto down = borda_rule(e, -1);
        REQUIRE(up.tiers.size() == down.tiers.size());
        for (size_t t = 0; t < up.tiers.size(); ++t)
            CHECK(up.tiers[t] == down.tiers[down.tiers.size() - 1 - t]);
        for (int i = 1; i <= k; ++i)
            for (int j = 1; j <= k; ++j) {
                if (i == j) continue;
                CHECK(up.compare(i, j) == sign_outcome(borda_score(e, i, 1) - borda_score(e, j, 1)));
            }
    }
}

TEST_CASE("projected margin sums equal score differences") {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        int k = 2 + static_cast<int>(rng.below(5));
        auto e = random_election(rng, k, rng.range(1, 8));
        for (int i = 1; i <= k; ++i)
            for (int j = 1; j <= k; ++j) {
                if (i == j) continue;
                CHECK(borda_margin(project_election(e, i, j), 1) == borda_score(e, i, 1) - borda_score(e, j, 1));
            }
    }
}

TEST_CASE("margin sums are additive and antisymmetric") {
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        int k = 2 + static_cast<int>(rng.below(5));
        MarginDist a(k), b(k), sum(k);
        for (int idx = 0; idx < dk_size(k); ++idx) {
            a.v[idx] = rng.range(0, 4);
            b.v[idx] = rng.range(0, 4);
            sum.v[idx] = a.v[idx] + b.v[idx];
        }
        for (int w : {-1, 0, 1}) {
            CHECK(borda_margin(sum, w) == borda_margin(a, w) + borda_margin(b, w));
            CHECK(borda_margin(reflect(a), w) == -borda_margin(a, w));
        }
    }
}

TEST_CASE("all_margin_dists enumerates compositions lexicographically") {
    auto v41 = all_margin_dists(4, 1);
    CHECK(v41.size() == 6);
    CHECK(dist_str(v41.front()) == "0,0,0,0,0,1");
    CHECK(dist_str(v41.back()) == "1,0,0,0,0,0");
    CHECK(all_margin_dists(4, 2).size() == 21);
    CHECK(all_margin_dists(3, 1).size() == 4);
    auto v42 = all_margin_dists(4, 2);
    for (size_t i = 1; i < v42.size(); ++i) CHECK(v42[i - 1] < v42[i]);
}

TEST_CASE("classify_borda_pattern recognizes the three patterns") {
    auto build = [](int k, long n, auto valueOf) {
        RelativeSwfTable f;
        f.k = k;
        f.total = n;
        for (const auto& a : all_margin_dists(k, n)) f.set(a, valueOf(a));
        return f;
    };
    auto plus = build(4, 2, [](const MarginDist& a) { return sign_outcome(margin_sum(a)); });
    CHECK(classify_borda_pattern(plus) == 1);
    auto minus = build(4, 2, [](const MarginDist& a) { return sign_outcome(-margin_sum(a)); });
    CHECK(classify_borda_pattern(minus) == -1);
    auto ties = build(4, 2, [](const MarginDist&) { return Outcome::T; });
    CHECK(classify_borda_pattern(ties) == 0);

    // flip one nonzero-margin value: no longer any pattern
    RelativeSwfTable bent = ties;
    auto witness = MarginDist::from_map(4, {{3, 2}});
    bent.assignments[witness] = Outcome::W;
    bent.assignments[reflect(witness)] = Outcome::L;
    CHECK(!classify_borda_pattern(bent));

    RelativeSwfTable partial;
    partial.k = 4;
    partial.total = 2;
    partial.set(witness, Outcome::W);
    CHECK_THROWS_AS(classify_borda_pattern(partial), std::domain_error);

    RelativeSwfTable sampledPartial = partial;
    sampledPartial.sampled = true;
    CHECK(classify_borda_pattern(sampledPartial) == 1);
}

TEST_CASE("pairwise tables enforce the reflection invariant") {
    RelativeSwfTable f;
    f.k = 4;
    f.total = 1;
    auto a = MarginDist::from_map(4, {{2, 1}});
    f.set(a, Outcome::W);
    CHECK(f.get(a) == Outcome::W);
    CHECK(!f.get(reflect(a)));
    CHECK_THROWS_AS(f.set(a, Outcome::T), std::runtime_error);
    CHECK_THROWS_AS(f.set(reflect(a), Outcome::W), std::runtime_error);
    f.set(reflect(a), Outcome::L);
    auto sym = MarginDist::from_map(4, {{1, 1}, {-1, 1}});
    CHECK_THROWS_AS(f.set(sym, Outcome::W), std::runtime_error);
    f.set(sym, Outcome::T);
}
