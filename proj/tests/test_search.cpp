#include <doctest.h>

#include <algorithm>
#include <random>

#include "tetkit/search.hpp"

using namespace tetkit;

namespace {

MarginDist dist(int k, const std::string& csv) {
    auto d = parse_dist(k, csv);
    REQUIRE(d);
    return *d;
}

Rat magnitude(const MarginDist& a) {
    Rat m = margin_sum(a);
    if (m < 0) m = -m;
    return m;
}

std::vector<std::map<MarginDist, Outcome>> assignment_maps(
    const std::vector<RelativeSwfTable>& sols) {
    std::vector<std::map<MarginDist, Outcome>> out;
    for (const auto& s : sols) out.push_back(s.assignments);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("margin distribution enumeration counts, order and guard") {
    CHECK(enumerate_margin_distributions(4, 1).size() == 6);
    CHECK(enumerate_margin_distributions(4, 2).size() == 21);
    CHECK(enumerate_margin_distributions(3, 1).size() == 4);
    auto ds = enumerate_margin_distributions(4, 2);
    CHECK(std::is_sorted(ds.begin(), ds.end()));
    for (const auto& d : ds) CHECK(d.total() == 2);
    CHECK_THROWS_AS(enumerate_margin_distributions(4, 2000000), CapacityError);
    CHECK_THROWS_AS(enumerate_margin_distributions(4, 400), CapacityError);
}

TEST_CASE("problem construction invariants") {
    SearchProblem pb = build_search_problem(4, 2);
    REQUIRE(pb.variables.size() == 9);
    for (const auto& v : pb.variables) {
        CHECK(!is_symmetric(v));
        CHECK(v < reflect(v));
    }
    for (std::size_t i = 0; i + 1 < pb.variables.size(); ++i)
        CHECK(magnitude(pb.variables[i]) <= magnitude(pb.variables[i + 1]));
    CHECK(std::is_sorted(pb.triples.begin(), pb.triples.end()));
    CHECK(std::adjacent_find(pb.triples.begin(), pb.triples.end()) == pb.triples.end());
    for (const auto& tr : pb.triples) {
        bool has_var = false;
        for (const SearchLiteral& l : tr) {
            CHECK((l.sign == 1 || l.sign == -1));
            if (l.var >= 0) {
                has_var = true;
                CHECK(l.var < static_cast<int>(pb.variables.size()));
            }
        }
        CHECK(has_var);
    }
}

TEST_CASE("constraint triples are margin additive") {
    for (const auto& tr : enumerate_constraint_triples(4, 2))
        CHECK(margin_sum(tr[2]) == margin_sum(tr[0]) + margin_sum(tr[1]));
}

TEST_CASE("exactly three consistent relative SWFs at four candidates") {
    for (long n : {1L, 2L, 3L}) {
        SearchProblem pb = build_search_problem(4, n);
        auto sols = enumerate_solutions(pb);
        REQUIRE(sols.size() == 3);
        ClassifyReport rep = classify_solutions(sols);
        CHECK(rep.plus == 1);
        CHECK(rep.zero == 1);
        CHECK(rep.minus == 1);
        CHECK(rep.non_borda.empty());
        CrossValidateReport cv = cross_validate(sols, 4, n);
        CHECK(cv.solutions == 3);
        CHECK(cv.violations.empty());
        CHECK(cv.negative_checks > 0);
        if (n > 1) CHECK(cv.zero_margin_checks > 0);
    }
}

TEST_CASE("four-candidate single-voter solutions are the sign rules") {
    auto sols = enumerate_solutions(build_search_problem(4, 1));
    REQUIRE(sols.size() == 3);
    for (const auto& s : sols) {
        auto pat = classify_borda_pattern(s);
        REQUIRE(pat.has_value());
        for (const auto& [a, o] : s.assignments)
            CHECK(o == sign_outcome(borda_margin(a, *pat)));
    }
}

TEST_CASE("three candidates: patterns present, count reported not assumed") {
    for (long n : {1L, 2L}) {
        auto sols = enumerate_solutions(build_search_problem(3, n));
        ClassifyReport rep = classify_solutions(sols);
        CHECK(rep.plus == 1);
        CHECK(rep.zero == 1);
        CHECK(rep.minus == 1);
        CHECK(rep.plus + rep.zero + rep.minus + static_cast<long>(rep.non_borda.size()) ==
              static_cast<long>(sols.size()));
    }
}

TEST_CASE("empty solution lists") {
    ClassifyReport rep = classify_solutions({});
    CHECK(rep.plus == 0);
    CHECK(rep.zero == 0);
    CHECK(rep.minus == 0);
    CHECK(rep.non_borda.empty());
    CrossValidateReport cv = cross_validate({}, 4, 1);
    CHECK(cv.solutions == 0);
    CHECK(cv.violations.empty());
}

TEST_CASE("solution set ignores constraint order") {
    SearchProblem pb = build_search_problem(4, 2);
    auto base = assignment_maps(enumerate_solutions(pb));
    std::mt19937 rng(7);
    for (int round = 0; round < 3; ++round) {
        std::shuffle(pb.triples.begin(), pb.triples.end(), rng);
        CHECK(assignment_maps(enumerate_solutions(pb)) == base);
    }
}

TEST_CASE("propagation does not change the solution set") {
    for (long n : {1L, 2L}) {
        SearchProblem pb = build_search_problem(4, n);
        CHECK(assignment_maps(enumerate_solutions(pb, true)) ==
              assignment_maps(enumerate_solutions(pb, false)));
    }
}

TEST_CASE("cross validation flags corrupted tables") {
    auto sols = enumerate_solutions(build_search_problem(4, 2));
    REQUIRE(sols.size() == 3);
    SUBCASE("zero-margin vector flipped") {
        auto s = sols;
        s[0].assignments[dist(4, "0,0,1,1,0,0")] = Outcome::W;
        auto cv = cross_validate(s, 4, 2);
        REQUIRE(!cv.violations.empty());
        CHECK(cv.violations.front().what == "zero-margin vector not sent to T");
    }
    SUBCASE("negative vectors made non-constant") {
        auto s = sols;
        s[0].assignments[dist(4, "0,0,2,0,0,0")] = Outcome::W;
        s[0].assignments[dist(4, "0,2,0,0,0,0")] = Outcome::L;
        auto cv = cross_validate(s, 4, 2);
        CHECK(!cv.violations.empty());
    }
    SUBCASE("domain mismatch") {
        auto cv = cross_validate({sols[0]}, 4, 3);
        REQUIRE(cv.violations.size() == 1);
        CHECK(cv.violations.front().what == "solution domain mismatch");
    }
}

TEST_CASE("capacity guards fail fast") {
    CHECK_THROWS_AS(build_search_problem(4, 7), CapacityError);
    CHECK_THROWS_AS(build_search_problem(6, 1), CapacityError);
}

}  // TEST_SUITE
