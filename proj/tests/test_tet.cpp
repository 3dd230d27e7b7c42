#include <doctest.h>

#include "tetkit/rng.hpp"
#include "tetkit/tet.hpp"

using namespace tetkit;

namespace {

const char* kThreeRowTying =
    "k=4\n"
    "mode=finite\n"
    "w=[1,1,1]\n"
    "M=[2,-1,-1]\n"
    "M=[-1,2,-1]\n"
    "M=[-1,-1,2]\n";

const char* kMirrorTable =
    "k=4\n"
    "mode=weighted\n"
    "w=[1/6,1/6,1/6,1/6,1/6,1/6]\n"
    "M=[1,-1,2,-2,3,-3]\n"
    "M=[-1,1,-2,2,-3,3]\n";

TransitiveElectionTable parse_ok(const std::string& text) {
    std::string err;
    auto t = parse_table_file(text, &err);
    REQUIRE_MESSAGE(t, err);
    return *t;
}

TransitiveElectionTable random_table(Rng& rng, int m, int t) {
    TransitiveElectionTable tet;
    tet.k = 4;
    tet.mode = Mode::finite;
    for (int j = 0; j < t; ++j) tet.w.push_back(rng.range(0, 2));
    if (std::all_of(tet.w.begin(), tet.w.end(), [](const Rat& x) { return x == 0; })) tet.w[0] = 1;
    for (int i = 0; i < m; ++i) {
        std::vector<int> row;
        for (int j = 0; j < t; ++j) row.push_back(dk_at(4, static_cast<int>(rng.below(6))));
        tet.M.push_back(row);
    }
    if (m > 2) tet.P = left_tree(m);
    return tet;
}

}  // namespace

TEST_CASE("parenthesizations parse and print") {
    auto p = parse_paren("((x1 x2) x3)");
    CHECK(p.leaves() == 3);
    CHECK(paren_str(p) == "((x1 x2) x3)");
    CHECK(p == left_tree(3));

    auto big = parse_paren("(((((((x1 x2) x3) (x4 x5)) x6) x7) (x8 x9)) ((x10 x11) x12))");
    CHECK(big.leaves() == 12);
    CHECK(paren_str(big) == "(((((((x1 x2) x3) (x4 x5)) x6) x7) (x8 x9)) ((x10 x11) x12))");
    CHECK(!(big == left_tree(12)));

    CHECK(parse_paren("x1").leaves() == 1);

    auto offset_of = [](const std::string& text) {
        try {
            parse_paren(text);
        } catch (const ParenParseError& e) {
            return static_cast<long>(e.offset);
        }
        return -1L;
    };
    CHECK(offset_of("(x1") == 3);         // input stops inside the group
    CHECK(offset_of("(x1 x2 x3)") == 7);  // third factor
    CHECK(offset_of("x1 x2") == 3);       // trailing input
    CHECK(offset_of("(x2 x1)") == 1);     // out of order
    CHECK(offset_of("(x1 x3)") == 4);     // gap in indices
    CHECK(offset_of("(x1 (x2 x3)") == 0);
    CHECK(offset_of("()") == 1);
    CHECK(offset_of("") == 0);
}

TEST_CASE("row distributions weight the margins of a row") {
    auto tying = parse_ok(kThreeRowTying);
    CHECK(dist_str(row_distribution(tying, 1)) == "0,0,2,0,1,0");
    CHECK(dist_str(row_distribution(tying, 2)) == "0,0,2,0,1,0");
    CHECK(dist_str(row_distribution(tying, 3)) == "0,0,2,0,1,0");
    CHECK_THROWS_AS(row_distribution(tying, 4), std::out_of_range);

    auto mirror = parse_ok(kMirrorTable);
    auto a = row_distribution(mirror, 1);
    for (int d : dk_values(4)) CHECK(a.at(d) == Rat(1, 6));
    CHECK(is_symmetric(a));

    TransitiveElectionTable zero;
    zero.k = 4;
    zero.w = {1, 0};
    zero.M = {{1, 3}, {2, 3}};
    CHECK(dist_str(row_distribution(zero, 1)) == "0,0,0,1,0,0");
}

TEST_CASE("validation accepts the golden tying tables") {
    auto rep = validate(parse_ok(kThreeRowTying));
    CHECK(rep.valid);
    CHECK(rep.tying);
    auto rep2 = validate(parse_ok(kMirrorTable));
    CHECK(rep2.valid);
    CHECK(rep2.tying);
}

TEST_CASE("validation localizes violations") {
    // inner group sums to zero in its only column
    TransitiveElectionTable t;
    t.k = 4;
    t.w = {1};
    t.M = {{1}, {-1}, {1}};
    t.P = parse_paren("((x1 x2) x3)");
    auto rep = validate(t);
    CHECK(!rep.valid);
    CHECK(!rep.tying);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].where == "node x1..x2");
    CHECK(rep.violations[0].column == 1);

    // non-tying m=3 needs a parenthesization
    t.P.reset();
    rep = validate(t);
    CHECK(!rep.valid);
    CHECK(rep.violations[0].where == "P");

    // tying m=3 does not
    t.M = {{1}, {1}, {-2}};
    rep = validate(t);
    CHECK(rep.valid);
    CHECK(rep.tying);

    // zero entry sits outside D_k
    t.M = {{1}, {0}, {-2}};
    rep = validate(t);
    CHECK(!rep.valid);
    CHECK(rep.violations[0].where == "row 2");

    // column sum out of range
    TransitiveElectionTable u;
    u.k = 4;
    u.w = {1, 1};
    u.M = {{3, 1}, {3, -1}};
    rep = validate(u);
    CHECK(!rep.valid);
    CHECK(rep.violations[0].where == "M0");
    CHECK(rep.violations[0].column == 1);

    // weighted tables must have unit total
    TransitiveElectionTable v;
    v.k = 4;
    v.mode = Mode::weighted;
    v.w = {Rat(1, 2), Rat(1, 3)};
    v.M = {{1, 2}, {-1, -2}};
    rep = validate(v);
    CHECK(!rep.valid);
    CHECK(rep.violations[0].where == "w");

    v.w = {Rat(1, 2), Rat(1, 2)};
    CHECK(validate(v).valid);

    // finite mode rejects fractional and negative weights
    TransitiveElectionTable f;
    f.k = 4;
    f.w = {Rat(1, 2), Rat(3, 2)};
    f.M = {{1, 2}, {-1, -2}};
    CHECK(!validate(f).valid);
    f.w = {-1, 3};
    CHECK(!validate(f).valid);

    // mismatched parenthesization size
    TransitiveElectionTable g;
    g.k = 4;
    g.w = {1};
    g.M = {{1}, {2}};
    g.P = left_tree(3);
    CHECK(!validate(g).valid);
}

TEST_CASE("fact bases honor reflection and the tying axiom") {
    FactBase fb(4, Mode::finite);
    auto sym = MarginDist::from_map(4, {{2, 1}, {-2, 1}});
    CHECK(fb.lookup(sym) == SymOutcome{0, Outcome::T});
    CHECK_THROWS_AS(fb.set_concrete(sym, Outcome::W), InconsistencyError);
    fb.set_concrete(sym, Outcome::T);  // explicit tie is fine

    auto a = MarginDist::from_map(4, {{1, 2}});
    fb.set_concrete(a, Outcome::W);
    CHECK(fb.lookup(a) == SymOutcome{0, Outcome::W});
    CHECK(fb.lookup(reflect(a)) == SymOutcome{0, Outcome::L});
    CHECK_THROWS_AS(fb.set_concrete(reflect(a), Outcome::W), InconsistencyError);
    fb.set_concrete(reflect(a), Outcome::L);  // idempotent through reflection

    auto b = MarginDist::from_map(4, {{3, 1}, {1, 1}});
    fb.set_symbolic(b, 1);
    CHECK(fb.lookup(b) == SymOutcome{1, Outcome::T});
    CHECK(fb.lookup(reflect(b)) == SymOutcome{-1, Outcome::T});
    CHECK(fb.has_symbolic());
    CHECK_THROWS_AS(fb.set_symbolic(reflect(b), 1), InconsistencyError);
    CHECK_THROWS_AS(fb.set_symbolic(sym, 1), std::invalid_argument);

    fb.bind(Outcome::W);
    CHECK(!fb.has_symbolic());
    CHECK(fb.lookup(b) == SymOutcome{0, Outcome::W});
    CHECK(fb.lookup(reflect(b)) == SymOutcome{0, Outcome::L});
}

TEST_CASE("inference folds row facts through the tree") {
    TransitiveElectionTable t;
    t.k = 4;
    t.w = {1};
    t.M = {{1}, {2}};
    FactBase fb(4, Mode::finite);
    fb.set_concrete(MarginDist::from_map(4, {{1, 1}}), Outcome::W);
    fb.set_concrete(MarginDist::from_map(4, {{2, 1}}), Outcome::T);
    auto inf = infer(t, fb);
    CHECK(!inf.tying);
    CHECK(dist_str(inf.target) == "0,0,0,0,0,1");
    CHECK(inf.value == SymOutcome{0, Outcome::W});

    auto res = absorb(fb, inf);
    CHECK(!res.binding);
    CHECK(res.facts.lookup(inf.target) == SymOutcome{0, Outcome::W});

    // W against L folds nowhere
    TransitiveElectionTable bad;
    bad.k = 4;
    bad.w = {1};
    bad.M = {{1}, {-2}};
    FactBase fb2(4, Mode::finite);
    fb2.set_concrete(MarginDist::from_map(4, {{1, 1}}), Outcome::W);
    fb2.set_concrete(MarginDist::from_map(4, {{-2, 1}}), Outcome::L);
    CHECK_THROWS_AS(infer(bad, fb2), InconsistencyError);

    // missing row fact
    FactBase fb3(4, Mode::finite);
    CHECK_THROWS_AS(infer(t, fb3), IncompleteFactsError);

    // symbolic next to a strict concrete value cannot fold
    FactBase fb4(4, Mode::finite);
    fb4.set_symbolic(MarginDist::from_map(4, {{1, 1}}), 1);
    fb4.set_concrete(MarginDist::from_map(4, {{2, 1}}), Outcome::W);
    CHECK_THROWS_AS(infer(t, fb4), InconsistencyError);

    // invalid tables are rejected up front
    TransitiveElectionTable inv;
    inv.k = 4;
    inv.w = {1};
    inv.M = {{3}, {3}};
    CHECK_THROWS_AS(infer(inv, fb), std::invalid_argument);
}

TEST_CASE("a symbolic conclusion lands in the facts and unifies later") {
    TransitiveElectionTable t;
    t.k = 4;
    t.w = {1};
    t.M = {{1}, {2}};
    FactBase fb(4, Mode::finite);
    fb.set_symbolic(MarginDist::from_map(4, {{1, 1}}), 1);
    fb.set_concrete(MarginDist::from_map(4, {{2, 1}}), Outcome::T);
    auto inf = infer(t, fb);
    CHECK(inf.value == SymOutcome{1, Outcome::T});
    auto res = absorb(fb, inf);
    CHECK(!res.binding);
    CHECK(res.facts.lookup(inf.target) == SymOutcome{1, Outcome::T});

    // if the target was already known to tie, X resolves to T
    FactBase fb2(4, Mode::finite);
    fb2.set_symbolic(MarginDist::from_map(4, {{1, 1}}), 1);
    fb2.set_concrete(MarginDist::from_map(4, {{2, 1}}), Outcome::T);
    fb2.set_concrete(MarginDist::from_map(4, {{3, 1}}), Outcome::T);
    auto res2 = absorb(fb2, infer(t, fb2));
    CHECK(res2.binding == Outcome::T);
    CHECK(res2.facts.lookup(MarginDist::from_map(4, {{1, 1}})) == SymOutcome{0, Outcome::T});

    // and a clash of concrete conclusions is refused
    FactBase fb3(4, Mode::finite);
    fb3.set_concrete(MarginDist::from_map(4, {{1, 1}}), Outcome::W);
    fb3.set_concrete(MarginDist::from_map(4, {{2, 1}}), Outcome::W);
    fb3.set_concrete(MarginDist::from_map(4, {{3, 1}}), Outcome::L);
    CHECK_THROWS_AS(absorb(fb3, infer(t, fb3)), InconsistencyError);
}

TEST_CASE("tying tables resolve or vacuously pass the mirror equation") {
    // all three rows carry X at the same distribution: X = T
    auto tying = parse_ok(kThreeRowTying);
    FactBase fb(4, Mode::finite);
    auto alpha = MarginDist::from_map(4, {{2, 1}, {-1, 2}});
    fb.set_symbolic(alpha, 1);
    auto inf = infer(tying, fb);
    CHECK(inf.tying);
    CHECK(inf.binding == Outcome::T);
    auto res = absorb(fb, inf);
    CHECK(res.binding == Outcome::T);
    CHECK(res.facts.lookup(alpha) == SymOutcome{0, Outcome::T});

    // the mirror table needs no facts at all: both rows tie by the axiom
    auto mirror = parse_ok(kMirrorTable);
    FactBase none(4, Mode::weighted);
    auto inf2 = infer(mirror, none);
    CHECK(inf2.tying);
    CHECK(!inf2.binding);

    // concrete facts that refuse to mirror are inconsistent
    TransitiveElectionTable t;
    t.k = 4;
    t.w = {1};
    t.M = {{1}, {1}, {-2}};
    FactBase fb3(4, Mode::finite);
    fb3.set_concrete(MarginDist::from_map(4, {{1, 1}}), Outcome::W);
    fb3.set_concrete(MarginDist::from_map(4, {{-2, 1}}), Outcome::W);
    CHECK_THROWS_AS(infer(t, fb3), InconsistencyError);

    // m=3 tying falls back across pairings when the first clashes
    TransitiveElectionTable u;
    u.k = 4;
    u.w = {1, 1};
    u.M = {{1, -2}, {2, -1}, {-3, 3}};
    FactBase fb4(4, Mode::finite);
    fb4.set_symbolic(vector_distribution(u, u.M[0]), 1);
    auto inf4 = infer(u, fb4);
    CHECK(inf4.tying);
    CHECK(!inf4.binding);
}

TEST_CASE("sign of the weighted margin sum is a model of the kernel") {
    Rng rng(31);
    int folded = 0;
    for (int trial = 0; trial < 4000; ++trial) {
        auto t = random_table(rng, 2 + static_cast<int>(rng.below(3)), 1 + static_cast<int>(rng.below(3)));
        if (!validate(t).valid) continue;
        FactBase fb(4, Mode::finite);
        for (int i = 1; i <= t.m(); ++i) {
            auto a = row_distribution(t, i);
            fb.set_concrete(a, sign_outcome(margin_sum(a)));
        }
        try {
            auto inf = infer(t, fb);
            ++folded;
            if (inf.tying) {
                CHECK(!inf.binding);
            } else {
                CHECK(inf.value == SymOutcome{0, sign_outcome(margin_sum(inf.target))});
            }
        } catch (const InconsistencyError&) {
            // a W row against an L row proves nothing; that is fine
        }
    }
    CHECK(folded > 200);
}

TEST_CASE("inference ignores column order and column splits") {
    Rng rng(32);
    int used = 0;
    for (int trial = 0; trial < 10000 && used < 150; ++trial) {
        auto t = random_table(rng, 2 + static_cast<int>(rng.below(2)), 2);
        if (!validate(t).valid) continue;
        FactBase fb(4, Mode::finite);
        for (int i = 1; i <= t.m(); ++i) {
            auto a = row_distribution(t, i);
            fb.set_concrete(a, sign_outcome(margin_sum(a)));
        }
        Inference base;
        try {
            base = infer(t, fb);
        } catch (const InconsistencyError&) {
            continue;
        }
        ++used;

        auto swapped = t;
        std::swap(swapped.w[0], swapped.w[1]);
        for (auto& row : swapped.M) std::swap(row[0], row[1]);
        auto infSwapped = infer(swapped, fb);
        CHECK(infSwapped.tying == base.tying);
        if (!base.tying) {
            CHECK(infSwapped.target == base.target);
            CHECK(infSwapped.value == base.value);
        }

        // split the first column into two halves with the same margins
        auto split = t;
        if (split.w[0] >= 1) {
            split.w.insert(split.w.begin() + 1, split.w[0] - 1);
            split.w[0] = 1;
            for (auto& row : split.M) row.insert(row.begin() + 1, row[0]);
            for (int i = 1; i <= split.m(); ++i) CHECK(row_distribution(split, i) == row_distribution(t, i));
            auto infSplit = infer(split, fb);
            CHECK(infSplit.tying == base.tying);
            if (!base.tying) {
                CHECK(infSplit.target == base.target);
                CHECK(infSplit.value == base.value);
            }
        }
    }
    CHECK(used == 150);
}

TEST_CASE("table files round-trip byte-exactly") {
    std::string canonical = kThreeRowTying;
    auto t = parse_ok(canonical);
    CHECK(serialize_table(t) == canonical);
    auto mirror = parse_ok(kMirrorTable);
    CHECK(serialize_table(mirror) == kMirrorTable);

    std::string withP =
        "k=4\n"
        "mode=finite\n"
        "w=[2,1]\n"
        "P=((x1 x2) x3)\n"
        "M=[1,2]\n"
        "M=[1,-1]\n"
        "M=[1,2]\n";
    CHECK(serialize_table(parse_ok(withP)) == withP);

    // comments and spacing normalize away
    auto relaxed = parse_ok("k=4\nmode=finite\n w = [ 1, 1, 1 ]  # weights\nM=[2, -1, -1]\nM=[-1,2,-1]\nM=[-1,-1,2]\n");
    CHECK(serialize_table(relaxed) == canonical);
}

TEST_CASE("table files reject malformed input with line numbers") {
    std::string err;
    CHECK(!parse_table_file("k=4\nmode=finite\nw=[1,1]\nM=[1,1,1]\n", &err));
    CHECK(err.find("line 4") != std::string::npos);
    CHECK(!parse_table_file("k=4\nmode=finite\nw=[1]\nM=[0]\n", &err));
    CHECK(err.find("outside D_k") != std::string::npos);
    CHECK(!parse_table_file("k=4\nmode=finite\nw=[1]\nM=[4]\n", &err));
    CHECK(!parse_table_file("k=4\nmode=finite\nw=[1]\nM=[x]\n", &err));
    CHECK(!parse_table_file("mode=finite\nk=4\nw=[1]\nM=[1]\n", &err));
    CHECK(!parse_table_file("k=4\nmode=finite\nw=[1]\n", &err));
    CHECK(!parse_table_file("k=4\nmode=finite\nw=[1]\nM=[1]\nP=(x1 x2)\n", &err));
    CHECK(!parse_table_file("k=4\nmode=finite\nw=[1]\nP=(x1\nM=[1]\nM=[2]\n", &err));
    CHECK(err.find("line 4") != std::string::npos);
    CHECK(!parse_table_file("k=4\nmode=finite\nw=1,1\nM=[1,1]\n", &err));
    CHECK(!parse_table_file("k=4\nmode=finite\nw=[1]\nbogus=3\nM=[1]\nM=[2]\n", &err));
}

TEST_CASE("random valid tables survive a serialize parse loop") {
    Rng rng(33);
    int seen = 0;
    for (int trial = 0; trial < 1000 && seen < 100; ++trial) {
        auto t = random_table(rng, 2 + static_cast<int>(rng.below(3)), 1 + static_cast<int>(rng.below(3)));
        if (!validate(t).valid) continue;
        ++seen;
        auto text = serialize_table(t);
        std::string err;
        auto back = parse_table_file(text, &err);
        REQUIRE_MESSAGE(back, err);
        CHECK(serialize_table(*back) == text);
        CHECK(validate(*back).valid);
    }
    CHECK(seen == 100);
}
