// Acceptance gate. Eight independent checks, one pass/fail line each, exit
// code 0 only when every one passes. Wall-clock budgets and all tolerances
// are pinned here: every comparison is exact, there are no epsilons.

#include "tetkit/catalog.hpp"
#include "tetkit/consistency.hpp"
#include "tetkit/rng.hpp"
#include "tetkit/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace tetkit;

namespace {

MarginDist desc4(Rat a3, Rat a2, Rat a1, Rat b1, Rat b2, Rat b3) {
    MarginDist d(4);
    d.at(3) = a3;
    d.at(2) = a2;
    d.at(1) = a1;
    d.at(-1) = b1;
    d.at(-2) = b2;
    d.at(-3) = b3;
    return d;
}

struct Outcome1 {
    bool pass = true;
    std::ostringstream detail;

    void fail(const std::string& why) {
        pass = false;
        detail << (detail.str().empty() ? "" : "; ") << why;
    }
    void note(const std::string& what) {
        if (pass && detail.str().empty()) detail << what;
    }
};

// ---------------------------------------------------------- 1. golden tables

// Every table the source text prints, instantiated at its stated example
// parameters; structural validity throughout and exact M0 = 0 wherever the
// table is tying.
void golden_tables(Outcome1& out) {
    struct Golden {
        LemmaId id;
        LemmaParams p;
        bool must_tie;
    };
    std::vector<Golden> list;
    auto add = [&](LemmaId id, const LemmaParams& p, bool must_tie = false) {
        list.push_back({id, p, must_tie});
    };
    LemmaParams p;

    p.alpha = desc4(Rat(1, 8), Rat(1, 8), Rat(1, 4), Rat(1, 4), Rat(1, 8), Rat(1, 8));
    add(LemmaId::L2candsym, p, true);
    add(LemmaId::Lfirstcomb, p);
    add(LemmaId::Lsecondcomb, p);
    add(LemmaId::Ldoubling, p);
    p.alpha = desc4(0, Rat(1, 10), Rat(2, 5), Rat(2, 5), Rat(1, 10), 0);
    add(LemmaId::Lfirstgeq, p);
    p.alpha = desc4(0, Rat(2, 5), Rat(1, 10), Rat(1, 10), Rat(2, 5), 0);
    add(LemmaId::Lsecondgeq, p);
    p = LemmaParams{};
    p.alpha = MarginDist(6);
    for (Rat& x : p.alpha.v) x = Rat(1, 10);
    add(LemmaId::Llayersk, p);

    p = LemmaParams{};
    p.n = 9;
    p.a = 1;
    add(LemmaId::Ltwelvestep, p, true);
    p.n = 9;
    p.a = 3;
    add(LemmaId::Lkleqn3_3an, p, true);
    p.n = 8;
    p.a = 2;
    add(LemmaId::Lkleqn4a, p);
    add(LemmaId::Lkleqn4b, p);
    p.n = 11;
    p.a = 3;
    add(LemmaId::Lkleqn3_beta, p);
    add(LemmaId::Lkleqn3_gamma, p);

    p = LemmaParams{};
    p.alpha = desc4(2, 1, 1, 2, 2, 1);
    add(LemmaId::Lalmostb4, p);
    p.alpha = desc4(0, 1, 1, 2, 1, 0);
    add(LemmaId::Lfirstm1_odd, p);
    p.alpha = desc4(0, 0, 2, 1, 1, 0);
    add(LemmaId::Lfirstm1_even, p);
    p.alpha = desc4(3, 0, 0, 0, 5, 0);
    add(LemmaId::Levenfix, p);

    p.alpha = desc4(1, 0, 1, 2, 1, 0);
    add(LemmaId::Lsmalln, p);
    p.alpha = desc4(1, 1, 0, 1, 2, 0);
    add(LemmaId::Lsmalln, p);
    p.alpha = desc4(1, 0, 0, 1, 1, 0);
    add(LemmaId::Lsmalln, p, true);

    p = LemmaParams{};
    for (long item = 1; item <= 7; ++item) {
        p.a = item;
        add(LemmaId::Ln2special, p);
    }

    std::vector<int> zero;
    for (const Golden& g : list) {
        std::string name = lemma_str(g.id);
        try {
            BuiltTable bt = build_table(g.id, g.p);
            for (const std::string& why : check_claims(bt)) out.fail(name + ": " + why);
            if (g.must_tie && !bt.tying) out.fail(name + ": expected a tying instance");
            if (bt.tying) {
                std::vector<int> m0 = bt.table.m0();
                if (!std::all_of(m0.begin(), m0.end(), [](int x) { return x == 0; }))
                    out.fail(name + ": tying table with nonzero M0");
            }
        } catch (const std::exception& e) {
            out.fail(name + ": " + e.what());
        }
    }
    out.note(std::to_string(list.size()) + " tables");
}

// --------------------------------------------------- 2. catalog property run

void catalog_properties(Outcome1& out) {
    const int kDraws = 100;
    long checked = 0;
    for (std::size_t i = 0; i < all_lemmas().size(); ++i) {
        LemmaId id = all_lemmas()[i];
        Rng rng(42 + i);
        for (int t = 0; t < kDraws; ++t) {
            SampledParams sp = sample_params(id, rng);
            BuiltTable bt = build_table(id, sp.params);
            for (const std::string& why : check_claims(bt))
                out.fail(lemma_str(id) + " draw " + std::to_string(t) + ": " + why);
            ++checked;
        }
    }
    out.note(std::to_string(checked) + " sampled tables");
}

// ------------------------------------------------------- 3. the rule oracle

void search_oracle(Outcome1& out) {
    for (long n = 1; n <= 3; ++n) {
        SearchProblem prob = build_search_problem(4, n);
        std::vector<RelativeSwfTable> sols = enumerate_solutions(prob);
        ClassifyReport cls = classify_solutions(sols);
        if (sols.size() != 3)
            out.fail("n=" + std::to_string(n) + ": found " + std::to_string(sols.size()) +
                     " rules instead of 3");
        if (cls.plus != 1 || cls.zero != 1 || cls.minus != 1 || !cls.non_borda.empty())
            out.fail("n=" + std::to_string(n) + ": classification is not exactly {+1, 0, -1}");
    }
    out.note("3 rules at each n in {1,2,3}");
}

// -------------------------------------------------------- 4. rule validation

void search_cross_validation(Outcome1& out) {
    long zero_checks = 0, negative_checks = 0;
    for (long n = 1; n <= 3; ++n) {
        std::vector<RelativeSwfTable> sols = enumerate_solutions(build_search_problem(4, n));
        CrossValidateReport rep = cross_validate(sols, 4, n);
        zero_checks += rep.zero_margin_checks;
        negative_checks += rep.negative_checks;
        for (const auto& v : rep.violations)
            out.fail("n=" + std::to_string(n) + " solution " + std::to_string(v.solution) + " at " +
                     dist_str(v.witness) + ": " + v.what);
    }
    out.note(std::to_string(zero_checks) + " zero-margin and " + std::to_string(negative_checks) +
             " negative-margin assignments checked");
}

// -------------------------------------------------- 5. certificate coverage

void certificate_coverage(Outcome1& out) {
    long ties = 0, signs = 0;
    for (long n = 1; n <= 5; ++n) {
        MarginDist anchor = sign_anchor(4, n);
        for (const MarginDist& a : all_margin_dists(4, n)) {
            Rat m = margin_sum(a);
            try {
                if (m == 0) {
                    FactBase facts = replay_certificate(prove_tie(a));
                    auto v = facts.lookup(a);
                    if (!v || v->sym != 0 || v->val != Outcome::T || facts.has_symbolic())
                        out.fail("tie " + dist_str(a) + ": replay left the claim open");
                    ++ties;
                } else if (m < 0) {
                    FactBase facts = replay_certificate(prove_sign_constant(a, anchor));
                    auto va = facts.lookup(a);
                    auto vx = facts.lookup(anchor);
                    if (!va || !vx || va->sym != 1 || vx->sym != 1)
                        out.fail("sign " + dist_str(a) + ": not linked to the common unknown");
                    ++signs;
                }
            } catch (const std::exception& e) {
                out.fail(dist_str(a) + ": " + e.what());
            }
        }
    }
    out.note(std::to_string(ties) + " tie and " + std::to_string(signs) +
             " sign certificates replayed");
}

// --------------------------------------------------------- 6. coupling oracle

void coupling_oracle(Outcome1& out) {
    std::vector<std::pair<int, int>> fps = feasible_pairs(4);
    long agreements = 0;
    for (long n = 1; n <= 3; ++n) {
        // Every (row, column) marginal pair reachable by a multiset of n
        // feasible ballots, enumerated directly.
        std::set<std::pair<MarginDist, MarginDist>> reachable;
        std::vector<int> pick;
        auto enumerate = [&](auto&& self, std::size_t start, long left) -> void {
            if (left == 0) {
                MarginDist row(4), col(4);
                for (int idx : pick) {
                    row.at(fps[idx].first) += 1;
                    col.at(fps[idx].second) += 1;
                }
                reachable.emplace(row, col);
                return;
            }
            for (std::size_t i = start; i < fps.size(); ++i) {
                pick.push_back(static_cast<int>(i));
                self(self, i, left - 1);
                pick.pop_back();
            }
        };
        enumerate(enumerate, 0, n);

        std::vector<MarginDist> dists = all_margin_dists(4, n);
        for (const MarginDist& a1 : dists) {
            for (const MarginDist& a2 : dists) {
                bool expected = reachable.count({a1, a2}) > 0;
                std::optional<Coupling> c = couple(a1, a2, Mode::finite);
                if (c.has_value() != expected) {
                    out.fail(dist_str(a1) + " x " + dist_str(a2) + ": verdict " +
                             (c ? "feasible" : "infeasible") + " against enumeration");
                    continue;
                }
                if (c) {
                    c->check();
                    if (c->row_marginal() != a1 || c->col_marginal() != a2 || c->total() != Rat(n))
                        out.fail(dist_str(a1) + " x " + dist_str(a2) +
                                 ": returned coupling has wrong marginals");
                }
                ++agreements;
            }
        }
    }
    out.note(std::to_string(agreements) + " marginal pairs agree");
}

// ------------------------------------------------------------ 7. Borda sanity

WeakOrdering naive_ordering(const WeightedElection& e) {
    std::vector<Rat> score(e.k, Rat(0));
    for (const auto& [r, w] : e.ballots)
        for (int c = 1; c <= e.k; ++c) score[c - 1] += w * Rat(r.pos[c - 1]);
    std::vector<int> cand(e.k);
    for (int c = 1; c <= e.k; ++c) cand[c - 1] = c;
    std::sort(cand.begin(), cand.end(), [&](int x, int y) {
        if (score[x - 1] != score[y - 1]) return score[y - 1] < score[x - 1];
        return x < y;
    });
    WeakOrdering out;
    for (int c : cand) {
        if (out.tiers.empty() || score[c - 1] != score[out.tiers.back().front() - 1])
            out.tiers.push_back({});
        out.tiers.back().push_back(c);
    }
    return out;
}

void borda_sanity(Outcome1& out) {
    Rng rng(2026);
    for (int trial = 0; trial < 1000; ++trial) {
        int k = static_cast<int>(rng.range(2, 6));
        long n = rng.range(1, 8);
        WeightedElection e = random_election(rng, k, n);
        WeakOrdering plus = borda_rule(e, +1);
        if (!(plus == naive_ordering(e))) {
            out.fail("trial " + std::to_string(trial) + ": +1 differs from naive summation");
            break;
        }
        WeakOrdering minus = borda_rule(e, -1);
        WeakOrdering reversed = plus;
        std::reverse(reversed.tiers.begin(), reversed.tiers.end());
        if (!(minus == reversed)) {
            out.fail("trial " + std::to_string(trial) + ": -1 is not the exact reversal");
            break;
        }
    }

    for (int w : {+1, 0, -1}) {
        RelativeSwfTable f;
        f.k = 4;
        f.mode = Mode::finite;
        f.total = 3;
        for (const MarginDist& a : all_margin_dists(4, 3))
            f.set(a, sign_outcome(borda_margin(a, w)));
        bool pareto = check_pareto(f);
        bool responsive = check_positive_responsiveness(f);
        bool expect_pareto = w == 1;
        bool expect_responsive = w >= 0;
        if (pareto != expect_pareto || responsive != expect_responsive)
            out.fail("pattern " + std::to_string(w) + ": predicates (" +
                     (pareto ? "true" : "false") + "," + (responsive ? "true" : "false") +
                     ") instead of (" + (expect_pareto ? "true" : "false") + "," +
                     (expect_responsive ? "true" : "false") + ")");
    }
    out.note("1000 elections and the three predicate patterns");
}

// ------------------------------------------------------ 8. five-candidate ties

void wider_domain_ties(Outcome1& out) {
    long ties = 0;
    for (long n = 1; n <= 3; ++n) {
        for (const MarginDist& a : all_margin_dists(5, n)) {
            if (margin_sum(a) != 0) continue;
            try {
                FactBase facts = replay_certificate(prove_tie(a));
                auto v = facts.lookup(a);
                if (!v || v->sym != 0 || v->val != Outcome::T || facts.has_symbolic())
                    out.fail("tie " + dist_str(a) + ": replay left the claim open");
                ++ties;
            } catch (const std::exception& e) {
                out.fail(dist_str(a) + ": " + e.what());
            }
        }
    }
    out.note(std::to_string(ties) + " five-candidate tie certificates replayed");
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        void (*fn)(Outcome1&);
        double budget_s;  // 0 means no budget is pinned
    };
    const Criterion criteria[] = {
        {"golden tables", golden_tables, 1.0},
        {"catalog properties", catalog_properties, 30.0},
        {"rule enumeration oracle", search_oracle, 300.0},
        {"rule cross-validation", search_cross_validation, 0.0},
        {"certificate coverage", certificate_coverage, 0.0},
        {"coupling oracle", coupling_oracle, 0.0},
        {"Borda sanity", borda_sanity, 0.0},
        {"five-candidate ties", wider_domain_ties, 120.0},
    };

    int failures = 0;
    for (std::size_t i = 0; i < std::size(criteria); ++i) {
        Outcome1 out;
        auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].fn(out);
        } catch (const std::exception& e) {
            out.fail(std::string("unhandled: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (criteria[i].budget_s > 0 && secs > criteria[i].budget_s)
            out.fail("exceeded the " + std::to_string(criteria[i].budget_s) + "s budget");
        std::printf("criterion %zu (%s): %s (%.2fs%s%s)\n", i + 1, criteria[i].label,
                    out.pass ? "pass" : "FAIL", secs, out.detail.str().empty() ? "" : ", ",
                    out.detail.str().c_str());
        if (!out.pass) ++failures;
    }
    if (failures) {
        std::printf("%d of 8 criteria failed\n", failures);
        return 1;
    }
    std::printf("all 8 criteria pass\n");
    return 0;
}
