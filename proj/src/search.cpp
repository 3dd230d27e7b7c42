#include "tetkit/search.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace tetkit {

namespace {

constexpr long kDistCap = 1'000'000;

// C(n + m - 1, m - 1), saturating just above the cap.
long compositions_capped(long n, long m) {
    if (n > kDistCap) return kDistCap + 1;
    long long r = 1;
    for (long i = 1; i <= m - 1; ++i) {
        r = r * (n + i) / i;
        if (r > kDistCap) return kDistCap + 1;
    }
    return static_cast<long>(r);
}

MarginDist canonical_rep(const MarginDist& a) {
    MarginDist r = reflect(a);
    return r < a ? r : a;
}

Rat abs_margin(const MarginDist& a) {
    Rat m = margin_sum(a);
    if (m < 0) m = -m;
    return m;
}

constexpr int kUnset = 9;

// Builds the full table a complete assignment denotes, spelling out both
// members of every reflection pair and the symmetric ties.
RelativeSwfTable assignment_table(const SearchProblem& pb, const std::vector<int>& val) {
    RelativeSwfTable tab;
    tab.k = pb.k;
    tab.mode = Mode::finite;
    tab.total = pb.n;
    tab.sampled = false;
    std::map<MarginDist, Outcome> canon;
    for (std::size_t i = 0; i < pb.variables.size(); ++i)
        canon.emplace(pb.variables[i], static_cast<Outcome>(val[i]));
    for (const MarginDist& a : all_margin_dists(pb.k, pb.n)) {
        if (is_symmetric(a)) {
            tab.set(a, Outcome::T);
            continue;
        }
        MarginDist c = canonical_rep(a);
        Outcome o = canon.at(c);
        tab.set(a, a == c ? o : neg(o));
    }
    return tab;
}

}  // namespace

std::vector<MarginDist> enumerate_margin_distributions(int k, long n) {
    if (compositions_capped(n, 2L * k - 2) > kDistCap)
        throw CapacityError("distribution count for k=" + std::to_string(k) +
                            ", n=" + std::to_string(n) + " exceeds " + std::to_string(kDistCap));
    return all_margin_dists(k, n);
}

SearchProblem build_search_problem(int k, long n) {
    SearchProblem pb;
    pb.k = k;
    pb.n = n;
    for (const MarginDist& a : enumerate_margin_distributions(k, n))
        if (!is_symmetric(a) && !(reflect(a) < a)) pb.variables.push_back(a);
    std::stable_sort(pb.variables.begin(), pb.variables.end(),
                     [](const MarginDist& a, const MarginDist& b) {
                         return abs_margin(a) < abs_margin(b);
                     });
    std::map<MarginDist, int> index;
    for (std::size_t i = 0; i < pb.variables.size(); ++i)
        index.emplace(pb.variables[i], static_cast<int>(i));

    auto literal = [&](const MarginDist& a, int sign) -> SearchLiteral {
        if (is_symmetric(a)) return {-1, +1};
        MarginDist c = canonical_rep(a);
        return {index.at(c), c == a ? sign : -sign};
    };
    auto negated = [](std::array<SearchLiteral, 3> t) {
        for (SearchLiteral& l : t)
            if (l.var >= 0) l.sign = -l.sign;
        return t;
    };

    std::set<std::array<SearchLiteral, 3>> seen;
    for (const auto& tr : enumerate_constraint_triples(k, n)) {
        std::array<SearchLiteral, 3> lits{literal(tr[0], +1), literal(tr[1], +1),
                                          literal(tr[2], -1)};
        if (lits[0].var < 0 && lits[1].var < 0 && lits[2].var < 0) continue;
        std::sort(lits.begin(), lits.end());
        std::array<SearchLiteral, 3> mirr = negated(lits);
        std::sort(mirr.begin(), mirr.end());
        seen.insert(std::min(lits, mirr));
    }
    pb.triples.assign(seen.begin(), seen.end());
    return pb;
}

std::vector<RelativeSwfTable> enumerate_solutions(const SearchProblem& pb, bool propagate) {
    const int nvars = static_cast<int>(pb.variables.size());
    std::vector<std::vector<int>> occ(nvars);
    for (std::size_t t = 0; t < pb.triples.size(); ++t)
        for (const SearchLiteral& l : pb.triples[t])
            if (l.var >= 0) occ[l.var].push_back(static_cast<int>(t));
    for (auto& o : occ) o.erase(std::unique(o.begin(), o.end()), o.end());

    std::vector<int> val(nvars, kUnset);
    auto literal_value = [&](const SearchLiteral& l) -> int {
        if (l.var < 0) return 0;
        int v = val[l.var];
        return v == kUnset ? kUnset : (l.sign > 0 ? v : -v);
    };
    auto satisfied = [&](const std::array<SearchLiteral, 3>& tr) {
        std::vector<Outcome> xs;
        xs.reserve(3);
        for (const SearchLiteral& l : tr) xs.push_back(static_cast<Outcome>(literal_value(l)));
        return multiset_consistent(xs);
    };
    auto fully_assigned = [&](const std::array<SearchLiteral, 3>& tr) {
        for (const SearchLiteral& l : tr)
            if (l.var >= 0 && val[l.var] == kUnset) return false;
        return true;
    };

    std::vector<int> trail;
    auto assign = [&](int v, int o) {
        val[v] = o;
        trail.push_back(v);
    };
    auto undo_to = [&](std::size_t mark) {
        while (trail.size() > mark) {
            val[trail.back()] = kUnset;
            trail.pop_back();
        }
    };

    // Examines triples until the queue drains; false on conflict. A triple
    // with one distinct unassigned variable forces it when only one of the
    // three outcomes keeps the triple satisfiable.
    auto run_queue = [&](std::deque<int>& q) -> bool {
        while (!q.empty()) {
            const auto& tr = pb.triples[q.front()];
            q.pop_front();
            int unknown = -1;
            int distinct = 0;
            for (const SearchLiteral& l : tr)
                if (l.var >= 0 && val[l.var] == kUnset && l.var != unknown) {
                    if (++distinct > 1) break;
                    unknown = l.var;
                }
            if (distinct == 0) {
                if (!satisfied(tr)) return false;
                continue;
            }
            if (distinct > 1) continue;
            int allowed = kUnset, count = 0;
            for (int o : {1, 0, -1}) {
                val[unknown] = o;
                if (satisfied(tr)) {
                    allowed = o;
                    ++count;
                }
            }
            val[unknown] = kUnset;
            if (count == 0) return false;
            if (count == 1) {
                assign(unknown, allowed);
                for (int t2 : occ[unknown]) q.push_back(t2);
            }
        }
        return true;
    };

    std::vector<RelativeSwfTable> out;
    std::function<void(int)> descend = [&](int vi) {
        while (vi < nvars && val[vi] != kUnset) ++vi;
        if (vi == nvars) {
            for (const auto& tr : pb.triples)
                if (!satisfied(tr)) return;
            out.push_back(assignment_table(pb, val));
            return;
        }
        for (int o : {1, 0, -1}) {
            std::size_t mark = trail.size();
            assign(vi, o);
            bool ok = true;
            if (propagate) {
                std::deque<int> q(occ[vi].begin(), occ[vi].end());
                ok = run_queue(q);
            } else {
                for (int t : occ[vi])
                    if (fully_assigned(pb.triples[t]) && !satisfied(pb.triples[t])) {
                        ok = false;
                        break;
                    }
            }
            if (ok) descend(vi + 1);
            undo_to(mark);
        }
    };
    descend(0);
    return out;
}

ClassifyReport classify_solutions(const std::vector<RelativeSwfTable>& solutions) {
    ClassifyReport rep;
    for (std::size_t i = 0; i < solutions.size(); ++i) {
        auto pat = classify_borda_pattern(solutions[i]);
        if (pat) {
            (*pat > 0 ? rep.plus : (*pat == 0 ? rep.zero : rep.minus)) += 1;
            continue;
        }
        const RelativeSwfTable& f = solutions[i];
        std::optional<MarginDist> witness;
        for (const auto& [a, o] : f.assignments)
            if (margin_sum(a) == 0 && o != Outcome::T) {
                witness = a;
                break;
            }
        if (!witness)
            for (const auto& [a, o] : f.assignments)
                if (o != sign_outcome(borda_margin(a, +1))) {
                    witness = a;
                    break;
                }
        rep.non_borda.push_back({i, witness ? *witness : MarginDist(f.k)});
    }
    return rep;
}

CrossValidateReport cross_validate(const std::vector<RelativeSwfTable>& solutions, int k,
                                   long n) {
    CrossValidateReport rep;
    rep.solutions = solutions.size();
    const std::vector<MarginDist> dists = all_margin_dists(k, n);
    for (std::size_t i = 0; i < solutions.size(); ++i) {
        const RelativeSwfTable& f = solutions[i];
        if (f.k != k || f.total != n) {
            rep.violations.push_back({i, MarginDist(k), "solution domain mismatch"});
            continue;
        }
        std::optional<Outcome> constant;
        std::optional<MarginDist> first_neg;
        for (const MarginDist& a : dists) {
            auto o = f.get(a);
            if (!o) {
                rep.violations.push_back({i, a, "missing assignment"});
                continue;
            }
            Rat m = margin_sum(a);
            if (m == 0) {
                ++rep.zero_margin_checks;
                if (*o != Outcome::T)
                    rep.violations.push_back({i, a, "zero-margin vector not sent to T"});
            } else if (m < 0) {
                ++rep.negative_checks;
                if (!constant) {
                    constant = *o;
                    first_neg = a;
                } else if (*o != *constant) {
                    rep.violations.push_back(
                        {i, a, "value differs from " + dist_str(*first_neg)});
                }
            }
        }
    }
    return rep;
}

}  // namespace tetkit
