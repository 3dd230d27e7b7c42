#include "tetkit/consistency.hpp"

#include <algorithm>
#include <set>

namespace tetkit {

Rat Coupling::total() const {
    Rat s = 0;
    for (const auto& [key, w] : cells) s += w;
    return s;
}

MarginDist Coupling::row_marginal() const {
    MarginDist a(k);
    for (const auto& [key, w] : cells) a.at(key.first) += w;
    return a;
}

MarginDist Coupling::col_marginal() const {
    MarginDist a(k);
    for (const auto& [key, w] : cells) a.at(key.second) += w;
    return a;
}

void Coupling::check() const {
    if (k < 2) throw std::runtime_error("coupling: bad k");
    for (const auto& [key, w] : cells) {
        if (!margin_pair_feasible(key.first, key.second, k))
            throw std::runtime_error("coupling: infeasible cell (" + std::to_string(key.first) + "," +
                                     std::to_string(key.second) + ")");
        if (w <= 0) throw std::runtime_error("coupling: non-positive cell weight");
        if (mode == Mode::finite && !is_integer(w)) throw std::runtime_error("coupling: fractional cell in finite mode");
    }
}

bool multiset_consistent(const std::vector<Outcome>& xs) {
    if (xs.size() != 3) throw std::domain_error("multiset_consistent needs exactly three outcomes");
    int w = 0, t = 0, l = 0;
    for (Outcome o : xs) {
        if (o == Outcome::W) ++w;
        else if (o == Outcome::T) ++t;
        else ++l;
    }
    return (w == 2 && l == 1) || (w == 1 && t == 1 && l == 1) || (w == 1 && l == 2) || t == 3;
}

bool margin_pair_feasible(int d1, int d2, int k) {
    return in_dk(k, d1) && in_dk(k, d2) && in_dk(k, d1 + d2);
}

std::vector<std::pair<int, int>> feasible_pairs(int k) {
    std::vector<std::pair<int, int>> out;
    for (int d1 : dk_values(k))
        for (int d2 : dk_values(k))
            if (in_dk(k, d1 + d2)) out.emplace_back(d1, d2);
    return out;
}

Ranking construct_ranking(int d1, int d2, int k) {
    if (!margin_pair_feasible(d1, d2, k)) throw std::domain_error("construct_ranking: infeasible margin pair");
    int p2 = std::min({k - 1, k - 1 - d1, k - 1 + d2});
    int p1 = p2 + d1, p3 = p2 - d2;
    Ranking r;
    r.k = k;
    r.pos.assign(k, -1);
    r.pos[0] = p1;
    r.pos[1] = p2;
    r.pos[2] = p3;
    int next = 0;
    for (int c = 4; c <= k; ++c) {
        while (next == p1 || next == p2 || next == p3) ++next;
        r.pos[c - 1] = next++;
    }
    return r;
}

namespace {

// Edmonds-Karp over the small bipartite margin grid; exact rationals, so
// integer marginals give integer flows.
struct Flow {
    int n;
    std::vector<std::vector<Rat>> cap;
    explicit Flow(int n_) : n(n_), cap(n_, std::vector<Rat>(n_, Rat(0))) {}

    Rat run(int s, int t) {
        Rat sent = 0;
        while (true) {
            std::vector<int> prev(n, -1);
            prev[s] = s;
            std::vector<int> queue{s};
            for (size_t qi = 0; qi < queue.size() && prev[t] < 0; ++qi) {
                int u = queue[qi];
                for (int v = 0; v < n; ++v)
                    if (prev[v] < 0 && cap[u][v] > 0) {
                        prev[v] = u;
                        queue.push_back(v);
                    }
            }
            if (prev[t] < 0) return sent;
            Rat push = -1;
            for (int v = t; v != s; v = prev[v]) {
                const Rat& c = cap[prev[v]][v];
                if (push < 0 || c < push) push = c;
            }
            for (int v = t; v != s; v = prev[v]) {
                cap[prev[v]][v] -= push;
                cap[v][prev[v]] += push;
            }
            sent += push;
        }
    }
};

}  // namespace

std::optional<Coupling> couple(const MarginDist& a1, const MarginDist& a2, Mode mode) {
    if (a1.k != a2.k) throw std::domain_error("couple: mixed k");
    if (a1.total() != a2.total()) throw std::domain_error("couple: totals differ");
    int k = a1.k, m = dk_size(k);
    int source = 0, sink = 2 * m + 1;
    Flow flow(2 * m + 2);
    for (int i = 0; i < m; ++i) {
        flow.cap[source][1 + i] = a1.v[i];
        flow.cap[1 + m + i][sink] = a2.v[i];
        for (int j = 0; j < m; ++j)
            if (in_dk(k, dk_at(k, i) + dk_at(k, j))) flow.cap[1 + i][1 + m + j] = a1.total();
    }
    std::vector<std::vector<Rat>> original = flow.cap;
    if (flow.run(source, sink) != a1.total()) return std::nullopt;
    Coupling c;
    c.k = k;
    c.mode = mode;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Rat used = original[1 + i][1 + m + j] - flow.cap[1 + i][1 + m + j];
            if (used > 0) c.cells[{dk_at(k, i), dk_at(k, j)}] = used;
        }
    c.check();
    return c;
}

WeightedElection coupling_to_election(const Coupling& c) {
    if (c.cells.empty()) throw std::domain_error("coupling_to_election: empty coupling");
    WeightedElection e;
    e.k = c.k;
    e.mode = c.mode;
    for (const auto& [key, w] : c.cells) {
        e.add(construct_ranking(key.first, key.second, c.k), w);
        e.total += w;
    }
    return e;
}

MarginDist third_margin(const Coupling& c) {
    MarginDist a(c.k);
    for (const auto& [key, w] : c.cells) a.at(key.first + key.second) += w;
    return a;
}

std::vector<std::array<MarginDist, 3>> enumerate_constraint_triples(int k, long n) {
    auto pairs = feasible_pairs(k);
    if (pairs.size() > 40 || n > 6) throw CapacityError("constraint triples limited to 40 feasible pairs and n <= 6");
    std::set<std::array<MarginDist, 3>> seen;
    std::vector<std::pair<int, int>> chosen;
    std::function<void(size_t, long)> rec = [&](size_t start, long left) {
        if (left == 0) {
            MarginDist a1(k), a2(k), a3(k);
            for (const auto& [d1, d2] : chosen) {
                a1.at(d1) += 1;
                a2.at(d2) += 1;
                a3.at(d1 + d2) += 1;
            }
            seen.insert({a1, a2, a3});
            return;
        }
        for (size_t i = start; i < pairs.size(); ++i) {
            chosen.push_back(pairs[i]);
            rec(i, left - 1);
            chosen.pop_back();
        }
    };
    rec(0, n);
    return {seen.begin(), seen.end()};
}

namespace {

// All distributions of the table's total supported on positive margins.
std::vector<MarginDist> positive_support_dists(int k, long n) {
    std::vector<MarginDist> out;
    MarginDist cur(k);
    std::function<void(int, long)> rec = [&](int idx, long left) {
        if (idx + 1 == dk_size(k)) {
            cur.v[idx] = left;
            out.push_back(cur);
            return;
        }
        long hi = idx < k - 1 ? 0 : left;  // negative margins stay empty
        for (long w = 0; w <= hi; ++w) {
            cur.v[idx] = w;
            rec(idx + 1, left - w);
        }
    };
    rec(0, n);
    return out;
}

bool positive_support(const MarginDist& a) {
    for (int i = 0; i < a.k - 1; ++i)
        if (a.v[i] != 0) return false;
    return true;
}

}  // namespace

bool check_pareto(const RelativeSwfTable& f) {
    if (f.mode == Mode::finite && !f.sampled) {
        for (const auto& a : positive_support_dists(f.k, to_long(f.total))) {
            auto o = f.get(a);
            if (!o) throw std::domain_error("check_pareto: table misses " + dist_str(a));
            if (*o != Outcome::W) return false;
        }
        return true;
    }
    for (const auto& [a, o] : f.assignments)
        if (positive_support(a) && o != Outcome::W) return false;
    return true;
}

bool check_positive_responsiveness(const RelativeSwfTable& f) {
    std::vector<std::pair<MarginDist, Outcome>> entries;
    if (f.mode == Mode::finite && !f.sampled) {
        for (const auto& a : all_margin_dists(f.k, to_long(f.total))) {
            auto o = f.get(a);
            if (!o) throw std::domain_error("check_positive_responsiveness: table misses " + dist_str(a));
            entries.emplace_back(a, *o);
        }
    } else {
        entries.assign(f.assignments.begin(), f.assignments.end());
    }
    for (const auto& [a, oa] : entries)
        for (const auto& [b, ob] : entries) {
            if (a.total() != b.total()) continue;
            if (majorizes(a, b) && static_cast<int>(oa) < static_cast<int>(ob)) return false;
        }
    return true;
}

}  // namespace tetkit
