#include "tetkit/borda.hpp"

#include <algorithm>

namespace tetkit {

void RelativeSwfTable::set(const MarginDist& a, Outcome o) {
    if (a.k != k) throw std::runtime_error("table: vector with wrong k");
    auto it = assignments.find(a);
    if (it != assignments.end() && it->second != o)
        throw std::runtime_error("table: conflicting assignment at " + dist_str(a));
    MarginDist ra = reflect(a);
    if (ra == a && o != Outcome::T)
        throw std::runtime_error("table: symmetric vector must tie at " + dist_str(a));
    auto rit = assignments.find(ra);
    if (rit != assignments.end() && rit->second != neg(o))
        throw std::runtime_error("table: reflection invariant broken at " + dist_str(a));
    assignments[a] = o;
}

std::optional<Outcome> RelativeSwfTable::get(const MarginDist& a) const {
    auto it = assignments.find(a);
    if (it == assignments.end()) return std::nullopt;
    return it->second;
}

Rat borda_score(const WeightedElection& e, int i, int w) {
    check_borda_weight(w);
    if (i < 1 || i > e.k) throw std::invalid_argument("borda_score: bad candidate index");
    Rat s = 0;
    for (const auto& [r, wt] : e.ballots) s += wt * r.pos[i - 1];
    return Rat(w) * s;
}

Rat borda_margin(const MarginDist& a, int w) {
    check_borda_weight(w);
    return Rat(w) * margin_sum(a);
}

Outcome sign_outcome(const Rat& x) {
    if (x > 0) return Outcome::W;
    if (x < 0) return Outcome::L;
    return Outcome::T;
}

WeakOrdering borda_rule(const WeightedElection& e, int w) {
    check_borda_weight(w);
    std::vector<Rat> score(e.k);
    for (int c = 1; c <= e.k; ++c) score[c - 1] = borda_score(e, c, w);
    std::vector<int> cands(e.k);
    for (int c = 1; c <= e.k; ++c) cands[c - 1] = c;
    std::sort(cands.begin(), cands.end(),
              [&](int a, int b) { return score[a - 1] != score[b - 1] ? score[a - 1] > score[b - 1] : a < b; });
    WeakOrdering out;
    for (int c : cands) {
        if (!out.tiers.empty() && score[out.tiers.back().front() - 1] == score[c - 1])
            out.tiers.back().push_back(c);
        else
            out.tiers.push_back({c});
    }
    return out;
}

std::vector<MarginDist> all_margin_dists(int k, long n) {
    std::vector<MarginDist> out;
    MarginDist cur(k);
    int m = dk_size(k);
    std::function<void(int, long)> rec = [&](int idx, long left) {
        if (idx + 1 == m) {
            cur.v[idx] = left;
            out.push_back(cur);
            return;
        }
        for (long w = 0; w <= left; ++w) {
            cur.v[idx] = w;
            rec(idx + 1, left - w);
        }
    };
    rec(0, n);
    return out;
}

std::optional<int> classify_borda_pattern(const RelativeSwfTable& f) {
    if (f.mode == Mode::finite && !f.sampled) {
        for (const auto& a : all_margin_dists(f.k, to_long(f.total)))
            if (!f.assignments.count(a))
                throw std::domain_error("classify: table misses " + dist_str(a));
    }
    bool plus = true, minus = true, tie = true;
    for (const auto& [a, o] : f.assignments) {
        Outcome s = sign_outcome(borda_margin(a, 1));
        plus = plus && o == s;
        minus = minus && o == neg(s);
        tie = tie && o == Outcome::T;
    }
    if (plus) return 1;
    if (minus) return -1;
    if (tie) return 0;
    return std::nullopt;
}

}  // namespace tetkit
