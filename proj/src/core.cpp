#include "tetkit/core.hpp"

#include <algorithm>
#include <sstream>

namespace tetkit {

std::optional<Outcome> outcome_from_char(char c) {
    switch (c) {
        case 'W': return Outcome::W;
        case 'T': return Outcome::T;
        case 'L': return Outcome::L;
        default: return std::nullopt;
    }
}

std::vector<int> dk_values(int k) {
    std::vector<int> out;
    for (int d = 1 - k; d <= k - 1; ++d)
        if (d != 0) out.push_back(d);
    return out;
}

std::optional<Mode> mode_from_str(const std::string& s) {
    if (s == "finite") return Mode::finite;
    if (s == "weighted") return Mode::weighted;
    return std::nullopt;
}

// --------------------------------------------------------------- rankings

Ranking Ranking::from_best_first(int k, const std::vector<int>& cands) {
    if (static_cast<int>(cands.size()) != k) throw std::invalid_argument("ranking: wrong length");
    Ranking r;
    r.k = k;
    r.pos.assign(k, -1);
    for (int slot = 0; slot < k; ++slot) {
        int c = cands[slot];
        if (c < 1 || c > k || r.pos[c - 1] != -1) throw std::invalid_argument("ranking: not a permutation");
        r.pos[c - 1] = k - 1 - slot;
    }
    return r;
}

std::vector<int> Ranking::best_first() const {
    std::vector<int> out(k, 0);
    for (int c = 1; c <= k; ++c) out[k - 1 - pos[c - 1]] = c;
    return out;
}

std::vector<Ranking> all_rankings(int k) {
    std::vector<int> cands(k);
    for (int i = 0; i < k; ++i) cands[i] = i + 1;
    std::vector<Ranking> out;
    do {
        out.push_back(Ranking::from_best_first(k, cands));
    } while (std::next_permutation(cands.begin(), cands.end()));
    return out;
}

int project_margin(const Ranking& r, int i, int j) {
    return r.pos[i - 1] - r.pos[j - 1];
}

Ranking permute_ranking(const Ranking& r, const std::vector<int>& perm) {
    Ranking out;
    out.k = r.k;
    out.pos.assign(r.k, -1);
    for (int c = 1; c <= r.k; ++c) out.pos[perm[c - 1] - 1] = r.pos[c - 1];
    return out;
}

// --------------------------------------------------------------- elections

void WeightedElection::add(const Ranking& r, const Rat& w) {
    if (w < 0) throw std::invalid_argument("election: negative ballot weight");
    if (w == 0) return;
    ballots[r] += w;
}

void WeightedElection::check() const {
    Rat sum = 0;
    for (const auto& [r, w] : ballots) {
        if (r.k != k) throw std::runtime_error("election: ballot with wrong candidate count");
        if (w <= 0) throw std::runtime_error("election: non-positive ballot weight");
        if (mode == Mode::finite && !is_integer(w)) throw std::runtime_error("election: finite mode needs integer weights");
        sum += w;
    }
    if (sum != total) throw std::runtime_error("election: weights sum to " + rat_str(sum) + ", expected " + rat_str(total));
    if (mode == Mode::weighted && total != 1) throw std::runtime_error("election: weighted mode needs total 1");
    if (mode == Mode::finite && !is_integer(total)) throw std::runtime_error("election: finite mode needs integer total");
}

bool WeightedElection::operator==(const WeightedElection& o) const {
    return k == o.k && mode == o.mode && total == o.total && ballots == o.ballots;
}

bool WeightedElection::operator<(const WeightedElection& o) const {
    if (k != o.k) return k < o.k;
    if (total != o.total) return total < o.total;
    return ballots < o.ballots;
}

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

std::optional<WeightedElection> parse_election(const std::string& text, std::string* err) {
    auto fail = [&](const std::string& m) {
        if (err) *err = m;
        return std::nullopt;
    };
    WeightedElection e;
    bool saw_k = false, saw_mode = false, saw_total = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        std::string where = "line " + std::to_string(lineno) + ": ";
        if (line[0] == '"') {
            if (!saw_k) return fail(where + "ballot before k= header");
            auto close = line.find('"', 1);
            if (close == std::string::npos) return fail(where + "unterminated ballot quote");
            std::istringstream ps(line.substr(1, close - 1));
            std::vector<int> cands;
            int c;
            while (ps >> c) cands.push_back(c);
            std::string rest = strip(line.substr(close + 1));
            if (rest.empty() || rest[0] != '=') return fail(where + "expected '=' after ballot");
            auto w = parse_rat(strip(rest.substr(1)));
            if (!w) return fail(where + "bad ballot weight");
            if (*w < 0) return fail(where + "negative ballot weight");
            try {
                e.add(Ranking::from_best_first(e.k, cands), *w);
            } catch (const std::exception& ex) {
                return fail(where + ex.what());
            }
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) return fail(where + "expected key=value");
        std::string key = strip(line.substr(0, eq));
        std::string val = strip(line.substr(eq + 1));
        if (key == "k") {
            try {
                e.k = std::stoi(val);
            } catch (...) {
                return fail(where + "bad k");
            }
            if (e.k < 2) return fail(where + "k must be at least 2");
            saw_k = true;
        } else if (key == "mode") {
            auto m = mode_from_str(val);
            if (!m) return fail(where + "mode must be finite or weighted");
            e.mode = *m;
            saw_mode = true;
        } else if (key == "total") {
            auto t = parse_rat(val);
            if (!t) return fail(where + "bad total");
            e.total = *t;
            saw_total = true;
        } else {
            return fail(where + "unknown key '" + key + "'");
        }
    }
    if (!saw_k || !saw_mode || !saw_total) return fail("missing k=, mode= or total= header");
    try {
        e.check();
    } catch (const std::exception& ex) {
        return fail(ex.what());
    }
    return e;
}

std::string serialize_election(const WeightedElection& e) {
    std::ostringstream out;
    out << "k=" << e.k << "\n";
    out << "mode=" << mode_str(e.mode) << "\n";
    out << "total=" << rat_str(e.total) << "\n";
    std::vector<std::pair<std::vector<int>, Rat>> rows;
    for (const auto& [r, w] : e.ballots) rows.emplace_back(r.best_first(), w);
    std::sort(rows.begin(), rows.end());
    for (const auto& [bf, w] : rows) {
        out << '"';
        for (size_t i = 0; i < bf.size(); ++i) out << (i ? " " : "") << bf[i];
        out << "\" = " << rat_str(w) << "\n";
    }
    return out.str();
}

// ------------------------------------------------------- margin structures

MarginDist MarginDist::from_map(int k, const std::map<int, Rat>& m) {
    MarginDist a(k);
    for (const auto& [d, w] : m) {
        if (!in_dk(k, d)) throw std::invalid_argument("margin " + std::to_string(d) + " outside D_k");
        a.at(d) = w;
    }
    return a;
}

Rat MarginDist::total() const {
    Rat s = 0;
    for (const auto& x : v) s += x;
    return s;
}

std::string dist_str(const MarginDist& a) {
    std::string out;
    for (size_t i = 0; i < a.v.size(); ++i) {
        if (i) out += ',';
        out += rat_str(a.v[i]);
    }
    return out;
}

std::optional<MarginDist> parse_dist(int k, const std::string& csv) {
    MarginDist a(k);
    size_t start = 0, idx = 0;
    while (true) {
        size_t comma = csv.find(',', start);
        std::string part = strip(comma == std::string::npos ? csv.substr(start) : csv.substr(start, comma - start));
        auto r = parse_rat(part);
        if (!r || *r < 0 || idx >= a.v.size()) return std::nullopt;
        a.v[idx++] = *r;
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (idx != a.v.size()) return std::nullopt;
    return a;
}

MarginDist profile_dist(const MarginProfile& p) {
    MarginDist a(p.k);
    for (int m : p.margins) {
        if (!in_dk(p.k, m)) throw std::invalid_argument("profile margin outside D_k");
        a.at(m) += 1;
    }
    return a;
}

MarginProfile expand_profile(const MarginDist& a) {
    MarginProfile p;
    p.k = a.k;
    for (int d : dk_values(a.k)) {
        const Rat& w = a.at(d);
        if (!is_integer(w) || w < 0) throw std::invalid_argument("expand_profile needs natural weights");
        for (long c = 0; c < to_long(w); ++c) p.margins.push_back(d);
    }
    return p;
}

MarginDist project_election(const WeightedElection& e, int i, int j) {
    MarginDist a(e.k);
    for (const auto& [r, w] : e.ballots) a.at(project_margin(r, i, j)) += w;
    return a;
}

MarginProfile project_profile(const WeightedElection& e, int i, int j) {
    if (e.mode != Mode::finite) throw std::invalid_argument("profiles need finite mode");
    return expand_profile(project_election(e, i, j));
}

MarginDist reflect(const MarginDist& a) {
    MarginDist b(a.k);
    for (size_t i = 0; i < a.v.size(); ++i) b.v[a.v.size() - 1 - i] = a.v[i];
    return b;
}

Rat margin_sum(const MarginDist& a) {
    Rat s = 0;
    for (int d : dk_values(a.k)) s += Rat(d) * a.at(d);
    return s;
}

bool majorizes(const MarginDist& a, const MarginDist& b) {
    if (a.k != b.k) throw std::invalid_argument("majorizes: mixed k");
    if (a.total() != b.total()) throw std::invalid_argument("majorizes: totals differ");
    Rat ca = 0, cb = 0;
    // walk thresholds from the top margin downward
    for (int idx = dk_size(a.k) - 1; idx >= 0; --idx) {
        ca += a.v[idx];
        cb += b.v[idx];
        if (ca < cb) return false;
    }
    return true;
}

// ------------------------------------------------------------ weak orders

Outcome WeakOrdering::compare(int i, int j) const {
    int ti = -1, tj = -1;
    for (size_t t = 0; t < tiers.size(); ++t)
        for (int c : tiers[t]) {
            if (c == i) ti = static_cast<int>(t);
            if (c == j) tj = static_cast<int>(t);
        }
    if (ti < 0 || tj < 0) throw std::invalid_argument("compare: candidate missing from ordering");
    if (ti < tj) return Outcome::W;
    if (ti > tj) return Outcome::L;
    return Outcome::T;
}

std::string ordering_str(const WeakOrdering& w) {
    std::string out;
    for (size_t t = 0; t < w.tiers.size(); ++t) {
        if (t) out += " | ";
        for (size_t i = 0; i < w.tiers[t].size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(w.tiers[t][i]);
        }
    }
    return out;
}

WeakOrdering permute_ordering(const WeakOrdering& w, const std::vector<int>& perm) {
    WeakOrdering out = w;
    for (auto& tier : out.tiers) {
        for (int& c : tier) c = perm[c - 1];
        std::sort(tier.begin(), tier.end());
    }
    return out;
}

// ------------------------------------------------------------ axiom check

std::vector<WeightedElection> all_elections(int k, int n) {
    auto rankings = all_rankings(k);
    std::vector<WeightedElection> out;
    std::vector<int> weights(rankings.size(), 0);
    // compositions of n over the rankings
    std::function<void(size_t, int)> rec = [&](size_t idx, int left) {
        if (idx + 1 == weights.size()) {
            weights[idx] = left;
            WeightedElection e;
            e.k = k;
            e.mode = Mode::finite;
            e.total = n;
            for (size_t i = 0; i < rankings.size(); ++i)
                if (weights[i] > 0) e.ballots[rankings[i]] = weights[i];
            out.push_back(std::move(e));
            return;
        }
        for (int w = 0; w <= left; ++w) {
            weights[idx] = w;
            rec(idx + 1, left - w);
        }
    };
    rec(0, n);
    return out;
}

AxiomReport check_axioms(const Swf& F, int k, int n) {
    if (k > 4 || n > 3 || k < 2 || n < 1)
        throw std::length_error("check_axioms handles 2 <= k <= 4 and 1 <= n <= 3");
    AxiomReport rep;
    auto elections = all_elections(k, n);
    std::vector<WeakOrdering> values;
    values.reserve(elections.size());
    for (const auto& e : elections) values.push_back(F(e));

    // MIIA: each pairwise verdict must factor through the pair's margin distribution.
    rep.miia = true;
    std::vector<std::map<std::vector<Rat>, Outcome>> tables;
    for (int i = 1; i <= k && rep.miia; ++i)
        for (int j = 1; j <= k && rep.miia; ++j) {
            if (i == j) continue;
            std::map<std::vector<Rat>, Outcome> table;
            for (size_t idx = 0; idx < elections.size(); ++idx) {
                auto key = project_election(elections[idx], i, j).v;
                Outcome o = values[idx].compare(i, j);
                auto it = table.find(key);
                if (it == table.end()) {
                    table[key] = o;
                } else if (it->second != o) {
                    rep.miia = false;
                    rep.violations.push_back("miia: pair (" + std::to_string(i) + "," + std::to_string(j) +
                                             ") gives two outcomes on one margin distribution");
                    break;
                }
            }
            tables.push_back(std::move(table));
        }

    // Neutrality: relabeling candidates relabels the result.
    rep.neutral = true;
    std::map<WeightedElection, size_t> index;
    for (size_t idx = 0; idx < elections.size(); ++idx) index[elections[idx]] = idx;
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i + 1;
    do {
        for (size_t idx = 0; idx < elections.size() && rep.neutral; ++idx) {
            WeightedElection pe;
            pe.k = k;
            pe.mode = Mode::finite;
            pe.total = n;
            for (const auto& [r, w] : elections[idx].ballots) pe.ballots[permute_ranking(r, perm)] = w;
            size_t pidx = index.at(pe);
            if (!(values[pidx] == permute_ordering(values[idx], perm))) {
                rep.neutral = false;
                rep.violations.push_back("neutral: some relabeling changes the collective ranking");
            }
        }
    } while (rep.neutral && std::next_permutation(perm.begin(), perm.end()));

    if (rep.miia) {
        rep.induced = tables.front();
        rep.induced_ok = true;
        for (const auto& t : tables)
            if (t != rep.induced) {
                rep.induced_ok = false;
                rep.violations.push_back("induced: pairwise tables disagree across candidate pairs");
                break;
            }
    }
    return rep;
}

}  // namespace tetkit
