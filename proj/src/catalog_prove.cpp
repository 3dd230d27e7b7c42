// Certificate generation (prove_tie, prove_sign_constant), the independent
// replay checker, and the manifest serialization. Generation walks the same
// reduction chains the table families encode; every conclusion is forced
// through the kernel, so a generator bug cannot produce an accepted
// certificate.
#include "tetkit/catalog.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace tetkit {

namespace {

void require(bool ok, const std::string& cond) {
    if (!ok) throw PreconditionError(cond);
}

long fdiv2(long x) { return x >= 0 ? x / 2 : -((1 - x) / 2); }

MarginDist desc4(const Rat& a3, const Rat& a2, const Rat& a1, const Rat& b1, const Rat& b2,
                 const Rat& b3) {
    MarginDist d(4);
    d.at(3) = a3;
    d.at(2) = a2;
    d.at(1) = a1;
    d.at(-1) = b1;
    d.at(-2) = b2;
    d.at(-3) = b3;
    return d;
}

MarginDist family_vec(long n, long a, long t) {
    return desc4(0, t, (n - a) / 2 - t, (n + 3 * a) / 2 - t, t - a, 0);
}

MarginDist widen(const MarginDist& a, int k) {
    if (a.k == k) return a;
    MarginDist out(k);
    for (int d : dk_values(a.k)) out.at(d) = a.at(d);
    return out;
}

MarginDist narrow(const MarginDist& a, int k) {
    MarginDist out(k);
    for (int d : dk_values(a.k)) {
        if (a.at(d) == 0) continue;
        if (!in_dk(k, d)) throw std::logic_error("distribution does not fit the narrower domain");
        out.at(d) = a.at(d);
    }
    return out;
}

int max_support(const MarginDist& a) {
    int m = 0;
    for (int d : dk_values(a.k))
        if (a.at(d) != 0 && std::abs(d) > m) m = std::abs(d);
    return m;
}

// The single reference vector of each voter count whose value the sign
// certificates name X: for odd totals the two-class vector with margin -1,
// for even totals its parity-adjusted variant.
MarginDist anchor_vec(long n) {
    if (n % 2 == 1) return desc4(0, 0, (n - 1) / 2, (n + 1) / 2, 0, 0);
    return desc4(0, 0, n / 2, n / 2 - 1, 1, 0);
}

// ----------------------------------------------------------- step recorder

// Accumulates steps while holding the live fact base, assigning each row its
// source citation and checking that every absorbed conclusion lands the way
// the route expected.
struct CertBuilder {
    int k;
    Mode mode;
    FactBase facts;
    std::vector<CertStep> steps;
    std::map<MarginDist, int> origin;  // first step that established the fact

    CertBuilder(int k_, Mode mode_) : k(k_), mode(mode_), facts(k_, mode_) {}

    std::optional<SymOutcome> look(const MarginDist& a) const { return facts.lookup(a); }

    bool is_T(const MarginDist& a) const {
        auto v = look(a);
        return v && v->sym == 0 && v->val == Outcome::T;
    }

    std::string source_for(const MarginDist& r) const {
        if (is_symmetric(r)) return "axiom-tying";
        auto it = origin.find(r);
        if (it == origin.end()) it = origin.find(reflect(r));
        if (it == origin.end()) throw std::logic_error("row fact has no recorded origin");
        return "step " + std::to_string(it->second);
    }

    // Emits one table as a step. Rows listed in seed_rows may lack a fact;
    // they introduce the symbolic X on their distribution. Every other row
    // must already be covered by the fact base.
    int emit(const BuiltTable& bt, const std::vector<int>& seed_rows = {}) {
        TransitiveElectionTable tab = bt.table;
        if (tab.k > k) throw std::logic_error("table domain exceeds the certificate domain");
        tab.k = k;
        int idx = static_cast<int>(steps.size()) + 1;
        std::set<int> seedable(seed_rows.begin(), seed_rows.end());
        std::set<MarginDist> seeded;
        std::vector<std::string> sources;
        for (int i = 1; i <= tab.m(); ++i) {
            MarginDist r = row_distribution(tab, i);
            if (seeded.count(r)) {
                sources.push_back("X");
                continue;
            }
            if (seedable.count(i) && !facts.lookup(r)) {
                facts.set_symbolic(r, +1);
                seeded.insert(r);
                origin.emplace(r, idx);
                sources.push_back("X");
                continue;
            }
            if (!facts.lookup(r)) throw std::logic_error("table row has no supporting fact");
            sources.push_back(source_for(r));
        }
        Inference inf = infer(tab, facts);
        AbsorbResult ar = absorb(facts, inf);
        facts = ar.facts;
        if (ar.binding && *ar.binding != Outcome::T)
            throw std::logic_error("certificate step bound the symbol to a non-tie");
        CertStep st;
        st.table = std::move(tab);
        st.row_sources = std::move(sources);
        st.binds = ar.binding.has_value();
        st.conclude = MarginDist(k);
        if (!inf.tying) {
            if (widen(bt.target, k) != inf.target)
                throw std::logic_error("constructed table concluded off its target");
            if (!st.binds) st.conclude = inf.target;
            origin.emplace(inf.target, idx);
        }
        steps.push_back(std::move(st));
        return idx;
    }
};

// ------------------------------------------------------------- tie proving

// A two-row table concluding a symmetric target from symmetric rows: each
// margin class d splits into two nonzero classes whose mirror images split
// the class -d, so both rows inherit the target's symmetry.
BuiltTable symmetric_split(const MarginDist& a) {
    BuiltTable out;
    out.table.k = a.k;
    out.table.mode = Mode::finite;
    out.table.M.assign(2, {});
    out.rows.assign(2, {});
    for (int d : dk_values(a.k)) {
        if (a.at(d) == 0) continue;
        int x = std::abs(d) == 1 ? 2 * d : d - (d > 0 ? 1 : -1);
        int y = d - x;
        out.table.w.push_back(a.at(d));
        out.table.M[0].push_back(x);
        out.table.M[1].push_back(y);
    }
    out.target = a;
    return out;
}

struct TieProver {
    CertBuilder& cb;

    MarginDist fam(long n, long a, long t) const { return widen(family_vec(n, a, t), cb.k); }

    void ensure(const MarginDist& a, int depth) {
        if (depth > 64) throw std::logic_error("tie recursion depth exceeded");
        if (is_symmetric(a) || cb.is_T(a)) return;
        int ms = max_support(a);
        if (ms <= 3) {
            ensure_k4(narrow(a, 4), depth);
            return;
        }
        LemmaParams p;
        p.k = ms + 1;
        p.e = expand_profile(narrow(a, ms + 1));
        BuiltTable bt = build_table(LemmaId::Lak, p);
        ensure_rows(bt, depth);
        cb.emit(bt);
    }

    void ensure_rows(const BuiltTable& bt, int depth) {
        for (int i = 1; i <= bt.table.m(); ++i)
            ensure(widen(row_distribution(bt.table, i), cb.k), depth + 1);
    }

    void ensure_k4(const MarginDist& a4, int depth) {
        if (is_symmetric(a4) || cb.is_T(widen(a4, cb.k))) return;
        long a3 = to_long(a4.at(3)), am3 = to_long(a4.at(-3));
        LemmaParams p;
        p.alpha = a4;
        if (a3 + am3 == 0) {
            no_threes(a4, depth);
            return;
        }
        if (a3 + am3 != 1) {
            BuiltTable bt = build_table(LemmaId::Lalmostb4, p);
            ensure_rows(bt, depth);
            cb.emit(bt);
            return;
        }
        if (am3 == 1) {
            ensure_k4(reflect(a4), depth);
            return;
        }
        long am2 = to_long(a4.at(-2)), am1 = to_long(a4.at(-1));
        if (am2 == 0) {
            BuiltTable bt = build_table(LemmaId::Lalpha1, p);
            if (bt.tying) {
                cb.emit(bt, {1, 2, 3, 4});
            } else {
                ensure_rows(bt, depth);
                cb.emit(bt);
            }
            return;
        }
        if (am1 == 0) {
            BuiltTable bt = build_table(LemmaId::Lalpha2, p);
            ensure_rows(bt, depth);
            cb.emit(bt);
            return;
        }
        if (to_long(a4.total()) >= 6) {
            BuiltTable bt = build_table(LemmaId::Lalpha12, p);
            ensure_rows(bt, depth);
            cb.emit(bt);
            return;
        }
        BuiltTable bt = build_table(LemmaId::Lsmalln, p);
        if (bt.tying) {
            cb.emit(bt, {1, 2, 3});
            return;
        }
        if (row_distribution(bt.table, 1) == a4) {
            // rows repeat the target itself; resolve against the known tie
            // the table concludes
            ensure(widen(bt.target, cb.k), depth + 1);
            cb.emit(bt, {1, 2});
            return;
        }
        ensure_rows(bt, depth);
        cb.emit(bt);
    }

    // No +-3 support: the vector is a diagonal-family member up to
    // reflection, so prove its corner and walk the family.
    void no_threes(const MarginDist& a4, int depth) {
        if (a4.at(2) < a4.at(-2)) {
            no_threes(reflect(a4), depth);
            return;
        }
        long n = to_long(a4.total());
        long q = to_long(a4.at(2)) - to_long(a4.at(-2));
        long t = to_long(a4.at(2));
        if (q == 0) return;  // symmetric, nothing to derive
        ensure_family(n, q, t, depth);
    }

    BuiltTable diagonal(long n, long a, long s1, long s2) const {
        LemmaParams p;
        p.n = n;
        p.a = a;
        p.s1 = s1;
        p.s2 = s2;
        p.s3 = (n - 3 * a) / 2 - s1 - s2;
        return build_table(LemmaId::Ldiagonals, p);
    }

    void ensure_family(long n, long a, long t, int depth) {
        if (depth > 64) throw std::logic_error("family recursion depth exceeded");
        MarginDist target = fam(n, a, t);
        if (cb.is_T(target)) return;
        ensure_corner(n, a, depth);
        if (t == a) return;
        if (!cb.is_T(fam(n, a, (n - a) / 2))) cb.emit(diagonal(n, a, 0, 0));
        if (cb.is_T(target)) return;
        fill_family(n, a, t - a);
        if (!cb.is_T(target) || cb.facts.has_symbolic())
            throw std::logic_error("family walk left its target unresolved");
    }

    // Middle family members: seed X at the requested offset and spread it
    // through the triple relation until a conclusion collides with a known
    // value, which binds X = T and turns the whole spread concrete.
    void fill_family(long n, long a, long s) {
        long M = (n - 3 * a) / 2;
        auto real_val = [&](long x) { return cb.look(fam(n, a, x + a)); };
        auto row_val = [&](long x) -> std::optional<SymOutcome> {
            auto v = real_val(x);
            if (!v && x == s) return SymOutcome{+1, Outcome::T};  // seeds on first use
            return v;
        };
        auto combine2 = [](const SymOutcome& x, const SymOutcome& y) -> std::optional<SymOutcome> {
            if (x.sym == 0 && x.val == Outcome::T) return y;
            if (y.sym == 0 && y.val == Outcome::T) return x;
            if (x == y) return x;
            return std::nullopt;
        };
        long limit = 4 * (M + 2) * (M + 2) + 8;
        for (long iter = 0; iter < limit; ++iter) {
            if (cb.is_T(fam(n, a, s + a))) return;
            std::optional<std::pair<long, long>> binding, fresh;
            for (long x = 0; x <= M && !binding; ++x) {
                auto vx = row_val(x);
                if (!vx) continue;
                for (long y = x; x + y <= M; ++y) {
                    auto vy = row_val(y);
                    if (!vy) continue;
                    auto fold = combine2(*vx, *vy);
                    if (!fold) continue;
                    long z = M - x - y;
                    auto vz = real_val(z);
                    if (!vz) {
                        if (!fresh) fresh = {x, y};
                        continue;
                    }
                    if (*vz == sym_neg(*fold)) continue;  // already recorded
                    binding = {x, y};
                    break;
                }
            }
            auto mv = binding ? binding : fresh;
            if (!mv) throw std::logic_error("family walk saturated without binding the symbol");
            std::vector<int> seeds;
            if (mv->first == s) seeds.push_back(1);
            if (mv->second == s) seeds.push_back(2);
            cb.emit(diagonal(n, a, mv->first, mv->second), seeds);
        }
        throw std::logic_error("family walk exceeded its step budget");
    }

    // The corner member f(alpha_(a,a)) = T via the tying loop, the two-table
    // k<=n/4 argument, or the beta/gamma descent, each one symbol epoch.
    void ensure_corner(long n, long a, int depth) {
        MarginDist corner = fam(n, a, a);
        if (cb.is_T(corner)) return;
        if (cb.facts.has_symbolic())
            throw std::logic_error("corner derivation entered with a live symbol");
        LemmaParams p;
        p.n = n;
        p.a = a;
        if (3 * a == n) {
            cb.emit(build_table(LemmaId::Lkleqn3_3an, p), {1, 2, 3});
        } else if (5 * a <= n) {
            cb.emit(build_table(LemmaId::Ltwelvestep, p),
                    {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
        } else {
            std::vector<long> chain{a};
            while (4 * chain.back() > n) chain.push_back(4 * chain.back() - n);
            long af = chain.back();
            long b = n % 2;
            bool loop12 = af >= 1 && 5 * af <= n;
            if (af >= 1 && !loop12 && b == 1) {
                ensure_family(n, 1, (n - af) / 2, depth + 1);
                ensure_family(n, 1, (n - 1) / 2, depth + 1);
            }
            bool first = true;
            for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
                LemmaParams q;
                q.n = n;
                q.a = chain[i];
                cb.emit(build_table(LemmaId::Lkleqn3_beta, q),
                        first ? std::vector<int>{1, 2} : std::vector<int>{});
                first = false;
                cb.emit(build_table(LemmaId::Lkleqn3_gamma, q));
            }
            if (af >= 1) {
                LemmaParams q;
                q.n = n;
                q.a = af;
                if (loop12) {
                    cb.emit(build_table(LemmaId::Ltwelvestep, q),
                            first ? std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}
                                  : std::vector<int>{});
                } else {
                    cb.emit(build_table(LemmaId::Lkleqn4a, q),
                            first ? std::vector<int>{1} : std::vector<int>{});
                    cb.emit(build_table(LemmaId::Lkleqn4b, q));
                }
            }
        }
        if (cb.facts.has_symbolic() || !cb.is_T(corner))
            throw std::logic_error("corner derivation left the symbol unresolved");
    }
};

// The weighted reduction chain: most specific table first, each row one
// level closer to a symmetric row.
void ensure_tie_weighted(CertBuilder& cb, const MarginDist& a, int depth) {
    if (depth > 12) throw std::logic_error("weighted reduction depth exceeded");
    if (depth > 0 && (is_symmetric(a) || cb.is_T(a))) return;
    LemmaParams p;
    p.alpha = a;
    BuiltTable bt = [&] {
        try {
            return build_table(LemmaId::Lfirstcomb, p);
        } catch (const PreconditionError&) {
        }
        try {
            return build_table(LemmaId::Lsecondcomb, p);
        } catch (const PreconditionError&) {
        }
        return build_table(LemmaId::Lthirdcomb, p);
    }();
    MarginDist r = row_distribution(bt.table, 1);
    if (!is_symmetric(r)) ensure_tie_weighted(cb, r, depth + 1);
    cb.emit(bt);
}

// ------------------------------------------------------------ sign proving

// Bridges both inputs to the anchor of their voter count. Runs twice over
// the same deterministic route: a planning pass collecting every tying row
// the chain consumes, and an emission pass once those ties are certified.
struct SignProver {
    CertBuilder& cb;
    TieProver& tie;
    long n;
    MarginDist anchor;
    bool planning = true;
    std::set<MarginDist> planned;
    std::vector<MarginDist> ties;

    SignProver(CertBuilder& cb_, TieProver& tie_, long n_)
        : cb(cb_), tie(tie_), n(n_), anchor(widen(anchor_vec(n_), cb_.k)) {}

    BuiltTable table_for(const MarginDist& a4) const {
        long m = to_long(margin_sum(a4));
        LemmaParams p;
        p.alpha = a4;
        if (m <= -2) return build_table(LemmaId::Lmmain, p);
        long nn = to_long(a4.total());
        long a3 = to_long(a4.at(3)), a2 = to_long(a4.at(2)), a1 = to_long(a4.at(1));
        long b1 = to_long(a4.at(-1)), b2 = to_long(a4.at(-2)), b3 = to_long(a4.at(-3));
        if (nn % 2 == 1) {
            if (a3 + b1 <= (nn - 1) / 2 && a1 + b3 <= (nn + 1) / 2)
                return build_table(LemmaId::Lfirstm1_odd, p);
        } else {
            if (a1 + b1 + b3 == 0) return build_table(LemmaId::Levenfix, p);
            if (a3 + b1 <= nn / 2 && a1 + b3 <= nn / 2)
                return build_table(LemmaId::Lfirstm1_even, p);
        }
        if (a3 + b1 >= 1 && a2 + b2 >= 1 && a1 + b3 >= 1)
            return build_table(LemmaId::Lsecondm1, p);
        if (a2 + b2 >= 1) return build_table(LemmaId::Lthirdm1A, p);
        if (a1 + b3 >= 1) return build_table(LemmaId::Lthirdm1, p);
        return build_table(LemmaId::Llastm1, p);
    }

    void visit(const MarginDist& a, int depth) {
        if (depth > 64) throw std::logic_error("sign recursion depth exceeded");
        if (planning ? planned.count(a) > 0 : cb.look(a).has_value()) return;
        if (a == anchor) return;  // its fact arrives as a seeded row
        if (planning) planned.insert(a);
        int ms = max_support(a);
        if (ms >= 4) {
            LemmaParams p;
            p.k = ms + 1;
            p.e = expand_profile(narrow(a, ms + 1));
            handle(build_table(LemmaId::Lak, p), depth);
            return;
        }
        if (n == 2) {
            ladder_n2();
            if (!planning && !cb.look(a))
                throw std::logic_error("pair ladder missed a negative-margin vector");
            return;
        }
        handle(table_for(narrow(a, 4)), depth);
    }

    void handle(const BuiltTable& bt, int depth) {
        std::vector<int> seeds;
        for (int i = 1; i <= bt.table.m(); ++i) {
            MarginDist r = widen(row_distribution(bt.table, i), cb.k);
            if (margin_sum(r) == 0) {
                if (planning)
                    ties.push_back(r);
                else if (!is_symmetric(r) && !cb.is_T(r))
                    throw std::logic_error("tying row was not prepared before emission");
            } else {
                visit(r, depth + 1);
                if (!planning && r == anchor) seeds.push_back(i);
            }
        }
        if (!planning) cb.emit(bt, seeds);
    }

    // Two voters: the fixed ladder reaching every negative-margin pair from
    // the anchor and the symmetric pairs alone.
    void ladder_n2() {
        if (planning) return;
        MarginDist second = widen(desc4(0, 1, 0, 0, 0, 1), cb.k);
        if (!cb.look(second)) {
            LemmaParams p;
            p.alpha = narrow(second, 4);
            cb.emit(build_table(LemmaId::Lfirstm1_even, p), {1});
        }
        for (long item = 1; item <= 7; ++item) {
            LemmaParams p;
            p.a = item;
            BuiltTable bt = build_table(LemmaId::Ln2special, p);
            if (cb.look(widen(bt.target, cb.k))) continue;
            std::vector<int> seeds;
            for (int i = 1; i <= 2; ++i)
                if (widen(row_distribution(bt.table, i), cb.k) == anchor) seeds.push_back(i);
            cb.emit(bt, seeds);
        }
    }

    // Emits one table that consumes the anchor as a row, for the case where
    // both requested vectors are the anchor itself and no chain seeded it.
    void seed_anchor_directly() {
        if (cb.look(anchor)) return;
        if (n == 1) {
            MarginDist a(4);
            a.at(-2) = 1;
            visit(widen(a, cb.k), 0);
            return;
        }
        if (n == 2) {
            ladder_n2();
            return;
        }
        LemmaParams p;
        p.alpha = aux_target();
        BuiltTable bt = build_table(n % 2 == 1 ? LemmaId::Lfirstm1_odd : LemmaId::Lfirstm1_even, p);
        handle(bt, 0);
    }

    MarginDist aux_target() const {
        if (n % 2 == 1) return desc4(0, 1, (n - 3) / 2, (n - 1) / 2, 1, 0);
        return desc4(0, 1, (n - 2) / 2, (n - 4) / 2, 2, 0);
    }

    void plan_anchor_aux() {
        LemmaParams p;
        p.alpha = aux_target();
        BuiltTable bt = build_table(n % 2 == 1 ? LemmaId::Lfirstm1_odd : LemmaId::Lfirstm1_even, p);
        for (int i = 1; i <= bt.table.m(); ++i) {
            MarginDist r = widen(row_distribution(bt.table, i), cb.k);
            if (margin_sum(r) == 0) ties.push_back(r);
        }
    }
};

void check_finite_dist(const MarginDist& a) {
    require(a.k >= 4, "margin domain must have k >= 4");
    for (const Rat& x : a.v) {
        require(x >= 0, "entries must be non-negative");
        require(is_integer(x), "finite entries must be integers");
    }
    require(a.total() >= 1, "at least one voter is required");
}

// --------------------------------------------------------------- manifests

std::string table_file_name(std::size_t step) {
    std::ostringstream os;
    os << "step-" << std::setw(3) << std::setfill('0') << step << ".tet";
    return os.str();
}

}  // namespace

Certificate prove_tie(const MarginDist& alpha, Mode mode) {
    require(margin_sum(alpha) == 0, "margin sum must be 0");
    if (mode == Mode::weighted) {
        require(alpha.k == 4, "weighted certificates cover k = 4");
        for (const Rat& x : alpha.v) require(x >= 0, "entries must be non-negative");
        require(alpha.total() == 1, "weighted alpha must have total 1");
        CertBuilder cb(4, Mode::weighted);
        ensure_tie_weighted(cb, alpha, 0);
        if (!cb.is_T(alpha)) throw std::logic_error("weighted derivation fell short");
        return Certificate{cb.k, cb.mode, std::move(cb.steps)};
    }
    check_finite_dist(alpha);
    CertBuilder cb(alpha.k, Mode::finite);
    TieProver tp{cb};
    if (is_symmetric(alpha))
        cb.emit(symmetric_split(alpha));
    else
        tp.ensure(alpha, 0);
    if (!cb.is_T(alpha)) throw std::logic_error("tie derivation fell short");
    if (cb.facts.has_symbolic()) throw std::logic_error("tie certificate left the symbol unbound");
    return Certificate{cb.k, cb.mode, std::move(cb.steps)};
}

Certificate prove_sign_constant(const MarginDist& a1, const MarginDist& a2) {
    check_finite_dist(a1);
    check_finite_dist(a2);
    require(a1.k == a2.k, "both vectors must share one margin domain");
    require(margin_sum(a1) < 0 && margin_sum(a2) < 0, "both margin sums must be negative");
    require(a1.total() == a2.total(), "both vectors must have the same total");
    long n = to_long(a1.total());
    CertBuilder cb(a1.k, Mode::finite);
    TieProver tp{cb};
    SignProver sp(cb, tp, n);

    sp.planning = true;
    sp.visit(a1, 0);
    sp.visit(a2, 0);
    if (a1 == sp.anchor && a2 == sp.anchor && n >= 3) sp.plan_anchor_aux();

    std::set<MarginDist> seen;
    for (const MarginDist& t : sp.ties)
        if (seen.insert(t).second) tp.ensure(t, 0);
    if (cb.facts.has_symbolic())
        throw std::logic_error("tie preparation left a symbol before the sign chain");

    sp.planning = false;
    sp.visit(a1, 0);
    sp.visit(a2, 0);
    if (!cb.look(sp.anchor)) sp.seed_anchor_directly();

    for (const MarginDist* a : {&a1, &a2}) {
        auto v = cb.look(*a);
        if (!v || v->sym != 1) throw std::logic_error("sign derivation fell short");
    }
    return Certificate{cb.k, cb.mode, std::move(cb.steps)};
}

MarginDist sign_anchor(int k, long n) {
    require(k >= 4, "anchor needs at least four candidates");
    require(n >= 1, "anchor needs a positive total");
    return widen(anchor_vec(n), k);
}

FactBase replay_certificate(const Certificate& cert) {
    FactBase facts(cert.k, cert.mode);
    std::vector<std::set<MarginDist>> established;
    for (std::size_t si = 0; si < cert.steps.size(); ++si) {
        const CertStep& st = cert.steps[si];
        int cur = static_cast<int>(si) + 1;
        auto fail = [&](const std::string& msg) -> void {
            throw std::runtime_error("step " + std::to_string(cur) + ": " + msg);
        };
        if (static_cast<int>(st.row_sources.size()) != st.table.m())
            fail("one source per row is required");
        std::set<MarginDist> est;
        for (int i = 1; i <= st.table.m(); ++i) {
            MarginDist r = row_distribution(st.table, i);
            const std::string& src = st.row_sources[i - 1];
            if (src == "X") {
                // The unknown may be introduced once per epoch; afterwards
                // X rows may only repeat the distribution that carries it.
                auto v = facts.lookup(r);
                if (!v) {
                    if (facts.has_symbolic())
                        fail("cannot introduce a second unknown while one is live");
                    facts.set_symbolic(r, +1);
                    est.insert(r);
                } else if (v->sym == 1) {
                    est.insert(r);
                } else {
                    fail("X cited for a row with a settled value");
                }
            } else if (src == "axiom-tying") {
                if (!is_symmetric(r)) fail("axiom-tying cited for an asymmetric row");
            } else if (src.rfind("step ", 0) == 0) {
                std::size_t pos = 0;
                int m = 0;
                try {
                    m = std::stoi(src.substr(5), &pos);
                } catch (const std::exception&) {
                    fail("malformed step citation");
                }
                if (pos != src.size() - 5) fail("malformed step citation");
                if (m < 1 || m >= cur) fail("row cites a step out of range");
                const auto& em = established[m - 1];
                if (!em.count(r) && !em.count(reflect(r)))
                    fail("row does not match the cited step");
                if (!facts.lookup(r)) fail("cited fact is unavailable");
            } else {
                fail("unknown row source: " + src);
            }
        }
        Inference inf = infer(st.table, facts);
        AbsorbResult ar = absorb(facts, inf);
        facts = ar.facts;
        if (st.binds) {
            if (!ar.binding || *ar.binding != Outcome::T) fail("claimed binding did not occur");
        } else {
            if (ar.binding) fail("unexpected binding");
            if (inf.tying) fail("tying step must claim a binding");
            if (inf.target != st.conclude) fail("conclusion does not match the table");
        }
        if (!inf.tying) est.insert(inf.target);
        established.push_back(std::move(est));
    }
    return facts;
}

std::string manifest_str(const Certificate& cert) {
    std::ostringstream os;
    os << "k=" << cert.k << "\n";
    os << "mode=" << mode_str(cert.mode) << "\n";
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
        const CertStep& st = cert.steps[i];
        os << "step " << (i + 1) << ": table " << table_file_name(i + 1) << ", rows from ";
        for (std::size_t j = 0; j < st.row_sources.size(); ++j) {
            if (j) os << ", ";
            os << st.row_sources[j];
        }
        os << ", conclude " << (st.binds ? std::string("X=T") : dist_str(st.conclude)) << "\n";
    }
    return os.str();
}

void write_certificate(const Certificate& cert, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    {
        std::ofstream out(fs::path(dir) / "manifest.txt", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write manifest in " + dir);
        out << manifest_str(cert);
    }
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
        std::ofstream out(fs::path(dir) / table_file_name(i + 1), std::ios::binary);
        if (!out) throw std::runtime_error("cannot write table file in " + dir);
        out << serialize_table(cert.steps[i].table);
    }
}

Certificate read_certificate(const std::string& dir) {
    namespace fs = std::filesystem;
    auto slurp = [&](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        if (!in) throw std::runtime_error("cannot read " + p.string());
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    std::istringstream man(slurp(fs::path(dir) / "manifest.txt"));
    auto fail = [](const std::string& msg) -> void {
        throw std::runtime_error("manifest: " + msg);
    };
    Certificate cert;
    std::string line;
    if (!std::getline(man, line) || line.rfind("k=", 0) != 0) fail("missing k header");
    cert.k = std::stoi(line.substr(2));
    if (!std::getline(man, line) || line.rfind("mode=", 0) != 0) fail("missing mode header");
    auto mode = mode_from_str(line.substr(5));
    if (!mode) fail("unknown mode");
    cert.mode = *mode;
    int expect = 1;
    while (std::getline(man, line)) {
        if (line.empty()) continue;
        std::string head = "step " + std::to_string(expect) + ": table ";
        if (line.rfind(head, 0) != 0) fail("steps must be numbered consecutively");
        std::size_t rows_at = line.find(", rows from ");
        std::size_t conc_at = line.rfind(", conclude ");
        if (rows_at == std::string::npos || conc_at == std::string::npos || conc_at <= rows_at)
            fail("malformed step line");
        std::string fname = line.substr(head.size(), rows_at - head.size());
        std::string srcs = line.substr(rows_at + 12, conc_at - rows_at - 12);
        std::string conc = line.substr(conc_at + 11);
        CertStep st;
        std::string terr;
        auto tab = parse_table_file(slurp(fs::path(dir) / fname), &terr);
        if (!tab) fail("table " + fname + ": " + terr);
        st.table = *tab;
        std::size_t pos = 0;
        while (pos <= srcs.size()) {
            std::size_t sep = srcs.find(", ", pos);
            std::string tok =
                sep == std::string::npos ? srcs.substr(pos) : srcs.substr(pos, sep - pos);
            if (tok.empty()) fail("empty row source");
            st.row_sources.push_back(tok);
            if (sep == std::string::npos) break;
            pos = sep + 2;
        }
        st.conclude = MarginDist(cert.k);
        if (conc == "X=T") {
            st.binds = true;
        } else {
            auto d = parse_dist(cert.k, conc);
            if (!d) fail("malformed conclusion vector");
            st.conclude = *d;
        }
        cert.steps.push_back(std::move(st));
        ++expect;
    }
    return cert;
}

}  // namespace tetkit
