#include "tetkit/tet.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tetkit {

// ------------------------------------------------------ parenthesizations

namespace {

bool tree_eq(const ParenTree& a, int na, const ParenTree& b, int nb) {
    const auto& x = a.nodes[na];
    const auto& y = b.nodes[nb];
    if ((x.left < 0) != (y.left < 0)) return false;
    if (x.left < 0) return x.lo == y.lo;
    return tree_eq(a, x.left, b, y.left) && tree_eq(a, x.right, b, y.right);
}

struct ParenParser {
    const std::string& s;
    size_t pos = 0;
    ParenTree out;
    std::vector<std::pair<int, size_t>> leaves;  // (index, byte offset)

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    int expr() {
        skip_ws();
        if (pos >= s.size()) throw ParenParseError("unexpected end of input", pos);
        if (s[pos] == '(') {
            size_t open = pos++;
            int l = expr();
            int r = expr();
            skip_ws();
            if (pos >= s.size()) throw ParenParseError("unclosed parenthesis", open);
            if (s[pos] != ')') throw ParenParseError("group must contain exactly two factors", pos);
            ++pos;
            out.nodes.push_back({out.nodes[l].lo, out.nodes[r].hi, l, r});
            return static_cast<int>(out.nodes.size()) - 1;
        }
        if (s[pos] == 'x') {
            size_t at = pos++;
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == start) throw ParenParseError("expected atom index after 'x'", pos);
            int idx = std::stoi(s.substr(start, pos - start));
            if (idx < 1) throw ParenParseError("atom indices start at x1", at);
            leaves.emplace_back(idx, at);
            out.nodes.push_back({idx, idx, -1, -1});
            return static_cast<int>(out.nodes.size()) - 1;
        }
        throw ParenParseError("expected 'x<INT>' or '('", pos);
    }
};

}  // namespace

bool ParenTree::operator==(const ParenTree& o) const {
    if ((root < 0) != (o.root < 0)) return false;
    if (root < 0) return true;
    return tree_eq(*this, root, o, o.root);
}

ParenTree parse_paren(const std::string& text) {
    ParenParser p{text};
    p.out.root = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) throw ParenParseError("trailing input", p.pos);
    for (size_t i = 0; i < p.leaves.size(); ++i)
        if (p.leaves[i].first != static_cast<int>(i) + 1)
            throw ParenParseError("atoms must read x1..xm left to right", p.leaves[i].second);
    return p.out;
}

namespace {

void paren_str_rec(const ParenTree& p, int node, std::string& out) {
    const auto& n = p.nodes[node];
    if (n.left < 0) {
        out += "x" + std::to_string(n.lo);
        return;
    }
    out += "(";
    paren_str_rec(p, n.left, out);
    out += " ";
    paren_str_rec(p, n.right, out);
    out += ")";
}

}  // namespace

std::string paren_str(const ParenTree& p) {
    if (p.root < 0) return "";
    std::string out;
    paren_str_rec(p, p.root, out);
    return out;
}

ParenTree left_tree(int m) {
    if (m < 1) throw std::invalid_argument("left_tree: need at least one leaf");
    ParenTree p;
    p.nodes.push_back({1, 1, -1, -1});
    int cur = 0;
    for (int i = 2; i <= m; ++i) {
        p.nodes.push_back({i, i, -1, -1});
        int leaf = static_cast<int>(p.nodes.size()) - 1;
        p.nodes.push_back({1, i, cur, leaf});
        cur = static_cast<int>(p.nodes.size()) - 1;
    }
    p.root = cur;
    return p;
}

// ----------------------------------------------------------------- tables

std::vector<int> TransitiveElectionTable::group_sum(int lo, int hi) const {
    std::vector<int> out(w.size(), 0);
    for (int s = lo; s <= hi; ++s)
        for (size_t j = 0; j < out.size(); ++j) out[j] += M[s - 1][j];
    return out;
}

MarginDist vector_distribution(const TransitiveElectionTable& tet, const std::vector<int>& row) {
    if (row.size() != tet.w.size()) throw std::invalid_argument("vector_distribution: width mismatch");
    MarginDist a(tet.k);
    for (size_t j = 0; j < row.size(); ++j) {
        if (!in_dk(tet.k, row[j]))
            throw std::invalid_argument("vector_distribution: entry " + std::to_string(row[j]) + " outside D_k");
        a.at(row[j]) += tet.w[j];
    }
    return a;
}

MarginDist row_distribution(const TransitiveElectionTable& tet, int i) {
    if (i < 1 || i > tet.m()) throw std::out_of_range("row_distribution: row index");
    return vector_distribution(tet, tet.M[i - 1]);
}

namespace {

std::string node_name(const ParenTree::Node& n) {
    return "node x" + std::to_string(n.lo) + "..x" + std::to_string(n.hi);
}

void collect_internal(const ParenTree& p, int node, std::vector<int>& out) {
    const auto& n = p.nodes[node];
    if (n.left < 0) return;
    out.push_back(node);
    collect_internal(p, n.left, out);
    collect_internal(p, n.right, out);
}

}  // namespace

ValidationReport validate(const TransitiveElectionTable& tet) {
    ValidationReport rep;
    auto flag = [&](const std::string& where, int col, const std::string& what) {
        rep.violations.push_back({where, col, what});
    };

    if (tet.k < 2) flag("k", 0, "k must be at least 2");
    if (tet.t() < 1) flag("w", 0, "need at least one column");
    if (tet.m() < 2) flag("M", 0, "need at least two rows");

    bool shape_ok = tet.k >= 2 && tet.t() >= 1 && tet.m() >= 2;
    for (int i = 1; i <= tet.m(); ++i)
        if (static_cast<int>(tet.M[i - 1].size()) != tet.t()) {
            flag("row " + std::to_string(i), 0, "row width differs from w");
            shape_ok = false;
        }

    Rat total = 0;
    for (int j = 1; j <= tet.t(); ++j) {
        const Rat& wj = tet.w[j - 1];
        if (wj < 0) flag("w", j, "negative weight");
        if (tet.mode == Mode::finite && !is_integer(wj)) flag("w", j, "finite mode needs integer weights");
        total += wj;
    }
    if (tet.mode == Mode::weighted && total != 1) flag("w", 0, "weights must sum to 1 in weighted mode");
    if (tet.mode == Mode::finite && total < 1) flag("w", 0, "weights must sum to a positive count");

    if (!shape_ok) {
        rep.valid = false;
        return rep;
    }

    for (int i = 1; i <= tet.m(); ++i)
        for (int j = 1; j <= tet.t(); ++j)
            if (!in_dk(tet.k, tet.M[i - 1][j - 1]))
                flag("row " + std::to_string(i), j,
                     "entry " + std::to_string(tet.M[i - 1][j - 1]) + " outside D_k");

    auto m0 = tet.m0();
    bool zero = std::all_of(m0.begin(), m0.end(), [](int x) { return x == 0; });
    rep.tying = zero;
    if (!zero)
        for (int j = 1; j <= tet.t(); ++j)
            if (!in_dk(tet.k, m0[j - 1]))
                flag("M0", j, "column sum " + std::to_string(m0[j - 1]) + " outside D_k");

    if (tet.P) {
        if (tet.P->leaves() != tet.m()) {
            flag("P", 0, "parenthesization covers " + std::to_string(tet.P->leaves()) + " rows, table has " +
                             std::to_string(tet.m()));
        } else {
            std::vector<int> internal;
            collect_internal(*tet.P, tet.P->root, internal);
            for (int node : internal) {
                if (node == tet.P->root) continue;  // the root is M0
                const auto& n = tet.P->nodes[node];
                auto sum = tet.group_sum(n.lo, n.hi);
                for (int j = 1; j <= tet.t(); ++j)
                    if (!in_dk(tet.k, sum[j - 1]))
                        flag(node_name(n), j, "group sum " + std::to_string(sum[j - 1]) + " outside D_k");
            }
        }
    } else if (tet.m() > 3 || (tet.m() == 3 && !zero)) {
        flag("P", 0, "parenthesization required unless m = 2 or the table ties with m = 3");
    }

    rep.valid = rep.violations.empty();
    return rep;
}

// ------------------------------------------------------------- fact bases

std::string sym_str(const SymOutcome& s) {
    if (s.sym > 0) return "X";
    if (s.sym < 0) return "-X";
    return std::string(1, outcome_char(s.val));
}

void FactBase::set_concrete(const MarginDist& a, Outcome o) {
    if (a.k != k_) throw std::invalid_argument("facts: vector with wrong k");
    if (is_symmetric(a) && o != Outcome::T)
        throw InconsistencyError("facts: symmetric vector " + dist_str(a) + " must tie");
    auto cur = lookup(a);
    if (cur) {
        if (cur->sym == 0 && cur->val == o) return;
        throw InconsistencyError("facts: " + dist_str(a) + " already " + sym_str(*cur) + ", refusing " +
                                 std::string(1, outcome_char(o)));
    }
    concrete_[a] = o;
}

void FactBase::set_symbolic(const MarginDist& a, int sign) {
    if (a.k != k_) throw std::invalid_argument("facts: vector with wrong k");
    if (sign != 1 && sign != -1) throw std::invalid_argument("facts: symbolic sign must be +-1");
    if (is_symmetric(a))
        throw std::invalid_argument("facts: symmetric vector " + dist_str(a) + " ties by the axiom");
    auto cur = lookup(a);
    if (cur) {
        if (cur->sym == sign) return;
        throw InconsistencyError("facts: " + dist_str(a) + " already " + sym_str(*cur));
    }
    symbolic_[a] = sign;
}

std::optional<SymOutcome> FactBase::lookup(const MarginDist& a) const {
    if (a.k != k_) throw std::invalid_argument("facts: vector with wrong k");
    auto it = concrete_.find(a);
    if (it != concrete_.end()) return SymOutcome{0, it->second};
    auto is = symbolic_.find(a);
    if (is != symbolic_.end()) return SymOutcome{is->second, Outcome::T};
    MarginDist ra = reflect(a);
    it = concrete_.find(ra);
    if (it != concrete_.end()) return SymOutcome{0, neg(it->second)};
    is = symbolic_.find(ra);
    if (is != symbolic_.end()) return SymOutcome{-is->second, Outcome::T};
    if (is_symmetric(a)) return SymOutcome{0, Outcome::T};
    return std::nullopt;
}

void FactBase::bind(Outcome o) {
    auto moved = std::move(symbolic_);
    symbolic_.clear();
    for (const auto& [a, sign] : moved) set_concrete(a, sign > 0 ? o : neg(o));
}

// ---------------------------------------------------------------- kernel

namespace {

SymOutcome combine(const SymOutcome& a, const SymOutcome& b, const std::string& where) {
    if (a.sym == 0 && a.val == Outcome::T) return b;
    if (b.sym == 0 && b.val == Outcome::T) return a;
    if (a == b) return a;
    throw InconsistencyError("cannot fold " + sym_str(a) + " with " + sym_str(b) + " at " + where);
}

struct Folder {
    const TransitiveElectionTable& tet;
    const std::vector<SymOutcome>& rowv;

    SymOutcome fold(const ParenTree& p, int node) const {
        const auto& n = p.nodes[node];
        if (n.left < 0) return rowv[n.lo - 1];
        return combine(fold(p, n.left), fold(p, n.right), node_name(n));
    }
};

// Root of a tying table: the left and right halves sit at mirrored
// distributions, so their values must be negations of one another. Returns
// the resolution of X when the equation forces one.
std::optional<Outcome> mirror_equation(const SymOutcome& l, const SymOutcome& r) {
    if (l.sym == 0 && r.sym == 0) {
        if (l.val != neg(r.val))
            throw InconsistencyError("tying table mirrors " + sym_str(l) + " against " + sym_str(r));
        return std::nullopt;
    }
    if (l.sym != 0 && r.sym != 0) {
        if (l.sym == r.sym) return Outcome::T;  // X = -X
        return std::nullopt;                    // X = X, nothing learned
    }
    const SymOutcome& sym = l.sym != 0 ? l : r;
    const SymOutcome& conc = l.sym != 0 ? r : l;
    Outcome mirrored = neg(conc.val);
    return sym.sym > 0 ? mirrored : neg(mirrored);
}

}  // namespace

Inference infer(const TransitiveElectionTable& tet, const FactBase& facts) {
    auto rep = validate(tet);
    if (!rep.valid) {
        const auto& v = rep.violations.front();
        throw std::invalid_argument("invalid table: " + v.where + ": " + v.what);
    }

    std::vector<SymOutcome> rowv;
    for (int i = 1; i <= tet.m(); ++i) {
        auto a = row_distribution(tet, i);
        auto f = facts.lookup(a);
        if (!f) throw IncompleteFactsError("no fact for row " + std::to_string(i) + " distribution " + dist_str(a));
        rowv.push_back(*f);
    }
    Folder folder{tet, rowv};

    if (!rep.tying) {
        ParenTree synth;
        const ParenTree& p = tet.P ? *tet.P : (synth = left_tree(tet.m()), synth);
        Inference inf;
        inf.tying = false;
        inf.value = folder.fold(p, p.root);
        inf.target = vector_distribution(tet, tet.m0());
        return inf;
    }

    Inference inf;
    inf.tying = true;
    inf.target = MarginDist(tet.k);
    if (tet.P || tet.m() == 2) {
        ParenTree synth;
        const ParenTree& p = tet.P ? *tet.P : (synth = left_tree(2), synth);
        const auto& rootNode = p.nodes[p.root];
        inf.binding = mirror_equation(folder.fold(p, rootNode.left), folder.fold(p, rootNode.right));
        return inf;
    }
    // m = 3 tying without P: rows may be paired in any of the three orders
    std::optional<InconsistencyError> last;
    const std::array<std::array<int, 3>, 3> orders{{{1, 2, 3}, {2, 3, 1}, {1, 3, 2}}};
    for (auto [i, j, l] : orders) {
        try {
            auto inner = combine(rowv[i - 1], rowv[j - 1],
                                 "node x" + std::to_string(i) + "..x" + std::to_string(j));
            inf.binding = mirror_equation(inner, rowv[l - 1]);
            return inf;
        } catch (const InconsistencyError& e) {
            last = e;
        }
    }
    throw *last;
}

AbsorbResult absorb(const FactBase& facts, const Inference& inf) {
    AbsorbResult res{facts, std::nullopt};
    if (inf.tying) {
        if (inf.binding) {
            res.facts.bind(*inf.binding);
            res.binding = inf.binding;
        }
        return res;
    }
    auto existing = res.facts.lookup(inf.target);
    if (!existing) {
        if (inf.value.sym == 0)
            res.facts.set_concrete(inf.target, inf.value.val);
        else
            res.facts.set_symbolic(inf.target, inf.value.sym);
        return res;
    }
    const SymOutcome& ex = *existing;
    if (ex.sym == 0 && inf.value.sym == 0) {
        if (ex.val != inf.value.val)
            throw InconsistencyError("conclusion " + sym_str(inf.value) + " clashes with known " + sym_str(ex) +
                                     " at " + dist_str(inf.target));
        return res;
    }
    Outcome resolved;
    if (ex.sym == 0)
        resolved = inf.value.sym > 0 ? ex.val : neg(ex.val);
    else if (inf.value.sym == 0)
        resolved = ex.sym > 0 ? inf.value.val : neg(inf.value.val);
    else if (ex.sym != inf.value.sym)
        resolved = Outcome::T;  // X = -X
    else
        return res;  // X = X, nothing new
    res.facts.bind(resolved);
    res.binding = resolved;
    return res;
}

// ------------------------------------------------------------ file format

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::optional<long> parse_int(const std::string& s) {
    if (s.empty()) return std::nullopt;
    size_t i = s[0] == '-' || s[0] == '+' ? 1 : 0;
    if (i == s.size()) return std::nullopt;
    for (size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) return std::nullopt;
    return std::stol(s);
}

std::vector<std::string> split_list(const std::string& s, bool& ok) {
    ok = s.size() >= 2 && s.front() == '[' && s.back() == ']';
    if (!ok) return {};
    std::vector<std::string> out;
    std::string body = s.substr(1, s.size() - 2);
    if (strip(body).empty()) return out;
    size_t start = 0;
    while (true) {
        size_t comma = body.find(',', start);
        out.push_back(strip(comma == std::string::npos ? body.substr(start) : body.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

std::optional<TransitiveElectionTable> parse_table_file(const std::string& text, std::string* err) {
    auto fail = [&](int line, const std::string& m) {
        if (err) *err = "line " + std::to_string(line) + ": " + m;
        return std::nullopt;
    };
    TransitiveElectionTable tet;
    enum class Expect { k, mode, w, rows } state = Expect::k;
    bool sawP = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) return fail(lineno, "expected key=value");
        std::string key = strip(line.substr(0, eq));
        std::string val = strip(line.substr(eq + 1));
        if (key == "k") {
            if (state != Expect::k) return fail(lineno, "k= must come first");
            auto v = parse_int(val);
            if (!v || *v < 2) return fail(lineno, "bad k");
            tet.k = static_cast<int>(*v);
            state = Expect::mode;
        } else if (key == "mode") {
            if (state != Expect::mode) return fail(lineno, "mode= must follow k=");
            auto m = mode_from_str(val);
            if (!m) return fail(lineno, "mode must be finite or weighted");
            tet.mode = *m;
            state = Expect::w;
        } else if (key == "w") {
            if (state != Expect::w) return fail(lineno, "w= must follow mode=");
            bool ok = false;
            auto parts = split_list(val, ok);
            if (!ok || parts.empty()) return fail(lineno, "w needs a bracketed list of weights");
            for (const auto& p : parts) {
                auto r = parse_rat(p);
                if (!r) return fail(lineno, "bad weight '" + p + "'");
                tet.w.push_back(*r);
            }
            state = Expect::rows;
        } else if (key == "P") {
            if (state != Expect::rows || sawP || !tet.M.empty())
                return fail(lineno, "P= must follow w= and precede the rows");
            try {
                tet.P = parse_paren(val);
            } catch (const ParenParseError& e) {
                return fail(lineno, e.what());
            }
            sawP = true;
        } else if (key == "M") {
            if (state != Expect::rows) return fail(lineno, "M= rows must follow w=");
            bool ok = false;
            auto parts = split_list(val, ok);
            if (!ok) return fail(lineno, "M needs a bracketed list of margins");
            if (parts.size() != tet.w.size()) return fail(lineno, "row width differs from w");
            std::vector<int> row;
            for (const auto& p : parts) {
                auto v = parse_int(p);
                if (!v) return fail(lineno, "bad margin '" + p + "'");
                if (!in_dk(tet.k, static_cast<int>(*v)))
                    return fail(lineno, "margin " + p + " outside D_k");
                row.push_back(static_cast<int>(*v));
            }
            tet.M.push_back(std::move(row));
        } else {
            return fail(lineno, "unknown key '" + key + "'");
        }
    }
    if (state != Expect::rows) return fail(lineno, "missing k=, mode= or w= header");
    if (tet.M.empty()) return fail(lineno, "no rows");
    return tet;
}

std::string serialize_table(const TransitiveElectionTable& tet) {
    std::ostringstream out;
    out << "k=" << tet.k << "\n";
    out << "mode=" << mode_str(tet.mode) << "\n";
    out << "w=[";
    for (int j = 0; j < tet.t(); ++j) out << (j ? "," : "") << rat_str(tet.w[j]);
    out << "]\n";
    if (tet.P) out << "P=" << paren_str(*tet.P) << "\n";
    for (const auto& row : tet.M) {
        out << "M=[";
        for (size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << row[j];
        out << "]\n";
    }
    return out.str();
}

}  // namespace tetkit
