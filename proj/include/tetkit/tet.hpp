// Transitive election tables: text format, structural validation and the
// inference kernel that folds row facts up the parenthesization.
//
// A table is (k, mode, w, M, P): t column weights, m rows of t margins, and
// a binary parenthesization of the rows. Every parenthesized group of rows
// must sum columnwise to margins again; the total M0 may instead be zero,
// which makes the table "tying". Folding works with at most one symbolic
// unknown X: a group whose two parts carry values a, b with {Y} within
// {a,b} within {Y,T} carries Y. A non-tying table concludes f at the M0
// distribution; a tying table equates the two halves of the root through
// reflection and can thereby resolve X.
#pragma once

#include "tetkit/borda.hpp"
#include "tetkit/core.hpp"

namespace tetkit {

// ------------------------------------------------------ parenthesizations

struct ParenTree {
    struct Node {
        int lo = 0, hi = 0;        // inclusive span of leaf indices
        int left = -1, right = -1; // child node ids; leaf iff left < 0
    };
    std::vector<Node> nodes;
    int root = -1;

    int leaves() const { return root < 0 ? 0 : nodes[root].hi; }
    bool operator==(const ParenTree& o) const;
};

struct ParenParseError : std::runtime_error {
    size_t offset;
    ParenParseError(const std::string& msg, size_t off)
        : std::runtime_error(msg + " at byte " + std::to_string(off)), offset(off) {}
};

// Grammar: expr := `x<INT>` | `(` expr expr `)`, whitespace free between
// tokens. Leaves must read 1..m left to right.
ParenTree parse_paren(const std::string& text);
std::string paren_str(const ParenTree& p);
// Canonical left-leaning tree ((..(x1 x2) x3)..) over m leaves.
ParenTree left_tree(int m);

// ----------------------------------------------------------------- tables

struct TransitiveElectionTable {
    int k = 0;
    Mode mode = Mode::finite;
    std::vector<Rat> w;               // column weights
    std::vector<std::vector<int>> M;  // rows of margins, each of width w.size()
    std::optional<ParenTree> P;       // optional for m=2, or m=3 tying

    int t() const { return static_cast<int>(w.size()); }
    int m() const { return static_cast<int>(M.size()); }
    // Columnwise sum of rows lo..hi, 1-based inclusive.
    std::vector<int> group_sum(int lo, int hi) const;
    std::vector<int> m0() const { return group_sum(1, m()); }
};

// Weight landing on each margin when the row is played against w.
MarginDist row_distribution(const TransitiveElectionTable& tet, int i);  // 1-based
// Same for an arbitrary margin vector over the table's columns.
MarginDist vector_distribution(const TransitiveElectionTable& tet, const std::vector<int>& row);

struct Violation {
    std::string where;  // "w", "row 2", "node x3..x5", "M0", ...
    int column = 0;     // 1-based when column-specific, 0 otherwise
    std::string what;
};

struct ValidationReport {
    bool valid = true;
    bool tying = false;
    std::vector<Violation> violations;
};

ValidationReport validate(const TransitiveElectionTable& tet);

// ------------------------------------------------------------- fact bases

// Concrete outcome (sym = 0) or the symbolic unknown: sym = +1 is X,
// sym = -1 is -X.
struct SymOutcome {
    int sym = 0;
    Outcome val = Outcome::T;

    bool operator==(const SymOutcome& o) const {
        return sym == o.sym && (sym != 0 || val == o.val);
    }
};

inline SymOutcome sym_neg(SymOutcome s) {
    if (s.sym != 0) return {-s.sym, Outcome::T};
    return {0, neg(s.val)};
}

std::string sym_str(const SymOutcome& s);

struct IncompleteFactsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Pairwise facts, possibly involving one symbolic unknown shared across
// entries. Lookups honor reflection antisymmetry, and any reflection
// symmetric distribution is tied outright (the axiom certificates cite as
// "axiom-tying").
class FactBase {
  public:
    FactBase(int k, Mode mode) : k_(k), mode_(mode) {}

    int k() const { return k_; }
    Mode mode() const { return mode_; }

    void set_concrete(const MarginDist& a, Outcome o);
    // Marks f(a) = X (sign +1) or -X (sign -1); a must not be symmetric.
    void set_symbolic(const MarginDist& a, int sign);
    std::optional<SymOutcome> lookup(const MarginDist& a) const;
    bool has_symbolic() const { return !symbolic_.empty(); }
    // Resolves X to o, turning every symbolic entry concrete.
    void bind(Outcome o);

  private:
    int k_;
    Mode mode_;
    std::map<MarginDist, Outcome> concrete_;
    std::map<MarginDist, int> symbolic_;
};

// ---------------------------------------------------------------- kernel

struct Inference {
    bool tying = false;
    // Non-tying: the certified fact f(target) = value.
    MarginDist target;
    SymOutcome value;
    // Tying: forced resolution of X, if the root equation supplies one.
    std::optional<Outcome> binding;
};

// Validates, reads one fact per row, folds. Throws std::invalid_argument on
// an invalid table, IncompleteFactsError on a missing row fact, and
// InconsistencyError when a group's parts clash (for example W against L).
Inference infer(const TransitiveElectionTable& tet, const FactBase& facts);

// Records the inference into a copy of the facts, unifying with anything
// already known about the target; unification may resolve X. Returns the
// updated facts and the binding if one occurred.
struct AbsorbResult {
    FactBase facts;
    std::optional<Outcome> binding;
};
AbsorbResult absorb(const FactBase& facts, const Inference& inf);

// ------------------------------------------------------------ file format

// k=4
// mode=finite
// w=[1,1,1]
// P=((x1 x2) x3)     (line optional per the P rule)
// M=[2,-1,-1]        (one line per row)
// '#' starts a comment. Canonical files round-trip byte-exactly.
std::optional<TransitiveElectionTable> parse_table_file(const std::string& text, std::string* err);
std::string serialize_table(const TransitiveElectionTable& tet);

}  // namespace tetkit
