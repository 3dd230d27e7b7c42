// Elections, rankings, margin distributions and the axiom checker.
//
// Conventions used everywhere:
//   - candidates are 1-based (c1..ck) in the public API;
//   - a ranking assigns distinct positions 0..k-1, position k-1 is best;
//   - the margin set D_k = {1-k,..,-1, 1,..,k-1} is stored ascending, and
//     every serialized vector over D_k uses that order.
#pragma once

#include "tetkit/rational.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tetkit {

// Thrown when an operation is asked for more than its guards allow.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- outcomes

enum class Outcome : int { L = -1, T = 0, W = 1 };

inline Outcome neg(Outcome o) { return static_cast<Outcome>(-static_cast<int>(o)); }
inline char outcome_char(Outcome o) { return o == Outcome::W ? 'W' : (o == Outcome::T ? 'T' : 'L'); }
std::optional<Outcome> outcome_from_char(char c);

// ------------------------------------------------------------------- D_k

// Ascending list 1-k,..,-1,1,..,k-1.
std::vector<int> dk_values(int k);
inline bool in_dk(int k, int d) { return d != 0 && d > -k && d < k; }
inline int dk_size(int k) { return 2 * (k - 1); }
// Index of margin d in the ascending order; d must be in D_k.
inline int dk_index(int k, int d) { return d < 0 ? d + k - 1 : d + k - 2; }
inline int dk_at(int k, int idx) { return idx < k - 1 ? idx - k + 1 : idx - k + 2; }

// --------------------------------------------------------------- rankings

struct Ranking {
    int k = 0;
    std::vector<int> pos;  // pos[c-1] = position of candidate c, 0..k-1, k-1 best

    static Ranking from_best_first(int k, const std::vector<int>& cands);
    std::vector<int> best_first() const;
    bool operator<(const Ranking& o) const { return pos < o.pos; }
    bool operator==(const Ranking& o) const { return k == o.k && pos == o.pos; }
};

// All k! rankings, lexicographic by best-first listing.
std::vector<Ranking> all_rankings(int k);

// Position difference pos(c_i) - pos(c_j); this is the margin of i over j.
int project_margin(const Ranking& r, int i, int j);

// Relabel candidates: candidate c in the input plays the role of perm[c-1].
Ranking permute_ranking(const Ranking& r, const std::vector<int>& perm);

// ---------------------------------------------------------------- elections

enum class Mode { finite, weighted };

inline const char* mode_str(Mode m) { return m == Mode::finite ? "finite" : "weighted"; }
std::optional<Mode> mode_from_str(const std::string& s);

struct WeightedElection {
    int k = 0;
    Mode mode = Mode::finite;
    Rat total = 0;                  // n in finite mode, 1 in weighted mode
    std::map<Ranking, Rat> ballots; // weights > 0 only

    void add(const Ranking& r, const Rat& w);
    // Throws std::runtime_error on a broken invariant.
    void check() const;
    bool operator==(const WeightedElection& o) const;
    bool operator<(const WeightedElection& o) const;
};

// Text format: header lines k=, mode=, total=, then one quoted best-first
// permutation per ballot:  "1 2 3 4" = 2.  '#' starts a comment.
std::optional<WeightedElection> parse_election(const std::string& text, std::string* err);
std::string serialize_election(const WeightedElection& e);

// ------------------------------------------------------- margin structures

struct MarginDist {
    int k = 0;
    std::vector<Rat> v;  // size 2(k-1), ascending D_k order

    MarginDist() = default;
    explicit MarginDist(int k_) : k(k_), v(dk_size(k_), Rat(0)) {}
    static MarginDist from_map(int k, const std::map<int, Rat>& m);

    Rat& at(int d) { return v[dk_index(k, d)]; }
    const Rat& at(int d) const { return v[dk_index(k, d)]; }
    Rat total() const;
    bool operator==(const MarginDist& o) const { return k == o.k && v == o.v; }
    bool operator!=(const MarginDist& o) const { return !(*this == o); }
    bool operator<(const MarginDist& o) const { return v < o.v; }
};

// CSV of the ascending vector, e.g. "0,0,2,0,1,0".
std::string dist_str(const MarginDist& a);
std::optional<MarginDist> parse_dist(int k, const std::string& csv);

struct MarginProfile {
    int k = 0;
    std::vector<int> margins;  // each in D_k
};

MarginDist profile_dist(const MarginProfile& p);
// Expands a distribution with natural-number weights, margins ascending.
MarginProfile expand_profile(const MarginDist& a);

MarginDist project_election(const WeightedElection& e, int i, int j);
MarginProfile project_profile(const WeightedElection& e, int i, int j);

MarginDist reflect(const MarginDist& a);
inline bool is_symmetric(const MarginDist& a) { return reflect(a) == a; }

// Sum over d of d * a_d; the margin sum the unit-weight Borda rule sees.
Rat margin_sum(const MarginDist& a);

// Cumulative-from-the-top dominance with equal totals.
bool majorizes(const MarginDist& a, const MarginDist& b);

// ------------------------------------------------------------ weak orders

struct WeakOrdering {
    std::vector<std::vector<int>> tiers;  // best tier first, candidates 1-based

    Outcome compare(int i, int j) const;  // W if i strictly above j
    bool operator==(const WeakOrdering& o) const { return tiers == o.tiers; }
};

std::string ordering_str(const WeakOrdering& w);
WeakOrdering permute_ordering(const WeakOrdering& w, const std::vector<int>& perm);

// ------------------------------------------------------------ axiom check

// Verdict of probing an explicitly given social welfare function on the full
// finite domain (all elections with k candidates and n unit voters).
struct AxiomReport {
    bool miia = false;
    bool neutral = false;
    bool induced_ok = false;            // margin table well defined and pair independent
    std::map<std::vector<Rat>, Outcome> induced;  // f' keyed by canonical margin vector
    std::vector<std::string> violations;
};

using Swf = std::function<WeakOrdering(const WeightedElection&)>;

// Full-enumeration check; guards k <= 4 and n <= 3 (throws std::length_error
// beyond that).
AxiomReport check_axioms(const Swf& F, int k, int n);

// All finite elections with k candidates and total n (compositions of n over
// the k! rankings).
std::vector<WeightedElection> all_elections(int k, int n);

}  // namespace tetkit
