// Certificate catalog: a constructor per table family in the tie and sign
// derivations, parameter samplers, margin-splitting helpers, and replayable
// certificates checked by the table kernel alone.
#pragma once

#include "tetkit/rng.hpp"
#include "tetkit/tet.hpp"

namespace tetkit {

// A constructor hypothesis failed; the message names the violated condition.
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what)
        : std::runtime_error("precondition: " + what) {}
};

// Table families, one id per labelled construction.
enum class LemmaId {
    L2candsym,
    Lfirstcomb,
    Lsecondcomb,
    Lthirdcomb,
    Lfirstgeq,
    Lsecondgeq,
    Ldoubling,
    LconsistentAk,
    Llayersk,
    Ldiagonals,
    Ltwelvestep,
    Lkleqn4a,
    Lkleqn4b,
    Lkleqn3_3an,
    Lkleqn3_beta,
    Lkleqn3_gamma,
    Lalmostb4,
    Laddingthrees,
    Lalpha12,
    Lalpha1,
    Lalpha2,
    Lsmalln,
    Lfirstm1_odd,
    Lfirstm1_even,
    Levenfix,
    Lsecondm1,
    Lthirdm1A,
    Lthirdm1,
    Llastm1,
    Lmmain,
    Ln2special,
    Lak,
};

const std::vector<LemmaId>& all_lemmas();
std::string lemma_str(LemmaId id);
// Throws std::invalid_argument for unknown names.
LemmaId lemma_from_str(const std::string& s);

// Inputs for build_table. Which fields are read depends on the id:
//   alpha, k     vector-shaped families (the margin distribution the table
//                is built around)
//   n, a         diagonal families; Ldiagonals also reads s1, s2, s3 and
//                Ln2special reads a as the item index 1..7
//   b1, b2       LconsistentAk row margins
//   e, k         Lak voter profile
struct LemmaParams {
    int k = 4;
    MarginDist alpha{4};
    long n = 0;
    long a = 0;
    long s1 = 0, s2 = 0, s3 = 0;
    Rat b1 = 0, b2 = 0;
    MarginProfile e{4, {}};
};

// What a table promises about one row: the exact row distribution when the
// lemma states one, otherwise just the row margin.
struct RowClaim {
    std::optional<MarginDist> exact;
    std::optional<Rat> margin;
};

// A constructed table with its per-row claims. For a non-tying table, target
// is the claimed value of the M0 distribution; for a tying one, target is the
// common row vector the binding X = T speaks about.
struct BuiltTable {
    TransitiveElectionTable table;
    std::vector<RowClaim> rows;
    MarginDist target;
    bool tying = false;
};

// Instantiates the family at the given parameters. Throws PreconditionError
// naming the first violated hypothesis.
BuiltTable build_table(LemmaId id, const LemmaParams& params);

// The row-shaping split used by Lalmostb4: non-negative integers with
// 2 g3 + 6 g1 + 6 gm1 + 2 gm3 = a3 + 3 a1 + 3 a-1 + a-3 and gi <= ai,
// lexicographically least in (g3, g1, gm1); the deltas stay 0 here and are
// set by callers that need rows with +-3 support.
struct GammaSelection {
    long g3 = 0, g1 = 0, gm1 = 0, gm3 = 0, d2 = 0, dm2 = 0;
};
GammaSelection gamma_select(const MarginDist& alpha);

// reduce_margins modes: reach margin sum -1 with a row that keeps the sign
// anchor's class counts inside its bounds (m1_*), or halve the margin sum.
enum class ReduceMode { m1_positive, m1_negative, halving };
std::string reduce_mode_str(ReduceMode m);
ReduceMode reduce_mode_from_str(const std::string& s);

// Per-voter split u of e with u_j and e_j - u_j in D_k and sum(u) = target.
MarginProfile reduce_margins(const MarginProfile& e, long target, ReduceMode mode);

// Splits a profile over D_k (k >= 5, margin sum <= 0, some voter at +-(k-1))
// into u + v = e over D_{k-1} with sum(u) = ceil(b/2), sum(v) = floor(b/2).
std::pair<MarginProfile, MarginProfile> split_profile(const MarginProfile& e, int k);

// A parameter draw inside the hypothesis region of the family; notes record
// any repair applied to the raw draw (e.g. parity fixes).
struct SampledParams {
    LemmaParams params;
    std::vector<std::string> notes;
};
SampledParams sample_params(LemmaId id, Rng& rng);

// Checks every claim a built table carries: structural validity, the tying
// flag, per-row exact vectors or margins, and target reconstruction from M0
// (membership among the rows for a tying table). Returns one description per
// violated claim, empty when the table honors all of them.
std::vector<std::string> check_claims(const BuiltTable& bt);

// One checker step: a table, one source per row ("axiom-tying", "step <m>",
// or "X" to introduce the symbolic value on that row's distribution), and the
// claimed conclusion. binds means the step resolves X = T; otherwise the
// step concludes a value for the distribution `conclude`.
struct CertStep {
    TransitiveElectionTable table;
    std::vector<std::string> row_sources;
    bool binds = false;
    MarginDist conclude{4};
};

struct Certificate {
    int k = 4;
    Mode mode = Mode::finite;
    std::vector<CertStep> steps;
};

// Certificate that f'(alpha) = T, for any alpha with margin sum 0. Finite
// mode needs integer entries; weighted mode needs total 1 and k = 4.
Certificate prove_tie(const MarginDist& alpha, Mode mode = Mode::finite);

// Certificate deriving f'(a1) = f'(a2) symbolically (both end at the same
// unbound X) for two distributions with negative margin sums, finite mode.
Certificate prove_sign_constant(const MarginDist& a1, const MarginDist& a2);

// The representative negative-margin distribution the sign certificates
// anchor to: total n, margin sum -1, support inside {1, -1, -2}. k >= 4.
MarginDist sign_anchor(int k, long n);

// Replays a certificate through the table kernel starting from no facts.
// Throws (InconsistencyError, IncompleteFactsError, std::runtime_error) when
// any step fails; returns the resulting fact base.
FactBase replay_certificate(const Certificate& cert);

// Serialization: one table file per step plus a manifest listing, per step,
// the table file, the row sources and the conclusion.
std::string manifest_str(const Certificate& cert);
void write_certificate(const Certificate& cert, const std::string& dir);
Certificate read_certificate(const std::string& dir);

}  // namespace tetkit
