// tetkit command line: validates table files, spot checks the catalog of
// table constructors, enumerates the pairwise rules at a given size, emits
// and replays certificates, ranks an election file and couples two margin
// distributions.
//
// Every subcommand prints a report of key=value lines on stdout; free text
// values are double quoted. Identical invocations with identical seeds
// print byte identical reports, so the elapsed time goes to stderr.
// Exit codes: 0 verified, 1 a negative verdict or found violations,
// 2 usage, input or precondition errors, 3 capacity limits.

#include "tetkit/catalog.hpp"
#include "tetkit/consistency.hpp"
#include "tetkit/rng.hpp"
#include "tetkit/search.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace tetkit;

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string ivec_str(const std::vector<int>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out + "]";
}

// Body lines are buffered so the status, decided last, can print second.
struct Report {
    std::string command;
    std::vector<std::string> body;
    int code = 0;

    void line(std::string s) { body.push_back(std::move(s)); }
    void kv(const std::string& key, const std::string& value) { line(key + "=" + value); }
    void kv(const std::string& key, long long value) { kv(key, std::to_string(value)); }
    void fail(int exit_code, const std::string& what) {
        kv("error", quoted(what));
        code = exit_code;
    }
};

int emit(const Report& r) {
    std::cout << "command=" << r.command << "\n";
    const char* status = r.code == 0 ? "ok" : (r.code == 1 ? "violations" : "error");
    std::cout << "status=" << status << "\n";
    for (const std::string& l : r.body) std::cout << l << "\n";
    return r.code;
}

int run(const std::string& command, const std::function<void(Report&)>& fn) {
    Report r;
    r.command = command;
    try {
        fn(r);
    } catch (const CapacityError& e) {
        r.fail(3, e.what());
    } catch (const std::exception& e) {
        r.fail(2, e.what());
    }
    return emit(r);
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ------------------------------------------------------------ verify-table

void cmd_verify_table(Report& r, const std::string& path) {
    r.kv("file", path);
    auto text = read_file(path);
    if (!text) {
        r.fail(2, "cannot read " + path);
        return;
    }
    std::string err;
    auto tet = parse_table_file(*text, &err);
    if (!tet) {
        r.fail(2, "parse: " + err);
        return;
    }
    ValidationReport rep = validate(*tet);
    r.kv("k", tet->k);
    r.kv("mode", mode_str(tet->mode));
    r.kv("columns", tet->t());
    r.kv("rows", tet->m());
    r.kv("tying", rep.tying ? "true" : "false");
    r.kv("m0", ivec_str(tet->m0()));
    for (const Violation& v : rep.violations) {
        std::string item = "violation where=" + quoted(v.where);
        if (v.column > 0) item += " column=" + std::to_string(v.column);
        item += " what=" + quoted(v.what);
        r.line(item);
    }
    r.kv("violations", static_cast<long long>(rep.violations.size()));
    if (!rep.valid) r.code = 1;
}

// ---------------------------------------------------------- verify-catalog

// Each family draws from its own stream derived from the seed and its
// position, so checking one family replays the draws of the full run.
std::uint64_t lemma_stream(std::uint64_t seed, std::size_t index) {
    return seed + 0x9e3779b97f4a7c15ULL * (index + 1);
}

void cmd_verify_catalog(Report& r, const std::string& lemma, long samples, std::uint64_t seed) {
    if (samples < 1) {
        r.fail(2, "samples must be positive");
        return;
    }
    std::vector<LemmaId> ids;
    if (lemma.empty())
        ids = all_lemmas();
    else
        ids.push_back(lemma_from_str(lemma));
    r.kv("samples", samples);
    r.kv("seed", std::to_string(seed));
    long long total = 0;
    for (LemmaId id : ids) {
        std::size_t index = 0;
        while (all_lemmas()[index] != id) ++index;
        Rng rng(lemma_stream(seed, index));
        std::string name = lemma_str(id);
        long long bad = 0;
        std::map<std::string, long> notes;
        std::vector<std::string> detail;
        for (long i = 0; i < samples; ++i) {
            SampledParams sp = sample_params(id, rng);
            for (const std::string& note : sp.notes) ++notes[note];
            BuiltTable bt = build_table(id, sp.params);
            for (const std::string& what : check_claims(bt)) {
                ++bad;
                if (detail.size() < 5)
                    detail.push_back("violation lemma=" + name + " sample=" + std::to_string(i) +
                                     " what=" + quoted(what));
            }
        }
        r.line("lemma=" + name + " samples=" + std::to_string(samples) +
               " violations=" + std::to_string(bad));
        for (const auto& [text, count] : notes)
            r.line("note lemma=" + name + " applied=" + std::to_string(count) +
                   " text=" + quoted(text));
        for (const std::string& d : detail) r.line(d);
        total += bad;
    }
    r.kv("lemmas", static_cast<long long>(ids.size()));
    r.kv("violations", total);
    if (total > 0) r.code = 1;
}

// ------------------------------------------------------------------ search

std::string pattern_str(const std::optional<int>& p) {
    if (!p) return "none";
    return *p > 0 ? "+1" : (*p == 0 ? "0" : "-1");
}

void emit_solutions(const std::string& path, int k, long n,
                    const std::vector<RelativeSwfTable>& sols) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    std::vector<MarginDist> dists = all_margin_dists(k, n);
    for (std::size_t s = 0; s < sols.size(); ++s) {
        if (s) out << "\n";
        out << "# solution " << (s + 1) << " pattern=" << pattern_str(classify_borda_pattern(sols[s]))
            << "\n";
        for (const MarginDist& a : dists) {
            if (reflect(a) < a) continue;
            out << dist_str(a) << " -> " << outcome_char(*sols[s].get(a)) << "\n";
        }
    }
}

void cmd_search(Report& r, int k, long n, const std::string& emit_path) {
    r.kv("k", k);
    r.kv("n", n);
    if (k < 2 || n < 1) {
        r.fail(2, "need k >= 2 and n >= 1");
        return;
    }
    std::vector<MarginDist> dists = enumerate_margin_distributions(k, n);
    SearchProblem prob = build_search_problem(k, n);
    std::vector<RelativeSwfTable> sols = enumerate_solutions(prob);
    ClassifyReport cls = classify_solutions(sols);
    r.kv("distributions", static_cast<long long>(dists.size()));
    r.kv("variables", static_cast<long long>(prob.variables.size()));
    r.kv("triples", static_cast<long long>(prob.triples.size()));
    r.kv("solutions", static_cast<long long>(sols.size()));
    for (std::size_t i = 0; i < sols.size(); ++i)
        r.line("solution index=" + std::to_string(i + 1) +
               " pattern=" + pattern_str(classify_borda_pattern(sols[i])));
    r.kv("plus", cls.plus);
    r.kv("zero", cls.zero);
    r.kv("minus", cls.minus);
    r.kv("non_borda", static_cast<long long>(cls.non_borda.size()));
    if (!emit_path.empty()) {
        emit_solutions(emit_path, k, n, sols);
        r.kv("emitted", emit_path);
    }
    if (!(k >= 4 && sols.size() == 3 && cls.non_borda.empty())) r.code = 1;
}

// ------------------------------------------------------------------- prove

// The provers recurse on the total and, above four candidates, on k; these
// bounds keep certificate sizes and build times at desk scale.
bool prove_capacity(int k, long n) {
    if (k == 4) return n <= 64;
    if (k == 5) return n <= 24;
    if (k == 6) return n <= 10;
    return false;
}

void cmd_prove(Report& r, int k, long n, const std::string& alpha_csv, const std::string& out_dir,
               const std::string& mode_name) {
    auto mode = mode_from_str(mode_name);
    if (!mode) {
        r.fail(2, "mode must be finite or weighted");
        return;
    }
    auto alpha = parse_dist(k, alpha_csv);
    if (!alpha) {
        r.fail(2, "alpha must be " + std::to_string(dk_size(k)) +
                      " comma separated rationals in ascending margin order");
        return;
    }
    r.kv("k", k);
    r.kv("mode", mode_str(*mode));
    r.kv("alpha", dist_str(*alpha));
    if (k < 4) {
        r.fail(2, "proving needs at least four candidates");
        return;
    }
    if (*mode == Mode::finite) {
        if (n < 1 || alpha->total() != Rat(n)) {
            r.fail(2, "alpha must total the stated n");
            return;
        }
        if (!prove_capacity(k, n))
            throw CapacityError("prove supports k=4 with n <= 64, k=5 with n <= 24, k=6 with n <= 10");
        r.kv("n", n);
    } else if (alpha->total() != Rat(1)) {
        r.fail(2, "a weighted alpha must total 1");
        return;
    }
    Rat margin = margin_sum(*alpha);
    r.kv("margin", rat_str(margin));

    MarginDist subject = *alpha;
    if (margin > 0) {
        subject = reflect(*alpha);
        r.kv("reflected", "true");
        r.kv("certified", dist_str(subject));
        r.line("note=" + quoted("the margin is positive, the certificate covers the reflection;"
                                " negate its conclusion to recover alpha"));
    }
    bool tie = margin_sum(subject) == 0;
    MarginDist anchor(k);
    Certificate cert;
    if (tie) {
        r.kv("kind", "tie");
        cert = prove_tie(subject, *mode);
    } else {
        if (*mode == Mode::weighted) {
            r.fail(2, "sign certificates need finite mode");
            return;
        }
        anchor = sign_anchor(k, n);
        r.kv("kind", "sign");
        r.kv("anchor", dist_str(anchor));
        cert = prove_sign_constant(subject, anchor);
    }
    r.kv("steps", static_cast<long long>(cert.steps.size()));
    write_certificate(cert, out_dir);
    r.kv("out", out_dir);
    try {
        Certificate back = read_certificate(out_dir);
        FactBase facts = replay_certificate(back);
        bool accepted;
        if (tie) {
            auto v = facts.lookup(subject);
            accepted = v && v->sym == 0 && v->val == Outcome::T && !facts.has_symbolic();
        } else {
            auto v1 = facts.lookup(subject);
            auto v2 = facts.lookup(anchor);
            accepted = v1 && v2 && v1->sym == 1 && v2->sym == 1;
        }
        if (!accepted) {
            r.kv("replay", "rejected");
            r.fail(1, "replay did not establish the claimed conclusion");
            return;
        }
    } catch (const std::exception& e) {
        r.kv("replay", "rejected");
        r.fail(1, e.what());
        return;
    }
    r.kv("replay", "accepted");
    r.kv("conclusion", tie ? "T" : "X");
}

// -------------------------------------------------------------------- rank

void cmd_rank(Report& r, const std::string& path, int w) {
    r.kv("file", path);
    if (w < -1 || w > 1) {
        r.fail(2, "w must be -1, 0 or +1");
        return;
    }
    auto text = read_file(path);
    if (!text) {
        r.fail(2, "cannot read " + path);
        return;
    }
    std::string err;
    auto e = parse_election(*text, &err);
    if (!e) {
        r.fail(2, "parse: " + err);
        return;
    }
    r.kv("k", e->k);
    r.kv("mode", mode_str(e->mode));
    r.kv("total", rat_str(e->total));
    r.kv("w", w);
    for (int c = 1; c <= e->k; ++c)
        r.line("score candidate=" + std::to_string(c) + " value=" + rat_str(borda_score(*e, c, w)));
    r.kv("ordering", quoted(ordering_str(borda_rule(*e, w))));
}

// ------------------------------------------------------------------ couple

void cmd_couple(Report& r, int k, const std::string& a1_csv, const std::string& a2_csv,
                const std::string& mode_name) {
    auto mode = mode_from_str(mode_name);
    if (!mode) {
        r.fail(2, "mode must be finite or weighted");
        return;
    }
    auto a1 = parse_dist(k, a1_csv);
    auto a2 = parse_dist(k, a2_csv);
    if (!a1 || !a2) {
        r.fail(2, "each vector must be " + std::to_string(dk_size(k)) +
                      " comma separated rationals in ascending margin order");
        return;
    }
    r.kv("k", k);
    r.kv("mode", mode_str(*mode));
    r.kv("a1", dist_str(*a1));
    r.kv("a2", dist_str(*a2));
    r.kv("total", rat_str(a1->total()));
    auto c = couple(*a1, *a2, *mode);
    if (!c) {
        r.kv("feasible", "false");
        r.code = 1;
        return;
    }
    c->check();
    if (c->row_marginal() != *a1 || c->col_marginal() != *a2) {
        r.fail(1, "coupling does not reproduce the marginals");
        return;
    }
    r.kv("feasible", "true");
    r.kv("cells", static_cast<long long>(c->cells.size()));
    for (const auto& [cell, weight] : c->cells)
        r.line("cell d1=" + std::to_string(cell.first) + " d2=" + std::to_string(cell.second) +
               " weight=" + rat_str(weight));
    r.kv("third", dist_str(third_margin(*c)));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"transitive election table toolkit"};
    app.require_subcommand(1);

    auto* vt = app.add_subcommand("verify-table", "parse a table file and check its structure");
    std::string vt_path;
    vt->add_option("file", vt_path, "table file")->required();

    auto* vc = app.add_subcommand("verify-catalog",
                                  "draw parameters inside each family's hypothesis region and "
                                  "check every built table against its claims");
    std::string vc_lemma;
    long vc_samples = 100;
    std::uint64_t vc_seed = 1;
    vc->add_option("--lemma", vc_lemma, "check one family only");
    vc->add_option("--samples", vc_samples, "draws per family (default 100)");
    vc->add_option("--seed", vc_seed, "random seed (default 1)");

    auto* se = app.add_subcommand("search", "enumerate the consistent pairwise rules");
    int se_k = 4;
    long se_n = 0;
    std::string se_emit;
    se->add_option("--k", se_k, "number of candidates")->required();
    se->add_option("--n", se_n, "number of voters")->required();
    se->add_option("--emit-solutions", se_emit, "write each rule as '<alpha> -> W|T|L' lines");

    auto* pr = app.add_subcommand("prove", "emit a certificate for alpha and replay it");
    int pr_k = 4;
    long pr_n = 0;
    std::string pr_alpha, pr_out, pr_mode = "finite";
    pr->add_option("--k", pr_k, "number of candidates")->required();
    pr->add_option("--n", pr_n, "total of alpha in finite mode");
    pr->add_option("--alpha", pr_alpha, "margin distribution, ascending csv")->required();
    pr->add_option("--out", pr_out, "directory for the manifest and step tables")->required();
    pr->add_option("--mode", pr_mode, "finite or weighted (default finite)");

    auto* rk = app.add_subcommand("rank", "rank an election file by Borda score");
    std::string rk_path;
    int rk_w = 1;
    rk->add_option("file", rk_path, "election file")->required();
    rk->add_option("--w", rk_w, "shared voter weight: -1, 0 or +1 (default +1)");

    auto* cp = app.add_subcommand("couple", "join two margin distributions in one election");
    int cp_k = 4;
    std::string cp_a1, cp_a2, cp_mode = "finite";
    cp->add_option("--k", cp_k, "number of candidates")->required();
    cp->add_option("--a1", cp_a1, "margins of the pair (1,2), ascending csv")->required();
    cp->add_option("--a2", cp_a2, "margins of the pair (2,3), ascending csv")->required();
    cp->add_option("--mode", cp_mode, "finite or weighted (default finite)");

    auto start = std::chrono::steady_clock::now();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    int code = 0;
    if (vt->parsed())
        code = run("verify-table", [&](Report& r) { cmd_verify_table(r, vt_path); });
    else if (vc->parsed())
        code = run("verify-catalog",
                   [&](Report& r) { cmd_verify_catalog(r, vc_lemma, vc_samples, vc_seed); });
    else if (se->parsed())
        code = run("search", [&](Report& r) { cmd_search(r, se_k, se_n, se_emit); });
    else if (pr->parsed())
        code = run("prove", [&](Report& r) { cmd_prove(r, pr_k, pr_n, pr_alpha, pr_out, pr_mode); });
    else if (rk->parsed())
        code = run("rank", [&](Report& r) { cmd_rank(r, rk_path, rk_w); });
    else if (cp->parsed())
        code = run("couple", [&](Report& r) { cmd_couple(r, cp_k, cp_a1, cp_a2, cp_mode); });

    auto elapsed = std::chrono::steady_clock::now() - start;
    std::cerr << "time_ms="
              << std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() << "\n";
    return code;
}
