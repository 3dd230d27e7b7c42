// Python bindings over the main operations: table validation, Borda
// ranking, rule enumeration, certificate emission and replay, margin
// coupling and the catalog spot checker. Vectors cross the boundary as
// ascending csv strings and exact rationals as strings, so no precision
// is lost to floats.

#include "tetkit/catalog.hpp"
#include "tetkit/consistency.hpp"
#include "tetkit/rng.hpp"
#include "tetkit/search.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace tetkit;

namespace {

MarginDist parse_or_throw(int k, const std::string& csv, const char* what) {
    auto a = parse_dist(k, csv);
    if (!a)
        throw std::invalid_argument(std::string(what) + " must be " + std::to_string(dk_size(k)) +
                                    " comma separated rationals in ascending margin order");
    return *a;
}

Mode mode_or_throw(const std::string& name) {
    auto m = mode_from_str(name);
    if (!m) throw std::invalid_argument("mode must be finite or weighted");
    return *m;
}

WeightedElection election_or_throw(const std::string& text) {
    std::string err;
    auto e = parse_election(text, &err);
    if (!e) throw std::invalid_argument("parse: " + err);
    return *e;
}

py::dict validate_table_py(const std::string& text) {
    std::string err;
    auto tet = parse_table_file(text, &err);
    if (!tet) throw std::invalid_argument("parse: " + err);
    ValidationReport rep = validate(*tet);
    py::dict out;
    out["valid"] = rep.valid;
    out["tying"] = rep.tying;
    out["k"] = tet->k;
    out["mode"] = mode_str(tet->mode);
    out["columns"] = tet->t();
    out["rows"] = tet->m();
    out["m0"] = tet->m0();
    py::list violations;
    for (const Violation& v : rep.violations) {
        std::string where = v.where;
        if (v.column > 0) where += " column " + std::to_string(v.column);
        violations.append(where + ": " + v.what);
    }
    out["violations"] = violations;
    return out;
}

std::vector<std::vector<int>> rank_py(const std::string& text, int w) {
    WeightedElection e = election_or_throw(text);
    return borda_rule(e, w).tiers;
}

std::vector<std::string> borda_scores_py(const std::string& text, int w) {
    WeightedElection e = election_or_throw(text);
    std::vector<std::string> out;
    for (int c = 1; c <= e.k; ++c) out.push_back(rat_str(borda_score(e, c, w)));
    return out;
}

std::string pattern_py(const std::optional<int>& p) {
    if (!p) return "none";
    return *p > 0 ? "+1" : (*p == 0 ? "0" : "-1");
}

py::dict search_py(int k, long n) {
    SearchProblem prob = build_search_problem(k, n);
    std::vector<RelativeSwfTable> sols = enumerate_solutions(prob);
    py::dict out;
    out["k"] = k;
    out["n"] = n;
    out["variables"] = prob.variables.size();
    out["triples"] = prob.triples.size();
    out["solutions"] = sols.size();
    py::list patterns, tables;
    for (const RelativeSwfTable& f : sols) {
        patterns.append(pattern_py(classify_borda_pattern(f)));
        py::dict t;
        for (const auto& [a, o] : f.assignments)
            t[py::str(dist_str(a))] = std::string(1, outcome_char(o));
        tables.append(t);
    }
    out["patterns"] = patterns;
    out["tables"] = tables;
    return out;
}

py::dict replay_summary(const Certificate& cert, const std::function<bool(const FactBase&)>& goal) {
    py::dict out;
    out["k"] = cert.k;
    out["mode"] = mode_str(cert.mode);
    out["steps"] = cert.steps.size();
    try {
        FactBase facts = replay_certificate(cert);
        out["accepted"] = goal(facts);
        out["error"] = "";
    } catch (const std::exception& e) {
        out["accepted"] = false;
        out["error"] = std::string(e.what());
    }
    return out;
}

py::dict prove_py(int k, long n, const std::string& alpha_csv, const std::string& out_dir,
                  const std::string& mode_name) {
    Mode mode = mode_or_throw(mode_name);
    MarginDist alpha = parse_or_throw(k, alpha_csv, "alpha");
    Rat margin = margin_sum(alpha);
    MarginDist subject = margin > 0 ? reflect(alpha) : alpha;
    bool tie = margin == 0;
    MarginDist anchor(k);
    Certificate cert;
    if (tie) {
        cert = prove_tie(subject, mode);
    } else {
        if (mode == Mode::weighted) throw std::invalid_argument("sign certificates need finite mode");
        if (alpha.total() != Rat(n)) throw std::invalid_argument("alpha must total the stated n");
        anchor = sign_anchor(k, n);
        cert = prove_sign_constant(subject, anchor);
    }
    if (!out_dir.empty()) {
        write_certificate(cert, out_dir);
        cert = read_certificate(out_dir);
    }
    auto goal = [&](const FactBase& facts) {
        if (tie) {
            auto v = facts.lookup(subject);
            return v && v->sym == 0 && v->val == Outcome::T && !facts.has_symbolic();
        }
        auto v1 = facts.lookup(subject);
        auto v2 = facts.lookup(anchor);
        return v1 && v2 && v1->sym == 1 && v2->sym == 1;
    };
    py::dict out = replay_summary(cert, goal);
    out["kind"] = tie ? "tie" : "sign";
    out["reflected"] = margin > 0;
    out["certified"] = dist_str(subject);
    if (!tie) out["anchor"] = dist_str(anchor);
    if (!out_dir.empty()) out["out"] = out_dir;
    return out;
}

py::dict verify_certificate_py(const std::string& dir) {
    Certificate cert = read_certificate(dir);
    // Replay decides acceptance on its own; any established fact is fine.
    return replay_summary(cert, [](const FactBase&) { return true; });
}

py::object couple_py(int k, const std::string& a1_csv, const std::string& a2_csv,
                     const std::string& mode_name) {
    Mode mode = mode_or_throw(mode_name);
    MarginDist a1 = parse_or_throw(k, a1_csv, "a1");
    MarginDist a2 = parse_or_throw(k, a2_csv, "a2");
    auto c = couple(a1, a2, mode);
    if (!c) return py::none();
    c->check();
    py::dict out;
    py::list cells;
    for (const auto& [cell, weight] : c->cells)
        cells.append(py::make_tuple(cell.first, cell.second, rat_str(weight)));
    out["cells"] = cells;
    out["third"] = dist_str(third_margin(*c));
    out["election"] = serialize_election(coupling_to_election(*c));
    return out;
}

std::vector<std::string> lemmas_py() {
    std::vector<std::string> out;
    for (LemmaId id : all_lemmas()) out.push_back(lemma_str(id));
    return out;
}

py::dict check_catalog_py(const std::string& lemma, long samples, std::uint64_t seed) {
    LemmaId id = lemma_from_str(lemma);
    Rng rng(seed);
    py::list violations;
    std::map<std::string, long> notes;
    for (long i = 0; i < samples; ++i) {
        SampledParams sp = sample_params(id, rng);
        for (const std::string& note : sp.notes) ++notes[note];
        for (const std::string& what : check_claims(build_table(id, sp.params)))
            violations.append("sample " + std::to_string(i) + ": " + what);
    }
    py::dict out;
    out["lemma"] = lemma;
    out["samples"] = samples;
    out["violations"] = violations;
    out["notes"] = notes;
    return out;
}

std::string margin_sum_py(int k, const std::string& csv) {
    return rat_str(margin_sum(parse_or_throw(k, csv, "alpha")));
}

std::string reflect_py(int k, const std::string& csv) {
    return dist_str(reflect(parse_or_throw(k, csv, "alpha")));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Transitive election table toolkit: pairwise rules over margin "
              "distributions, table certificates and their checker.";

    m.def("validate_table", &validate_table_py, py::arg("text"),
          "Parse a table file and check its structure; raises ValueError on parse errors.");
    m.def("rank", &rank_py, py::arg("text"), py::arg("w") = 1,
          "Borda ranking of an election file as tiers of candidates, best first.");
    m.def("borda_scores", &borda_scores_py, py::arg("text"), py::arg("w") = 1,
          "Borda score of every candidate as exact rational strings.");
    m.def("search", &search_py, py::arg("k"), py::arg("n"),
          "Enumerate the consistent pairwise rules at k candidates and n voters.");
    m.def("prove", &prove_py, py::arg("k"), py::arg("n"), py::arg("alpha"), py::arg("out_dir") = "",
          py::arg("mode") = "finite",
          "Emit a tie or sign certificate for alpha and replay it through the checker.");
    m.def("verify_certificate", &verify_certificate_py, py::arg("directory"),
          "Read a certificate directory and replay it from an empty fact base.");
    m.def("couple", &couple_py, py::arg("k"), py::arg("a1"), py::arg("a2"),
          py::arg("mode") = "finite",
          "Join two margin distributions in one election, or None when infeasible.");
    m.def("lemmas", &lemmas_py, "Names of all table families in the catalog.");
    m.def("check_catalog", &check_catalog_py, py::arg("lemma"), py::arg("samples") = 100,
          py::arg("seed") = 1,
          "Sample a family inside its hypothesis region and check every claim.");
    m.def("margin_sum", &margin_sum_py, py::arg("k"), py::arg("alpha"),
          "Weighted margin sum of an ascending csv distribution, as a rational string.");
    m.def("reflect", &reflect_py, py::arg("k"), py::arg("alpha"),
          "Reflection of an ascending csv distribution.");
}
