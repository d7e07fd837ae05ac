// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/oracles.hpp"
#include "wheelep/algorithms.hpp"
#include "wheelep/decomposition.hpp"
#include "wheelep/graph_io.hpp"
#include "wheelep/instances.hpp"
#include "wheelep/menger.hpp"
#include "wheelep/minor.hpp"
#include "wheelep/packing.hpp"
#include "wheelep/report.hpp"
#include "wheelep/rng.hpp"
#include "wheelep/treewidth.hpp"

using namespace wheelep;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    std::string name;
    double limit_s;
    std::function<Outcome()> run;
};

struct CorpusEntry {
    Graph g;
    EpReport ep;
};

std::vector<Graph> load(const char* file) {
    std::ifstream in(std::string(WHEELEP_TEST_DATA) + "/" + file);
    if (!in) throw std::runtime_error(std::string("missing corpus file ") + file);
    return read_graphs(in, GraphFormat::graph6);
}

std::vector<CorpusEntry>& corpus() {
    static std::vector<CorpusEntry> entries = [] {
        std::vector<CorpusEntry> out;
        const BoundingFunction f(1.0);
        for (const char* file : {"connected8.g6", "upto7.g6"})
            for (Graph& g : load(file)) {
                EpReport r = ep_check(g, 3, f);
                out.push_back({std::move(g), std::move(r)});
            }
        return out;
    }();
    return entries;
}

std::string num(double x) { return format_real(x); }

Graph random_graph(Xorshift64Star& rng, int n, double p) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform() < p) g.add_edge(u, v);
    return g;
}

VertexSet random_subset(Xorshift64Star& rng, int n) {
    VertexSet s;
    while (s.empty())
        for (int v = 0; v < n; ++v)
            if (rng.below(4) == 0) s.insert(v);
    return s;
}

Outcome duality() {
    auto& c = corpus();
    int bad_duality = 0, bad_packing = 0, bad_transversal = 0, connected8 = 0;
    for (const auto& e : c) {
        if (e.ep.nu > e.ep.tau) ++bad_duality;
        if (!certify_packing(e.g, complete_graph(4), e.ep.packing)) ++bad_packing;
        if (!certify_transversal(e.g, complete_graph(4), e.ep.transversal)) ++bad_transversal;
        // independent W3-freeness of G - X
        if (oracle::has_k4_minor(e.g, (e.g.vertices() - e.ep.transversal.hitting_set).bits())) ++bad_transversal;
        connected8 += e.g.order() == 8;
    }
    const bool ok = bad_duality == 0 && bad_packing == 0 && bad_transversal == 0 && connected8 == 11117;
    return {ok, std::to_string(c.size()) + " graphs (" + std::to_string(connected8) +
                    " on 8 vertices), duality failures " + std::to_string(bad_duality) + ", packing failures " +
                    std::to_string(bad_packing) + ", transversal failures " + std::to_string(bad_transversal)};
}

Outcome oracle_equivalence() {
    int disagree = 0, with = 0;
    const Graph w3 = WheelPattern(3).graph();
    for (const auto& e : corpus()) {
        const bool a = find_wheel_model(e.g, 3).has_value();
        const bool b = find_minor_model(e.g, w3).has_value();
        const bool c = oracle::has_k4_minor(e.g);
        if (a != b || a != c) ++disagree;
        with += a;
    }
    return {disagree == 0, std::to_string(disagree) + " disagreements, " + std::to_string(with) + " graphs with W3"};
}

Outcome unions() {
    std::string detail;
    bool ok = true;
    for (int t = 3; t <= 5; ++t)
        for (int k = 1; k <= 3; ++k) {
            Graph g = generate(parse_family_spec("union:h=wheel:t=" + std::to_string(t) + ",k=" + std::to_string(k)));
            const Graph h = WheelPattern(t).graph();
            auto p = nu_exact(g, h);
            auto x = tau_exact(g, h);
            const bool cell = p.value == k && x.value == k && certify_packing(g, h, p) && certify_transversal(g, h, x);
            ok = ok && cell;
            if (!cell) detail += " t=" + std::to_string(t) + ",k=" + std::to_string(k);
        }
    return {ok, ok ? "nu = tau = k for all 9 cells" : "mismatch at" + detail};
}

Outcome menger_duality() {
    Xorshift64Star rng(2024);
    int bad = 0, brute = 0;
    for (int i = 0; i < 200; ++i) {
        const int n = 2 + static_cast<int>(rng.below(19));
        const double p = 0.1 + 0.4 * rng.uniform();
        Graph g = random_graph(rng, n, p);
        VertexSet a = random_subset(rng, n), b = random_subset(rng, n);
        auto r = menger(g, a, b);
        bool ok = r.paths.size() == static_cast<std::size_t>(r.separator.size());
        ok = ok && !reachable(g, a - r.separator, g.vertices() - r.separator).intersects(b);
        VertexSet used;
        for (const auto& path : r.paths) {
            ok = ok && !path.empty() && a.contains(path.front()) && b.contains(path.back());
            for (std::size_t j = 0; j + 1 < path.size(); ++j) ok = ok && g.has_edge(path[j], path[j + 1]);
            for (Vertex v : path) {
                ok = ok && !used.contains(v);
                used.insert(v);
            }
        }
        if (n <= 14) {
            ok = ok && oracle::min_separator_bruteforce(g, a.bits(), b.bits()) == r.separator.size();
            ++brute;
        }
        bad += !ok;
    }
    return {bad == 0, "200 instances, " + std::to_string(bad) + " exceptions (" + std::to_string(brute) +
                          " also matched a brute-force minimum cut)"};
}

Outcome treewidth_anchors() {
    bool ok = true;
    std::string detail;
    for (int n = 1; n <= 8; ++n)
        if (treewidth_exact(complete_graph(n)) != n - 1) {
            ok = false;
            detail += " K" + std::to_string(n);
        }
    for (int r = 2; r <= 4; ++r)
        if (treewidth_exact(grid_graph(r)) != r) {
            ok = false;
            detail += " grid" + std::to_string(r);
        }
    Xorshift64Star rng(77);
    int lipschitz_bad = 0;
    for (int i = 0; i < 100; ++i) {
        const int n = 4 + static_cast<int>(rng.below(11));
        Graph g = random_graph(rng, n, 0.2 + 0.4 * rng.uniform());
        const int tw = treewidth_exact(g);
        for (Vertex v = 0; v < n; ++v) {
            const int sub = treewidth_exact(apply_minor_op(g, DeleteVertex{v}));
            if (sub > tw || tw > sub + 1) ++lipschitz_bad;
        }
    }
    ok = ok && lipschitz_bad == 0;
    return {ok, "cliques n<=8 and grids r=2..4 exact" + (detail.empty() ? std::string() : ", failed:" + detail) +
                    "; Lipschitz violations over 100 graphs: " + std::to_string(lipschitz_bad)};
}

Outcome ceiling() {
    int free_graphs = 0, free_bad = 0, checked = 0, bad = 0;
    const BoundingFunction f(1.0);
    for (const auto& e : corpus()) {
        if (e.ep.nu == 0) {
            ++free_graphs;
            if (oracle::has_k4_minor(e.g) || treewidth_exact(e.g) > 2) ++free_bad;
        }
    }
    if (free_bad != 0) return {false, "c = 2 not validated: " + std::to_string(free_bad) + " K4-minor-free graphs"};
    for (const auto& e : corpus()) {
        if (e.ep.nu >= 2) continue;
        ++checked;
        const int tw = treewidth_exact(e.g);
        auto r = ceiling_check(e.g, 3, 2, f, 2);
        const bool ok = tw <= e.ep.tau + 2 && r.treewidth == tw && r.residual_within_c && r.additive_holds &&
                        r.transversal.value == e.ep.tau;
        bad += !ok;
    }
    return {bad == 0, "c = 2 validated on " + std::to_string(free_graphs) + " W3-minor-free graphs; tw <= tau + 2 on " +
                          std::to_string(checked) + " graphs with nu < 2, " + std::to_string(bad) + " exceptions"};
}

Outcome girth_bound() {
    int checked = 0, bad = 0;
    for (const auto& e : corpus()) {
        auto gi = girth(e.g);
        if (!gi) continue;
        ++checked;
        if (e.ep.nu > e.g.order() / *gi) ++bad;
    }
    return {bad == 0, std::to_string(checked) + " graphs with finite girth, " + std::to_string(bad) + " exceptions"};
}

struct PipelineCase {
    std::string spec;
    ConstantsLedger ledger;
    Graph g;
};

std::vector<PipelineCase> pipeline_suite() {
    std::vector<PipelineCase> out;
    for (int i = 0; i < 50; ++i) {
        const bool sparse = i % 2 == 1;
        const int n = sparse ? 22 + (i / 2) % 9 : 12 + (i / 2) % 19;
        const std::string prob = sparse ? "0.1" : "0.15";
        const std::string spec = "gnp:n=" + std::to_string(n) + ",p=" + prob + ",seed=" + std::to_string(i + 1);
        ConstantsLedger l = sparse ? toy_ledger(3, 4, 3, 6, 2.0) : toy_ledger(3, 4, 3, 16, 1.0);
        out.push_back({spec, l, generate(parse_family_spec(spec))});
    }
    return out;
}

Outcome pipeline() {
    int bad = 0, skipped_small = 0;
    std::string first;
    for (const auto& c : pipeline_suite()) {
        auto d = decompose(c.g, c.ledger);
        auto chk = check_decomposition(c.g, d, c.ledger);
        auto aux = build_auxiliary(c.g, d, c.ledger.phi);
        auto aux_fail = check_auxiliary(c.g, d, aux, c.ledger.phi);
        auto d2 = decompose(c.g, c.ledger);
        auto aux2 = build_auxiliary(c.g, d2, c.ledger.phi);
        const bool same = d == d2 && aux == aux2 && to_json(d, aux).dump() == to_json(d2, aux2).dump();
        if (c.g.order() <= 20 && !chk.skipped.empty()) ++skipped_small;
        const bool ok = chk.ok() && aux_fail.empty() && same && (c.g.order() > 20 || chk.skipped.empty());
        if (!ok && first.empty()) {
            first = c.spec;
            if (!chk.failures.empty()) first += ": " + chk.failures.front();
            if (!aux_fail.empty()) first += ": " + aux_fail.front();
        }
        bad += !ok;
    }
    return {bad == 0, "50 instances, " + std::to_string(bad) + " failures" +
                          (skipped_small ? " (" + std::to_string(skipped_small) + " with skipped checks)" : "") +
                          (first.empty() ? "" : "; first: " + first)};
}

Outcome lift_soundness() {
    int found = 0, bad = 0, with_labels = 0;
    for (const auto& c : pipeline_suite()) {
        auto d = decompose(c.g, c.ledger);
        auto aux = build_auxiliary(c.g, d, c.ledger.phi);
        auto ms = find_wheel_model(aux.hs_graph(), 3);
        if (!ms) continue;
        ++found;
        try {
            auto r = lift_model(c.g, d, aux, *ms, 3);
            const bool ok = verify_model(c.g, WheelPattern(3).graph(), r.model).valid() &&
                            r.model.size() <= 3 * c.ledger.c2 * ms->size();
            bad += !ok;
        } catch (const std::exception&) {
            ++bad;
        }
        // labelled H_s edges used by the source model
        bool labelled = false;
        for (const auto& e : aux.hs_edges) {
            if (!e.label) continue;
            const int a = aux.central_index(e.a), b = aux.central_index(e.b);
            for (std::size_t x = 0; x < ms->branch_sets.size(); ++x)
                for (std::size_t y = 0; y < ms->branch_sets.size(); ++y)
                    if (x != y && ms->branch_sets[x].contains(a) && ms->branch_sets[y].contains(b)) labelled = true;
        }
        with_labels += labelled;
    }
    return {bad == 0 && found >= 5, std::to_string(found) + " H_s models lifted (" + std::to_string(with_labels) +
                                        " touching labelled H_s edges), " + std::to_string(bad) + " exceptions"};
}

Outcome minimizer() {
    const BoundingFunction f(0.1);
    const Graph w3 = WheelPattern(3).graph();
    int violators = 0, bad = 0;
    std::map<std::string, int> results;
    for (std::uint64_t seed = 1; seed <= 40 && violators < 12; ++seed) {
        Graph g = generate(parse_family_spec("gnp:n=9,p=0.5,seed=" + std::to_string(seed)));
        auto v = minimize_candidate(g, 3, f);
        if (!v) continue;
        ++violators;
        ++results[to_graph6(v->graph)];
        bool ok = violates(v->nu, v->tau, f) && v->nu == nu_exact(v->graph, w3).value &&
                  v->tau == tau_exact(v->graph, w3).value && locally_minimal(*v, 3, f);
        for (const MinorOp& op : all_minor_ops(v->graph)) {
            Graph h = apply_minor_op(v->graph, op);
            const int nu = nu_exact(h, w3).value;
            const int tau = tau_exact(h, w3).value;
            if (violates(nu, tau, f) && nu <= v->nu) ok = false;
        }
        bad += !ok;
    }
    std::string kinds;
    for (auto& [g6, count] : results) kinds += " " + g6 + "x" + std::to_string(count);
    return {violators >= 10 && bad == 0,
            std::to_string(violators) + " violators minimised, " + std::to_string(bad) + " exceptions; results:" + kinds};
}

std::vector<std::string> csv_fields(const std::string& line) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                out.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                out.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.emplace_back();
        } else {
            out.back() += c;
        }
    }
    return out;
}

bool parse_number(const std::string& s, double& x) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    return ec == std::errc() && p == s.data() + s.size();
}

Outcome empirical_gamma_sweep() {
    const std::string csv = "acceptance_rrg.csv";
    std::string cmd = std::string("\"") + WHEELEP_CLI + "\" ep --t 3 --gamma 1 --jobs 4 --seed 1 --count 20";
    for (int n : {16, 20, 24}) cmd += " --gen rrg:n=" + std::to_string(n) + ",d=3,g=6";
    cmd += " --csv " + csv + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (code != 0 && code != 1) return {false, "ep exited with " + std::to_string(code)};

    std::ifstream in(csv);
    std::string line;
    std::getline(in, line);
    const std::string header =
        "index,family,source,n,m,t,nu,tau,bound,gamma,satisfied,gamma_min,family_max_gamma_min,status";
    if (line != header) return {false, "bad header: " + line};
    int rows = 0, bad = 0;
    std::map<std::string, double> fam_max, fam_reported;
    std::map<std::string, int> fam_rows;
    while (std::getline(in, line)) {
        auto f = csv_fields(line);
        ++rows;
        if (f.size() != 14) {
            ++bad;
            continue;
        }
        double idx, n, m, t, nu, tau, bound, gamma;
        bool ok = parse_number(f[0], idx) && parse_number(f[3], n) && parse_number(f[4], m) &&
                  parse_number(f[5], t) && parse_number(f[6], nu) && parse_number(f[7], tau) &&
                  parse_number(f[8], bound) && parse_number(f[9], gamma);
        ok = ok && idx == rows - 1 && m == 1.5 * n && t == 3 && gamma == 1 && f[13] == "ok";
        ok = ok && (f[10] == "true" || f[10] == "false") && nu <= tau;
        ok = ok && f[10] == (violates(static_cast<int>(nu), static_cast<int>(tau), BoundingFunction(1.0)) ? "false" : "true");
        ok = ok && parse_family_spec(f[2]).to_string() == f[2] && f[2].rfind(f[1], 0) == 0;
        double gmin = 0, gfam = 0;
        if (nu >= 1) {
            ok = ok && parse_number(f[11], gmin) && parse_number(f[12], gfam);
            ok = ok && std::abs(gmin - *empirical_gamma(static_cast<int>(nu), static_cast<int>(tau))) < 1e-9;
            fam_max[f[1]] = std::max(fam_max[f[1]], gmin);
            fam_reported[f[1]] = gfam;
        }
        ++fam_rows[f[1]];
        bad += !ok;
    }
    for (auto& [fam, mx] : fam_max)
        if (std::abs(fam_reported[fam] - mx) > 1e-9) ++bad;
    std::string detail = std::to_string(rows) + " rows, " + std::to_string(bad) + " schema/duality failures; max gamma_min:";
    for (auto& [fam, mx] : fam_max) detail += " " + fam + "=" + num(mx);
    return {rows == 60 && bad == 0 && fam_rows.size() == 3, detail};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"duality-and-certificates", 600, duality},
        {"oracle-equivalence", 600, oracle_equivalence},
        {"disjoint-union-exactness", 60, unions},
        {"menger-duality", 60, menger_duality},
        {"treewidth-anchors", 300, treewidth_anchors},
        {"treewidth-ceiling", 900, ceiling},
        {"girth-bound", 300, girth_bound},
        {"pipeline-invariants", 600, pipeline},
        {"lift-soundness", 600, lift_soundness},
        {"minimizer-soundness", 600, minimizer},
        {"empirical-gamma-sweep", 600, empirical_gamma_sweep},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.limit_s) {
            o.pass = false;
            o.detail += "; exceeded " + num(c.limit_s) + " s";
        }
        failed += !o.pass;
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
        std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << " [" << timing << "] " << o.detail << std::endl;
    }
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size()
              << std::endl;
    return failed ? 1 : 0;
}
