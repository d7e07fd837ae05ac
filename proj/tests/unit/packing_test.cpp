#include <doctest.h>

#include <cmath>
#include <fstream>

#include "oracles.hpp"
#include "wheelep/graph_io.hpp"
#include "wheelep/instances.hpp"
#include "wheelep/minor.hpp"
#include "wheelep/packing.hpp"
#include "wheelep/report.hpp"
#include "wheelep/treewidth.hpp"

using namespace wheelep;

namespace {

Graph cycle(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph copies(const Graph& h, int k) {
    Graph g(0);
    for (int i = 0; i < k; ++i) g = disjoint_union(g, h);
    return g;
}

const Graph& w3() {
    static const Graph g = WheelPattern(3).graph();
    return g;
}

bool disjoint_models(const Graph& g, const Graph& h, const Packing& p) {
    std::uint64_t used = 0;
    for (const Model& m : p.models) {
        if (!verify_model(g, h, m)) return false;
        if (used & m.vertex_set().bits()) return false;
        used |= m.vertex_set().bits();
    }
    return static_cast<int>(p.models.size()) == p.value;
}

std::vector<Graph> upto7() {
    std::ifstream in(WHEELEP_TEST_DATA "/upto7.g6");
    return read_graphs(in, GraphFormat::graph6);
}

}  // namespace

TEST_CASE("bounding function") {
    BoundingFunction f(1.0);
    CHECK(f(0) == 0.0);
    CHECK(f(1) == doctest::Approx(1.0));
    CHECK(f(2) == doctest::Approx(2 * std::log2(3.0)));
    CHECK(f(3) == doctest::Approx(6.0));
    for (long k = 0; k < 50; ++k) CHECK(f(k) <= f(k + 1));
    CHECK(BoundingFunction(2.5)(3) == doctest::Approx(15.0));
    CHECK_THROWS_AS(BoundingFunction(0.0), std::invalid_argument);
    CHECK_THROWS_AS(BoundingFunction(-1.0), std::invalid_argument);
}

TEST_CASE("nu examples") {
    auto p = nu_exact(copies(w3(), 3), w3());
    CHECK(p.value == 3);
    CHECK_FALSE(p.capped);
    CHECK(disjoint_models(copies(w3(), 3), w3(), p));
    CHECK(certify_packing(copies(w3(), 3), w3(), p));

    auto c = nu_exact(cycle(9), cycle(3));
    CHECK(c.value == 1);
    CHECK(nu_exact(cycle(9), w3()).value == 0);
    CHECK(nu_exact(Graph(0), w3()).value == 0);
}

TEST_CASE("nu cap") {
    auto p = nu_exact(copies(w3(), 4), w3(), 2);
    CHECK(p.value == 2);
    CHECK(p.capped);
    CHECK(disjoint_models(copies(w3(), 4), w3(), p));
    auto q = nu_exact(copies(w3(), 2), w3(), 5);
    CHECK(q.value == 2);
    CHECK_FALSE(q.capped);
}

TEST_CASE("nu on the 4x4 grid matches exhaustive disjoint families") {
    Graph g = grid_graph(4);
    auto minimal = oracle::minimal_k4_sets(g);
    REQUIRE_FALSE(minimal.empty());
    const int expected = oracle::max_disjoint(minimal);
    auto p = nu_exact(g, w3());
    CHECK(p.value == expected);
    CHECK(disjoint_models(g, w3(), p));
}

TEST_CASE("nu on graphs up to 7 vertices matches exhaustive disjoint families") {
    int twos = 0;
    for (const Graph& g : upto7()) {
        if (g.order() < 7) continue;
        const int expected = oracle::max_disjoint(oracle::minimal_k4_sets(g));
        CHECK(nu_exact(g, w3()).value == expected);
        twos += expected >= 1;
    }
    CHECK(twos > 0);
}

TEST_CASE("tau examples") {
    auto one = tau_exact(w3(), w3());
    CHECK(one.value == 1);
    CHECK(certify_transversal(w3(), w3(), one));
    auto two = tau_exact(copies(w3(), 2), w3());
    CHECK(two.value == 2);
    CHECK(two.hitting_set.size() == 2);
    CHECK(certify_transversal(copies(w3(), 2), w3(), two));

    Graph k6 = complete_graph(6);
    auto x = tau_exact(k6, w3());
    CHECK(oracle::k4_transversal_bruteforce(k6) == 3);
    CHECK(x.value == 3);
    CHECK(certify_transversal(k6, w3(), x));
    CHECK_FALSE(certify_transversal(k6, w3(), Transversal{{0, 1}, 2}));
    // cycles: tau for C3 is a feedback vertex set
    CHECK(tau_exact(grid_graph(3), cycle(3)).value == 2);
    CHECK(tau_exact(cycle(9), cycle(3)).value == 1);
}

TEST_CASE("tau on graphs up to 7 vertices matches subset enumeration") {
    for (const Graph& g : upto7()) {
        if (g.order() < 6) continue;
        auto x = tau_exact(g, w3());
        CHECK(x.value == oracle::k4_transversal_bruteforce(g));
        CHECK(x.value == x.hitting_set.size());
        CHECK_FALSE(oracle::has_k4_minor(g, g.vertices().bits() & ~x.hitting_set.bits()));
    }
}

TEST_CASE("disjoint unions of wheels") {
    for (int t = 3; t <= 5; ++t)
        for (int k = 1; k <= 3; ++k) {
            Graph g = copies(wheel_graph(t), k);
            Graph h = WheelPattern(t).graph();
            CHECK(nu_exact(g, h).value == k);
            CHECK(tau_exact(g, h).value == k);
        }
}

TEST_CASE("certificates reject bad packings") {
    Graph g = copies(w3(), 2);
    Packing bad;
    bad.models = {Model{{{0}, {1}, {2}, {3}}}, Model{{{0}, {5}, {6}, {7}}}};
    bad.value = 2;
    CHECK_FALSE(certify_packing(g, w3(), bad));
    Packing wrong_count;
    wrong_count.models = {Model{{{0}, {1}, {2}, {3}}}};
    wrong_count.value = 2;
    CHECK_FALSE(certify_packing(g, w3(), wrong_count));
}

TEST_CASE("ep_check") {
    BoundingFunction f(1.0);
    auto r = ep_check(copies(w3(), 2), 3, f);
    CHECK(r.nu == 2);
    CHECK(r.tau == 2);
    CHECK(r.bound == doctest::Approx(2 * std::log2(3.0)));
    CHECK(r.bound == doctest::Approx(3.17).epsilon(0.01));
    CHECK(r.satisfied);
    CHECK(r.n == 8);
    CHECK(r.m == 12);

    auto none = ep_check(cycle(7), 3, f);
    CHECK(none.nu == 0);
    CHECK(none.tau == 0);
    CHECK(none.satisfied);

    // K8: nu = 2 (two disjoint K4), tau = 5 (K3 is the largest W3-free clique)
    auto k8 = ep_check(complete_graph(8), 3, f);
    CHECK(k8.nu == 2);
    CHECK(k8.tau == 5);
    CHECK(k8.satisfied == (5 <= f(2) + 1e-9));
    CHECK_FALSE(k8.satisfied);

    auto j = to_json(r);
    for (const char* key : {"n", "m", "t", "nu", "tau", "bound", "gamma", "satisfied", "packing", "transversal",
                            "runtime_ms"})
        CHECK(j.contains(key));
    CHECK(j["packing"]["models"].size() == 2);
}

TEST_CASE("violates uses a small slack") {
    BoundingFunction f(1.0);
    CHECK_FALSE(violates(1, 1, f));
    CHECK(violates(1, 2, f));
    CHECK_FALSE(violates(3, 6, f));
    CHECK(violates(0, 1, f));
    CHECK_FALSE(violates(0, 0, f));
}

TEST_CASE("empirical gamma") {
    CHECK_FALSE(empirical_gamma(0, 0).has_value());
    CHECK(*empirical_gamma(1, 3) == doctest::Approx(3.0));
    CHECK(*empirical_gamma(3, 12) == doctest::Approx(2.0));
    CHECK(format_real(0.1) == "0.1");
    CHECK(format_real(2.0) == "2");
}

TEST_CASE("minimize_candidate") {
    CHECK_FALSE(minimize_candidate(w3(), 3, BoundingFunction(1.0)));
    CHECK_FALSE(minimize_candidate(cycle(6), 3, BoundingFunction(0.5)));

    BoundingFunction half(0.5);
    auto v = minimize_candidate(w3(), 3, half);
    REQUIRE(v);
    CHECK(violates(v->nu, v->tau, half));
    CHECK(locally_minimal(*v, 3, half));
    // exhaustive single-op re-check with the exact solvers
    for (const MinorOp& op : all_minor_ops(v->graph)) {
        Graph h = apply_minor_op(v->graph, op);
        const int nu = nu_exact(h, w3()).value;
        const int tau = tau_exact(h, w3()).value;
        CHECK_FALSE((violates(nu, tau, half) && nu <= v->nu));
    }

    BoundingFunction tenth(0.1);
    auto k = minimize_candidate(complete_graph(6), 3, tenth);
    REQUIRE(k);
    CHECK(k->graph == complete_graph(4));
    CHECK(k->nu == 1);
    CHECK(k->tau == 1);
    CHECK(k->bound == doctest::Approx(0.1));
}

TEST_CASE("ceiling_check") {
    BoundingFunction f(1.0);
    auto r = ceiling_check(w3(), 3, 2, f, 2);
    CHECK(r.treewidth == 3);
    CHECK(r.f_k_minus_1 == doctest::Approx(1.0));
    CHECK(r.ceiling_holds);
    CHECK(r.transversal.value == 1);
    CHECK(r.residual_within_c);
    CHECK(r.additive_holds);

    Graph tree(7);
    for (int v = 1; v < 7; ++v) tree.add_edge(v, v / 2);
    for (int k = 1; k <= 4; ++k) {
        auto t = ceiling_check(tree, 3, k, f, 1);
        CHECK(t.treewidth == 1);
        CHECK(t.ceiling_holds);
    }

    Graph grid = grid_graph(4);
    const int nu = nu_exact(grid, w3()).value;
    auto g = ceiling_check(grid, 3, nu + 1, f, 2);
    CHECK(g.treewidth == treewidth_exact(grid));
    CHECK(g.treewidth == 4);
    CHECK(g.ceiling_holds == (4 <= f(nu) + 2 + 1e-9));
    CHECK(g.additive_holds);

    CHECK_THROWS_AS(ceiling_check(copies(w3(), 2), 3, 2, f, 2), PreconditionError);
    CHECK_THROWS_AS(ceiling_check(tree, 3, 0, f, 2), PreconditionError);
}

TEST_CASE("K4-minor-free graphs have treewidth at most 2") {
    for (const Graph& g : upto7())
        if (!oracle::has_k4_minor(g)) CHECK(treewidth_exact(g) <= 2);
}

TEST_CASE("monotone_bound") {
    BoundingFunction f(0.5);  // f(3) = 0.5 * 3 * 2 = 3
    CHECK(f(3) == doctest::Approx(3.0));
    CHECK(monotone_bound(f, 1, 2, 3) == doctest::Approx(9.0));
    BoundingFunction g(1.0);
    CHECK(monotone_bound(g, 2, 0, 1) == doctest::Approx(g(1) + 1));
    CHECK_THROWS_AS(monotone_bound(g, 0, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(monotone_bound(g, 1, -1, 1), std::invalid_argument);
    CHECK_THROWS_AS(monotone_bound(g, 1, 0, -1), std::invalid_argument);
}

TEST_CASE("cycle minor of the wheel inherits a bound") {
    // f must bound tau_{W3} on every graph considered, so gamma is taken as the
    // largest empirical ratio over the corpus; c = 2 for K4-minor-free graphs.
    struct Row {
        int nu_w, tau_w, nu_c, tau_c;
    };
    std::vector<Row> rows;
    double gamma = 1.0;
    for (const Graph& g : upto7()) {
        Row r{nu_exact(g, w3()).value, tau_exact(g, w3()).value, nu_exact(g, cycle(3)).value,
              tau_exact(g, cycle(3)).value};
        if (auto e = empirical_gamma(r.nu_w, r.tau_w)) gamma = std::max(gamma, *e);
        rows.push_back(r);
    }
    BoundingFunction f(gamma);
    for (const Row& r : rows) {
        REQUIRE_FALSE(violates(r.nu_w, r.tau_w, f));
        // the bound is stated for k >= 1 and graphs with nu_{C3} <= k
        CHECK(r.tau_c <= monotone_bound(f, 1, 2, std::max(r.nu_c, 1)) + 1e-9);
    }
}

TEST_CASE("tau is Lipschitz under vertex deletion") {
    for (const Graph& g : upto7()) {
        if (g.order() < 6) continue;
        const int tau = tau_exact(g, w3()).value;
        for (Vertex v = 0; v < g.order(); ++v) {
            const int sub = tau_exact(apply_minor_op(g, DeleteVertex{v}), w3()).value;
            CHECK(sub <= tau);
            CHECK(tau <= sub + 1);
        }
    }
}

TEST_CASE("deadlines are honoured") {
    Deadline past = Deadline::after(std::chrono::duration<double>(-1.0));
    CHECK_THROWS_AS(tau_exact(complete_graph(12), w3(), past), DeadlineExceeded);
}
