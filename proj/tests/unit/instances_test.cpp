#include <doctest.h>

#include "wheelep/algorithms.hpp"
#include "wheelep/graph_io.hpp"
#include "wheelep/instances.hpp"
#include "wheelep/minor.hpp"
#include "wheelep/rng.hpp"
#include "wheelep/treewidth.hpp"

using namespace wheelep;

TEST_CASE("xorshift64* reference values") {
    // computed from the documented recurrence by an independent script
    Xorshift64Star a(0);
    CHECK(a.next() == 0x7bbcb40d550682d0ULL);
    CHECK(a.next() == 0xde7fe413d00cc9fdULL);
    CHECK(a.next() == 0xb3c638353c668c91ULL);
    Xorshift64Star b(42);
    CHECK(b.next() == 0x31b0ece7c4f697a2ULL);
    CHECK(b.next() == 0x9008a3b1cb686f03ULL);
    Xorshift64Star c(1);
    CHECK(c.uniform() == doctest::Approx(0.29404672187536496).epsilon(1e-15));
}

TEST_CASE("rng ranges") {
    Xorshift64Star r(5);
    std::vector<int> hist(7, 0);
    for (int i = 0; i < 7000; ++i) {
        const double u = r.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const auto k = r.below(7);
        REQUIRE(k < 7);
        ++hist[k];
    }
    for (int h : hist) CHECK(h > 800);
    CHECK(r.below(1) == 0);
}

TEST_CASE("spec strings round trip") {
    for (const char* text : {"wheel:t=3", "union:h=wheel:t=3,k=2", "grid:r=4", "gnp:n=14,p=0.3,seed=7",
                             "rrg:n=24,d=3,g=6,seed=1", "complete:n=5", "union:h=union:h=grid:r=2,k=2,k=3"}) {
        FamilySpec s = parse_family_spec(text);
        CHECK(parse_family_spec(s.to_string()).to_string() == s.to_string());
        CHECK(generate(parse_family_spec(s.to_string())) == generate(s));
    }
    CHECK(parse_family_spec("wheel:t=3").family() == "wheel");
    CHECK(parse_family_spec("union:h=wheel:t=3,k=2").family() == "union");
    CHECK(parse_family_spec("rrg:n=24,d=3,g=6,seed=1").seeded());
    CHECK_FALSE(parse_family_spec("grid:r=4").seeded());
    CHECK(parse_family_spec("gnp:n=14,p=0.3").with_seed(9).to_string() == "gnp:n=14,p=0.3,seed=9");
}

TEST_CASE("spec errors") {
    for (const char* bad : {"wheel", "wheel:t=2", "wheel:t=x", "wheel:t=3,t=4", "wheel:s=3", "grid:r=1",
                            "gnp:n=5,p=1.5", "rrg:n=7,d=3,g=4", "rrg:n=10,d=2,g=4", "union:h=wheel:t=3,k=0",
                            "moebius:n=8", "complete:n=65", "union:h=complete:n=40,k=2"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(generate(parse_family_spec(bad)), ParseError);
    }
}

TEST_CASE("deterministic generators") {
    Graph w = generate(parse_family_spec("wheel:t=3"));
    CHECK(w == complete_graph(4));
    Graph u = generate(parse_family_spec("union:h=wheel:t=3,k=2"));
    CHECK(u.order() == 8);
    CHECK(u.size() == 12);
    CHECK(components(u).size() == 2);
    for (int r = 2; r <= 4; ++r) {
        Graph g = grid_graph(r);
        CHECK(g.order() == r * r);
        CHECK(g.size() == 2 * r * (r - 1));
        CHECK(treewidth_exact(g) == r);
    }
    CHECK(generate(parse_family_spec("complete:n=5")).size() == 10);
}

TEST_CASE("gnp matches an independent reimplementation") {
    // reference graph6 strings from the same recurrence in another language
    CHECK(to_graph6(generate(parse_family_spec("gnp:n=14,p=0.3,seed=7"))) == "Mw@Gg?CYW?V`eHIP_");
    CHECK(to_graph6(generate(parse_family_spec("gnp:n=10,p=0.5,seed=0"))) == "I`Jes]~E?");
    CHECK(generate(parse_family_spec("gnp:n=9,p=0")).size() == 0);
    CHECK(generate(parse_family_spec("gnp:n=9,p=1")).size() == 36);
}

TEST_CASE("random regular graphs with girth") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        FamilySpec spec = parse_family_spec("rrg:n=24,d=3,g=6,seed=" + std::to_string(seed));
        Graph g = generate(spec);
        CHECK(g.order() == 24);
        for (Vertex v = 0; v < 24; ++v) CHECK(g.degree(v) == 3);
        REQUIRE(girth(g).has_value());
        CHECK(*girth(g) >= 6);
        CHECK(to_graph6(generate(spec)) == to_graph6(g));
    }
    Graph q = generate(parse_family_spec("rrg:n=20,d=4,g=4,seed=3"));
    for (Vertex v = 0; v < 20; ++v) CHECK(q.degree(v) == 4);
    CHECK(*girth(q) >= 4);
    // no cubic graph of girth 6 on 12 vertices exists (the smallest has 14)
    CHECK_THROWS_AS(generate(parse_family_spec("rrg:n=12,d=3,g=6,seed=1,attempts=3")), GenerationFailed);
    CHECK(generate(parse_family_spec("rrg:n=16,d=3,g=6,seed=2")) !=
          generate(parse_family_spec("rrg:n=16,d=3,g=6,seed=3")));
}
