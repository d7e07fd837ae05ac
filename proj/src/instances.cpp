#include "wheelep/instances.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "wheelep/algorithms.hpp"
#include "wheelep/model.hpp"
#include "wheelep/rng.hpp"

namespace wheelep {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

using KeyValues = std::map<std::string, std::string, std::less<>>;

KeyValues split_params(std::string_view body, std::string_view family) {
    KeyValues kv;
    while (!body.empty()) {
        const auto comma = body.find(',');
        const std::string_view item = body.substr(0, comma);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw SpecError(std::string(family) + ": expected key=value, got '" + std::string(item) + "'");
        }
        if (!kv.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1))).second) {
            throw SpecError(std::string(family) + ": duplicate key '" + std::string(item.substr(0, eq)) + "'");
        }
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    return kv;
}

class Params {
public:
    Params(KeyValues kv, std::string family) : kv_(std::move(kv)), family_(std::move(family)) {}

    template <class T>
    T get(const std::string& key, std::optional<T> fallback = std::nullopt) {
        auto it = kv_.find(key);
        if (it == kv_.end()) {
            if (fallback) return *fallback;
            throw SpecError(family_ + ": missing parameter '" + key + "'");
        }
        const std::string text = it->second;
        kv_.erase(it);
        T value{};
        const char* end = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(text.data(), end, value);
        if (ec != std::errc() || ptr != end || text.empty()) {
            throw SpecError(family_ + ": bad value for '" + key + "': '" + text + "'");
        }
        return value;
    }

    void finish() const {
        if (!kv_.empty()) throw SpecError(family_ + ": unknown parameter '" + kv_.begin()->first + "'");
    }

private:
    KeyValues kv_;
    std::string family_;
};

std::string format_real(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

int short_cycle_count(const Graph& g, int below) {
    // Cycles with fewer than `below` vertices, each counted once.
    int count = 0;
    for (Vertex s = 0; s < g.order(); ++s) {
        VertexSet on = VertexSet::singleton(s);
        const auto dfs = [&](auto&& self, Vertex v, int len) -> void {
            for (Vertex w : g.neighbors(v)) {
                if (w < s) continue;
                if (w == s) {
                    if (len >= 3) ++count;
                    continue;
                }
                if (on.contains(w) || len + 1 >= below) continue;
                on.insert(w);
                self(self, w, len + 1);
                on.erase(w);
            }
        };
        dfs(dfs, s, 1);
    }
    return count / 2;
}

std::optional<Graph> random_pairing(int n, int d, Xorshift64Star& rng) {
    std::vector<Vertex> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * d);
    for (Vertex v = 0; v < n; ++v) {
        for (int i = 0; i < d; ++i) stubs.push_back(v);
    }
    for (std::size_t i = stubs.size(); i > 1; --i) {
        std::swap(stubs[i - 1], stubs[rng.below(i)]);
    }
    Graph g(n);
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
        const Vertex a = stubs[i];
        const Vertex b = stubs[i + 1];
        if (a == b || g.has_edge(a, b)) return std::nullopt;
        g.add_edge(a, b);
    }
    return g;
}

// Degree-preserving double-edge swaps that never increase the number of
// cycles shorter than gmin; a swap that keeps the count equal is still taken.
bool repair_girth(Graph& g, int gmin, Xorshift64Star& rng, int max_swaps) {
    int score = short_cycle_count(g, gmin);
    for (int step = 0; step < max_swaps && score > 0; ++step) {
        const auto edges = g.edges();
        const Edge e1 = edges[rng.below(edges.size())];
        const Edge e2 = edges[rng.below(edges.size())];
        auto [a, b] = e1;
        auto [c, d] = e2;
        if (rng.below(2) == 1) std::swap(c, d);
        if (a == c || a == d || b == c || b == d) continue;
        if (g.has_edge(a, c) || g.has_edge(b, d)) continue;
        Graph next = g;
        next.remove_edge(a, b);
        next.remove_edge(c, d);
        next.add_edge(a, c);
        next.add_edge(b, d);
        const int s = short_cycle_count(next, gmin);
        if (s <= score) {
            g = std::move(next);
            score = s;
        }
    }
    return score == 0;
}

Graph generate_rrg(const RrgSpec& s) {
    Xorshift64Star rng(s.seed);
    for (int attempt = 0; attempt < s.attempts; ++attempt) {
        auto g = random_pairing(s.n, s.d, rng);
        if (!g) continue;
        if (!repair_girth(*g, s.gmin, rng, 200 * s.n)) continue;
        const auto achieved = girth(*g);
        if (achieved && *achieved < s.gmin) continue;
        return *g;
    }
    throw GenerationFailed("rrg: no " + std::to_string(s.d) + "-regular graph on " + std::to_string(s.n) +
                           " vertices with girth >= " + std::to_string(s.gmin) + " within " +
                           std::to_string(s.attempts) + " attempts");
}

int order_of(const FamilySpec& spec) {
    return std::visit(Overloaded{
                          [](const WheelSpec& s) { return s.t + 1; },
                          [](const UnionSpec& s) { return s.k * order_of(*s.h); },
                          [](const GridSpec& s) { return s.r * s.r; },
                          [](const GnpSpec& s) { return s.n; },
                          [](const RrgSpec& s) { return s.n; },
                          [](const CompleteSpec& s) { return s.n; },
                      },
                      spec.params);
}

}  // namespace

Graph grid_graph(int r) {
    Graph g(r * r);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            if (j + 1 < r) g.add_edge(i * r + j, i * r + j + 1);
            if (i + 1 < r) g.add_edge(i * r + j, (i + 1) * r + j);
        }
    }
    return g;
}

Graph wheel_graph(int t) { return WheelPattern(t).graph(); }

std::string FamilySpec::family() const {
    return std::visit(Overloaded{
                          [](const WheelSpec&) { return std::string("wheel"); },
                          [](const UnionSpec&) { return std::string("union"); },
                          [](const GridSpec&) { return std::string("grid"); },
                          [](const GnpSpec&) { return std::string("gnp"); },
                          [](const RrgSpec&) { return std::string("rrg"); },
                          [](const CompleteSpec&) { return std::string("complete"); },
                      },
                      params);
}

std::string FamilySpec::to_string() const {
    return std::visit(
        Overloaded{
            [](const WheelSpec& s) { return "wheel:t=" + std::to_string(s.t); },
            [](const UnionSpec& s) { return "union:h=" + s.h->to_string() + ",k=" + std::to_string(s.k); },
            [](const GridSpec& s) { return "grid:r=" + std::to_string(s.r); },
            [](const GnpSpec& s) {
                return "gnp:n=" + std::to_string(s.n) + ",p=" + format_real(s.p) + ",seed=" + std::to_string(s.seed);
            },
            [](const RrgSpec& s) {
                std::string out = "rrg:n=" + std::to_string(s.n) + ",d=" + std::to_string(s.d) +
                                  ",g=" + std::to_string(s.gmin) + ",seed=" + std::to_string(s.seed);
                if (s.attempts != RrgSpec{}.attempts) out += ",attempts=" + std::to_string(s.attempts);
                return out;
            },
            [](const CompleteSpec& s) { return "complete:n=" + std::to_string(s.n); },
        },
        params);
}

void FamilySpec::validate() const {
    std::visit(Overloaded{
                   [](const WheelSpec& s) {
                       if (s.t < 3) throw SpecError("wheel: t must be >= 3");
                   },
                   [](const UnionSpec& s) {
                       if (!s.h) throw SpecError("union: missing h");
                       s.h->validate();
                       if (s.k < 1) throw SpecError("union: k must be >= 1");
                   },
                   [](const GridSpec& s) {
                       if (s.r < 2) throw SpecError("grid: r must be >= 2");
                   },
                   [](const GnpSpec& s) {
                       if (s.n < 0) throw SpecError("gnp: n must be >= 0");
                       if (!(s.p >= 0.0 && s.p <= 1.0)) throw SpecError("gnp: p must be in [0, 1]");
                   },
                   [](const RrgSpec& s) {
                       if (s.d < 3) throw SpecError("rrg: d must be >= 3");
                       if (s.n <= s.d) throw SpecError("rrg: n must exceed d");
                       if ((s.n * s.d) % 2 != 0) throw SpecError("rrg: n * d must be even");
                       if (s.gmin < 3) throw SpecError("rrg: g must be >= 3");
                       if (s.attempts < 1) throw SpecError("rrg: attempts must be >= 1");
                   },
                   [](const CompleteSpec& s) {
                       if (s.n < 1) throw SpecError("complete: n must be >= 1");
                   },
               },
               params);
    if (order_of(*this) > kMaxVertices) {
        throw SpecError(family() + ": more than " + std::to_string(kMaxVertices) + " vertices");
    }
}

bool FamilySpec::seeded() const {
    if (const auto* u = std::get_if<UnionSpec>(&params)) return u->h->seeded();
    return std::holds_alternative<GnpSpec>(params) || std::holds_alternative<RrgSpec>(params);
}

FamilySpec FamilySpec::with_seed(std::uint64_t seed) const {
    FamilySpec out = *this;
    std::visit(Overloaded{
                   [&](UnionSpec& s) { s.h = std::make_shared<const FamilySpec>(s.h->with_seed(seed)); },
                   [&](GnpSpec& s) { s.seed = seed; },
                   [&](RrgSpec& s) { s.seed = seed; },
                   [](auto&) {},
               },
               out.params);
    return out;
}

FamilySpec parse_family_spec(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw SpecError("spec '" + std::string(text) + "': expected family:params");
    const std::string family(text.substr(0, colon));
    const std::string_view body = text.substr(colon + 1);
    FamilySpec spec;
    if (family == "union") {
        const auto k_at = body.rfind(",k=");
        if (!body.starts_with("h=") || k_at == std::string_view::npos) {
            throw SpecError("union: expected h=SPEC,k=INT");
        }
        UnionSpec u;
        u.h = std::make_shared<const FamilySpec>(parse_family_spec(body.substr(2, k_at - 2)));
        Params p(split_params(body.substr(k_at + 1), family), family);
        u.k = p.get<int>("k");
        p.finish();
        spec.params = u;
    } else {
        Params p(split_params(body, family), family);
        if (family == "wheel") {
            spec.params = WheelSpec{p.get<int>("t")};
        } else if (family == "grid") {
            spec.params = GridSpec{p.get<int>("r")};
        } else if (family == "complete") {
            spec.params = CompleteSpec{p.get<int>("n")};
        } else if (family == "gnp") {
            GnpSpec s;
            s.n = p.get<int>("n");
            s.p = p.get<double>("p");
            s.seed = p.get<std::uint64_t>("seed", 0);
            spec.params = s;
        } else if (family == "rrg") {
            RrgSpec s;
            s.n = p.get<int>("n");
            s.d = p.get<int>("d");
            s.gmin = p.get<int>("g");
            s.seed = p.get<std::uint64_t>("seed", 0);
            s.attempts = p.get<int>("attempts", RrgSpec{}.attempts);
            spec.params = s;
        } else {
            throw SpecError("unknown family '" + family + "'");
        }
        p.finish();
    }
    spec.validate();
    return spec;
}

Graph generate(const FamilySpec& spec) {
    spec.validate();
    return std::visit(Overloaded{
                          [](const WheelSpec& s) { return wheel_graph(s.t); },
                          [](const UnionSpec& s) {
                              const Graph h = generate(*s.h);
                              Graph out(0);
                              for (int i = 0; i < s.k; ++i) out = disjoint_union(out, h);
                              return out;
                          },
                          [](const GridSpec& s) { return grid_graph(s.r); },
                          [](const GnpSpec& s) {
                              Xorshift64Star rng(s.seed);
                              Graph g(s.n);
                              for (Vertex i = 0; i < s.n; ++i) {
                                  for (Vertex j = i + 1; j < s.n; ++j) {
                                      if (rng.uniform() < s.p) g.add_edge(i, j);
                                  }
                              }
                              return g;
                          },
                          [](const RrgSpec& s) { return generate_rrg(s); },
                          [](const CompleteSpec& s) {
                              Graph g(s.n);
                              for (Vertex i = 0; i < s.n; ++i) {
                                  for (Vertex j = i + 1; j < s.n; ++j) g.add_edge(i, j);
                              }
                              return g;
                          },
                      },
                      spec.params);
}

}  // namespace wheelep
