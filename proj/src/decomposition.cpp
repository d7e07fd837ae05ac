#include "wheelep/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wheelep/algorithms.hpp"
#include "wheelep/errors.hpp"
#include "wheelep/minor.hpp"

namespace wheelep {

namespace {

constexpr double kMaxExact = 9007199254740992.0;  // 2^53
constexpr double kEps = 1e-12;

std::int64_t apply_g(const GFunction& g, double x) {
    const double y = std::ceil(g.eval(std::ceil(x - kEps)) - kEps);
    if (!std::isfinite(y) || y > kMaxExact) throw std::overflow_error("ledger: g(" + std::to_string(x) + ") overflows");
    return static_cast<std::int64_t>(y);
}

double sigma_of(int t, double phi, double phi_prime, std::int64_t c1, std::int64_t p, std::int64_t c2) {
    const double a = 3.0 * phi_prime * static_cast<double>(c2);
    const double b = 2.0 * static_cast<double>(c2) + t * static_cast<double>(p);
    const double c = (2.0 * t * t * static_cast<double>(p) + 1.0) *
                     (static_cast<double>(c2) + 2.0 * static_cast<double>(c1) * phi * phi);
    return std::max({a, b, c});
}

VertexSet set_of(const std::vector<Vertex>& vs) { return VertexSet::from(vs); }

std::string show(VertexSet s) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (Vertex v : s) {
        if (!first) os << ',';
        os << v;
        first = false;
    }
    os << '}';
    return os.str();
}

std::vector<int> bfs_distances(const Graph& g, Vertex from, VertexSet within) {
    std::vector<int> dist(static_cast<std::size_t>(g.order()), -1);
    std::vector<Vertex> queue{from};
    dist[from] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const Vertex v = queue[i];
        for (Vertex w : g.neighbors(v) & within) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

// Cycle with exactly `len` vertices through v inside `within`.
std::optional<std::vector<Vertex>> cycle_through(const Graph& g, Vertex v, int len, VertexSet within,
                                                 const std::vector<int>& dist) {
    std::vector<Vertex> path{v};
    VertexSet on = VertexSet::singleton(v);
    const auto dfs = [&](auto&& self, Vertex x) -> bool {
        const int have = static_cast<int>(path.size());
        if (have == len) return g.has_edge(x, v);
        for (Vertex y : (g.neighbors(x) & within) - on) {
            if (dist[y] < 0 || dist[y] > len - have) continue;
            path.push_back(y);
            on.insert(y);
            if (self(self, y)) return true;
            on.erase(y);
            path.pop_back();
        }
        return false;
    };
    if (dfs(dfs, v)) return path;
    return std::nullopt;
}

// Path with exactly `edges` edges starting at v inside `within` and ending at
// a vertex above v.
std::optional<std::vector<Vertex>> path_from(const Graph& g, Vertex v, int edges, VertexSet within) {
    std::vector<Vertex> path{v};
    VertexSet on = VertexSet::singleton(v);
    const auto dfs = [&](auto&& self, Vertex x) -> bool {
        if (static_cast<int>(path.size()) == edges + 1) return x > v;
        for (Vertex y : (g.neighbors(x) & within) - on) {
            path.push_back(y);
            on.insert(y);
            if (self(self, y)) return true;
            on.erase(y);
            path.pop_back();
        }
        return false;
    };
    if (dfs(dfs, v)) return path;
    return std::nullopt;
}

// Subset DP over a small vertex set. ends[mask] holds the local endpoints of
// Hamiltonian paths of G[mask]; with `rooted`, only paths starting at the
// lowest vertex of mask are tracked.
struct SubsetPaths {
    std::vector<Vertex> local;
    std::vector<std::uint32_t> ends;
    std::vector<std::uint32_t> adj;

    SubsetPaths(const Graph& g, VertexSet u, bool rooted) : local(u.to_vector()) {
        const int k = static_cast<int>(local.size());
        adj.assign(static_cast<std::size_t>(k), 0);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                if (g.has_edge(local[i], local[j])) adj[i] |= 1U << j;
            }
        }
        ends.assign(std::size_t{1} << k, 0);
        for (int i = 0; i < k; ++i) ends[std::size_t{1} << i] = 1U << i;
        for (std::uint32_t mask = 1; mask < (1U << k); ++mask) {
            std::uint32_t e = ends[mask];
            if (e == 0) continue;
            const int low = std::countr_zero(mask);
            while (e != 0) {
                const int v = std::countr_zero(e);
                e &= e - 1;
                std::uint32_t next = adj[v] & ~mask;
                if (rooted) next &= ~((2U << low) - 1);
                while (next != 0) {
                    const int w = std::countr_zero(next);
                    next &= next - 1;
                    ends[mask | (1U << w)] |= 1U << w;
                }
            }
        }
    }

    VertexSet host(std::uint32_t mask) const {
        VertexSet s;
        for (std::size_t i = 0; i < local.size(); ++i) {
            if (mask & (1U << i)) s.insert(local[i]);
        }
        return s;
    }

    // Vertex set of some cycle with a size in [lo, hi] (rooted DP only).
    std::optional<VertexSet> cycle_between(int lo, int hi) const {
        for (std::uint32_t mask = 1; mask < ends.size(); ++mask) {
            const int size = std::popcount(mask);
            if (size < std::max(lo, 3) || size > hi) continue;
            const int low = std::countr_zero(mask);
            if (ends[mask] & adj[low]) return host(mask);
        }
        return std::nullopt;
    }

    // Vertex set of some path with exactly `edges` edges.
    std::optional<VertexSet> path_with(int edges) const {
        for (std::uint32_t mask = 1; mask < ends.size(); ++mask) {
            if (std::popcount(mask) == edges + 1 && ends[mask] != 0) return host(mask);
        }
        return std::nullopt;
    }
};

PiecePair ordered(int a, int b) { return a < b ? PiecePair{a, b} : PiecePair{b, a}; }

}  // namespace

GFunction GFunction::standard() {
    return {"x^2+x+2", [](double x) { return x * x + x + 2.0; }, true};
}

GFunction GFunction::successor() {
    return {"x+1", [](double x) { return x + 1.0; }, false};
}

GFunction GFunction::affine(double a, double b) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << a << "x+" << b;
    return {os.str(), [a, b](double x) { return a * x + b; }, false};
}

GFunction GFunction::by_name(const std::string& name) {
    if (name == "default" || name == "x^2+x+2" || name == "quadratic") return standard();
    if (name == "x+1" || name == "succ" || name == "successor") return successor();
    if (name == "2x+1" || name == "double") return affine(2.0, 1.0);
    if (name == "x" || name == "identity") return {"x", [](double x) { return x; }, false};
    throw std::invalid_argument("unknown g function '" + name + "'");
}

ConstantsLedger build_ledger(int t, double phi, double phi_prime, double alpha, double beta, const GFunction& g) {
    if (t < 3) throw std::invalid_argument("ledger: t must be >= 3");
    if (!(phi >= 1.0) || !(phi_prime >= 1.0)) throw std::invalid_argument("ledger: phi and phi' must be >= 1");
    if (!(alpha > 0.0) || !(beta > 0.0)) throw std::invalid_argument("ledger: alpha and beta must be positive");
    if (!g.eval) throw std::invalid_argument("ledger: g is empty");

    ConstantsLedger l;
    l.t = t;
    l.phi = phi;
    l.phi_prime = phi_prime;
    l.alpha = alpha;
    l.beta = beta;
    l.g_name = g.name;
    l.g_placeholder = g.placeholder;

    const double x1 = 2.0 * t * phi * phi;
    l.c1 = apply_g(g, x1);
    const double x2 = 2.0 * static_cast<double>(l.c1) * phi * phi;
    l.p = apply_g(g, x2);

    std::vector<double> probes;
    for (int x = 0; x <= 64; ++x) probes.push_back(x);
    probes.push_back(std::ceil(x1 - kEps));
    probes.push_back(std::ceil(x2 - kEps));
    std::sort(probes.begin(), probes.end());
    double prev = -HUGE_VAL;
    for (double x : probes) {
        const double y = g.eval(x);
        if (!(y > x)) {
            throw std::invalid_argument("ledger: g(" + std::to_string(x) + ") = " + std::to_string(y) +
                                        " does not exceed its argument");
        }
        if (y < prev) throw std::invalid_argument("ledger: g is decreasing at " + std::to_string(x));
        prev = y;
    }

    if (static_cast<double>(l.p) * 4.0 > kMaxExact) throw std::overflow_error("ledger: c2 overflows");
    l.c2 = 4 * l.p;
    if (!(t < l.c1 && l.c1 < l.p && l.p < l.c2)) throw std::invalid_argument("ledger: chain t < c1 < p < c2 violated");
    l.sigma = sigma_of(t, phi, phi_prime, l.c1, l.p, l.c2);
    l.gamma = l.sigma * (beta + std::log2(alpha));
    if (!(l.gamma > 0.0) || !std::isfinite(l.gamma)) throw std::invalid_argument("ledger: gamma must be positive");
    return l;
}

ConstantsLedger toy_ledger(int t, std::int64_t c1, std::int64_t p, std::int64_t c2, double phi, double phi_prime,
                           std::optional<double> sigma) {
    if (t < 3) throw std::invalid_argument("toy ledger: t must be >= 3");
    if (c1 < 1 || p < 1 || c2 < c1) throw std::invalid_argument("toy ledger: need c1 >= 1, p >= 1, c2 >= c1");
    if (!(phi >= 1.0) || !(phi_prime >= 1.0)) throw std::invalid_argument("toy ledger: phi and phi' must be >= 1");
    ConstantsLedger l;
    l.t = t;
    l.phi = phi;
    l.phi_prime = phi_prime;
    l.g_name = "toy";
    l.c1 = c1;
    l.p = p;
    l.c2 = c2;
    l.sigma = sigma.value_or(sigma_of(t, phi, phi_prime, c1, p, c2));
    l.gamma = l.sigma * (l.beta + std::log2(l.alpha));
    l.toy = true;
    return l;
}

std::vector<std::string> ledger_violations(const ConstantsLedger& l) {
    std::vector<std::string> out;
    if (l.c2 != 4 * l.p) out.push_back("c2 != 4p");
    if (!(l.t < l.c1 && l.c1 < l.p && l.p < l.c2)) out.push_back("chain t < c1 < p < c2 violated");
    const double sigma = sigma_of(l.t, l.phi, l.phi_prime, l.c1, l.p, l.c2);
    if (std::abs(sigma - l.sigma) > 1e-9 * std::max(1.0, sigma)) out.push_back("sigma does not match its formula");
    const double gamma = l.sigma * (l.beta + std::log2(l.alpha));
    if (std::abs(gamma - l.gamma) > 1e-9 * std::max(1.0, std::abs(gamma))) {
        out.push_back("gamma does not match sigma (beta + log2 alpha)");
    }
    return out;
}

nlohmann::json to_json(const ConstantsLedger& l) {
    return {{"t", l.t},         {"phi", l.phi},     {"phi_prime", l.phi_prime},
            {"alpha", l.alpha}, {"beta", l.beta},   {"g", l.g_name},
            {"g_placeholder", l.g_placeholder},     {"c1", l.c1},
            {"p", l.p},         {"c2", l.c2},       {"sigma", l.sigma},
            {"gamma", l.gamma}, {"toy", l.toy}};
}

PieceKind PieceDecomposition::kind(int piece) const {
    const int nc = static_cast<int>(cycles.size());
    const int np = static_cast<int>(paths.size());
    if (piece < 0 || piece >= piece_count()) throw std::out_of_range("piece id out of range");
    if (piece < nc) return PieceKind::cycle;
    if (piece < nc + np) return PieceKind::path;
    return PieceKind::rest;
}

VertexSet PieceDecomposition::vertices(int piece) const {
    const int nc = static_cast<int>(cycles.size());
    const int np = static_cast<int>(paths.size());
    switch (kind(piece)) {
        case PieceKind::cycle:
            return set_of(cycles[piece]);
        case PieceKind::path:
            return set_of(paths[piece - nc]);
        case PieceKind::rest:
            return rest[piece - nc - np];
    }
    return {};
}

std::vector<int> PieceDecomposition::piece_of(int n) const {
    std::vector<int> out(static_cast<std::size_t>(n), -1);
    for (int id = 0; id < piece_count(); ++id) {
        for (Vertex v : vertices(id)) {
            if (v < n) out[v] = id;
        }
    }
    return out;
}

PieceDecomposition decompose(const Graph& g, const ConstantsLedger& ledger) {
    PieceDecomposition d;
    const int lo = static_cast<int>(std::max<std::int64_t>(ledger.c1, 3));
    const int hi = static_cast<int>(std::min<std::int64_t>(ledger.c2, g.order()));
    VertexSet used;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (used.contains(v)) continue;
        // Unused vertices below v already failed to lie on a qualifying cycle.
        const VertexSet within = (g.vertices() - used) - VertexSet::range(v);
        const std::vector<int> dist = bfs_distances(g, v, within);
        for (int len = lo; len <= hi; ++len) {
            if (auto c = cycle_through(g, v, len, within, dist)) {
                used |= set_of(*c);
                d.cycles.push_back(std::move(*c));
                break;
            }
        }
    }
    const auto edges = ledger.p;
    if (edges >= 1 && edges < g.order()) {
        for (Vertex v = 0; v < g.order(); ++v) {
            if (used.contains(v)) continue;
            if (auto path = path_from(g, v, static_cast<int>(edges), g.vertices() - used)) {
                used |= set_of(*path);
                d.paths.push_back(std::move(*path));
            }
        }
    }
    d.rest = components(g, g.vertices() - used);
    return d;
}

DecompositionCheck check_decomposition(const Graph& g, const PieceDecomposition& d, const ConstantsLedger& ledger,
                                       int exhaustive_limit) {
    DecompositionCheck out;
    exhaustive_limit = std::clamp(exhaustive_limit, 0, 24);
    const auto fail = [&](std::string s) { out.failures.push_back(std::move(s)); };

    VertexSet seen;
    for (int id = 0; id < d.piece_count(); ++id) {
        const VertexSet s = d.vertices(id);
        if (s.empty()) fail("piece " + std::to_string(id) + " is empty");
        if (!s.subset_of(g.vertices())) fail("piece " + std::to_string(id) + " has vertices outside the graph");
        if (s.intersects(seen)) fail("piece " + std::to_string(id) + " overlaps an earlier piece");
        seen |= s;
    }
    if (seen != g.vertices()) fail("pieces do not cover every vertex");

    for (std::size_t i = 0; i < d.cycles.size(); ++i) {
        const auto& c = d.cycles[i];
        const int len = static_cast<int>(c.size());
        const std::string name = "cycle " + std::to_string(i);
        if (set_of(c).size() != len) fail(name + " repeats a vertex");
        if (len < 3) fail(name + " is shorter than 3");
        if (len < ledger.c1 || len > ledger.c2) fail(name + " length " + std::to_string(len) + " outside [c1, c2]");
        for (int k = 0; k < len; ++k) {
            if (!g.has_edge(c[k], c[(k + 1) % len])) fail(name + " misses edge at position " + std::to_string(k));
        }
    }
    for (std::size_t i = 0; i < d.paths.size(); ++i) {
        const auto& p = d.paths[i];
        const std::string name = "path " + std::to_string(i);
        if (static_cast<int>(set_of(p).size()) != static_cast<int>(p.size())) fail(name + " repeats a vertex");
        if (static_cast<std::int64_t>(p.size()) != ledger.p + 1) fail(name + " does not have exactly p edges");
        for (std::size_t k = 0; k + 1 < p.size(); ++k) {
            if (!g.has_edge(p[k], p[k + 1])) fail(name + " misses edge at position " + std::to_string(k));
        }
    }

    VertexSet in_cycles;
    for (const auto& c : d.cycles) in_cycles |= set_of(c);
    VertexSet in_paths;
    for (const auto& p : d.paths) in_paths |= set_of(p);
    const VertexSet remainder = g.vertices() - in_cycles - in_paths;
    if (components(g, remainder) != d.rest) fail("rest pieces are not the components of the remainder");

    const VertexSet after_cycles = g.vertices() - in_cycles;
    if (after_cycles.size() <= exhaustive_limit) {
        SubsetPaths dp(g, after_cycles, true);
        const int hi = static_cast<int>(std::min<std::int64_t>(ledger.c2, 64));
        if (auto c = dp.cycle_between(static_cast<int>(std::min<std::int64_t>(ledger.c1, 64)), hi)) {
            fail("cycle maximality: qualifying cycle on " + show(*c) + " avoids all cycle pieces");
        }
    } else {
        out.skipped.push_back("cycle maximality: " + std::to_string(after_cycles.size()) + " vertices outside cycles");
    }
    if (ledger.p + 1 <= kMaxVertices) {
        const int edges = static_cast<int>(ledger.p);
        if (remainder.size() <= exhaustive_limit) {
            SubsetPaths dp(g, remainder, false);
            if (auto p = dp.path_with(edges)) {
                fail("path maximality: path with p edges on " + show(*p) + " avoids all pieces");
            }
        } else {
            for (std::size_t i = 0; i < d.rest.size(); ++i) {
                if (d.rest[i].size() > exhaustive_limit) {
                    out.skipped.push_back("rest piece " + std::to_string(i) + " path bound: too large");
                    continue;
                }
                SubsetPaths dp(g, d.rest[i], false);
                if (auto p = dp.path_with(edges)) {
                    fail("rest piece " + std::to_string(i) + " contains a path with p edges on " + show(*p));
                }
            }
            out.skipped.push_back("path maximality across pieces: remainder larger than exhaustive limit");
        }
    }
    return out;
}

int AuxiliaryGraphs::central_index(int piece) const {
    auto it = std::lower_bound(central.begin(), central.end(), piece);
    if (it == central.end() || *it != piece) return -1;
    return static_cast<int>(it - central.begin());
}

Graph AuxiliaryGraphs::hs_graph() const {
    Graph h(static_cast<int>(central.size()));
    for (const auto& e : hs_edges) h.add_edge(central_index(e.a), central_index(e.b));
    return h;
}

Graph AuxiliaryGraphs::hb_graph() const {
    Graph h(static_cast<int>(central.size()));
    for (const auto& [a, b] : hb_edges) h.add_edge(central_index(a), central_index(b));
    return h;
}

AuxiliaryGraphs build_auxiliary(const Graph& g, const PieceDecomposition& d, double phi) {
    AuxiliaryGraphs aux;
    const int pieces = d.piece_count();
    const std::vector<int> owner = d.piece_of(g.order());
    std::set<PiecePair> touch;
    for (const auto& [u, v] : g.edges()) {
        if (owner[u] != owner[v]) touch.insert(ordered(owner[u], owner[v]));
    }
    aux.touch.assign(touch.begin(), touch.end());

    std::vector<std::vector<int>> touching(static_cast<std::size_t>(pieces));
    for (const auto& [a, b] : touch) {
        touching[a].push_back(b);
        touching[b].push_back(a);
    }
    for (auto& v : touching) std::sort(v.begin(), v.end());

    std::vector<bool> is_central(static_cast<std::size_t>(pieces), false);
    for (int id = 0; id < pieces; ++id) {
        const bool rest = d.kind(id) == PieceKind::rest;
        is_central[id] = !rest || static_cast<double>(touching[id].size()) >= 2.0 * phi - kEps;
        if (is_central[id]) aux.central.push_back(id);
    }

    std::map<PiecePair, std::optional<int>> hs;
    std::set<PiecePair> hb;
    for (const auto& [a, b] : touch) {
        if (is_central[a] && is_central[b]) {
            hs.emplace(PiecePair{a, b}, std::nullopt);
            hb.insert({a, b});
        }
    }

    for (int r = 0; r < pieces; ++r) {
        if (is_central[r]) continue;
        std::vector<int> z;
        for (int k : touching[r]) {
            if (is_central[k]) z.push_back(k);
        }
        bool open = false;
        for (std::size_t i = 0; i < z.size() && !open; ++i) {
            for (std::size_t j = i + 1; j < z.size() && !open; ++j) open = !hb.contains({z[i], z[j]});
        }
        if (!open) continue;
        std::map<int, int> fresh;
        for (std::size_t i = 0; i < z.size(); ++i) {
            for (std::size_t j = i + 1; j < z.size(); ++j) {
                if (hb.insert({z[i], z[j]}).second) {
                    ++fresh[z[i]];
                    ++fresh[z[j]];
                }
            }
        }
        int center = z.front();
        for (int k : z) {
            if (fresh[k] > fresh[center]) center = k;
        }
        for (int k : z) {
            if (k != center) hs.emplace(ordered(center, k), r);
        }
        aux.star_center[r] = center;
        aux.processed.emplace_back(r, z);
    }
    for (const auto& [e, label] : hs) aux.hs_edges.push_back({e.first, e.second, label});
    aux.hb_edges.assign(hb.begin(), hb.end());
    return aux;
}

std::vector<std::string> check_auxiliary(const Graph& g, const PieceDecomposition& d, const AuxiliaryGraphs& aux,
                                         double phi) {
    std::vector<std::string> out;
    const int pieces = d.piece_count();
    const std::vector<int> owner = d.piece_of(g.order());
    std::set<PiecePair> touch;
    for (const auto& [u, v] : g.edges()) {
        if (owner[u] != owner[v]) touch.insert(ordered(owner[u], owner[v]));
    }
    std::vector<std::set<int>> touching(static_cast<std::size_t>(pieces));
    for (const auto& [a, b] : touch) {
        touching[a].insert(b);
        touching[b].insert(a);
        if (d.kind(a) == PieceKind::rest && d.kind(b) == PieceKind::rest) {
            out.push_back("rest pieces " + std::to_string(a) + " and " + std::to_string(b) + " touch");
        }
    }

    std::vector<int> central;
    for (int id = 0; id < pieces; ++id) {
        if (d.kind(id) != PieceKind::rest || static_cast<double>(touching[id].size()) >= 2.0 * phi - kEps) {
            central.push_back(id);
        }
    }
    if (central != aux.central) out.push_back("central pieces do not match the definition");
    const auto is_central = [&](int id) { return std::binary_search(central.begin(), central.end(), id); };

    std::set<PiecePair> hb(aux.hb_edges.begin(), aux.hb_edges.end());
    std::map<PiecePair, std::optional<int>> hs;
    for (const auto& e : aux.hs_edges) {
        hs[ordered(e.a, e.b)] = e.label;
        if (!hb.contains(ordered(e.a, e.b))) {
            out.push_back("H_s edge " + std::to_string(e.a) + "-" + std::to_string(e.b) + " missing from H_b");
        }
        if (!is_central(e.a) || !is_central(e.b)) out.push_back("H_s edge with a noncentral endpoint");
    }
    for (const auto& [a, b] : hb) {
        if (!is_central(a) || !is_central(b)) out.push_back("H_b edge with a noncentral endpoint");
    }
    for (const auto& [a, b] : touch) {
        if (!is_central(a) || !is_central(b)) continue;
        auto it = hs.find({a, b});
        if (it == hs.end() || it->second || !hb.contains({a, b})) {
            out.push_back("touching central pair " + std::to_string(a) + "-" + std::to_string(b) +
                          " is not an unlabeled edge of both graphs");
        }
    }

    std::map<int, std::vector<PiecePair>> by_label;
    for (const auto& [e, label] : hs) {
        if (label) by_label[*label].push_back(e);
    }
    for (const auto& [r, edges] : by_label) {
        const std::string name = "label " + std::to_string(r);
        if (r < 0 || r >= pieces || d.kind(r) != PieceKind::rest || is_central(r)) {
            out.push_back(name + " is not a noncentral rest piece");
            continue;
        }
        std::map<int, int> degree;
        for (const auto& [a, b] : edges) {
            ++degree[a];
            ++degree[b];
        }
        int center = -1;
        for (const auto& [k, deg] : degree) {
            if (deg == static_cast<int>(edges.size())) center = k;
        }
        if (center < 0 && edges.size() > 1) out.push_back(name + " edges do not form a star");
        for (const auto& [k, deg] : degree) {
            if (!touching[r].contains(k)) out.push_back(name + " star uses piece " + std::to_string(k) + " not touching it");
        }
        auto sc = aux.star_center.find(r);
        if (sc != aux.star_center.end() && !degree.contains(sc->second)) {
            out.push_back(name + " recorded centre is not on the star");
        }
    }

    for (int r = 0; r < pieces; ++r) {
        if (d.kind(r) != PieceKind::rest || is_central(r)) continue;
        std::vector<int> z;
        for (int k : touching[r]) {
            if (is_central(k)) z.push_back(k);
        }
        for (std::size_t i = 0; i < z.size(); ++i) {
            for (std::size_t j = i + 1; j < z.size(); ++j) {
                if (!hb.contains({z[i], z[j]})) {
                    out.push_back("clique closure: rest piece " + std::to_string(r) + " touches nonadjacent " +
                                  std::to_string(z[i]) + " and " + std::to_string(z[j]));
                }
            }
        }
    }
    return out;
}

LiftResult lift_model(const Graph& g, const PieceDecomposition& d, const AuxiliaryGraphs& aux, const Model& ms,
                      int t) {
    const WheelPattern pattern(t);
    const Graph hs = aux.hs_graph();
    if (!verify_model(hs, pattern.graph(), ms)) throw std::invalid_argument("lift_model: source model is invalid in H_s");

    std::map<PiecePair, std::optional<int>> labels;
    for (const auto& e : aux.hs_edges) labels[ordered(e.a, e.b)] = e.label;

    // M_s: a spanning tree per branch set plus one edge per pattern edge.
    const int nodes = hs.order();
    std::vector<int> branch_of(static_cast<std::size_t>(nodes), -1);
    for (std::size_t x = 0; x < ms.branch_sets.size(); ++x) {
        for (Vertex i : ms.branch_sets[x]) branch_of[i] = static_cast<int>(x);
    }
    std::vector<Edge> ms_edges;
    for (const VertexSet& s : ms.branch_sets) {
        VertexSet reached = VertexSet::singleton(s.first());
        std::vector<Vertex> queue{s.first()};
        for (std::size_t i = 0; i < queue.size(); ++i) {
            for (Vertex w : (hs.neighbors(queue[i]) & s) - reached) {
                reached.insert(w);
                queue.push_back(w);
                ms_edges.push_back(ordered(queue[i], w));
            }
        }
    }
    for (const auto& [x, y] : pattern.graph().edges()) {
        bool linked = false;
        for (Vertex a : ms.branch_sets[x]) {
            const VertexSet hit = hs.neighbors(a) & ms.branch_sets[y];
            if (!hit.empty()) {
                ms_edges.push_back(ordered(a, hit.first()));
                linked = true;
                break;
            }
        }
        if (!linked) throw std::invalid_argument("lift_model: pattern edge without H_s link");
    }

    const VertexSet ms_nodes = ms.vertex_set();
    std::vector<VertexSet> sets(ms.branch_sets.size());
    std::map<int, Vertex> v_of;
    for (Vertex i : ms_nodes) {
        const int piece = aux.central[i];
        if (d.kind(piece) != PieceKind::rest) {
            sets[branch_of[i]] |= d.vertices(piece);
            continue;
        }
        VertexSet toward;
        for (const auto& [a, b] : ms_edges) {
            if (a == i) toward |= g.neighbors(d.vertices(aux.central[b]));
            if (b == i) toward |= g.neighbors(d.vertices(aux.central[a]));
        }
        const VertexSet own = d.vertices(piece);
        const VertexSet preferred = own & toward;
        const Vertex vk = preferred.empty() ? own.first() : preferred.first();
        v_of[i] = vk;
        sets[branch_of[i]].insert(vk);
    }

    LiftResult result;
    result.ms_size = ms_nodes.size();
    result.ms_edges = static_cast<int>(ms_edges.size());
    for (const auto& [i, j] : ms_edges) {
        const int pi = aux.central[i];
        const int pj = aux.central[j];
        const auto label = labels.at(ordered(pi, pj));
        const VertexSet vi = d.vertices(pi);
        const VertexSet vj = d.vertices(pj);
        if (!label) {
            const bool ri = d.kind(pi) == PieceKind::rest;
            const bool rj = d.kind(pj) == PieceKind::rest;
            if (!ri && !rj) {
                if (!g.neighbors(vi).intersects(vj)) throw std::logic_error("lift_model: touching pieces share no edge");
                continue;
            }
            if (ri && rj) throw std::logic_error("lift_model: unlabeled edge between rest pieces");
            const Vertex k = ri ? i : j;
            const VertexSet inside = d.vertices(aux.central[k]);
            const VertexSet other = ri ? vj : vi;
            const auto path = shortest_path(g, VertexSet::singleton(v_of.at(k)), inside & g.neighbors(other), inside);
            if (path.empty()) throw std::logic_error("lift_model: no path through a central rest piece");
            for (std::size_t s = 1; s < path.size(); ++s) sets[branch_of[k]].insert(path[s]);
            result.path_vertices += static_cast<int>(path.size()) - 1;
            continue;
        }
        const int r = *label;
        const int center = aux.star_center.at(r);
        if (center != pi && center != pj) throw std::logic_error("lift_model: labeled edge off its star centre");
        const Vertex from_node = center == pi ? i : j;
        const VertexSet from = center == pi ? vi : vj;
        const VertexSet to = center == pi ? vj : vi;
        const VertexSet via = d.vertices(r);
        const auto path = shortest_path(g, from, to, from | to | via);
        if (path.empty()) throw std::logic_error("lift_model: no path through a labeled rest piece");
        for (std::size_t s = 1; s + 1 < path.size(); ++s) {
            if (!via.contains(path[s])) throw std::logic_error("lift_model: labeled path leaves its rest piece");
            sets[branch_of[from_node]].insert(path[s]);
        }
        result.path_vertices += static_cast<int>(path.size()) - 2;
    }
    result.model.branch_sets = std::move(sets);
    const ModelCheck check = verify_model(g, pattern.graph(), result.model);
    if (!check) throw std::logic_error("lift_model: lifted model invalid: " + check.witness);
    return result;
}

ClaimsReport audit_claims(const Graph& g, const PieceDecomposition& d, const AuxiliaryGraphs& aux,
                          const ConstantsLedger& ledger, int small_model_max_n) {
    ClaimsReport r;
    const Graph hs = aux.hs_graph();
    const Graph hb = aux.hb_graph();
    const auto avg = [](const Graph& h) { return h.order() == 0 ? 0.0 : 2.0 * h.size() / h.order(); };
    r.avg_degree_hs = avg(hs);
    r.avg_degree_hb = avg(hb);
    r.degree_ratio_holds = r.avg_degree_hb <= ledger.phi * r.avg_degree_hs + kEps;
    for (std::size_t i = 0; i < aux.central.size(); ++i) {
        const int piece = aux.central[i];
        if (d.kind(piece) != PieceKind::rest) continue;
        if (static_cast<double>(hs.degree(static_cast<Vertex>(i))) < 2.0 * ledger.phi - kEps) {
            r.low_degree_central_rest.push_back(piece);
        }
    }
    std::set<PiecePair> hb_set(aux.hb_edges.begin(), aux.hb_edges.end());
    for (const auto& e : aux.hs_edges) {
        if (!hb_set.contains(ordered(e.a, e.b))) r.hs_within_hb = false;
    }
    const int first_rest = static_cast<int>(d.cycles.size() + d.paths.size());
    for (std::size_t i = 0; i < d.rest.size(); ++i) {
        std::vector<Vertex> origin;
        const Graph sub = g.induced(d.rest[i], &origin);
        if (auto m = find_wheel_model(sub, ledger.t)) {
            for (VertexSet& s : m->branch_sets) {
                VertexSet mapped;
                for (Vertex v : s) mapped.insert(origin[v]);
                s = mapped;
            }
            r.rest_with_wheel.emplace_back(first_rest + static_cast<int>(i), *m);
        }
    }

    r.g_placeholder = ledger.g_placeholder;
    const int n = g.order();
    if (n < 2) {
        r.small_model_checked = true;
        return r;
    }
    const double budget = std::floor(ledger.sigma * std::log2(static_cast<double>(n)) + kEps);
    r.small_model_budget = budget >= n ? n : static_cast<int>(budget);
    if (r.small_model_budget >= n) {
        r.small_model = find_wheel_model(g, ledger.t);
        r.small_model_checked = true;
    } else if (n <= small_model_max_n) {
        r.small_model = find_wheel_model(g, ledger.t, r.small_model_budget);
        r.small_model_checked = true;
    } else {
        r.small_model_skip_reason = "budgeted search skipped: n = " + std::to_string(n) + " exceeds " +
                                    std::to_string(small_model_max_n);
    }
    return r;
}

SeparatorReport separator_audit(const Graph& g, const PieceDecomposition& d, const AuxiliaryGraphs& aux,
                                const ConstantsLedger& ledger, int piece) {
    if (piece < 0 || piece >= d.piece_count()) throw PreconditionError("separator_audit: unknown piece");
    if (d.kind(piece) == PieceKind::rest) throw PreconditionError("separator_audit: piece is not a cycle or path");
    if (aux.central_index(piece) < 0) throw PreconditionError("separator_audit: piece is not central");

    SeparatorReport r;
    r.piece = piece;
    r.q = d.kind(piece) == PieceKind::cycle ? ledger.t : static_cast<int>(ledger.c1);
    r.x_bound = 2.0 * r.q * ledger.phi * ledger.phi;
    const VertexSet k = d.vertices(piece);
    const auto is_central = [&](int id) { return aux.central_index(id) >= 0; };

    std::vector<int> neighbors;
    for (const auto& [a, b] : aux.hb_edges) {
        if (a == piece) neighbors.push_back(b);
        if (b == piece) neighbors.push_back(a);
    }
    std::sort(neighbors.begin(), neighbors.end());

    r.all_below_q = true;
    for (int other : neighbors) {
        NeighborSeparation ns;
        ns.neighbor = other;
        const VertexSet ko = d.vertices(other);
        ns.region = k | ko;
        for (int id = 0; id < d.piece_count(); ++id) {
            if (d.kind(id) != PieceKind::rest || is_central(id)) continue;
            const VertexSet rv = d.vertices(id);
            if (g.neighbors(rv).intersects(k) && g.neighbors(rv).intersects(ko)) {
                ns.via.push_back(id);
                ns.region |= rv;
            }
        }
        std::vector<Vertex> origin;
        const Graph sub = g.induced(ns.region, &origin);
        VertexSet a;
        VertexSet b;
        for (std::size_t i = 0; i < origin.size(); ++i) {
            if (k.contains(origin[i])) a.insert(static_cast<Vertex>(i));
            if (ko.contains(origin[i])) b.insert(static_cast<Vertex>(i));
        }
        PathsAndSeparator local = menger(sub, a, b);
        for (auto& path : local.paths) {
            for (Vertex& v : path) v = origin[v];
        }
        VertexSet sep;
        for (Vertex v : local.separator) sep.insert(origin[v]);
        local.separator = sep;
        ns.menger = std::move(local);
        ns.below_q = ns.menger.separator.size() < r.q;
        const VertexSet left = ns.region - sep;
        ns.separator_verified = !reachable(g, k - sep, left).intersects(ko);
        r.all_below_q = r.all_below_q && ns.below_q;
        r.x |= sep;
        r.per_neighbor.push_back(std::move(ns));
    }
    const VertexSet outside = g.vertices() - r.x;
    r.j = reachable(g, k - r.x, outside);
    r.x_within_bound = r.x.size() <= r.x_bound + kEps;
    r.j_separated = (g.neighbors(r.j) - r.j).subset_of(r.x);
    return r;
}

nlohmann::json to_json(const PieceDecomposition& d, const AuxiliaryGraphs& aux) {
    nlohmann::json j;
    j["cycles"] = d.cycles;
    j["paths"] = d.paths;
    nlohmann::json rest = nlohmann::json::array();
    for (VertexSet s : d.rest) rest.push_back(s.to_vector());
    j["rest"] = rest;
    j["central"] = aux.central;
    nlohmann::json hs = nlohmann::json::array();
    for (const auto& e : aux.hs_edges) {
        hs.push_back({e.a, e.b, e.label ? nlohmann::json(*e.label) : nlohmann::json(nullptr)});
    }
    j["hs"] = hs;
    nlohmann::json hb = nlohmann::json::array();
    for (const auto& [a, b] : aux.hb_edges) hb.push_back({a, b});
    j["hb"] = hb;
    return j;
}

nlohmann::json to_json(const ClaimsReport& r) {
    nlohmann::json rest = nlohmann::json::array();
    for (const auto& [piece, m] : r.rest_with_wheel) rest.push_back({{"piece", piece}, {"model", to_json(m)}});
    nlohmann::json small = {{"budget", r.small_model_budget}, {"checked", r.small_model_checked}};
    if (!r.small_model_skip_reason.empty()) small["skip_reason"] = r.small_model_skip_reason;
    small["model"] = r.small_model ? to_json(*r.small_model) : nlohmann::json(nullptr);
    return {{"avg_degree_hs", r.avg_degree_hs},
            {"avg_degree_hb", r.avg_degree_hb},
            {"degree_ratio_holds", r.degree_ratio_holds},
            {"low_degree_central_rest", r.low_degree_central_rest},
            {"hs_within_hb", r.hs_within_hb},
            {"rest_with_wheel", rest},
            {"small_model", small},
            {"g_placeholder", r.g_placeholder},
            {"all_pass", r.all_pass()}};
}

nlohmann::json to_json(const SeparatorReport& r) {
    nlohmann::json per = nlohmann::json::array();
    for (const auto& ns : r.per_neighbor) {
        per.push_back({{"neighbor", ns.neighbor},
                       {"via", ns.via},
                       {"separator", ns.menger.separator.to_vector()},
                       {"paths", ns.menger.paths},
                       {"below_q", ns.below_q},
                       {"separator_verified", ns.separator_verified}});
    }
    return {{"piece", r.piece},
            {"q", r.q},
            {"per_neighbor", per},
            {"x", r.x.to_vector()},
            {"j", r.j.to_vector()},
            {"x_bound", r.x_bound},
            {"x_within_bound", r.x_within_bound},
            {"all_below_q", r.all_below_q},
            {"j_separated", r.j_separated}};
}

std::string hs_to_dot(const AuxiliaryGraphs& aux) {
    std::ostringstream os;
    os << "graph Hs {\n";
    for (int c : aux.central) os << "  " << c << ";\n";
    for (const auto& e : aux.hs_edges) {
        os << "  " << e.a << " -- " << e.b;
        if (e.label) os << " [label=\"" << *e.label << "\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

std::string hb_to_dot(const AuxiliaryGraphs& aux) {
    std::ostringstream os;
    os << "graph Hb {\n";
    for (int c : aux.central) os << "  " << c << ";\n";
    for (const auto& [a, b] : aux.hb_edges) os << "  " << a << " -- " << b << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace wheelep
