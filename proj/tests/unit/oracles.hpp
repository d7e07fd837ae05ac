#pragma once

// Brute-force reference implementations used only by the tests. They work on
// plain adjacency matrices and never call into the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "wheelep/graph.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<bool>>;

inline Matrix matrix(const wheelep::Graph& g) {
    Matrix a(g.order(), std::vector<bool>(g.order(), false));
    for (auto [u, v] : g.edges()) a[u][v] = a[v][u] = true;
    return a;
}

inline bool connected(const Matrix& a, std::uint64_t s) {
    if (s == 0) return false;
    std::uint64_t seen = s & -s;
    std::uint64_t frontier = seen;
    while (frontier) {
        std::uint64_t next = 0;
        for (int v = 0; v < (int)a.size(); ++v) {
            if (!((frontier >> v) & 1)) continue;
            for (int w = 0; w < (int)a.size(); ++w)
                if (a[v][w] && ((s >> w) & 1) && !((seen >> w) & 1)) next |= std::uint64_t{1} << w;
        }
        seen |= next;
        frontier = next;
    }
    return seen == s;
}

/// K4-minor containment by series-parallel reduction of G[keep]: delete
/// vertices of degree <= 1, replace degree-2 vertices by an edge between
/// their neighbours. The graph is K4-minor-free iff this empties it.
inline bool has_k4_minor(const wheelep::Graph& g, std::uint64_t keep) {
    std::vector<std::set<int>> adj(g.order());
    for (auto [u, v] : g.edges())
        if (((keep >> u) & 1) && ((keep >> v) & 1)) {
            adj[u].insert(v);
            adj[v].insert(u);
        }
    std::vector<bool> alive(g.order(), false);
    for (int v = 0; v < g.order(); ++v) alive[v] = (keep >> v) & 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < g.order(); ++v) {
            if (!alive[v] || adj[v].size() > 2) continue;
            if (adj[v].size() == 2) {
                int a = *adj[v].begin(), b = *adj[v].rbegin();
                adj[a].insert(b);
                adj[b].insert(a);
            }
            for (int w : adj[v]) adj[w].erase(v);
            adj[v].clear();
            alive[v] = false;
            changed = true;
        }
    }
    return std::any_of(alive.begin(), alive.end(), [](bool x) { return x; });
}

inline bool has_k4_minor(const wheelep::Graph& g) {
    return has_k4_minor(g, g.order() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.order()) - 1);
}

/// Generic minor test by trying every labelling of V(G) with {unused} plus
/// the vertices of H. Exponential; for graphs on at most ~8 vertices.
inline bool has_minor_bruteforce(const wheelep::Graph& g, const wheelep::Graph& h) {
    const int n = g.order(), k = h.order();
    if (k > n) return false;
    Matrix a = matrix(g);
    auto he = h.edges();
    std::vector<int> label(n, 0);
    while (true) {
        std::vector<std::uint64_t> sets(k, 0);
        for (int v = 0; v < n; ++v)
            if (label[v] > 0) sets[label[v] - 1] |= std::uint64_t{1} << v;
        bool ok = true;
        for (int x = 0; x < k && ok; ++x) ok = connected(a, sets[x]);
        for (auto [x, y] : he) {
            if (!ok) break;
            bool link = false;
            for (int u = 0; u < n && !link; ++u)
                for (int v = 0; v < n && !link; ++v)
                    link = a[u][v] && ((sets[x] >> u) & 1) && ((sets[y] >> v) & 1);
            ok = link;
        }
        if (ok) return true;
        int i = 0;
        while (i < n && ++label[i] > k) label[i++] = 0;
        if (i == n) return false;
    }
}

/// Every simple cycle length present in G[keep].
inline std::set<int> cycle_lengths(const wheelep::Graph& g, std::uint64_t keep) {
    Matrix a = matrix(g);
    const int n = g.order();
    std::set<int> out;
    std::vector<bool> on(n, false);
    std::function<void(int, int, int)> dfs = [&](int start, int v, int len) {
        for (int w = start; w < n; ++w) {
            if (!a[v][w] || !((keep >> w) & 1)) continue;
            if (w == start && len >= 3) out.insert(len);
            if (w > start && !on[w]) {
                on[w] = true;
                dfs(start, w, len + 1);
                on[w] = false;
            }
        }
    };
    for (int s = 0; s < n; ++s) {
        if (!((keep >> s) & 1)) continue;
        on[s] = true;
        dfs(s, s, 1);
        on[s] = false;
    }
    return out;
}

/// Length in edges of a longest path in G[keep].
inline int longest_path(const wheelep::Graph& g, std::uint64_t keep) {
    Matrix a = matrix(g);
    const int n = g.order();
    int best = 0;
    std::vector<bool> on(n, false);
    std::function<void(int, int)> dfs = [&](int v, int len) {
        best = std::max(best, len);
        for (int w = 0; w < n; ++w)
            if (a[v][w] && ((keep >> w) & 1) && !on[w]) {
                on[w] = true;
                dfs(w, len + 1);
                on[w] = false;
            }
    };
    for (int s = 0; s < n; ++s)
        if ((keep >> s) & 1) {
            on[s] = true;
            dfs(s, 0);
            on[s] = false;
        }
    return best;
}

/// True iff deleting `x` leaves no path from `a` to `b`. Vertices of a or b
/// inside x are deleted too.
inline bool separates(const wheelep::Graph& g, std::uint64_t a, std::uint64_t b, std::uint64_t x) {
    Matrix m = matrix(g);
    std::uint64_t seen = a & ~x, frontier = seen;
    while (frontier) {
        std::uint64_t next = 0;
        for (int v = 0; v < g.order(); ++v)
            if ((frontier >> v) & 1)
                for (int w = 0; w < g.order(); ++w)
                    if (m[v][w] && !((x >> w) & 1) && !((seen >> w) & 1)) next |= std::uint64_t{1} << w;
        seen |= next;
        frontier = next;
    }
    return (seen & b) == 0;
}

/// Minimum vertex cut between a and b (a, b themselves may be cut).
inline int min_separator_bruteforce(const wheelep::Graph& g, std::uint64_t a, std::uint64_t b) {
    const int n = g.order();
    int best = n;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        int s = __builtin_popcountll(x);
        if (s < best && separates(g, a, b, x)) best = s;
    }
    return best;
}

/// Inclusion-minimal vertex sets S with G[S] connected and containing K4.
inline std::vector<std::uint64_t> minimal_k4_sets(const wheelep::Graph& g) {
    const int n = g.order();
    Matrix a = matrix(g);
    std::vector<std::uint64_t> hits;
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s)
        if (__builtin_popcountll(s) >= 4 && connected(a, s) && has_k4_minor(g, s)) hits.push_back(s);
    std::vector<std::uint64_t> minimal;
    for (auto s : hits) {
        bool ok = true;
        for (int v = 0; v < n && ok; ++v)
            if (((s >> v) & 1) && has_k4_minor(g, s & ~(std::uint64_t{1} << v))) ok = false;
        if (ok) minimal.push_back(s);
    }
    return minimal;
}

/// Maximum number of pairwise disjoint sets in `sets`.
inline int max_disjoint(const std::vector<std::uint64_t>& sets) {
    int best = 0;
    std::function<void(std::size_t, std::uint64_t, int)> rec = [&](std::size_t i, std::uint64_t used, int count) {
        best = std::max(best, count);
        for (std::size_t j = i; j < sets.size(); ++j)
            if (!(sets[j] & used)) rec(j + 1, used | sets[j], count + 1);
    };
    rec(0, 0, 0);
    return best;
}

/// Smallest |X| with G - X K4-minor-free, by subset enumeration.
inline int k4_transversal_bruteforce(const wheelep::Graph& g) {
    const int n = g.order();
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    int best = n;
    for (std::uint64_t x = 0; x <= all; ++x) {
        int s = __builtin_popcountll(x);
        if (s < best && !has_k4_minor(g, all & ~x)) best = s;
    }
    return best;
}

}  // namespace oracle
