#include "wheelep/algorithms.hpp"

#include <array>
#include <limits>

namespace wheelep {

VertexSet reachable(const Graph& g, VertexSet from, VertexSet within) {
    VertexSet seen = from & within;
    VertexSet frontier = seen;
    while (!frontier.empty()) {
        VertexSet next = g.neighbors(frontier) & within;
        next -= seen;
        seen |= next;
        frontier = next;
    }
    return seen;
}

VertexSet reachable(const Graph& g, VertexSet from) { return reachable(g, from, g.vertices()); }

bool is_connected(const Graph& g, VertexSet s) {
    if (s.empty()) return true;
    return reachable(g, VertexSet::singleton(s.first()), s) == s;
}

std::vector<VertexSet> components(const Graph& g, VertexSet within) {
    std::vector<VertexSet> out;
    VertexSet rest = within & g.vertices();
    while (!rest.empty()) {
        VertexSet c = reachable(g, VertexSet::singleton(rest.first()), rest);
        out.push_back(c);
        rest -= c;
    }
    return out;
}

std::vector<VertexSet> components(const Graph& g) { return components(g, g.vertices()); }

std::optional<int> girth(const Graph& g) {
    const int n = g.order();
    int best = std::numeric_limits<int>::max();
    std::array<int, kMaxVertices> dist{};
    std::array<int, kMaxVertices> parent{};
    std::array<int, kMaxVertices> queue{};
    for (Vertex root = 0; root < n; ++root) {
        dist.fill(-1);
        dist[root] = 0;
        parent[root] = -1;
        int head = 0, tail = 0;
        queue[tail++] = root;
        while (head < tail) {
            const Vertex u = queue[head++];
            if (2 * dist[u] + 1 >= best) break;
            for (Vertex w : g.neighbors(u)) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue[tail++] = w;
                } else if (w != parent[u]) {
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) return std::nullopt;
    return best;
}

VertexSet two_core(const Graph& g, VertexSet within) {
    VertexSet core = within & g.vertices();
    bool changed = true;
    while (changed) {
        changed = false;
        for (Vertex v : core) {
            if ((g.neighbors(v) & core).size() <= 1) {
                core.erase(v);
                changed = true;
            }
        }
    }
    return core;
}

std::vector<Vertex> shortest_path(const Graph& g, VertexSet from, VertexSet to, VertexSet within) {
    std::array<int, kMaxVertices> parent{};
    parent.fill(-2);
    std::array<int, kMaxVertices> queue{};
    int head = 0, tail = 0;
    for (Vertex s : from & within) {
        parent[s] = -1;
        queue[tail++] = s;
    }
    while (head < tail) {
        const Vertex u = queue[head++];
        if (to.contains(u)) {
            std::vector<Vertex> path;
            for (Vertex x = u; x != -1; x = parent[x]) path.push_back(x);
            return {path.rbegin(), path.rend()};
        }
        for (Vertex w : g.neighbors(u) & within) {
            if (parent[w] == -2) {
                parent[w] = u;
                queue[tail++] = w;
            }
        }
    }
    return {};
}

}  // namespace wheelep
