#include "wheelep/treewidth.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "wheelep/algorithms.hpp"

namespace wheelep {

namespace {

// Width of the min-fill elimination ordering.
int min_fill_width(const Graph& g) {
    const int n = g.order();
    std::vector<VertexSet> adj(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) adj[v] = g.neighbors(v);
    VertexSet alive = g.vertices();
    int width = 0;
    while (!alive.empty()) {
        Vertex pick = -1;
        int best_fill = 0;
        for (Vertex v : alive) {
            const VertexSet nb = adj[v] & alive;
            int fill = 0;
            for (Vertex u : nb) fill += (nb - adj[u]).size() - 1;
            if (pick < 0 || fill < best_fill) {
                pick = v;
                best_fill = fill;
            }
        }
        const VertexSet nb = adj[pick] & alive;
        width = std::max(width, nb.size());
        for (Vertex u : nb) adj[u] |= nb - VertexSet::singleton(u);
        alive.erase(pick);
    }
    return width;
}

// Max over subgraphs of the minimum degree.
int degeneracy(const Graph& g) {
    VertexSet alive = g.vertices();
    int best = 0;
    while (!alive.empty()) {
        Vertex pick = alive.first();
        for (Vertex v : alive) {
            if ((g.neighbors(v) & alive).size() < (g.neighbors(pick) & alive).size()) pick = v;
        }
        best = std::max(best, (g.neighbors(pick) & alive).size());
        alive.erase(pick);
    }
    return best;
}

class EliminationSearch {
public:
    explicit EliminationSearch(const Graph& g)
        : g_(g), memo_(std::size_t{1} << g.order(), kUnknown) {}

    // Best width of eliminating the vertices of `eliminated` first, i.e. the
    // classic TW(S) recurrence.
    int solve(std::uint64_t eliminated) {
        if (eliminated == 0) return -1;
        auto& slot = memo_[eliminated];
        if (slot != kUnknown) return slot;
        int best = kInfinite;
        const VertexSet s(eliminated);
        for (Vertex v : s) {
            VertexSet rest = s;
            rest.erase(v);
            const int q = frontier_size(rest, v);
            if (q >= best) continue;
            const int sub = solve(rest.bits());
            best = std::min(best, std::max(sub, q));
        }
        slot = static_cast<std::int8_t>(best);
        return best;
    }

private:
    static constexpr std::int8_t kUnknown = -2;
    static constexpr int kInfinite = 127;

    // |Q(S, v)|: vertices outside S + v reachable from v through S.
    int frontier_size(VertexSet s, Vertex v) const {
        const VertexSet through = reachable(g_, VertexSet::singleton(v), s | VertexSet::singleton(v));
        VertexSet q = g_.neighbors(through);
        q -= s;
        q.erase(v);
        return q.size();
    }

    const Graph& g_;
    std::vector<std::int8_t> memo_;
};

}  // namespace

int treewidth_exact(const Graph& g, int cap) {
    if (g.order() > cap) {
        throw std::length_error("treewidth_exact: order " + std::to_string(g.order()) +
                                " exceeds cap " + std::to_string(cap));
    }
    if (g.order() == 0) return 0;
    // Treewidth is the max over components.
    int width = 0;
    for (VertexSet comp : components(g)) {
        if (comp.size() == 1) continue;
        const Graph sub = g.induced(comp);
        const int upper = min_fill_width(sub);
        const int lower = degeneracy(sub);
        if (upper == lower) {
            width = std::max(width, upper);
            continue;
        }
        EliminationSearch search(sub);
        width = std::max(width, search.solve(sub.vertices().bits()));
    }
    return width;
}

}  // namespace wheelep
