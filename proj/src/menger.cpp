#include "wheelep/menger.hpp"

#include <algorithm>
#include <queue>

namespace wheelep {

namespace {

// Node layout: v_in = 2v, v_out = 2v + 1, source = 2n, sink = 2n + 1.
class FlowNetwork {
public:
    explicit FlowNetwork(int nodes)
        : nodes_(nodes), cap_(static_cast<std::size_t>(nodes * nodes), 0) {}

    int& cap(int u, int v) { return cap_[static_cast<std::size_t>(u * nodes_ + v)]; }
    int nodes() const { return nodes_; }

    bool augment(int s, int t) {
        std::vector<int> parent(static_cast<std::size_t>(nodes_), -1);
        parent[s] = s;
        std::queue<int> q;
        q.push(s);
        while (!q.empty() && parent[t] < 0) {
            int u = q.front();
            q.pop();
            for (int v = 0; v < nodes_; ++v) {
                if (parent[v] < 0 && cap(u, v) > 0) {
                    parent[v] = u;
                    q.push(v);
                }
            }
        }
        if (parent[t] < 0) return false;
        for (int v = t; v != s; v = parent[v]) {
            --cap(parent[v], v);
            ++cap(v, parent[v]);
        }
        return true;
    }

    std::vector<bool> residual_reach(int s) {
        std::vector<bool> seen(static_cast<std::size_t>(nodes_), false);
        seen[s] = true;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v = 0; v < nodes_; ++v) {
                if (!seen[v] && cap(u, v) > 0) {
                    seen[v] = true;
                    q.push(v);
                }
            }
        }
        return seen;
    }

private:
    int nodes_;
    std::vector<int> cap_;
};

}  // namespace

PathsAndSeparator menger(const Graph& g, VertexSet a, VertexSet b, Disjointness mode) {
    const int n = g.order();
    a &= g.vertices();
    b &= g.vertices();
    const int source = 2 * n;
    const int sink = 2 * n + 1;
    const int big = n + 1;
    const VertexSet terminals = a | b;
    FlowNetwork net(2 * n + 2);

    for (Vertex v = 0; v < n; ++v) {
        const bool uncapped = mode == Disjointness::internal && terminals.contains(v);
        net.cap(2 * v, 2 * v + 1) = uncapped ? big : 1;
    }
    for (auto [u, v] : g.edges()) {
        // Edge arcs are uncuttable except direct terminal-terminal edges in
        // internal mode, so every minimum cut is a vertex cut.
        int c = big;
        if (mode == Disjointness::internal) {
            const bool direct = (a.contains(u) && b.contains(v)) || (a.contains(v) && b.contains(u));
            c = direct ? 1 : big;
        }
        net.cap(2 * u + 1, 2 * v) = c;
        net.cap(2 * v + 1, 2 * u) = c;
    }
    for (Vertex v : a) net.cap(source, 2 * v) = big;
    for (Vertex v : b) net.cap(2 * v + 1, sink) = big;

    std::vector<int> base(static_cast<std::size_t>(net.nodes() * net.nodes()));
    for (int u = 0; u < net.nodes(); ++u)
        for (int v = 0; v < net.nodes(); ++v) base[static_cast<std::size_t>(u * net.nodes() + v)] = net.cap(u, v);

    while (net.augment(source, sink)) {
    }

    auto flow_on = [&](int u, int v) {
        return base[static_cast<std::size_t>(u * net.nodes() + v)] - net.cap(u, v);
    };

    PathsAndSeparator out;
    // Decompose the flow into paths; in internal mode a terminal may carry
    // several units, so each walk consumes one unit per arc it uses.
    std::vector<int> remaining(base.size());
    for (int u = 0; u < net.nodes(); ++u)
        for (int v = 0; v < net.nodes(); ++v)
            remaining[static_cast<std::size_t>(u * net.nodes() + v)] = std::max(0, flow_on(u, v));
    auto rem = [&](int u, int v) -> int& { return remaining[static_cast<std::size_t>(u * net.nodes() + v)]; };
    for (Vertex start : a) {
        while (rem(source, 2 * start) > 0) {
            --rem(source, 2 * start);
            std::vector<Vertex> path;
            int node = 2 * start;
            while (node != sink) {
                int next = -1;
                for (int w = 0; w < net.nodes(); ++w) {
                    if (rem(node, w) > 0) {
                        next = w;
                        break;
                    }
                }
                --rem(node, next);
                if (node % 2 == 0 && node < 2 * n) {
                    const Vertex v = node / 2;
                    // Cut out any circulation the walk picked up.
                    auto again = std::find(path.begin(), path.end(), v);
                    if (again != path.end()) path.erase(again, path.end());
                    path.push_back(v);
                }
                node = next;
            }
            // Keep the segment from the last a-vertex to the first b-vertex after it.
            std::size_t from = 0;
            for (std::size_t i = 0; i < path.size(); ++i)
                if (a.contains(path[i])) from = i;
            std::size_t to = from;
            while (!b.contains(path[to])) ++to;
            out.paths.emplace_back(path.begin() + static_cast<std::ptrdiff_t>(from),
                                   path.begin() + static_cast<std::ptrdiff_t>(to) + 1);
        }
    }
    std::sort(out.paths.begin(), out.paths.end());

    const auto seen = net.residual_reach(source);
    for (Vertex v = 0; v < n; ++v) {
        if (seen[2 * v] && !seen[2 * v + 1] && base[static_cast<std::size_t>(2 * v * net.nodes() + 2 * v + 1)] == 1) {
            out.separator.insert(v);
        }
    }
    if (mode == Disjointness::internal) {
        for (auto [u, v] : g.edges()) {
            if ((seen[2 * u + 1] && !seen[2 * v]) || (seen[2 * v + 1] && !seen[2 * u])) {
                out.cut_edges.emplace_back(u, v);
            }
        }
    }
    return out;
}

}  // namespace wheelep
