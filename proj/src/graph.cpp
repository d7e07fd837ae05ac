#include "wheelep/graph.hpp"

#include <string>

namespace wheelep {

Graph::Graph(int n) : n_(n) {
    if (n < 0 || n > kMaxVertices) {
        throw std::length_error("graph order " + std::to_string(n) + " outside [0, " +
                                std::to_string(kMaxVertices) + "]");
    }
    adj_.assign(static_cast<std::size_t>(n), VertexSet{});
}

Graph Graph::from_edges(int n, const std::vector<Edge>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

void Graph::check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) {
        throw std::out_of_range("vertex " + std::to_string(v) + " not in graph of order " +
                                std::to_string(n_));
    }
}

VertexSet Graph::neighbors(VertexSet s) const {
    VertexSet out;
    for (Vertex v : s) out |= adj_[v];
    return out - s;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (Vertex u = 0; u < n_; ++u) {
        for (Vertex v : adj_[u]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

void Graph::add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("loop at vertex " + std::to_string(u));
    if (adj_[u].contains(v)) return;
    adj_[u].insert(v);
    adj_[v].insert(u);
    ++m_;
}

void Graph::remove_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (!adj_[u].contains(v)) {
        throw std::out_of_range("no edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    adj_[u].erase(v);
    adj_[v].erase(u);
    --m_;
}

Graph Graph::induced(VertexSet keep, std::vector<Vertex>* origin) const {
    keep &= vertices();
    std::vector<Vertex> ids(static_cast<std::size_t>(n_), -1);
    int next = 0;
    for (Vertex v : keep) ids[v] = next++;
    Graph out(next);
    for (Vertex u : keep) {
        for (Vertex v : adj_[u] & keep) {
            if (u < v) out.add_edge(ids[u], ids[v]);
        }
    }
    if (origin) *origin = keep.to_vector();
    return out;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph out(a.order() + b.order());
    for (auto [u, v] : a.edges()) out.add_edge(u, v);
    for (auto [u, v] : b.edges()) out.add_edge(u + a.order(), v + a.order());
    return out;
}

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace

Graph apply_minor_op(const Graph& g, const MinorOp& op) {
    auto need_vertex = [&](Vertex v) {
        if (v < 0 || v >= g.order()) throw std::out_of_range("no vertex " + std::to_string(v));
    };
    auto need_edge = [&](Vertex u, Vertex v) {
        need_vertex(u);
        need_vertex(v);
        if (!g.has_edge(u, v)) {
            throw std::out_of_range("no edge " + std::to_string(u) + "-" + std::to_string(v));
        }
    };
    return std::visit(
        overloaded{
            [&](const DeleteVertex& d) {
                need_vertex(d.v);
                VertexSet keep = g.vertices();
                keep.erase(d.v);
                return g.induced(keep);
            },
            [&](const DeleteEdge& d) {
                need_edge(d.u, d.v);
                Graph out = g;
                out.remove_edge(d.u, d.v);
                return out;
            },
            [&](const ContractEdge& c) {
                need_edge(c.u, c.v);
                Vertex keep_v = std::min(c.u, c.v);
                Vertex drop_v = std::max(c.u, c.v);
                Graph merged = g;
                for (Vertex w : g.neighbors(drop_v)) {
                    if (w != keep_v) merged.add_edge(keep_v, w);
                }
                VertexSet keep = g.vertices();
                keep.erase(drop_v);
                return merged.induced(keep);
            },
        },
        op);
}

std::vector<MinorOp> all_minor_ops(const Graph& g) {
    std::vector<MinorOp> ops;
    for (Vertex v = 0; v < g.order(); ++v) ops.emplace_back(DeleteVertex{v});
    const auto es = g.edges();
    for (auto [u, v] : es) ops.emplace_back(DeleteEdge{u, v});
    for (auto [u, v] : es) ops.emplace_back(ContractEdge{u, v});
    return ops;
}

std::string describe(const MinorOp& op) {
    return std::visit(overloaded{
                          [](const DeleteVertex& d) { return "delete_vertex " + std::to_string(d.v); },
                          [](const DeleteEdge& d) {
                              return "delete_edge " + std::to_string(d.u) + "-" + std::to_string(d.v);
                          },
                          [](const ContractEdge& c) {
                              return "contract_edge " + std::to_string(c.u) + "-" + std::to_string(c.v);
                          },
                      },
                      op);
}

}  // namespace wheelep
