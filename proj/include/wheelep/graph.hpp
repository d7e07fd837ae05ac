#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wheelep/errors.hpp"
#include "wheelep/vertex_set.hpp"

namespace wheelep {

using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices 0..n-1 with bitset adjacency rows.
///
/// Loops and parallel edges are rejected at insertion, so every Graph value
/// is simple. Order is limited to kMaxVertices.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    /// Builds a graph from an edge list; duplicate edges collapse, loops throw.
    static Graph from_edges(int n, const std::vector<Edge>& edges);

    int order() const { return n_; }
    int size() const { return m_; }
    VertexSet vertices() const { return VertexSet::range(n_); }

    bool has_edge(Vertex u, Vertex v) const { return adj_[u].contains(v); }
    VertexSet neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return adj_[v].size(); }
    /// Union of neighbourhoods of `s`, excluding `s` itself.
    VertexSet neighbors(VertexSet s) const;

    /// Edges as (u, v) with u < v, in lexicographic order.
    std::vector<Edge> edges() const;

    void add_edge(Vertex u, Vertex v);
    void remove_edge(Vertex u, Vertex v);

    /// Subgraph induced by `keep`, relabelled 0..|keep|-1 in ascending order.
    /// `origin`, if given, receives the original id of each new vertex.
    Graph induced(VertexSet keep, std::vector<Vertex>* origin = nullptr) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    void check_vertex(Vertex v) const;

    int n_ = 0;
    int m_ = 0;
    std::vector<VertexSet> adj_;
};

/// Disjoint union: vertices of `b` are shifted by a.order().
Graph disjoint_union(const Graph& a, const Graph& b);

struct DeleteVertex {
    Vertex v;
};
struct DeleteEdge {
    Vertex u, v;
};
/// Merges v into u; the merged vertex keeps the smaller id before renumbering.
struct ContractEdge {
    Vertex u, v;
};
using MinorOp = std::variant<DeleteVertex, DeleteEdge, ContractEdge>;

/// Applies one elementary minor operation. The result is simple and densely
/// renumbered (the removed vertex's successors shift down by one).
/// Throws std::out_of_range when the vertex or edge does not exist.
Graph apply_minor_op(const Graph& g, const MinorOp& op);

/// Every single delete-vertex, delete-edge and contract-edge minor, in that
/// order, each group in ascending id order.
std::vector<MinorOp> all_minor_ops(const Graph& g);

std::string describe(const MinorOp& op);

}  // namespace wheelep
