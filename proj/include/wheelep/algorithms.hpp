#pragma once

#include <optional>
#include <vector>

#include "wheelep/graph.hpp"

namespace wheelep {

/// Vertices reachable from `from` inside `within` (`from` is clipped to it).
VertexSet reachable(const Graph& g, VertexSet from, VertexSet within);
VertexSet reachable(const Graph& g, VertexSet from);

bool is_connected(const Graph& g, VertexSet s);

/// Maximal connected subsets of `within`, ordered by smallest member.
std::vector<VertexSet> components(const Graph& g, VertexSet within);
std::vector<VertexSet> components(const Graph& g);

/// Length of a shortest cycle; nullopt for forests (infinite girth).
std::optional<int> girth(const Graph& g);

/// Iteratively strips vertices of degree <= 1 from G[within].
VertexSet two_core(const Graph& g, VertexSet within);

/// BFS shortest path from any vertex of `from` to any vertex of `to`,
/// staying inside `within`. Empty when none exists.
std::vector<Vertex> shortest_path(const Graph& g, VertexSet from, VertexSet to, VertexSet within);

}  // namespace wheelep
