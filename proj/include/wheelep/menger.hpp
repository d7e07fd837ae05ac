#pragma once

#include <vector>

#include "wheelep/graph.hpp"

namespace wheelep {

enum class Disjointness {
    /// Paths share no vertex at all, endpoints included. A vertex of a ∩ b
    /// is a path of length zero.
    vertex,
    /// Paths may share endpoints in a or b but no interior vertex.
    internal,
};

struct PathsAndSeparator {
    std::vector<std::vector<Vertex>> paths;
    /// Minimum vertex separator. Under Disjointness::internal it holds only
    /// interior vertices; direct a-b edges are listed in `cut_edges`.
    VertexSet separator;
    std::vector<Edge> cut_edges;
};

/// Maximum family of disjoint a-b paths with a matching minimum separator,
/// via unit-vertex-capacity max-flow on the split graph.
PathsAndSeparator menger(const Graph& g, VertexSet a, VertexSet b,
                         Disjointness mode = Disjointness::vertex);

}  // namespace wheelep
