#pragma once

// Wheel-minor search internals shared by the minor engine and the packing
// solvers. Everything works on an induced subgraph G[mask] of a host graph
// without relabelling.

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "wheelep/deadline.hpp"
#include "wheelep/graph.hpp"
#include "wheelep/model.hpp"

namespace wheelep::detail {

/// Result of exhaustively deleting degree <= 1 vertices and suppressing
/// degree-2 vertices of G[mask]. Both operations preserve the existence of
/// a minor of any pattern with minimum degree 3 (wheels, unions of wheels).
/// A nonempty kernel has minimum degree >= 3 and therefore a K4 minor.
struct Kernel {
    Graph graph;        // same vertex ids as the host; only `alive` matter
    VertexSet alive;
    // Interior of the host path behind each suppressed-into edge, oriented
    // from the smaller endpoint to the larger.
    std::map<Edge, std::vector<Vertex>> paths;
};

Kernel reduce_to_kernel(const Graph& g, VertexSet mask, bool track_paths);

/// A rim cycle plus a disjoint connected hub set with >= t neighbours on it.
struct WheelWitness {
    std::vector<Vertex> cycle;
    VertexSet hub;

    VertexSet vertex_set() const { return VertexSet::from(cycle) | hub; }
};

/// Enumerates every cycle of G[mask] with at most `max_len` vertices once.
/// The visitor returns false to stop; the function then returns false.
bool for_each_cycle(const Graph& g, VertexSet mask, int max_len,
                    const std::function<bool(const std::vector<Vertex>&, VertexSet)>& visit,
                    DeadlinePoll& poll);

/// Every model vertex set C + T of size <= max_size where T is an
/// inclusion-minimal hub for cycle C. With `must`, only sets containing it.
/// Covers every inclusion-minimal W_t-model vertex set within the size bound
/// (duplicates possible).
bool for_each_wheel_set(const Graph& g, VertexSet mask, int t, int max_size, std::optional<Vertex> must,
                        const std::function<bool(VertexSet)>& visit, const Deadline& deadline);

/// Exact search on G[mask]. With a budget only witnesses with
/// |cycle| + |hub| <= budget qualify and the search is complete for that
/// bound; without one the hub is a component shrunk greedily.
std::optional<WheelWitness> find_wheel_witness(const Graph& g, VertexSet mask, int t,
                                               std::optional<int> budget, const Deadline& deadline);

/// Splits the cycle into t arcs, one per chosen attachment, in cyclic order.
Model witness_to_model(const Graph& g, const WheelWitness& w, int t);

/// Kernelises, searches the kernel and lifts the model back to host ids.
/// With a budget the search runs on G[mask] directly so sizes are exact.
std::optional<Model> find_wheel_in(const Graph& g, VertexSet mask, int t, std::optional<int> budget,
                                   const Deadline& deadline);

bool wheel_minor_free(const Graph& g, VertexSet mask, int t, const Deadline& deadline);

}  // namespace wheelep::detail
