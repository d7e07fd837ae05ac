#pragma once

#include <optional>

#include "wheelep/deadline.hpp"
#include "wheelep/graph.hpp"
#include "wheelep/model.hpp"

namespace wheelep {

/// Exact H-minor search by recursive branch-set assignment.
///
/// Pattern vertices are placed highest degree first, each next one being the
/// vertex with most already-placed neighbours. A branch set is a connected
/// set grown from a root next to an already-placed neighbour; after each
/// placement every unplaced pattern vertex must still see a component of the
/// unused vertices that touches all of its placed neighbours.
std::optional<Model> find_minor_model(const Graph& g, const Graph& h, const Deadline& deadline = {});

/// W_t-model search specialised to rim cycle + hub tree structure.
///
/// Without a budget the graph is first reduced (degree <= 1 deletion,
/// degree-2 suppression); an empty or too small kernel proves absence. With a
/// budget, only models on at most `budget` vertices qualify and the search is
/// exact for that bound. Throws std::invalid_argument for t < 3.
std::optional<Model> find_wheel_model(const Graph& g, int t, std::optional<int> budget = std::nullopt,
                                      const Deadline& deadline = {});

/// Best-effort K_t model biased towards few vertices. A returned model is
/// always verified; nullopt does not prove K_t-minor-freeness.
std::optional<Model> small_clique_model(const Graph& g, int t, const Deadline& deadline = {});

Graph complete_graph(int n);

}  // namespace wheelep
