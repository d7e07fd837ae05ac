#pragma once

#include "wheelep/graph.hpp"

namespace wheelep {

inline constexpr int kDefaultTreewidthCap = 16;

/// Exact treewidth by memoised elimination-ordering search over vertex
/// subsets, pruned by a min-fill upper bound and a degeneracy lower bound.
/// Throws std::length_error when g has more than `cap` vertices.
int treewidth_exact(const Graph& g, int cap = kDefaultTreewidthCap);

}  // namespace wheelep
