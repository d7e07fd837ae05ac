#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "wheelep/graph.hpp"

namespace wheelep {

enum class GraphFormat { graph6, edgelist };

/// Decodes one graph. graph6 follows the nauty definition bit for bit
/// (an optional ">>graph6<<" header is accepted); edge lists are
/// whitespace-separated "u v" pairs with '#' comments, n = max id + 1.
Graph parse_graph(std::string_view text, GraphFormat format);

std::string to_graph6(const Graph& g);

/// Graphviz rendering, vertices labelled by id.
std::string to_dot(const Graph& g, std::string_view name = "G");

/// All graphs in a stream: one per non-empty line for graph6, the whole
/// stream as one graph for edge lists.
std::vector<Graph> read_graphs(std::istream& in, GraphFormat format);

/// graph6 for ".g6" or ".graph6" paths, edgelist otherwise.
GraphFormat format_for_path(std::string_view path);

}  // namespace wheelep
