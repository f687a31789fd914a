#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace zxmw {

struct ColoredGraph {
  int n = 0;
  bool directed = true;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> colors;  // optional; empty means uncolored
};

// Exact isomorphism by backtracking over degree/color-refined classes.
// Returns the vertex mapping a -> b when the graphs are isomorphic.
// Intended for graphs up to a few hundred vertices; throws when `a` exceeds
// `max_vertices`.
std::optional<std::vector<int>> graph_isomorphism(const ColoredGraph& a,
                                                  const ColoredGraph& b,
                                                  int max_vertices = 400);

bool graphs_isomorphic(const ColoredGraph& a, const ColoredGraph& b,
                       int max_vertices = 400);

}  // namespace zxmw
