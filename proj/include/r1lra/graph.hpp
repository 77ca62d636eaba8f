#pragma once

#include <utility>
#include <vector>

namespace r1lra {

/// Undirected simple graph on vertices 0..num_vertices-1.
/// Edges keep their construction order; endpoints are normalized to first < second.
/// Text files use 1-based vertex labels.
struct Graph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

/// Validates vertex ranges, rejects self-loops and duplicates, normalizes endpoints.
Graph make_graph(int num_vertices, std::vector<std::pair<int, int>> edges);

/// Bipartite graph with left vertices 0..left_size-1 and right vertices 0..right_size-1.
struct BipartiteGraph {
  int left_size = 0;
  int right_size = 0;
  std::vector<std::pair<int, int>> edges;
};

BipartiteGraph make_bipartite(int left_size, int right_size,
                              std::vector<std::pair<int, int>> edges);

}  // namespace r1lra
