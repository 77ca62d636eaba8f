#include "r1lra/graph.hpp"

#include <set>
#include <stdexcept>
#include <string>

namespace r1lra {

Graph make_graph(int num_vertices, std::vector<std::pair<int, int>> edges) {
  if (num_vertices < 1) throw std::invalid_argument("graph: need at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= num_vertices || b >= num_vertices)
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (a == b) throw std::invalid_argument("graph: self-loops are not allowed");
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second)
      throw std::invalid_argument("graph: duplicate edge (" + std::to_string(a + 1) + ", " +
                                  std::to_string(b + 1) + ")");
  }
  return Graph{num_vertices, std::move(edges)};
}

BipartiteGraph make_bipartite(int left_size, int right_size,
                              std::vector<std::pair<int, int>> edges) {
  if (left_size < 1 || right_size < 1)
    throw std::invalid_argument("bipartite graph: sides must be nonempty");
  std::set<std::pair<int, int>> seen;
  for (const auto& [s, t] : edges) {
    if (s < 0 || s >= left_size || t < 0 || t >= right_size)
      throw std::invalid_argument("bipartite graph: edge endpoint out of range");
    if (!seen.insert({s, t}).second)
      throw std::invalid_argument("bipartite graph: duplicate edge (" + std::to_string(s + 1) +
                                  ", " + std::to_string(t + 1) + ")");
  }
  return BipartiteGraph{left_size, right_size, std::move(edges)};
}

}  // namespace r1lra
