#pragma once

#include <span>
#include <vector>

#include "r1lra/core.hpp"
#include "r1lra/exact.hpp"
#include "r1lra/graph.hpp"
#include "r1lra/heuristics.hpp"

namespace r1lra {

/// M_ij = 1 exactly on edges (s_i, t_j).
Matrix biadjacency(const BipartiteGraph& g);
BipartiteGraph from_biadjacency(const Matrix& m);

struct CommunityScore {
  long edges_inside = 0;   // E(S', T')
  long mismatches = 0;     // |E| + |S'||T'| - 2 E(S',T') == support-count error of the indicators
  long density_score = 0;  // 3 E(S',T') - |S'||T'| - |E|; reported, never optimized
};

/// Scores candidate vertex subsets (0-based indices; duplicates ignored).
CommunityScore community_score(const BipartiteGraph& g, std::span<const int> left_subset,
                               std::span<const int> right_subset);

struct CommunityResult {
  std::vector<int> left_subset;
  std::vector<int> right_subset;
  CommunityScore score;
};

enum class ExtractMode { exact, heuristic };

/// Finds the rank-one all-ones submatrix with the fewest mismatches.
/// Exact mode is the exhaustive solver (subject to its cap); heuristic mode is
/// power-iteration init, binarization, then alternating binary descent.
CommunityResult extract_community(const Matrix& m, const SolverConfig& cfg = {},
                                  ExtractMode mode = ExtractMode::exact,
                                  const EnumerationConfig& enum_cfg = {});

}  // namespace r1lra
