#include "r1lra/community.hpp"

#include <algorithm>

namespace r1lra {

Matrix biadjacency(const BipartiteGraph& g) {
  Matrix m = Matrix::Zero(g.left_size, g.right_size);
  for (const auto& [s, t] : g.edges) m(s, t) = 1.0;
  return m;
}

BipartiteGraph from_biadjacency(const Matrix& m) {
  require_binary(m, "from_biadjacency");
  BipartiteGraph g;
  g.left_size = (int)m.rows();
  g.right_size = (int)m.cols();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j) == 1.0) g.edges.emplace_back((int)i, (int)j);
  return g;
}

CommunityScore community_score(const BipartiteGraph& g, std::span<const int> left_subset,
                               std::span<const int> right_subset) {
  std::vector<char> in_left(g.left_size, 0), in_right(g.right_size, 0);
  for (int s : left_subset) {
    if (s < 0 || s >= g.left_size)
      throw std::invalid_argument("community_score: left index out of range");
    in_left[s] = 1;
  }
  for (int t : right_subset) {
    if (t < 0 || t >= g.right_size)
      throw std::invalid_argument("community_score: right index out of range");
    in_right[t] = 1;
  }
  const long s_size = std::count(in_left.begin(), in_left.end(), 1);
  const long t_size = std::count(in_right.begin(), in_right.end(), 1);
  long inside = 0;
  for (const auto& [s, t] : g.edges)
    if (in_left[s] && in_right[t]) ++inside;
  const long total = (long)g.edges.size();
  CommunityScore score;
  score.edges_inside = inside;
  score.mismatches = total + s_size * t_size - 2 * inside;
  score.density_score = 3 * inside - s_size * t_size - total;
  return score;
}

namespace {

std::vector<int> support(const Vector& x) {
  std::vector<int> out;
  for (Index i = 0; i < x.size(); ++i)
    if (x(i) == 1.0) out.push_back((int)i);
  return out;
}

}  // namespace

CommunityResult extract_community(const Matrix& m, const SolverConfig& cfg, ExtractMode mode,
                                  const EnumerationConfig& enum_cfg) {
  require_binary(m, "extract_community");
  RankOneFactors factors;
  if (mode == ExtractMode::exact) {
    const OracleResult r = bmf_rank1_exact(m, enum_cfg);
    factors = {r.u_star, r.v_star};
  } else {
    const PowerIterationResult pi = power_iteration_rank1(m, cfg);
    const BinaryDescentResult bd = bmf_alternating(m, threshold_to_binary(pi.factors), cfg);
    factors = bd.factors;
  }
  CommunityResult res;
  res.left_subset = support(factors.u);
  res.right_subset = support(factors.v);
  res.score = community_score(from_biadjacency(m), res.left_subset, res.right_subset);
  return res;
}

}  // namespace r1lra
