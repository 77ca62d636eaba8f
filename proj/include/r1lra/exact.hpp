#pragma once

#include <cstdint>
#include <stdexcept>

#include "r1lra/core.hpp"
#include "r1lra/graph.hpp"

namespace r1lra {

/// Limits and worker count for the exhaustive solvers. Results are independent
/// of `threads`: candidate ranges are merged in a fixed order with a
/// deterministic (value, lexicographic certificate) tie-break.
struct EnumerationConfig {
  Index max_rows = 25;   // cap on the enumerated dimension (the shorter matrix side)
  int max_vertices = 24; // cap for maxcut_exact
  int threads = 1;
};

/// Thrown when an instance exceeds the enumeration caps.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exhaustive-search result. The reported value always re-evaluates exactly
/// from the certificates through the canonical objective expression, and the
/// certificate on the enumerated side is the lexicographically smallest
/// optimizer under -1 < 0 < +1 componentwise. When the solver transposes to
/// enumerate the shorter side (rows > cols), that side is v_star.
struct OracleResult {
  double value = 0.0;
  Vector u_star;
  Vector v_star;
  std::uint64_t enumerated = 0;
};

struct MaxCutResult {
  int cut_size = 0;
  IntVector side;  // 0/1 per vertex; lexicographically smallest maximizer
  std::uint64_t enumerated = 0;
};

struct RankRFactorization {
  long value = 0;
  Matrix left;   // m x r binary
  Matrix right;  // r x n binary
  std::uint64_t enumerated = 0;
};

/// max over u in {-1,+1}^m, v in {-1,+1}^n of u^T A v.
/// Enumerates u (halved via the u <-> -u symmetry), v_j = sign((u^T A)_j), ties -> +1.
OracleResult inf1_norm_exact(const Matrix& a, const EnumerationConfig& cfg = {});

/// max over binary u, v of |u^T A v|.
OracleResult cut_norm_exact(const Matrix& a, const EnumerationConfig& cfg = {});

/// min over binary u, v of the number of entries where M != u v^T.
/// Column rule: v_j = 1 iff sum_i |M_ij - u_i| < sum_i M_ij, ties -> 0.
OracleResult bmf_rank1_exact(const Matrix& m, const EnumerationConfig& cfg = {});

/// Exact rank-one support-count approximation of a binary matrix.
/// Delegates to bmf_rank1_exact; the optimum is also optimal over real-valued
/// factor pairs, since replacing factor entries by their support indicators
/// never increases the mismatch count against a binary matrix.
OracleResult l0_lra_rank1_exact(const Matrix& m, const EnumerationConfig& cfg = {});

/// min over real x, y of ||A - x y^T||_1 for a sign matrix A. Optimal values
/// are attained by sign vectors, so the search enumerates x in {-1,+1}^m with
/// y_j = sign((x^T A)_j), ties -> +1. Equals rows*cols - inf1_norm_exact(A).
OracleResult l1_lra_rank1_exact_sign(const Matrix& a, const EnumerationConfig& cfg = {});

/// Maximum number of edges crossing any bipartition.
MaxCutResult maxcut_exact(const Graph& g, const EnumerationConfig& cfg = {});

/// min over binary U (m x r), V (r x n) of the number of entries where
/// M != (U V)_ij, with U V the plain integer product. Toy scale: rows*r <= 20.
RankRFactorization bmf_rank_r_exact(const Matrix& m, int rank,
                                    const EnumerationConfig& cfg = {});

}  // namespace r1lra
