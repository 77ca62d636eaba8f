#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "r1lra/core.hpp"
#include "r1lra/exact.hpp"
#include "r1lra/graph.hpp"

namespace r1lra {

/// Support indicator: 0 stays 0, every other value maps to 1 (exact zero test).
Vector binarize_phi(const Vector& x);
Matrix binarize_phi(const Matrix& x);
RankOneFactors binarize_phi(const RankOneFactors& f);

/// The 2m x 2n block matrix [A, -A; -A, A]; every row and column sums to zero.
Matrix cutnorm_doubling(const Matrix& a);

/// Sylvester construction: H(1) = [1], H(p) = [H0, H0; -H0, H0].
/// Requires p a power of two; columns are mutually orthogonal, H^T H = p I.
Matrix hadamard(Index p);

struct GadgetLimits {
  Index max_matrix_rows = Index{1} << 13;
  Index max_matrix_cols = Index{1} << 13;
};

/// Sign matrix encoding a graph cut question as a bilinear-form threshold
/// question. Block row q covers edge q = (i, j) with i < j: block (q, i) is
/// all +1, block (q, j) is all -1, every other block is the p x p Sylvester
/// Hadamard matrix. `sound` records whether p > |E|^2 |V|^2, the regime where
/// the threshold test is faithful in both directions.
struct GadgetInstance {
  Matrix a;
  Index block_size = 0;  // p, a power of two
  int num_vertices = 0;
  int num_edges = 0;
  std::vector<std::pair<int, int>> edges;  // construction order, endpoints i < j
  bool sound = false;

  /// Threshold map d*(c) = 2 p^2 c - |E||V| p^(3/2), with p^(3/2) = p * sqrt(p).
  double d_star(double cut_count) const;
};

/// Builds the gadget with an explicit block size (any power of two; flagged
/// unsound when p <= |E|^2 |V|^2). Refuses instances beyond `limits`.
GadgetInstance maxcut_gadget(const Graph& g, Index block_size, const GadgetLimits& limits = {});

/// Chooses the smallest power of two exceeding |E|^2 |V|^2 (always sound).
GadgetInstance maxcut_gadget_auto(const Graph& g, const GadgetLimits& limits = {});

/// Sign vectors associated with a bipartition: v blocks are +1 on the chosen
/// side, -1 off it; u blocks are +1 / -1 for crossing edges oriented by which
/// endpoint is inside, and always +1 for non-crossing edges.
RankOneFactors embed_cut(const GadgetInstance& inst, const IntVector& side);

/// u^T A v at the embedded factors, evaluated in exact integer arithmetic via
/// the block structure (each Hadamard block contributes +-p).
long long embed_cut_value(const GadgetInstance& inst, const IntVector& side);

struct GadgetThresholdReport {
  long c_star = 0;
  double d_star_value = 0.0;
  int max_cut = 0;
  IntVector max_cut_side;
  long long best_embedded = 0;  // max of u^T A v over all 2^|V| embedded cuts
  IntVector best_embedded_side;
  bool maxcut_yes = false;    // max_cut >= c_star
  bool embedded_yes = false;  // best_embedded >= d_star (within the float margin)
  bool forward_ok = false;    // maxcut_yes implies embedded_yes
  bool equivalent = false;    // maxcut_yes == embedded_yes
  bool full_enumeration = false;         // sign-vector maximum was computed exactly
  std::optional<double> norm_value;      // max over all sign u, v (full mode only)
  std::optional<bool> norm_yes;          // norm_value >= d_star
  std::optional<bool> norm_equivalent;   // maxcut_yes == norm_yes
  bool sound = false;
};

/// Checks (max cut >= c_star) against (embedded objective >= d_star(c_star)).
/// The maximum over all sign vectors is certified only when the instance fits
/// the enumeration cap; otherwise the report is embedding-only.
/// Threshold comparisons allow a 2^-50 relative margin for the float p^(3/2).
GadgetThresholdReport verify_gadget_threshold(const GadgetInstance& inst, long c_star,
                                              const EnumerationConfig& cfg = {});

/// Block-diagonal matrix with `copies` copies of M on the diagonal.
Matrix diag_lift(const Matrix& m, int copies);

}  // namespace r1lra
