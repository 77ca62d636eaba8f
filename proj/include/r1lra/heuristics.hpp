#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "r1lra/core.hpp"

namespace r1lra {

enum class InitMode { svd, random, given };

struct SolverConfig {
  int max_sweeps = 500;
  double objective_tolerance = 0.0;  // stop when a sweep improves by no more than this
  int restarts = 1;
  std::uint64_t rng_seed = 0;
  InitMode init_mode = InitMode::svd;
};

/// Seeded generator with platform-independent draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t bits() { return eng_(); }
  double uniform01() { return (double)(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  double sign_value() { return (eng_() & 1) ? 1.0 : -1.0; }
  double binary_value() { return (eng_() & 1) ? 1.0 : 0.0; }
  std::uint64_t index(std::uint64_t n) { return eng_() % n; }

 private:
  std::mt19937_64 eng_;
};

/// Independent substream k of a base seed.
Rng rng_stream(std::uint64_t seed, std::uint64_t k);

/// Minimizer of sum_k weights[k] * |x - values[k]| over x; when the minimizing
/// set is an interval, returns its lower endpoint. Weights must be positive.
double weighted_median(std::span<const double> values, std::span<const double> weights);

struct PowerIterationResult {
  RankOneFactors factors;
  double singular_value = 0.0;
  int sweeps = 0;
  bool converged = false;
  bool zero_input = false;  // warning flag: zero matrix, zero factors returned
};

/// Dominant singular pair via alternating power iteration from a deterministic
/// all-ones start (re-seeded from the config rng on breakdown). Stops when the
/// relative Rayleigh-quotient change drops below 1e-10 or max_sweeps is hit.
PowerIterationResult power_iteration_rank1(const Matrix& m, const SolverConfig& cfg = {});

struct DescentResult {
  RankOneFactors factors;
  std::vector<double> trace;  // objective of the winning run: initial value, then one entry per sweep
  int reseed_events = 0;      // degenerate all-zero factors re-drawn, summed over runs
};

/// Cyclic coordinate descent for the entrywise absolute-deviation objective:
/// each u_i, then each v_j, is replaced by the weighted median of its
/// breakpoints. Runs cfg.restarts independent starts (first per init_mode,
/// the rest random) and returns the best by (objective, lexicographic factors).
DescentResult l1_coordinate_descent(const Matrix& m, const RankOneFactors& init,
                                    const SolverConfig& cfg = {});

struct BinaryDescentResult {
  RankOneFactors factors;
  std::vector<long> trace;
  int sweeps = 0;
};

/// Alternating column/row-optimal binary updates for the mismatch count;
/// stops at a fixed point (no entry changes over a full sweep).
BinaryDescentResult bmf_alternating(const Matrix& m, const RankOneFactors& init,
                                    const SolverConfig& cfg = {});

/// Deterministic binarization of real factors: orients the pair so the
/// dominant entry of u is positive, then keeps entries above half the maximum.
RankOneFactors threshold_to_binary(const RankOneFactors& f);

/// Normal form of a factor pair with no zero components: scaled so the top
/// magnitude is 1, components grouped into levels with |u_i| = levels[u_level[i]]
/// and |v_j| = 1 / levels[v_level[j]]. The outer product is unchanged.
struct LevelDecomposition {
  std::vector<double> levels;  // strictly increasing, last one exactly 1
  std::vector<int> u_level;
  std::vector<int> v_level;
  Vector u;  // scaled factors
  Vector v;
  double scale = 1.0;  // u above is approximately scale * (input u)
  int k() const { return (int)levels.size(); }
};

/// Magnitudes closer than `tol` fall into the same level.
LevelDecomposition level_decompose(const RankOneFactors& f, double tol = 1e-9);

/// Per-level sign bookkeeping of the two block families touched by the moves,
/// plus the closed-form objective changes of both moves.
/// For p < k: top_col blocks pair u-level-p rows with unit-magnitude columns,
/// top_row blocks pair unit-magnitude rows with v-level-p columns.
struct MoveDeltas {
  double delta1 = 0.0;
  double delta2 = 0.0;
  std::vector<long> top_col_matches;     // a_p: sign of A equals sign of u v^T
  std::vector<long> top_col_mismatches;  // b_p
  std::vector<long> top_row_matches;     // c_p
  std::vector<long> top_row_mismatches;  // d_p
};

MoveDeltas move_deltas(const Matrix& a, const LevelDecomposition& d);

/// Move 1: divide u entries off the unit level by beta = levels[k-2] and
/// multiply the matching v entries by beta. Merges the two top levels.
std::pair<RankOneFactors, MoveDeltas> move1(const Matrix& a, const LevelDecomposition& d);

/// Move 2: same with -beta.
std::pair<RankOneFactors, MoveDeltas> move2(const Matrix& a, const LevelDecomposition& d);

/// Replaces zero factor components by their objective-minimizing breakpoints
/// (a weighted-median update restricted to the nonzero opposite factor).
RankOneFactors repair_zero_components(const Matrix& a, const RankOneFactors& f);

struct SignRoundResult {
  RankOneFactors factors;  // entries exactly -1/+1
  double objective = 0.0;
  struct Step {
    int move = 0;  // 1 or 2
    double delta = 0.0;
    int levels_before = 0;
  };
  std::vector<Step> steps;
  bool fallback_used = false;  // direct rounding won or no non-increasing move existed
};

/// Rounds a factor pair to sign vectors for a sign matrix A: repeatedly applies
/// whichever move does not increase the objective until one level remains;
/// if neither move qualifies, or plain rounding x = sign(u), y = sign(v) is
/// better, returns that instead. Never worse than both candidates.
SignRoundResult sign_round(const Matrix& a, const RankOneFactors& f);

}  // namespace r1lra
