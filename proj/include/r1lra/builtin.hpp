#pragma once

#include "r1lra/core.hpp"

// Built-in demo matrices, embedded so the CLI demos and tests need no files.
namespace r1lra::builtin {

/// 4x5 biadjacency of a single clean community: rows 1-3 fully linked to
/// columns 1-4. Equals the outer product of its indicator vectors.
Matrix community_clean();

/// The same community with three extra edges at (2,5), (4,1), (4,5).
Matrix community_perturbed();

/// Two-decimal reference values for the best least-squares rank-one
/// approximation of community_perturbed().
Matrix community_l2_reference();

/// 6x6 sign matrix whose absolute-deviation objective has a one-parameter
/// family of non-sign stationary pairs where coordinate descent stalls.
Matrix stall_example();

/// The stationary family u = (1,1,x,x,x,x), v = (1,1,1,1,1/x,1/x) for
/// 0.5 < x < 1; x = sqrt(2)/2 is a local minimum with objective 12 + 8*sqrt(2).
RankOneFactors stall_stationary_pair(double x);

}  // namespace r1lra::builtin
