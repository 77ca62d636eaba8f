#include "r1lra/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace r1lra {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

void check_solver_config(const SolverConfig& cfg) {
  if (cfg.max_sweeps < 1) throw std::invalid_argument("SolverConfig: max_sweeps must be >= 1");
  if (cfg.restarts < 1) throw std::invalid_argument("SolverConfig: restarts must be >= 1");
  if (cfg.objective_tolerance < 0)
    throw std::invalid_argument("SolverConfig: objective_tolerance must be >= 0");
}

// per-component draw scales: sqrt of the row/column root-mean-square entry,
// so |u_i v_j| lands near the |M_ij| scale (exactly 1 on sign matrices)
Vector row_draw_scales(const Matrix& m) {
  Vector s(m.rows());
  for (Index i = 0; i < m.rows(); ++i)
    s(i) = std::sqrt(m.row(i).norm() / std::sqrt((double)m.cols()));
  if (s.isZero(0.0)) s.setOnes();
  return s;
}

Vector col_draw_scales(const Matrix& m) {
  Vector s(m.cols());
  for (Index j = 0; j < m.cols(); ++j)
    s(j) = std::sqrt(m.col(j).norm() / std::sqrt((double)m.rows()));
  if (s.isZero(0.0)) s.setOnes();
  return s;
}

Vector random_factor(const Vector& scales, Rng& rng) {
  Vector x(scales.size());
  for (Index i = 0; i < scales.size(); ++i)
    x(i) = rng.sign_value() * (scales(i) > 0.0 ? scales(i) : 1.0);
  return x;
}

bool factors_less(const RankOneFactors& a, const RankOneFactors& b) {
  if (auto c = std::lexicographical_compare_three_way(a.u.begin(), a.u.end(), b.u.begin(),
                                                      b.u.end());
      c != 0)
    return c < 0;
  return std::lexicographical_compare(a.v.begin(), a.v.end(), b.v.begin(), b.v.end());
}

}  // namespace

Rng rng_stream(std::uint64_t seed, std::uint64_t k) {
  return Rng(splitmix64(seed ^ splitmix64(k)));
}

double weighted_median(std::span<const double> values, std::span<const double> weights) {
  if (values.empty() || values.size() != weights.size())
    throw std::invalid_argument("weighted_median: need matching nonempty inputs");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  long double total = 0.0L;
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("weighted_median: weights must be positive");
    total += w;
  }
  const long double half = total * 0.5L;
  long double acc = 0.0L;
  for (std::size_t k = 0; k < order.size(); ++k) {
    acc += weights[order[k]];
    if (acc >= half) return values[order[k]];  // lower endpoint of the minimizing interval
  }
  return values[order.back()];
}

PowerIterationResult power_iteration_rank1(const Matrix& m, const SolverConfig& cfg) {
  check_solver_config(cfg);
  PowerIterationResult out;
  const Index rows = m.rows(), cols = m.cols();
  if (m.isZero(0.0)) {
    out.factors = {Vector::Zero(rows), Vector::Zero(cols)};
    out.zero_input = true;
    return out;
  }
  Rng rng = rng_stream(cfg.rng_seed, 0);
  Vector v = Vector::Constant(cols, 1.0 / std::sqrt((double)cols));
  Vector u = Vector::Zero(rows);
  double sigma = 0.0, sigma_prev = -1.0;
  for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
    out.sweeps = sweep;
    Vector mu = m * v;
    double nu = mu.norm();
    if (nu == 0.0) {  // start vector in the null space: re-seed and continue
      for (Index j = 0; j < cols; ++j) v(j) = rng.sign_value();
      v.normalize();
      continue;
    }
    u = mu / nu;
    Vector w = m.transpose() * u;
    sigma = w.norm();
    if (sigma == 0.0) {
      for (Index j = 0; j < cols; ++j) v(j) = rng.sign_value();
      v.normalize();
      continue;
    }
    v = w / sigma;
    if (std::abs(sigma - sigma_prev) <= 1e-10 * std::max(1.0, sigma)) {
      out.converged = true;
      break;
    }
    sigma_prev = sigma;
  }
  out.singular_value = sigma;
  const double s = std::sqrt(sigma);
  out.factors = {u * s, v * s};
  return out;
}

namespace {

struct CdRun {
  RankOneFactors f;
  std::vector<double> trace;
  int reseeds = 0;
};

CdRun cd_single(const Matrix& m, RankOneFactors f, const SolverConfig& cfg, Rng& rng) {
  const Index rows = m.rows(), cols = m.cols();
  const Vector u_scales = row_draw_scales(m);
  const Vector v_scales = col_draw_scales(m);
  CdRun run;
  run.trace.push_back(l1_error(m, f));
  std::vector<double> bps, ws;
  bps.reserve(std::max(rows, cols));
  ws.reserve(std::max(rows, cols));
  int fruitless_reseeds = 0;
  for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
    bool reseeded = false;
    if (f.v.isZero(0.0)) {
      f.v = random_factor(v_scales, rng);
      ++run.reseeds;
      reseeded = true;
    }
    for (Index i = 0; i < rows; ++i) {
      bps.clear();
      ws.clear();
      for (Index j = 0; j < cols; ++j)
        if (f.v(j) != 0.0) {  // zero columns contribute a constant, excluded from the median
          bps.push_back(m(i, j) / f.v(j));
          ws.push_back(std::abs(f.v(j)));
        }
      if (!bps.empty()) f.u(i) = weighted_median(bps, ws);
    }
    if (f.u.isZero(0.0)) {
      f.u = random_factor(u_scales, rng);
      ++run.reseeds;
      reseeded = true;
    }
    for (Index j = 0; j < cols; ++j) {
      bps.clear();
      ws.clear();
      for (Index i = 0; i < rows; ++i)
        if (f.u(i) != 0.0) {
          bps.push_back(m(i, j) / f.u(i));
          ws.push_back(std::abs(f.u(i)));
        }
      if (!bps.empty()) f.v(j) = weighted_median(bps, ws);
    }
    const double obj = l1_error(m, f);
    run.trace.push_back(obj);
    const bool improved = run.trace[run.trace.size() - 2] - obj > cfg.objective_tolerance;
    if (!reseeded && !improved) break;
    // degenerate inputs can reseed forever without progress; give up after a few
    fruitless_reseeds = reseeded && !improved ? fruitless_reseeds + 1 : 0;
    if (fruitless_reseeds >= 3) break;
  }
  run.f = std::move(f);
  return run;
}

}  // namespace

DescentResult l1_coordinate_descent(const Matrix& m, const RankOneFactors& init,
                                    const SolverConfig& cfg) {
  check_solver_config(cfg);
  if (cfg.init_mode == InitMode::given) {
    detail::check_dims("l1_coordinate_descent", m, init.u, init.v);
    if (init.u.isZero(0.0) || init.v.isZero(0.0))
      throw std::invalid_argument(
          "l1_coordinate_descent: a given init needs a nonzero component in each factor");
  }
  const Vector u_scales = row_draw_scales(m);
  const Vector v_scales = col_draw_scales(m);
  DescentResult best;
  bool have_best = false;
  int total_reseeds = 0;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = rng_stream(cfg.rng_seed, (std::uint64_t)r);
    RankOneFactors start;
    if (r == 0) {
      switch (cfg.init_mode) {
        case InitMode::given:
          start = init;
          break;
        case InitMode::svd: {
          const auto pi = power_iteration_rank1(m, cfg);
          start = pi.zero_input
                      ? RankOneFactors{random_factor(u_scales, rng),
                                       random_factor(v_scales, rng)}
                      : pi.factors;
          break;
        }
        case InitMode::random:
          start = {random_factor(u_scales, rng), random_factor(v_scales, rng)};
          break;
      }
    } else {
      start = {random_factor(u_scales, rng), random_factor(v_scales, rng)};
    }
    CdRun run = cd_single(m, std::move(start), cfg, rng);
    total_reseeds += run.reseeds;
    const double obj = run.trace.back();
    if (!have_best || obj < best.trace.back() ||
        (obj == best.trace.back() && factors_less(run.f, best.factors))) {
      best.factors = std::move(run.f);
      best.trace = std::move(run.trace);
      have_best = true;
    }
  }
  best.reseed_events = total_reseeds;
  return best;
}

BinaryDescentResult bmf_alternating(const Matrix& m, const RankOneFactors& init,
                                    const SolverConfig& cfg) {
  check_solver_config(cfg);
  require_binary(m, "bmf_alternating");
  detail::check_dims("bmf_alternating", m, init.u, init.v);
  if (!is_binary_factors(init))
    throw std::invalid_argument("bmf_alternating: init factors must be binary");
  const Index rows = m.rows(), cols = m.cols();
  Vector u = init.u, v = init.v;
  BinaryDescentResult out;
  out.trace.push_back(l0_error(m, u, v));
  for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
    out.sweeps = sweep;
    bool changed = false;
    for (Index j = 0; j < cols; ++j) {
      double ham = 0.0, ones = 0.0;
      for (Index i = 0; i < rows; ++i) {
        ham += std::abs(m(i, j) - u(i));
        ones += m(i, j);
      }
      const double nv = ham < ones ? 1.0 : 0.0;  // ties keep the column off
      changed |= nv != v(j);
      v(j) = nv;
    }
    for (Index i = 0; i < rows; ++i) {
      double ham = 0.0, ones = 0.0;
      for (Index j = 0; j < cols; ++j) {
        ham += std::abs(m(i, j) - v(j));
        ones += m(i, j);
      }
      const double nu = ham < ones ? 1.0 : 0.0;
      changed |= nu != u(i);
      u(i) = nu;
    }
    out.trace.push_back(l0_error(m, u, v));
    if (!changed) break;
  }
  out.factors = {std::move(u), std::move(v)};
  return out;
}

RankOneFactors threshold_to_binary(const RankOneFactors& f) {
  RankOneFactors g = f;
  Index dominant = 0;
  f.u.cwiseAbs().maxCoeff(&dominant);
  if (f.u(dominant) < 0.0) {
    g.u = -g.u;
    g.v = -g.v;
  }
  const double umax = g.u.size() ? g.u.maxCoeff() : 0.0;
  const double vmax = g.v.size() ? g.v.maxCoeff() : 0.0;
  for (Index i = 0; i < g.u.size(); ++i) g.u(i) = (umax > 0.0 && g.u(i) > 0.5 * umax) ? 1.0 : 0.0;
  for (Index j = 0; j < g.v.size(); ++j) g.v(j) = (vmax > 0.0 && g.v(j) > 0.5 * vmax) ? 1.0 : 0.0;
  return g;
}

LevelDecomposition level_decompose(const RankOneFactors& f, double tol) {
  const Index m = f.u.size(), n = f.v.size();
  if (m == 0 || n == 0) throw std::invalid_argument("level_decompose: empty factors");
  for (Index i = 0; i < m; ++i)
    if (f.u(i) == 0.0)
      throw std::invalid_argument(
          "level_decompose: zero components (repair_zero_components first)");
  for (Index j = 0; j < n; ++j)
    if (f.v(j) == 0.0)
      throw std::invalid_argument(
          "level_decompose: zero components (repair_zero_components first)");
  if (!is_finite(f.u) || !is_finite(f.v))
    throw std::invalid_argument("level_decompose: factors must be finite");

  const double umax = f.u.cwiseAbs().maxCoeff();
  const double vmin = f.v.cwiseAbs().minCoeff();
  LevelDecomposition d;
  // Scale so the top magnitude is exactly 1; dividing by the extreme value
  // itself keeps that entry exact.
  if (umax >= 1.0 / vmin) {
    d.u = f.u / umax;
    d.v = f.v * umax;
    d.scale = 1.0 / umax;
  } else {
    d.u = f.u * vmin;
    d.v = f.v / vmin;
    d.scale = vmin;
  }

  struct Entry {
    double magnitude;
    bool from_u;
    Index index;
  };
  std::vector<Entry> entries;
  entries.reserve(m + n);
  for (Index i = 0; i < m; ++i) entries.push_back({std::abs(d.u(i)), true, i});
  for (Index j = 0; j < n; ++j) entries.push_back({1.0 / std::abs(d.v(j)), false, j});
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.magnitude < b.magnitude; });

  d.u_level.assign(m, 0);
  d.v_level.assign(n, 0);
  double cluster_start = entries.front().magnitude;
  d.levels.push_back(cluster_start);
  for (const Entry& e : entries) {
    if (e.magnitude - cluster_start > tol) {
      cluster_start = e.magnitude;
      d.levels.push_back(e.magnitude);
    } else {
      d.levels.back() = e.magnitude;  // representative: the largest member
    }
    const int level = (int)d.levels.size() - 1;
    if (e.from_u)
      d.u_level[e.index] = level;
    else
      d.v_level[e.index] = level;
  }
  d.levels.back() = 1.0;  // top magnitude is 1 by construction, up to rounding
  return d;
}

MoveDeltas move_deltas(const Matrix& a, const LevelDecomposition& d) {
  require_sign(a, "move_deltas");
  const Index m = a.rows(), n = a.cols();
  if ((Index)d.u_level.size() != m || (Index)d.v_level.size() != n)
    throw std::invalid_argument("move_deltas: decomposition does not match the matrix shape");
  const int k = d.k();
  if (k < 2) throw std::invalid_argument("move_deltas: need at least two magnitude levels");
  const int top = k - 1;
  const double beta = d.levels[k - 2];

  MoveDeltas md;
  md.top_col_matches.assign(k - 1, 0);
  md.top_col_mismatches.assign(k - 1, 0);
  md.top_row_matches.assign(k - 1, 0);
  md.top_row_mismatches.assign(k - 1, 0);
  for (Index j = 0; j < n; ++j) {
    const int q = d.v_level[j];
    for (Index i = 0; i < m; ++i) {
      const int p = d.u_level[i];
      if (p == top && q == top) continue;
      if (p != top && q != top) continue;  // off-top blocks are unchanged by the moves
      const bool match = (a(i, j) > 0.0) == (d.u(i) * d.v(j) > 0.0);
      if (q == top) {  // block (p, k): rows at level p, unit-magnitude columns
        (match ? md.top_col_matches[p] : md.top_col_mismatches[p]) += 1;
      } else {  // block (k, p): unit-magnitude rows, columns at level q
        (match ? md.top_row_matches[q] : md.top_row_mismatches[q]) += 1;
      }
    }
  }
  for (int p = 0; p < k - 1; ++p) {
    const double alpha = d.levels[p];
    const double a_p = (double)md.top_col_matches[p];
    const double b_p = (double)md.top_col_mismatches[p];
    const double c_p = (double)md.top_row_matches[p];
    const double d_p = (double)md.top_row_mismatches[p];
    md.delta1 += (1.0 - beta) *
                 (-(alpha / beta) * a_p + (alpha / beta) * b_p - c_p / alpha - d_p / alpha);
    md.delta2 += alpha * (1.0 + beta) / beta * (a_p - b_p) +
                 (2.0 + beta / alpha - 1.0 / alpha) * c_p -
                 (2.0 + 1.0 / alpha - beta / alpha) * d_p;
  }
  return md;
}

namespace {

std::pair<RankOneFactors, MoveDeltas> apply_move(const Matrix& a, const LevelDecomposition& d,
                                                 double divisor) {
  MoveDeltas md = move_deltas(a, d);
  const int top = d.k() - 1;
  RankOneFactors g{d.u, d.v};
  for (Index i = 0; i < g.u.size(); ++i)
    if (d.u_level[i] != top) g.u(i) /= divisor;
  for (Index j = 0; j < g.v.size(); ++j)
    if (d.v_level[j] != top) g.v(j) *= divisor;
  return {std::move(g), std::move(md)};
}

}  // namespace

std::pair<RankOneFactors, MoveDeltas> move1(const Matrix& a, const LevelDecomposition& d) {
  return apply_move(a, d, d.levels[d.k() - 2]);
}

std::pair<RankOneFactors, MoveDeltas> move2(const Matrix& a, const LevelDecomposition& d) {
  return apply_move(a, d, -d.levels[d.k() - 2]);
}

RankOneFactors repair_zero_components(const Matrix& a, const RankOneFactors& f) {
  require_sign(a, "repair_zero_components");
  detail::check_dims("repair_zero_components", a, f.u, f.v);
  if (f.u.isZero(0.0) || f.v.isZero(0.0))
    throw std::invalid_argument("repair_zero_components: zero factor");
  RankOneFactors g = f;
  std::vector<double> bps, ws;
  for (Index i = 0; i < g.u.size(); ++i) {
    if (g.u(i) != 0.0) continue;
    bps.clear();
    ws.clear();
    for (Index j = 0; j < g.v.size(); ++j)
      if (g.v(j) != 0.0) {
        bps.push_back(a(i, j) / g.v(j));
        ws.push_back(std::abs(g.v(j)));
      }
    g.u(i) = weighted_median(bps, ws);  // a breakpoint, hence nonzero for sign A
  }
  for (Index j = 0; j < g.v.size(); ++j) {
    if (g.v(j) != 0.0) continue;
    bps.clear();
    ws.clear();
    for (Index i = 0; i < g.u.size(); ++i)
      if (g.u(i) != 0.0) {
        bps.push_back(a(i, j) / g.u(i));
        ws.push_back(std::abs(g.u(i)));
      }
    g.v(j) = weighted_median(bps, ws);
  }
  return g;
}

SignRoundResult sign_round(const Matrix& a, const RankOneFactors& f) {
  require_sign(a, "sign_round");
  detail::check_dims("sign_round", a, f.u, f.v);
  if (f.u.isZero(0.0) || f.v.isZero(0.0))
    throw std::invalid_argument("sign_round: zero factor");

  SignRoundResult out;
  LevelDecomposition d = level_decompose(repair_zero_components(a, f));
  bool path_complete = true;
  while (d.k() >= 2) {
    const MoveDeltas md = move_deltas(a, d);
    int which = 0;
    if (md.delta1 <= 0.0 && md.delta1 <= md.delta2)
      which = 1;
    else if (md.delta2 <= 0.0)
      which = 2;
    if (which == 0) {  // neither move is non-increasing away from an optimum
      path_complete = false;
      break;
    }
    out.steps.push_back({which, which == 1 ? md.delta1 : md.delta2, d.k()});
    auto [g, unused] = which == 1 ? move1(a, d) : move2(a, d);
    d = level_decompose(g);
  }

  auto snap = [](const Vector& x) {
    Vector s(x.size());
    for (Index i = 0; i < x.size(); ++i) s(i) = x(i) >= 0.0 ? 1.0 : -1.0;
    return s;
  };
  const RankOneFactors direct{snap(f.u), snap(f.v)};
  const double direct_obj = l1_error(a, direct);
  if (path_complete) {
    const RankOneFactors path{snap(d.u), snap(d.v)};
    const double path_obj = l1_error(a, path);
    if (path_obj <= direct_obj) {
      out.factors = path;
      out.objective = path_obj;
      return out;
    }
  }
  out.factors = direct;
  out.objective = direct_obj;
  out.fallback_used = true;
  return out;
}

}  // namespace r1lra
