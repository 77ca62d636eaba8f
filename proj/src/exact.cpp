#include "r1lra/exact.hpp"

#include <bit>
#include <cmath>
#include <thread>
#include <vector>

namespace r1lra {

namespace {

// State is rebuilt from scratch on fixed 8192-candidate block boundaries, so
// every candidate's incremental value is identical for any worker partition.
constexpr std::uint64_t kRefreshBlock = std::uint64_t{1} << 13;

struct ScanBest {
  bool valid = false;
  double value = 0.0;
  std::uint64_t gray = 0;  // winning candidate; doubles as the lexicographic key
};

bool improves(const ScanBest& cand, const ScanBest& best, bool maximize) {
  if (!best.valid) return true;
  if (cand.value != best.value)
    return maximize ? cand.value > best.value : cand.value < best.value;
  return cand.gray < best.gray;
}

// Walks candidates t in [0, count) through the reflected Gray code
// g(t) = t ^ (t >> 1); consecutive candidates differ in bit countr_zero(t).
// MakeState(gray) -> State builds the incremental state from scratch,
// Flip(state, bit, now_one) applies one bit change, Evaluate(state) -> double.
template <typename MakeState, typename Flip, typename Evaluate>
ScanBest gray_scan(std::uint64_t count, bool maximize, int threads, MakeState make_state,
                   Flip flip, Evaluate evaluate) {
  auto run_range = [&](std::uint64_t lo, std::uint64_t hi, ScanBest& best) {
    if (lo >= hi) return;
    auto state = make_state(lo ^ (lo >> 1));
    for (std::uint64_t t = lo; t < hi; ++t) {
      const std::uint64_t g = t ^ (t >> 1);
      if (t != lo) {
        if (t % kRefreshBlock == 0) {
          state = make_state(g);
        } else {
          const int bit = std::countr_zero(t);
          flip(state, bit, (g >> bit) & 1u);
        }
      }
      const ScanBest cand{true, evaluate(state), g};
      if (improves(cand, best, maximize)) best = cand;
    }
  };

  const std::uint64_t blocks = (count + kRefreshBlock - 1) / kRefreshBlock;
  int workers = threads < 1 ? 1 : threads;
  if ((std::uint64_t)workers > blocks) workers = (int)blocks;
  if (workers <= 1) {
    ScanBest best;
    run_range(0, count, best);
    return best;
  }
  const std::uint64_t blocks_per_worker = (blocks + workers - 1) / workers;
  std::vector<ScanBest> bests(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t lo = std::min<std::uint64_t>(count, (std::uint64_t)w * blocks_per_worker * kRefreshBlock);
    const std::uint64_t hi = std::min<std::uint64_t>(count, (std::uint64_t)(w + 1) * blocks_per_worker * kRefreshBlock);
    pool.emplace_back([&, lo, hi, w] { run_range(lo, hi, bests[w]); });
  }
  for (auto& th : pool) th.join();
  ScanBest best;
  for (const auto& b : bests)  // merge in worker order: deterministic
    if (b.valid && improves(b, best, maximize)) best = b;
  return best;
}

void check_cap(Index enumerated_dim, const EnumerationConfig& cfg, const char* what) {
  if (enumerated_dim > cfg.max_rows)
    throw CapExceeded(std::string(what) + ": would enumerate over " +
                      std::to_string(enumerated_dim) + " rows; the cap is " +
                      std::to_string(cfg.max_rows) +
                      " (use the heuristic solvers for larger instances)");
}

// Component i of an m-vector maps to gray bit m_free - 1 - i (after dropping
// fixed leading components), so ascending gray keys are ascending
// lexicographic order with -1 < +1 (or 0 < 1) and component 0 most significant.
Vector sign_vector_from_gray(std::uint64_t g, Index m, bool first_fixed_negative) {
  Vector u(m);
  const Index free_count = first_fixed_negative ? m - 1 : m;
  Index c = 0;
  if (first_fixed_negative) u(c++) = -1.0;
  for (Index i = 0; i < free_count; ++i, ++c)
    u(c) = ((g >> (free_count - 1 - i)) & 1u) ? 1.0 : -1.0;
  return u;
}

Vector binary_vector_from_gray(std::uint64_t g, Index m) {
  Vector u(m);
  for (Index i = 0; i < m; ++i) u(i) = ((g >> (m - 1 - i)) & 1u) ? 1.0 : 0.0;
  return u;
}

}  // namespace

OracleResult inf1_norm_exact(const Matrix& a, const EnumerationConfig& cfg) {
  require_finite(a, "inf1_norm_exact");
  const bool transposed = a.rows() > a.cols();
  const Matrix b = transposed ? Matrix(a.transpose()) : a;
  const Index m = b.rows(), n = b.cols();
  check_cap(m, cfg, "inf1_norm_exact");
  const std::uint64_t count = std::uint64_t{1} << (m - 1);  // u and -u tie: fix u_0 = -1

  struct State {
    Vector u;
    Vector r;  // B^T u
  };
  auto make_state = [&](std::uint64_t g) {
    State st{sign_vector_from_gray(g, m, true), Vector()};
    st.r = b.transpose() * st.u;
    return st;
  };
  auto flip = [&](State& st, int bit, unsigned now_one) {
    const Index i = m - 1 - bit;
    st.u(i) = now_one ? 1.0 : -1.0;
    st.r += (2.0 * st.u(i)) * b.row(i).transpose();
  };
  auto evaluate = [](const State& st) { return st.r.cwiseAbs().sum(); };

  const ScanBest best = gray_scan(count, true, cfg.threads, make_state, flip, evaluate);

  Vector u = sign_vector_from_gray(best.gray, m, true);
  const Vector r = b.transpose() * u;
  Vector v(n);
  for (Index j = 0; j < n; ++j) v(j) = r(j) >= 0.0 ? 1.0 : -1.0;  // sign, ties -> +1
  OracleResult res;
  res.u_star = transposed ? v : u;
  res.v_star = transposed ? u : v;
  // canonical evaluation in the input orientation, reproducible from certificates
  res.value = res.u_star.dot(a * res.v_star);
  res.enumerated = count;
  return res;
}

OracleResult cut_norm_exact(const Matrix& a, const EnumerationConfig& cfg) {
  require_finite(a, "cut_norm_exact");
  const bool transposed = a.rows() > a.cols();
  const Matrix b = transposed ? Matrix(a.transpose()) : a;
  const Index m = b.rows(), n = b.cols();
  check_cap(m, cfg, "cut_norm_exact");
  const std::uint64_t count = std::uint64_t{1} << m;

  struct State {
    Vector u;
    Vector r;  // B^T u over the selected rows
  };
  auto make_state = [&](std::uint64_t g) {
    State st{binary_vector_from_gray(g, m), Vector()};
    st.r = b.transpose() * st.u;
    return st;
  };
  auto flip = [&](State& st, int bit, unsigned now_one) {
    const Index i = m - 1 - bit;
    st.u(i) = now_one ? 1.0 : 0.0;
    st.r += (now_one ? 1.0 : -1.0) * b.row(i).transpose();
  };
  auto evaluate = [](const State& st) {
    const double pos = st.r.cwiseMax(0.0).sum();
    const double neg = (-st.r).cwiseMax(0.0).sum();
    return pos >= neg ? pos : neg;
  };

  const ScanBest best = gray_scan(count, true, cfg.threads, make_state, flip, evaluate);

  Vector u = binary_vector_from_gray(best.gray, m);
  const Vector r = b.transpose() * u;
  const double pos = r.cwiseMax(0.0).sum();
  const double neg = (-r).cwiseMax(0.0).sum();
  Vector v(n);
  for (Index j = 0; j < n; ++j)
    v(j) = (pos >= neg ? r(j) > 0.0 : r(j) < 0.0) ? 1.0 : 0.0;  // active sign pattern
  OracleResult res;
  res.u_star = transposed ? v : u;
  res.v_star = transposed ? u : v;
  res.value = std::abs(res.u_star.dot(a * res.v_star));
  res.enumerated = count;
  return res;
}

OracleResult bmf_rank1_exact(const Matrix& m_in, const EnumerationConfig& cfg) {
  require_binary(m_in, "bmf_rank1_exact");
  const bool transposed = m_in.rows() > m_in.cols();
  const Matrix b = transposed ? Matrix(m_in.transpose()) : m_in;
  const Index m = b.rows(), n = b.cols();
  check_cap(m, cfg, "bmf_rank1_exact");
  const std::uint64_t count = std::uint64_t{1} << m;

  const Vector ones = b.colwise().sum().transpose();      // per-column 1-counts
  const Matrix delta = Matrix::Ones(m, n) - 2.0 * b;      // effect of setting u_i = 1 on hamming

  struct State {
    Vector u;
    Vector ham;  // per-column hamming distance to u
  };
  auto make_state = [&](std::uint64_t g) {
    State st{binary_vector_from_gray(g, m), ones};
    for (Index i = 0; i < m; ++i)
      if (st.u(i) == 1.0) st.ham += delta.row(i).transpose();
    return st;
  };
  auto flip = [&](State& st, int bit, unsigned now_one) {
    const Index i = m - 1 - bit;
    st.u(i) = now_one ? 1.0 : 0.0;
    st.ham += (now_one ? 1.0 : -1.0) * delta.row(i).transpose();
  };
  auto evaluate = [&](const State& st) { return st.ham.cwiseMin(ones).sum(); };

  const ScanBest best = gray_scan(count, false, cfg.threads, make_state, flip, evaluate);

  Vector u = binary_vector_from_gray(best.gray, m);
  Vector ham = ones;
  for (Index i = 0; i < m; ++i)
    if (u(i) == 1.0) ham += delta.row(i).transpose();
  Vector v(n);
  for (Index j = 0; j < n; ++j) v(j) = ham(j) < ones(j) ? 1.0 : 0.0;  // ties keep the column off
  OracleResult res;
  res.u_star = transposed ? v : u;
  res.v_star = transposed ? u : v;
  res.value = (double)l0_error(m_in, res.u_star, res.v_star);
  res.enumerated = count;
  return res;
}

OracleResult l0_lra_rank1_exact(const Matrix& m, const EnumerationConfig& cfg) {
  require_binary(m, "l0_lra_rank1_exact");
  return bmf_rank1_exact(m, cfg);
}

OracleResult l1_lra_rank1_exact_sign(const Matrix& a, const EnumerationConfig& cfg) {
  require_sign(a, "l1_lra_rank1_exact_sign");
  const bool transposed = a.rows() > a.cols();
  const Matrix b = transposed ? Matrix(a.transpose()) : a;
  const Index m = b.rows(), n = b.cols();
  check_cap(m, cfg, "l1_lra_rank1_exact_sign");
  const std::uint64_t count = std::uint64_t{1} << (m - 1);  // (x, y) and (-x, -y) tie

  struct State {
    Vector x;
    Vector agree;  // per-column count of rows where B matches x
  };
  auto make_state = [&](std::uint64_t g) {
    State st{sign_vector_from_gray(g, m, true), Vector::Zero(n)};
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < m; ++i)
        if (b(i, j) == st.x(i)) st.agree(j) += 1.0;
    return st;
  };
  auto flip = [&](State& st, int bit, unsigned now_one) {
    const Index i = m - 1 - bit;
    st.x(i) = now_one ? 1.0 : -1.0;
    st.agree += st.x(i) * b.row(i).transpose();  // +-1 per column, exact
  };
  auto evaluate = [&](const State& st) {
    double total = 0.0;
    for (Index j = 0; j < n; ++j) total += std::min(st.agree(j), (double)m - st.agree(j));
    return 2.0 * total;
  };

  const ScanBest best = gray_scan(count, false, cfg.threads, make_state, flip, evaluate);

  Vector x = sign_vector_from_gray(best.gray, m, true);
  Vector agree = Vector::Zero(n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < m; ++i)
      if (b(i, j) == x(i)) agree(j) += 1.0;
  Vector y(n);
  for (Index j = 0; j < n; ++j)
    y(j) = ((double)m - agree(j)) <= agree(j) ? 1.0 : -1.0;  // ties -> +1
  OracleResult res;
  res.u_star = transposed ? y : x;
  res.v_star = transposed ? x : y;
  res.value = l1_error(a, res.u_star, res.v_star);
  res.enumerated = count;
  return res;
}

MaxCutResult maxcut_exact(const Graph& g, const EnumerationConfig& cfg) {
  const int v_count = g.num_vertices;
  if (v_count > cfg.max_vertices)
    throw CapExceeded("maxcut_exact: graph has " + std::to_string(v_count) +
                      " vertices; the cap is " + std::to_string(cfg.max_vertices));
  std::vector<std::vector<int>> adj(v_count);
  for (const auto& [x, y] : g.edges) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  const std::uint64_t count = v_count > 1 ? std::uint64_t{1} << (v_count - 1) : 1;

  struct State {
    std::vector<int> side;
    long cut = 0;
  };
  auto cut_of = [&](const std::vector<int>& side) {
    long cut = 0;
    for (const auto& [x, y] : g.edges)
      if (side[x] != side[y]) ++cut;
    return cut;
  };
  auto make_state = [&](std::uint64_t gray) {
    State st;
    st.side.assign(v_count, 0);  // vertex 0 fixed: each cut counted once
    for (int i = 1; i < v_count; ++i) st.side[i] = (gray >> (v_count - 1 - i)) & 1u;
    st.cut = cut_of(st.side);
    return st;
  };
  auto flip = [&](State& st, int bit, unsigned) {
    const int w = v_count - 1 - bit;
    for (int nb : adj[w]) st.cut += st.side[nb] == st.side[w] ? 1 : -1;
    st.side[w] ^= 1;
  };
  auto evaluate = [](const State& st) { return (double)st.cut; };

  const ScanBest best = gray_scan(count, true, cfg.threads, make_state, flip, evaluate);

  MaxCutResult res;
  res.side = IntVector(v_count);
  res.side.setZero();
  for (int i = 1; i < v_count; ++i) res.side(i) = (int)((best.gray >> (v_count - 1 - i)) & 1u);
  std::vector<int> side(v_count);
  for (int i = 0; i < v_count; ++i) side[i] = res.side(i);
  res.cut_size = (int)cut_of(side);
  res.enumerated = count;
  return res;
}

RankRFactorization bmf_rank_r_exact(const Matrix& m_in, int rank, const EnumerationConfig& cfg) {
  require_binary(m_in, "bmf_rank_r_exact");
  if (rank < 1) throw std::invalid_argument("bmf_rank_r_exact: rank must be positive");
  const Index m = m_in.rows(), n = m_in.cols();
  if (m * rank > 20)
    throw CapExceeded("bmf_rank_r_exact: rows * rank = " + std::to_string(m * rank) +
                      " exceeds the toy-scale cap 20");
  const std::uint64_t u_count = std::uint64_t{1} << (m * rank);
  const std::uint64_t v_count = std::uint64_t{1} << rank;
  if (u_count * v_count * (std::uint64_t)(m * n) > (std::uint64_t{1} << 32))
    throw CapExceeded("bmf_rank_r_exact: instance needs more than 2^32 elementary steps");

  long best_value = -1;
  std::uint64_t best_bits = 0;
  Matrix best_right;
  Matrix left(m, rank), right(rank, n);
  for (std::uint64_t bits = 0; bits < u_count; ++bits) {
    // row-major bit layout: ascending `bits` is lexicographic on U
    for (Index i = 0; i < m; ++i)
      for (int k = 0; k < rank; ++k)
        left(i, k) = (bits >> (m * rank - 1 - (i * rank + k))) & 1u ? 1.0 : 0.0;
    long total = 0;
    for (Index j = 0; j < n; ++j) {
      long col_best = -1;
      std::uint64_t col_best_bits = 0;
      for (std::uint64_t vb = 0; vb < v_count; ++vb) {
        long mismatches = 0;
        for (Index i = 0; i < m; ++i) {
          int prod = 0;
          for (int k = 0; k < rank; ++k)
            if ((vb >> (rank - 1 - k)) & 1u) prod += (int)left(i, k);
          if ((double)prod != m_in(i, j)) ++mismatches;
        }
        if (col_best < 0 || mismatches < col_best) {
          col_best = mismatches;
          col_best_bits = vb;
        }
      }
      total += col_best;
      for (int k = 0; k < rank; ++k)
        right(k, j) = (col_best_bits >> (rank - 1 - k)) & 1u ? 1.0 : 0.0;
    }
    if (best_value < 0 || total < best_value) {
      best_value = total;
      best_bits = bits;
      best_right = right;
    }
  }
  RankRFactorization res;
  res.value = best_value;
  res.left = Matrix(m, rank);
  for (Index i = 0; i < m; ++i)
    for (int k = 0; k < rank; ++k)
      res.left(i, k) = (best_bits >> (m * rank - 1 - (i * rank + k))) & 1u ? 1.0 : 0.0;
  res.right = best_right;
  res.enumerated = u_count;
  return res;
}

}  // namespace r1lra
