#include "doctest.h"

#include "brute.hpp"
#include "r1lra/builtin.hpp"
#include "r1lra/exact.hpp"
#include "r1lra/heuristics.hpp"
#include "r1lra/reductions.hpp"

using namespace r1lra;

namespace {

Matrix random_sign_matrix(Index m, Index n, Rng& rng) {
  Matrix a(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = rng.sign_value();
  return a;
}

Matrix random_binary_matrix(Index m, Index n, Rng& rng) {
  Matrix a(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = rng.binary_value();
  return a;
}

Matrix random_real_matrix(Index m, Index n, Rng& rng) {
  Matrix a(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  return a;
}

}  // namespace

TEST_CASE("inf1_norm_exact on pinned instances") {
  Matrix a(2, 2);
  a << 1, 1, 1, -1;
  const OracleResult r = inf1_norm_exact(a);
  CHECK(r.value == 2.0);
  CHECK(r.enumerated == 2);

  const OracleResult ones = inf1_norm_exact(Matrix::Ones(3, 4));
  CHECK(ones.value == 12.0);
  // lex-smallest maximizer: the all-minus pair also attains mn
  CHECK(ones.u_star == Vector::Constant(3, -1.0));
  CHECK(ones.v_star == Vector::Constant(4, -1.0));

  const OracleResult stall = inf1_norm_exact(builtin::stall_example());
  CHECK(stall.value == 20.0);
  CHECK(36.0 - stall.value == 16.0);
}

TEST_CASE("inf1_norm_exact agrees with brute force and is self-certifying") {
  Rng rng(21);
  for (int t = 0; t < 40; ++t) {
    const Matrix a = random_sign_matrix(1 + (Index)rng.index(6), 1 + (Index)rng.index(6), rng);
    const OracleResult r = inf1_norm_exact(a);
    CHECK(r.value == brute::inf1(a));
    CHECK(r.u_star.dot(a * r.v_star) == r.value);
  }
  for (int t = 0; t < 15; ++t) {
    const Matrix a = random_real_matrix(5, 5, rng);
    const OracleResult r = inf1_norm_exact(a);
    CHECK(r.value == doctest::Approx(brute::inf1(a)).epsilon(1e-12));
    CHECK(r.u_star.dot(a * r.v_star) == r.value);  // canonical evaluation reproduces exactly
  }
}

TEST_CASE("inf1_norm_exact returns the lexicographically smallest maximizer") {
  Rng rng(22);
  for (int t = 0; t < 25; ++t) {
    const Index m = 2 + (Index)rng.index(3);
    const Index n = m + (Index)rng.index(2);  // rows <= cols: no transpose route
    const Matrix a = random_sign_matrix(m, n, rng);
    const OracleResult r = inf1_norm_exact(a);
    // scan sign vectors in lexicographic order; the first optimizer must match
    bool found = false;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m) && !found; ++bits) {
      Vector u(m);
      for (Index i = 0; i < m; ++i) u(i) = (bits >> (m - 1 - i)) & 1u ? 1.0 : -1.0;
      const Vector row = a.transpose() * u;
      double val = 0.0;
      for (Index j = 0; j < n; ++j) val += std::abs(row(j));
      if (val == r.value) {
        CHECK(u == r.u_star);
        found = true;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("inf1 parity and symmetry invariants") {
  Rng rng(23);
  for (int t = 0; t < 30; ++t) {
    const Matrix a = random_sign_matrix(1 + (Index)rng.index(7), 1 + (Index)rng.index(7), rng);
    const double v = inf1_norm_exact(a).value;
    const long mn = a.rows() * a.cols();
    CHECK((long)v % 2 == mn % 2);  // matches minus mismatches
    CHECK(inf1_norm_exact(Matrix(-a)).value == v);
    CHECK(inf1_norm_exact(Matrix(a.transpose())).value == v);
  }
}

TEST_CASE("cut_norm_exact on pinned instances") {
  Matrix a(2, 2);
  a << 1, -1, -1, 1;
  CHECK(cut_norm_exact(a).value == 1.0);
  CHECK(cut_norm_exact(Matrix::Ones(3, 3)).value == 9.0);
}

TEST_CASE("cut_norm_exact agrees with brute force; sandwich holds") {
  Rng rng(24);
  for (int t = 0; t < 30; ++t) {
    const Matrix a = random_sign_matrix(1 + (Index)rng.index(6), 1 + (Index)rng.index(6), rng);
    const OracleResult c = cut_norm_exact(a);
    CHECK(c.value == brute::cut_norm(a));
    CHECK(std::abs(c.u_star.dot(a * c.v_star)) == c.value);
    const double i1 = inf1_norm_exact(a).value;
    CHECK(c.value <= i1);
    CHECK(i1 <= 4.0 * c.value);
    CHECK(cut_norm_exact(Matrix(-a)).value == c.value);
    CHECK(cut_norm_exact(Matrix(a.transpose())).value == c.value);
  }
  for (int t = 0; t < 10; ++t) {
    const Matrix a = random_real_matrix(4, 4, rng);
    const OracleResult c = cut_norm_exact(a);
    CHECK(c.value == doctest::Approx(brute::cut_norm(a)).epsilon(1e-12));
    const double i1 = inf1_norm_exact(a).value;
    CHECK(c.value <= i1 + 1e-9);
    CHECK(i1 <= 4.0 * c.value + 1e-9);
  }
}

TEST_CASE("oracles are independent of the worker count") {
  Rng rng(25);
  for (int t = 0; t < 5; ++t) {
    const Matrix a = random_real_matrix(6, 5, rng);
    EnumerationConfig one{.threads = 1};
    EnumerationConfig four{.threads = 4};
    const OracleResult r1 = inf1_norm_exact(a, one);
    const OracleResult r4 = inf1_norm_exact(a, four);
    CHECK(r1.value == r4.value);
    CHECK(r1.u_star == r4.u_star);
    CHECK(r1.v_star == r4.v_star);
    const OracleResult c1 = cut_norm_exact(a, one);
    const OracleResult c4 = cut_norm_exact(a, four);
    CHECK(c1.value == c4.value);
    CHECK(c1.u_star == c4.u_star);

    const Matrix s = random_sign_matrix(6, 6, rng);
    CHECK(l1_lra_rank1_exact_sign(s, one).u_star == l1_lra_rank1_exact_sign(s, four).u_star);
    const Matrix b = random_binary_matrix(6, 6, rng);
    CHECK(bmf_rank1_exact(b, one).u_star == bmf_rank1_exact(b, four).u_star);
  }
  const Graph g = make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {1, 4}});
  EnumerationConfig one{.threads = 1};
  EnumerationConfig three{.threads = 3};
  CHECK(maxcut_exact(g, one).side == maxcut_exact(g, three).side);
}

TEST_CASE("transposed instances still re-evaluate exactly from their certificates") {
  Rng rng(33);
  for (int t = 0; t < 10; ++t) {
    const Matrix wide = random_real_matrix(3, 7, rng);
    const Matrix tall = random_real_matrix(7, 3, rng);
    for (const Matrix& a : {wide, tall}) {
      const OracleResult r = inf1_norm_exact(a);
      CHECK(r.u_star.size() == a.rows());
      CHECK(r.v_star.size() == a.cols());
      CHECK(r.u_star.dot(a * r.v_star) == r.value);
      CHECK(r.value == doctest::Approx(brute::inf1(a)).epsilon(1e-12));
      const OracleResult c = cut_norm_exact(a);
      CHECK(std::abs(c.u_star.dot(a * c.v_star)) == c.value);
      CHECK(c.value == doctest::Approx(brute::cut_norm(a)).epsilon(1e-12));
    }
  }
}

TEST_CASE("every exhaustive solver refuses instances over its cap") {
  const Matrix big_sign = Matrix::Ones(26, 26);
  CHECK_THROWS_AS(cut_norm_exact(big_sign), CapExceeded);
  CHECK_THROWS_AS(l1_lra_rank1_exact_sign(big_sign), CapExceeded);
  Matrix big_binary = Matrix::Zero(26, 26);
  CHECK_THROWS_AS(bmf_rank1_exact(big_binary), CapExceeded);
  CHECK_THROWS_AS(l0_lra_rank1_exact(big_binary), CapExceeded);
  EnumerationConfig small;
  small.max_rows = 4;
  CHECK_THROWS_AS(inf1_norm_exact(Matrix::Ones(5, 5), small), CapExceeded);
}

TEST_CASE("enumeration cap refusal names the heuristic escape hatch") {
  const Matrix big = Matrix::Ones(26, 26);
  CHECK_THROWS_AS(inf1_norm_exact(big), CapExceeded);
  try {
    inf1_norm_exact(big);
  } catch (const CapExceeded& e) {
    CHECK(std::string(e.what()).find("heuristic") != std::string::npos);
  }
  // a thin matrix enumerates its shorter side instead of refusing
  const Matrix thin = Matrix::Ones(26, 3);
  CHECK(inf1_norm_exact(thin).value == 78.0);
}

TEST_CASE("bmf_rank1_exact on the community fixtures") {
  const OracleResult clean = bmf_rank1_exact(builtin::community_clean());
  CHECK(clean.value == 0.0);
  Vector u(4), v(5);
  u << 1, 1, 1, 0;
  v << 1, 1, 1, 1, 0;
  CHECK(clean.u_star == u);
  CHECK(clean.v_star == v);

  const OracleResult pert = bmf_rank1_exact(builtin::community_perturbed());
  CHECK(pert.value == 3.0);
  CHECK(pert.u_star == u);
  CHECK(pert.v_star == v);

  const OracleResult zero = bmf_rank1_exact(Matrix::Zero(3, 4));
  CHECK(zero.value == 0.0);
  CHECK(zero.u_star == Vector::Zero(3));
}

TEST_CASE("bmf_rank1_exact agrees with brute force") {
  Rng rng(26);
  for (int t = 0; t < 30; ++t) {
    const Matrix m = random_binary_matrix(1 + (Index)rng.index(6), 1 + (Index)rng.index(6), rng);
    const OracleResult r = bmf_rank1_exact(m);
    CHECK(r.value == (double)brute::bmf_min(m));
    CHECK((double)l0_error(m, r.u_star, r.v_star) == r.value);
  }
  CHECK_THROWS_AS(bmf_rank1_exact(Matrix::Constant(2, 2, 2.0)), std::invalid_argument);
}

TEST_CASE("l0_lra_rank1_exact delegates and dominates sampled real factors") {
  const Matrix mt = builtin::community_perturbed();
  const OracleResult a = l0_lra_rank1_exact(mt);
  const OracleResult b = bmf_rank1_exact(mt);
  CHECK(a.value == b.value);
  CHECK(a.u_star == b.u_star);
  CHECK(a.v_star == b.v_star);
  CHECK(a.value == 3.0);

  Rng rng(27);
  for (int t = 0; t < 50; ++t) {
    const Matrix m = random_binary_matrix(5, 5, rng);
    const OracleResult r = l0_lra_rank1_exact(m);
    for (int s = 0; s < 200; ++s) {
      Vector x(5), y(5);
      for (int i = 0; i < 5; ++i) x(i) = rng.uniform(-1.5, 1.5);
      for (int j = 0; j < 5; ++j) y(j) = rng.uniform(-1.5, 1.5);
      CHECK((double)l0_error(m, x, y) >= r.value);
    }
  }
}

TEST_CASE("l1_lra_rank1_exact_sign pinned values and the norm identity") {
  const OracleResult stall = l1_lra_rank1_exact_sign(builtin::stall_example());
  CHECK(stall.value == 16.0);
  CHECK(l1_lra_rank1_exact_sign(Matrix::Ones(3, 3)).value == 0.0);
  CHECK_THROWS_AS(l1_lra_rank1_exact_sign(Matrix::Zero(2, 2)), std::invalid_argument);

  Rng rng(28);
  for (int t = 0; t < 30; ++t) {
    const Matrix a = random_sign_matrix(5, 6, rng);
    const OracleResult l1 = l1_lra_rank1_exact_sign(a);
    CHECK(l1.value == 30.0 - inf1_norm_exact(a).value);
    CHECK(l1_error(a, l1.u_star, l1.v_star) == l1.value);
  }
  for (int t = 0; t < 15; ++t) {
    const Matrix a = random_sign_matrix(1 + (Index)rng.index(5), 1 + (Index)rng.index(5), rng);
    CHECK(l1_lra_rank1_exact_sign(a).value == brute::l1_sign_min(a));
  }
}

TEST_CASE("maxcut_exact on pinned graphs") {
  const Graph triangle = make_graph(3, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(maxcut_exact(triangle).cut_size == 2);

  const Graph edge = make_graph(2, {{0, 1}});
  const MaxCutResult er = maxcut_exact(edge);
  CHECK(er.cut_size == 1);
  CHECK(er.side(0) == 0);  // lexicographic tie-break fixes vertex 1 on side 0
  CHECK(er.side(1) == 1);

  const Graph c4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  CHECK(maxcut_exact(c4).cut_size == 4);

  Rng rng(29);
  for (int t = 0; t < 20; ++t) {
    const int nv = 3 + (int)rng.index(5);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < nv; ++i)
      for (int j = i + 1; j < nv; ++j)
        if (rng.uniform01() < 0.5) edges.emplace_back(i, j);
    const Graph g = make_graph(nv, edges);
    const MaxCutResult r = maxcut_exact(g);
    CHECK(r.cut_size == brute::maxcut(g));
    long recount = 0;
    for (const auto& [a, b] : g.edges)
      if (r.side(a) != r.side(b)) ++recount;
    CHECK(recount == r.cut_size);
  }
  CHECK_THROWS_AS(maxcut_exact(make_graph(25, {})), CapExceeded);
}

TEST_CASE("bmf_rank_r_exact specializes, lifts, and factors exactly") {
  Rng rng(30);
  for (int t = 0; t < 10; ++t) {
    const Matrix m = random_binary_matrix(4, 4, rng);
    CHECK(bmf_rank_r_exact(m, 1).value == (long)bmf_rank1_exact(m).value);
  }

  Matrix m0(2, 2);
  m0 << 1, 1, 1, 0;
  const RankRFactorization lifted = bmf_rank_r_exact(diag_lift(m0, 2), 2);
  CHECK(lifted.value == 2 * (long)bmf_rank1_exact(m0).value);

  const RankRFactorization id2 = bmf_rank_r_exact(Matrix::Identity(2, 2), 2);
  CHECK(id2.value == 0);
  // the returned product must reproduce the claimed mismatch count
  long mism = 0;
  const Matrix prod = lifted.left * lifted.right;
  const Matrix lm = diag_lift(m0, 2);
  for (Index i = 0; i < lm.rows(); ++i)
    for (Index j = 0; j < lm.cols(); ++j)
      if (lm(i, j) != prod(i, j)) ++mism;
  CHECK(mism == lifted.value);

  CHECK_THROWS_AS(bmf_rank_r_exact(Matrix::Zero(11, 2), 2), CapExceeded);
}

TEST_CASE("repeated oracle calls are deterministic") {
  Rng rng(31);
  const Matrix a = random_real_matrix(5, 5, rng);
  const OracleResult r1 = inf1_norm_exact(a);
  const OracleResult r2 = inf1_norm_exact(a);
  CHECK(r1.value == r2.value);
  CHECK(r1.u_star == r2.u_star);
  CHECK(r1.v_star == r2.v_star);
  CHECK(r1.enumerated == r2.enumerated);
}
