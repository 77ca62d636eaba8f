#include "r1lra/reductions.hpp"

#include <cmath>
#include <string>

namespace r1lra {

Vector binarize_phi(const Vector& x) {
  Vector y(x.size());
  for (Index i = 0; i < x.size(); ++i) y(i) = x(i) == 0.0 ? 0.0 : 1.0;
  return y;
}

Matrix binarize_phi(const Matrix& x) {
  Matrix y(x.rows(), x.cols());
  for (Index j = 0; j < x.cols(); ++j)
    for (Index i = 0; i < x.rows(); ++i) y(i, j) = x(i, j) == 0.0 ? 0.0 : 1.0;
  return y;
}

RankOneFactors binarize_phi(const RankOneFactors& f) {
  return {binarize_phi(f.u), binarize_phi(f.v)};
}

Matrix cutnorm_doubling(const Matrix& a) {
  const Index m = a.rows(), n = a.cols();
  Matrix b(2 * m, 2 * n);
  b.topLeftCorner(m, n) = a;
  b.topRightCorner(m, n) = -a;
  b.bottomLeftCorner(m, n) = -a;
  b.bottomRightCorner(m, n) = a;
  return b;
}

Matrix hadamard(Index p) {
  if (p < 1 || (p & (p - 1)) != 0)
    throw std::invalid_argument("hadamard: size must be a power of two, got " +
                                std::to_string(p));
  Matrix h(1, 1);
  h(0, 0) = 1.0;
  for (Index s = 1; s < p; s *= 2) {
    Matrix next(2 * s, 2 * s);
    next.topLeftCorner(s, s) = h;
    next.topRightCorner(s, s) = h;
    next.bottomLeftCorner(s, s) = -h;
    next.bottomRightCorner(s, s) = h;
    h = std::move(next);
  }
  return h;
}

double GadgetInstance::d_star(double cut_count) const {
  const double p = (double)block_size;
  return 2.0 * p * p * cut_count - (double)num_edges * (double)num_vertices * p * std::sqrt(p);
}

namespace {

std::uint64_t soundness_bound(const Graph& g) {
  const std::uint64_t e = g.edges.size(), v = g.num_vertices;
  return e * e * v * v;
}

}  // namespace

GadgetInstance maxcut_gadget(const Graph& g, Index block_size, const GadgetLimits& limits) {
  if (g.edges.empty()) throw std::invalid_argument("maxcut_gadget: graph has no edges");
  if (block_size < 1 || (block_size & (block_size - 1)) != 0)
    throw std::invalid_argument("maxcut_gadget: block size must be a power of two");
  const Index rows = block_size * (Index)g.edges.size();
  const Index cols = block_size * (Index)g.num_vertices;
  if (rows > limits.max_matrix_rows || cols > limits.max_matrix_cols)
    throw CapExceeded("maxcut_gadget: block size " + std::to_string(block_size) + " gives a " +
                      std::to_string(rows) + "x" + std::to_string(cols) +
                      " matrix; the limits are " + std::to_string(limits.max_matrix_rows) + "x" +
                      std::to_string(limits.max_matrix_cols));

  GadgetInstance inst;
  inst.block_size = block_size;
  inst.num_vertices = g.num_vertices;
  inst.num_edges = (int)g.edges.size();
  inst.edges = g.edges;
  inst.sound = (std::uint64_t)block_size > soundness_bound(g);

  const Matrix h = hadamard(block_size);
  inst.a = Matrix(rows, cols);
  for (int q = 0; q < inst.num_edges; ++q) {
    const auto [i, j] = inst.edges[q];
    for (int l = 0; l < inst.num_vertices; ++l) {
      auto block = inst.a.block(q * block_size, l * block_size, block_size, block_size);
      if (l == i)
        block.setConstant(1.0);
      else if (l == j)
        block.setConstant(-1.0);
      else
        block = h;
    }
  }
  return inst;
}

GadgetInstance maxcut_gadget_auto(const Graph& g, const GadgetLimits& limits) {
  if (g.edges.empty()) throw std::invalid_argument("maxcut_gadget: graph has no edges");
  const std::uint64_t bound = soundness_bound(g);
  Index p = 1;
  while ((std::uint64_t)p <= bound) {
    p *= 2;
    if (p * (Index)g.edges.size() > limits.max_matrix_rows ||
        p * (Index)g.num_vertices > limits.max_matrix_cols)
      throw CapExceeded(
          "maxcut_gadget: sound construction needs block size > " + std::to_string(bound) +
          ", giving at least a " + std::to_string(p * (Index)g.edges.size()) + "x" +
          std::to_string(p * (Index)g.num_vertices) + " matrix; the limits are " +
          std::to_string(limits.max_matrix_rows) + "x" + std::to_string(limits.max_matrix_cols));
  }
  return maxcut_gadget(g, p, limits);
}

RankOneFactors embed_cut(const GadgetInstance& inst, const IntVector& side) {
  if (side.size() != inst.num_vertices)
    throw std::invalid_argument("embed_cut: side vector length " + std::to_string(side.size()) +
                                " does not match " + std::to_string(inst.num_vertices) +
                                " vertices");
  for (Index l = 0; l < side.size(); ++l)
    if (side(l) != 0 && side(l) != 1)
      throw std::invalid_argument("embed_cut: side entries must be 0 or 1");
  const Index p = inst.block_size;
  RankOneFactors f{Vector(p * inst.num_edges), Vector(p * inst.num_vertices)};
  for (int l = 0; l < inst.num_vertices; ++l)
    f.v.segment(l * p, p).setConstant(side(l) ? 1.0 : -1.0);
  for (int q = 0; q < inst.num_edges; ++q) {
    const auto [i, j] = inst.edges[q];
    double s = 1.0;  // non-crossing edges always take the +1 block
    if (side(i) == 1 && side(j) == 0) s = 1.0;
    else if (side(i) == 0 && side(j) == 1) s = -1.0;
    f.u.segment(q * p, p).setConstant(s);
  }
  return f;
}

long long embed_cut_value(const GadgetInstance& inst, const IntVector& side) {
  if (side.size() != inst.num_vertices)
    throw std::invalid_argument("embed_cut_value: side vector length mismatch");
  const long long p = inst.block_size;
  long long tau_sum = 0;
  for (Index l = 0; l < side.size(); ++l) tau_sum += side(l) ? 1 : -1;
  long long value = 0;
  for (int q = 0; q < inst.num_edges; ++q) {
    const auto [i, j] = inst.edges[q];
    const long long ti = side(i) ? 1 : -1;
    const long long tj = side(j) ? 1 : -1;
    long long sigma = 1;
    if (side(i) == 0 && side(j) == 1) sigma = -1;
    if (ti != tj) value += 2 * p * p;           // the two endpoint blocks of a crossing edge
    value += sigma * p * (tau_sum - ti - tj);   // Hadamard blocks contribute +-p each
  }
  return value;
}

GadgetThresholdReport verify_gadget_threshold(const GadgetInstance& inst, long c_star,
                                              const EnumerationConfig& cfg) {
  GadgetThresholdReport rep;
  rep.c_star = c_star;
  rep.sound = inst.sound;
  rep.d_star_value = inst.d_star((double)c_star);

  const Graph g{inst.num_vertices, inst.edges};
  const MaxCutResult mc = maxcut_exact(g, cfg);
  rep.max_cut = mc.cut_size;
  rep.max_cut_side = mc.side;

  const int v_count = inst.num_vertices;
  bool have_best = false;
  IntVector side(v_count);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << v_count); ++mask) {
    for (int l = 0; l < v_count; ++l) side(l) = (int)((mask >> (v_count - 1 - l)) & 1u);
    const long long value = embed_cut_value(inst, side);
    if (!have_best || value > rep.best_embedded) {
      rep.best_embedded = value;
      rep.best_embedded_side = side;
      have_best = true;
    }
  }
  // the block closed form must agree with the matrix itself
  const RankOneFactors best_f = embed_cut(inst, rep.best_embedded_side);
  const double direct = best_f.u.dot(inst.a * best_f.v);
  if (direct != (double)rep.best_embedded)
    throw std::logic_error("verify_gadget_threshold: block evaluation mismatch");

  const double margin = std::ldexp(std::abs(rep.d_star_value), -50);
  rep.maxcut_yes = rep.max_cut >= c_star;
  rep.embedded_yes = (double)rep.best_embedded >= rep.d_star_value - margin;
  rep.forward_ok = !rep.maxcut_yes || rep.embedded_yes;
  rep.equivalent = rep.maxcut_yes == rep.embedded_yes;

  if (std::min(inst.a.rows(), inst.a.cols()) <= cfg.max_rows) {
    const OracleResult norm = inf1_norm_exact(inst.a, cfg);
    rep.full_enumeration = true;
    rep.norm_value = norm.value;
    rep.norm_yes = norm.value >= rep.d_star_value - margin;
    rep.norm_equivalent = rep.maxcut_yes == *rep.norm_yes;
  }
  return rep;
}

Matrix diag_lift(const Matrix& m, int copies) {
  if (copies < 1) throw std::invalid_argument("diag_lift: need at least one copy");
  Matrix out = Matrix::Zero(m.rows() * copies, m.cols() * copies);
  for (int k = 0; k < copies; ++k)
    out.block(k * m.rows(), k * m.cols(), m.rows(), m.cols()) = m;
  return out;
}

}  // namespace r1lra
