#include "r1lra/builtin.hpp"

#include <stdexcept>

namespace r1lra::builtin {

Matrix community_clean() {
  Matrix m(4, 5);
  m << 1, 1, 1, 1, 0,
       1, 1, 1, 1, 0,
       1, 1, 1, 1, 0,
       0, 0, 0, 0, 0;
  return m;
}

Matrix community_perturbed() {
  Matrix m(4, 5);
  m << 1, 1, 1, 1, 0,
       1, 1, 1, 1, 1,
       1, 1, 1, 1, 0,
       1, 0, 0, 0, 1;
  return m;
}

Matrix community_l2_reference() {
  Matrix m(4, 5);
  m << 1.03, 0.92, 0.92, 0.92, 0.44,
       1.15, 1.02, 1.02, 1.02, 0.50,
       1.03, 0.92, 0.92, 0.92, 0.44,
       0.40, 0.36, 0.36, 0.36, 0.17;
  return m;
}

Matrix stall_example() {
  Matrix a(6, 6);
  a <<  1,  1,  1,  1,  1,  1,
        1,  1,  1,  1,  1,  1,
        1, -1, -1, -1,  1,  1,
       -1,  1, -1, -1,  1,  1,
       -1, -1,  1, -1,  1,  1,
       -1, -1, -1,  1,  1,  1;
  return a;
}

RankOneFactors stall_stationary_pair(double x) {
  if (!(x > 0.5 && x < 1.0))
    throw std::invalid_argument("stall_stationary_pair: x must lie in (0.5, 1)");
  RankOneFactors f{Vector(6), Vector(6)};
  f.u << 1, 1, x, x, x, x;
  f.v << 1, 1, 1, 1, 1.0 / x, 1.0 / x;
  return f;
}

}  // namespace r1lra::builtin
