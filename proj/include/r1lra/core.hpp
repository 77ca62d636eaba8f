#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>

namespace r1lra {

using Index = Eigen::Index;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = Mat<double>;
using Vector = Vec<double>;
using IntVector = Vec<int>;

/// A rank-one factor pair (u, v) standing for the outer product u v^T.
struct RankOneFactors {
  Vector u;
  Vector v;
};

inline Matrix outer_product(const RankOneFactors& f) { return f.u * f.v.transpose(); }

namespace detail {

template <typename DerivedM, typename DerivedU, typename DerivedV>
void check_dims(const char* what, const Eigen::MatrixBase<DerivedM>& m,
                const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedV>& v) {
  if (u.cols() != 1 || v.cols() != 1)
    throw std::invalid_argument(std::string(what) + ": factors must be column vectors");
  if (m.rows() != u.rows() || m.cols() != v.rows())
    throw std::invalid_argument(std::string(what) + ": matrix is " + std::to_string(m.rows()) +
                                "x" + std::to_string(m.cols()) + " but factors have lengths " +
                                std::to_string(u.rows()) + " and " + std::to_string(v.rows()));
}

}  // namespace detail

template <typename Derived>
bool is_sign(const Eigen::MatrixBase<Derived>& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != 1.0 && a(i, j) != -1.0) return false;
  return true;
}

template <typename Derived>
bool is_binary(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0.0 && m(i, j) != 1.0) return false;
  return true;
}

template <typename Derived>
bool is_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j))) return false;
  return true;
}

inline bool is_sign_factors(const RankOneFactors& f) { return is_sign(f.u) && is_sign(f.v); }
inline bool is_binary_factors(const RankOneFactors& f) { return is_binary(f.u) && is_binary(f.v); }

template <typename Derived>
void require_sign(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (!is_sign(a)) throw std::invalid_argument(std::string(what) + ": entries must be -1 or +1");
}

template <typename Derived>
void require_binary(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!is_binary(m)) throw std::invalid_argument(std::string(what) + ": entries must be 0 or 1");
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!is_finite(m)) throw std::invalid_argument(std::string(what) + ": entries must be finite");
}

/// Entrywise affine bridge A = 2M - 1 from {0,1} to {-1,+1}.
inline Matrix to_sign(const Matrix& m) {
  require_binary(m, "to_sign");
  return 2.0 * m - Matrix::Ones(m.rows(), m.cols());
}

/// Exact inverse of to_sign: M = (A + 1) / 2.
inline Matrix to_binary(const Matrix& a) {
  require_sign(a, "to_binary");
  return (a + Matrix::Ones(a.rows(), a.cols())) / 2.0;
}

/// Number of entries where M and u v^T differ by more than `tol`.
/// The default tol = 0 counts exact inequality.
template <typename DerivedM, typename DerivedU, typename DerivedV>
long l0_error(const Eigen::MatrixBase<DerivedM>& m, const Eigen::MatrixBase<DerivedU>& u,
              const Eigen::MatrixBase<DerivedV>& v, double tol = 0.0) {
  detail::check_dims("l0_error", m, u, v);
  long count = 0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (std::abs(m(i, j) - u(i) * v(j)) > tol) ++count;
  return count;
}

/// Sum of absolute entrywise deviations between M and u v^T.
template <typename DerivedM, typename DerivedU, typename DerivedV>
double l1_error(const Eigen::MatrixBase<DerivedM>& m, const Eigen::MatrixBase<DerivedU>& u,
                const Eigen::MatrixBase<DerivedV>& v) {
  detail::check_dims("l1_error", m, u, v);
  long double acc = 0.0L;  // widening accumulator, keeps relative error tiny on large inputs
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) acc += std::abs((long double)(m(i, j) - u(i) * v(j)));
  return (double)acc;
}

/// Squared Frobenius distance between M and u v^T.
template <typename DerivedM, typename DerivedU, typename DerivedV>
double frobenius_error_sq(const Eigen::MatrixBase<DerivedM>& m, const Eigen::MatrixBase<DerivedU>& u,
                          const Eigen::MatrixBase<DerivedV>& v) {
  detail::check_dims("frobenius_error_sq", m, u, v);
  long double acc = 0.0L;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) {
      const long double r = (long double)(m(i, j) - u(i) * v(j));
      acc += r * r;
    }
  return (double)acc;
}

inline long l0_error(const Matrix& m, const RankOneFactors& f, double tol = 0.0) {
  return l0_error(m, f.u, f.v, tol);
}
inline double l1_error(const Matrix& m, const RankOneFactors& f) { return l1_error(m, f.u, f.v); }
inline double frobenius_error_sq(const Matrix& m, const RankOneFactors& f) {
  return frobenius_error_sq(m, f.u, f.v);
}

}  // namespace r1lra
