#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "haarmoments/permutation.hpp"
#include "haarmoments/rational.hpp"

namespace haarmoments {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using ExactMatrix = MatrixX<GaussianRational>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr std::int64_t kDefaultDenseCap = 4096;
inline constexpr std::int64_t kMinDenseCap = 16;

/// d^k as a 64-bit value; throws ResourceError on overflow past 2^62.
std::int64_t dense_dim(int d, int k);

/// Throws ResourceError when dim exceeds the cap.
void check_dense_cap(std::int64_t dim, std::int64_t cap);

/// Basis index tuples on (C^d)^{x k} are flattened big-endian:
/// index = i_1 d^{k-1} + ... + i_k, with 0-based digits.
std::vector<int> unflatten_index(std::int64_t index, int d, int k);
std::int64_t flatten_index(const std::vector<int>& digits, int d);

/// Index permutation operator P(pi) |i_1 ... i_k> = |i_{pi^-1(1)} ... i_{pi^-1(k)}>
/// on (C^d)^{x k}. Satisfies P(sigma)P(tau) = P(sigma tau) and
/// P(pi)^dagger = P(pi^-1).
template <typename Scalar>
MatrixX<Scalar> permutation_operator(const Permutation& pi, int d,
                                     std::int64_t cap = kDefaultDenseCap) {
  const int k = pi.k();
  const std::int64_t n = dense_dim(d, k);
  check_dense_cap(n, cap);
  MatrixX<Scalar> out = MatrixX<Scalar>::Zero(n, n);
  std::vector<int> col(static_cast<size_t>(k)), row(static_cast<size_t>(k));
  const Permutation inv = pi.inverse();
  for (std::int64_t c = 0; c < n; ++c) {
    col = unflatten_index(c, d, k);
    for (int m = 0; m < k; ++m) row[static_cast<size_t>(m)] = col[static_cast<size_t>(inv(m))];
    out(flatten_index(row, d), c) = Scalar(1);
  }
  return out;
}

/// Swap operator F on C^d (x) C^d, F|ij> = |ji>.
template <typename Scalar>
MatrixX<Scalar> swap_operator(int d, std::int64_t cap = kDefaultDenseCap) {
  return permutation_operator<Scalar>(Permutation::from_cycles(2, {{1, 2}}), d, cap);
}

template <typename Scalar>
MatrixX<Scalar> kron(const MatrixX<Scalar>& a, const MatrixX<Scalar>& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

/// X^{(x) k}; tensor_power(X, 0) is the 1x1 identity.
template <typename Scalar>
MatrixX<Scalar> tensor_power(const MatrixX<Scalar>& x, int k,
                             std::int64_t cap = kDefaultDenseCap) {
  check_dense_cap(dense_dim(static_cast<int>(x.rows()), k), cap);
  MatrixX<Scalar> out = MatrixX<Scalar>::Identity(1, 1);
  for (int i = 0; i < k; ++i) out = kron(out, x);
  return out;
}

/// Tr(AB) without forming the product.
template <typename Scalar>
Scalar trace_product(const MatrixX<Scalar>& a, const MatrixX<Scalar>& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw std::invalid_argument("trace_product: dimension mismatch");
  }
  Scalar acc(0);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) acc += a(i, j) * b(j, i);
  }
  return acc;
}

/// Tr(A P(pi)) in O(d^k) entry reads: Tr(A P(pi)) = sum_x A(x, pi.x) with
/// (pi.x)_m = x_{pi^-1(m)}.
template <typename Scalar>
Scalar trace_with_permutation(const MatrixX<Scalar>& a, const Permutation& pi, int d) {
  const int k = pi.k();
  const std::int64_t n = dense_dim(d, k);
  if (a.rows() != n || a.cols() != n) {
    throw std::invalid_argument("trace_with_permutation: dimension mismatch");
  }
  const Permutation inv = pi.inverse();
  Scalar acc(0);
  std::vector<int> x(static_cast<size_t>(k)), y(static_cast<size_t>(k));
  for (std::int64_t row = 0; row < n; ++row) {
    x = unflatten_index(row, d, k);
    for (int m = 0; m < k; ++m) y[static_cast<size_t>(m)] = x[static_cast<size_t>(inv(m))];
    acc += a(row, flatten_index(y, d));
  }
  return acc;
}

/// Conjugate transpose of an exact matrix. Eigen's .adjoint() must not be
/// used on ExactMatrix: GaussianRational registers as a non-complex scalar.
ExactMatrix dagger(const ExactMatrix& a);

/// Entrywise conjugate.
ExactMatrix conj_entrywise(const ExactMatrix& a);

/// Partial trace over the second factor of C^{dimA} (x) C^{dimB}.
template <typename Scalar>
MatrixX<Scalar> partial_trace_second(const MatrixX<Scalar>& m, std::int64_t dim_a,
                                     std::int64_t dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    throw std::invalid_argument("partial_trace_second: dimension mismatch");
  }
  MatrixX<Scalar> out = MatrixX<Scalar>::Zero(dim_a, dim_a);
  for (std::int64_t i = 0; i < dim_a; ++i) {
    for (std::int64_t j = 0; j < dim_a; ++j) {
      Scalar acc(0);
      for (std::int64_t b = 0; b < dim_b; ++b) acc += m(i * dim_b + b, j * dim_b + b);
      out(i, j) = acc;
    }
  }
  return out;
}

/// Entrywise exact equality (Eigen matrices have no operator==).
bool exact_equal(const ExactMatrix& a, const ExactMatrix& b);
bool exact_zero(const ExactMatrix& a);

ComplexMatrix to_complex(const ExactMatrix& a);

double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Solves M x = rhs exactly over the Gaussian rationals by row reduction.
/// The system may be singular as long as it is consistent (free variables
/// are set to zero); an inconsistent system throws std::invalid_argument.
Eigen::Matrix<GaussianRational, Eigen::Dynamic, 1> solve_exact_consistent(
    ExactMatrix m, Eigen::Matrix<GaussianRational, Eigen::Dynamic, 1> rhs);

}  // namespace haarmoments
