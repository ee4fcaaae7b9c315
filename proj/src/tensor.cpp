#include "haarmoments/tensor.hpp"

namespace haarmoments {

std::int64_t dense_dim(int d, int k) {
  if (d < 1 || k < 0) throw std::invalid_argument("dense_dim: need d >= 1, k >= 0");
  std::int64_t n = 1;
  for (int i = 0; i < k; ++i) {
    if (n > (std::int64_t{1} << 62) / d) throw ResourceError("dense_dim: d^k overflows");
    n *= d;
  }
  return n;
}

void check_dense_cap(std::int64_t dim, std::int64_t cap) {
  if (cap < kMinDenseCap) throw std::invalid_argument("dense cap must be >= 16");
  if (dim > cap) {
    throw ResourceError("dense dimension " + std::to_string(dim) + " exceeds cap " +
                        std::to_string(cap));
  }
}

std::vector<int> unflatten_index(std::int64_t index, int d, int k) {
  std::vector<int> digits(static_cast<size_t>(k));
  for (int m = k - 1; m >= 0; --m) {
    digits[static_cast<size_t>(m)] = static_cast<int>(index % d);
    index /= d;
  }
  return digits;
}

std::int64_t flatten_index(const std::vector<int>& digits, int d) {
  std::int64_t index = 0;
  for (int digit : digits) index = index * d + digit;
  return index;
}

ExactMatrix dagger(const ExactMatrix& a) {
  ExactMatrix out(a.cols(), a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(j, i) = a(i, j).conj();
  }
  return out;
}

ExactMatrix conj_entrywise(const ExactMatrix& a) {
  ExactMatrix out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).conj();
  }
  return out;
}

bool exact_equal(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != b(i, j)) return false;
    }
  }
  return true;
}

bool exact_zero(const ExactMatrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (!a(i, j).is_zero()) return false;
    }
  }
  return true;
}

ComplexMatrix to_complex(const ExactMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).to_complex();
  }
  return out;
}

double max_abs(const ComplexMatrix& a) {
  double m = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
  }
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  }
  return max_abs(a - b);
}

Eigen::Matrix<GaussianRational, Eigen::Dynamic, 1> solve_exact_consistent(
    ExactMatrix m, Eigen::Matrix<GaussianRational, Eigen::Dynamic, 1> rhs) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  if (rhs.size() != rows) throw std::invalid_argument("solve_exact_consistent: size mismatch");

  std::vector<Eigen::Index> pivot_col_of_row;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = row; r < rows; ++r) {
      if (!m(r, col).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) {
      m.row(pivot).swap(m.row(row));
      std::swap(rhs(pivot), rhs(row));
    }
    GaussianRational inv = GaussianRational(1) / m(row, col);
    for (Eigen::Index c = col; c < cols; ++c) m(row, c) *= inv;
    rhs(row) *= inv;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      GaussianRational factor = m(r, col);
      for (Eigen::Index c = col; c < cols; ++c) m(r, c) -= factor * m(row, c);
      rhs(r) -= factor * rhs(row);
    }
    pivot_col_of_row.push_back(col);
    ++row;
  }
  for (Eigen::Index r = row; r < rows; ++r) {
    if (!rhs(r).is_zero()) {
      throw std::invalid_argument("solve_exact_consistent: inconsistent system");
    }
  }
  Eigen::Matrix<GaussianRational, Eigen::Dynamic, 1> x =
      Eigen::Matrix<GaussianRational, Eigen::Dynamic, 1>::Zero(cols);
  for (Eigen::Index r = 0; r < row; ++r) x(pivot_col_of_row[static_cast<size_t>(r)]) = rhs(r);
  return x;
}

}  // namespace haarmoments
