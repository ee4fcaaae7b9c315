#include "haarmoments/haar.hpp"

#include <Eigen/QR>

namespace haarmoments {

ComplexMatrix haar_sample(int d, RngStream& rng) {
  if (d < 1) throw std::invalid_argument("haar_sample: need d >= 1");
  ComplexMatrix ginibre(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) ginibre(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(ginibre);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    std::complex<double> rii = r(i, i);
    q.col(i) *= rii / std::abs(rii);
  }
  return q;
}

Eigen::VectorXcd haar_state(int dim, RngStream& rng) {
  if (dim < 1) throw std::invalid_argument("haar_state: need dim >= 1");
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

double unitarity_residual(const ComplexMatrix& u) {
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

}  // namespace haarmoments
