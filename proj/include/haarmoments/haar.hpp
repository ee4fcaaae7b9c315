#pragma once

#include "haarmoments/rng.hpp"
#include "haarmoments/tensor.hpp"

namespace haarmoments {

/// Haar-distributed d x d unitary: complex Ginibre matrix, QR factorization,
/// then the phase gauge fix U = Q diag(r_ii/|r_ii|). Plain QR of a Ginibre
/// matrix is not Haar; the diagonal phase correction is required.
ComplexMatrix haar_sample(int d, RngStream& rng);

/// Haar-random unit vector in C^dim (normalized complex Gaussian).
Eigen::VectorXcd haar_state(int dim, RngStream& rng);

/// max |(U^dagger U - 1)_{ij}|.
double unitarity_residual(const ComplexMatrix& u);

}  // namespace haarmoments
