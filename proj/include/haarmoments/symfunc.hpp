#pragma once

#include <vector>

#include "haarmoments/characters.hpp"

namespace haarmoments {

/// Evaluation point for symmetric functions: a finite list of exact
/// rationals. Entries may repeat; nothing below divides by differences.
using RationalVector = std::vector<Rational>;

/// All pairwise products x_i y_j, the variable set of a tensor product.
RationalVector tensor_product(const RationalVector& x, const RationalVector& y);

/// Power-sum product p_gamma(x) = prod_j sum_i x_i^{gamma_j}.
Rational power_sum(const Partition& gamma, const RationalVector& x);

/// Schur polynomial s_lambda(x) via the Frobenius character expansion
/// s_lambda = sum_gamma chi_{lambda,gamma} p_gamma / z_gamma. Division-free
/// in the variables, so repeated entries are fine. Zero when length > dim.
Rational schur_poly(const Partition& lambda, const RationalVector& x);

/// Kronecker coefficient g_{lambda mu nu} = sum_gamma chi chi chi / z_gamma.
/// All three must partition the same k; the result is a non-negative integer.
BigInt kronecker(const Partition& lambda, const Partition& mu, const Partition& nu);

/// Evaluates sum_{mu,nu} g_{lambda mu nu} s_mu(x) s_nu(y) and checks it
/// against the direct evaluation s_lambda(xy) before returning.
Rational schur_tensor_expand(const Partition& lambda, const RationalVector& x,
                             const RationalVector& y);

}  // namespace haarmoments
