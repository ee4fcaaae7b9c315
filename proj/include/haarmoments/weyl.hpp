#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "haarmoments/rational.hpp"

namespace haarmoments {

/// J(theta) = prod_{i<j} |e^{i theta_i} - e^{i theta_j}|^2, the squared
/// Vandermonde weight of the Weyl integration formula. Non-negative; zero
/// iff two angles coincide. The n = 1 empty product is 1.
double vandermonde_jacobian(const std::vector<double>& theta);

inline constexpr int kWeylTorusCap = 5;

/// Class-function integral over U(n) reduced to the torus:
///   (1/((2 pi)^n n!)) int f(D(theta)) J(theta) dtheta,
/// evaluated on a uniform product grid with equal weights (periodic
/// trapezoid). Exact to roundoff for trigonometric polynomials when
/// grid >= 2 * (per-axis degree of f * J) + 1. Every integrand in this
/// project is such a polynomial, so the rule is exact, not approximate.
std::complex<double> weyl_quadrature(
    const std::function<std::complex<double>(const std::vector<double>&)>& class_fn, int n,
    int grid_points_per_axis);

/// Smallest grid that integrates per-axis trigonometric degree deg exactly.
int min_grid_for_degree(int deg);

/// int_{U(n)} |Tr U^k|^{2 power} dU by torus quadrature, with tabulated
/// one-axis values so large grids stay cheap. grid = 0 picks the smallest
/// exact grid automatically.
double weyl_trace_power_moment(int n, int k, int power, int grid = 0);

/// (1/(2 pi)^n) int J(theta) dtheta; equals n! (the quadrature of f == 1
/// multiplied back by n!).
double weyl_jacobian_normalization(int n, int grid = 0);

}  // namespace haarmoments
