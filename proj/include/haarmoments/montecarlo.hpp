#pragma once

#include <functional>

#include "haarmoments/haar.hpp"

namespace haarmoments {

struct McEstimate {
  std::complex<double> mean{0.0, 0.0};
  double stderr_ = 0.0;
  long n = 0;

  double z_against(double exact) const { return (mean.real() - exact) / stderr_; }
};

struct McMatrixEstimate {
  ComplexMatrix mean;
  Eigen::MatrixXd stderr_;  // per-entry standard error (of the complex deviation)
  long n = 0;

  /// Largest entrywise |mean - exact| / stderr.
  double max_entry_z(const ComplexMatrix& exact) const;
};

/// Sample mean and standard error of a complex-valued sampler. Work is split
/// over a fixed number of substreams (16) combined in substream order, so the
/// result depends only on (seed, stream, n_samples), never on thread count.
McEstimate mc_sample(const std::function<std::complex<double>(RngStream&)>& draw, long n_samples,
                     const RngStream& base, int threads = 0);

/// Moment of an observable of a Haar-random unitary.
McEstimate mc_moment(const std::function<std::complex<double>(const ComplexMatrix&)>& observable,
                     int d, long n_samples, const RngStream& base, int threads = 0);

/// Entrywise mean and standard error of a matrix-valued observable of a
/// Haar-random unitary; same deterministic substream layout.
McMatrixEstimate mc_matrix_moment(
    const std::function<ComplexMatrix(const ComplexMatrix&)>& observable, int d, long n_samples,
    const RngStream& base, int threads = 0);

}  // namespace haarmoments
