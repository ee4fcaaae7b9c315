#include "haarmoments/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace haarmoments {

namespace {

constexpr int kSubstreams = 16;

struct ScalarPartial {
  std::complex<double> sum{0.0, 0.0};
  double sum_sq = 0.0;  // sum |x|^2
  long n = 0;
};

long chunk_size(long n_samples, int chunk) {
  long base = n_samples / kSubstreams;
  return base + (chunk < n_samples % kSubstreams ? 1 : 0);
}

template <typename Partial, typename Body>
std::vector<Partial> run_substreams(long n_samples, int threads, const Body& body) {
  std::vector<Partial> partials(kSubstreams);
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  threads = std::min(threads, kSubstreams);
  std::vector<std::thread> pool;
  if (threads == 1) {
    for (int c = 0; c < kSubstreams; ++c) body(c, chunk_size(n_samples, c), partials[static_cast<size_t>(c)]);
    return partials;
  }
  std::atomic<int> cursor{0};
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int c = cursor.fetch_add(1); c < kSubstreams; c = cursor.fetch_add(1)) {
        body(c, chunk_size(n_samples, c), partials[static_cast<size_t>(c)]);
      }
    });
  }
  for (auto& th : pool) th.join();
  return partials;
}

}  // namespace

McEstimate mc_sample(const std::function<std::complex<double>(RngStream&)>& draw, long n_samples,
                     const RngStream& base, int threads) {
  if (n_samples < 2) throw std::invalid_argument("mc_sample: need n_samples >= 2");
  auto body = [&](int chunk, long count, ScalarPartial& p) {
    RngStream rng = base.substream(static_cast<std::uint64_t>(chunk));
    for (long i = 0; i < count; ++i) {
      std::complex<double> x = draw(rng);
      p.sum += x;
      p.sum_sq += std::norm(x);
      ++p.n;
    }
  };
  auto partials = run_substreams<ScalarPartial>(n_samples, threads, body);

  McEstimate est;
  std::complex<double> sum{0.0, 0.0};
  double sum_sq = 0.0;
  for (const auto& p : partials) {  // fixed combine order
    sum += p.sum;
    sum_sq += p.sum_sq;
    est.n += p.n;
  }
  est.mean = sum / static_cast<double>(est.n);
  double var = (sum_sq - static_cast<double>(est.n) * std::norm(est.mean)) /
               static_cast<double>(est.n - 1);
  est.stderr_ = std::sqrt(std::max(var, 0.0) / static_cast<double>(est.n));
  return est;
}

McEstimate mc_moment(const std::function<std::complex<double>(const ComplexMatrix&)>& observable,
                     int d, long n_samples, const RngStream& base, int threads) {
  return mc_sample(
      [&observable, d](RngStream& rng) { return observable(haar_sample(d, rng)); }, n_samples,
      base, threads);
}

double McMatrixEstimate::max_entry_z(const ComplexMatrix& exact) const {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < mean.rows(); ++i) {
    for (Eigen::Index j = 0; j < mean.cols(); ++j) {
      double dev = std::abs(mean(i, j) - exact(i, j));
      double se = stderr_(i, j);
      // An exactly-constant entry has zero spread; any deviation there is real.
      double z = se > 0 ? dev / se : (dev > 1e-12 ? 1e9 : 0.0);
      worst = std::max(worst, z);
    }
  }
  return worst;
}

McMatrixEstimate mc_matrix_moment(
    const std::function<ComplexMatrix(const ComplexMatrix&)>& observable, int d, long n_samples,
    const RngStream& base, int threads) {
  if (n_samples < 2) throw std::invalid_argument("mc_matrix_moment: need n_samples >= 2");

  struct MatrixPartial {
    ComplexMatrix sum;
    Eigen::MatrixXd sum_sq;
    long n = 0;
  };

  auto body = [&](int chunk, long count, MatrixPartial& p) {
    RngStream rng = base.substream(static_cast<std::uint64_t>(chunk));
    for (long i = 0; i < count; ++i) {
      ComplexMatrix x = observable(haar_sample(d, rng));
      if (p.n == 0) {
        p.sum = ComplexMatrix::Zero(x.rows(), x.cols());
        p.sum_sq = Eigen::MatrixXd::Zero(x.rows(), x.cols());
      }
      p.sum += x;
      p.sum_sq += x.cwiseAbs2();
      ++p.n;
    }
  };
  auto partials = run_substreams<MatrixPartial>(n_samples, threads, body);

  McMatrixEstimate est;
  ComplexMatrix sum;
  Eigen::MatrixXd sum_sq;
  for (const auto& p : partials) {
    if (p.n == 0) continue;
    if (est.n == 0) {
      sum = p.sum;
      sum_sq = p.sum_sq;
    } else {
      sum += p.sum;
      sum_sq += p.sum_sq;
    }
    est.n += p.n;
  }
  const double n = static_cast<double>(est.n);
  est.mean = sum / n;
  est.stderr_ = ((sum_sq - n * est.mean.cwiseAbs2()) / (n - 1.0)).cwiseMax(0.0).cwiseSqrt() /
                std::sqrt(n);
  return est;
}

}  // namespace haarmoments
