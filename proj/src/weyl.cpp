#include "haarmoments/weyl.hpp"

#include <cmath>

#include "haarmoments/partition.hpp"

namespace haarmoments {

double vandermonde_jacobian(const std::vector<double>& theta) {
  double j = 1.0;
  for (size_t a = 0; a < theta.size(); ++a) {
    for (size_t b = a + 1; b < theta.size(); ++b) {
      j *= 2.0 - 2.0 * std::cos(theta[a] - theta[b]);
    }
  }
  return j;
}

int min_grid_for_degree(int deg) { return 2 * deg + 1; }

namespace {

void check_torus_args(int n, int grid) {
  if (n < 1) throw std::invalid_argument("weyl_quadrature: need n >= 1");
  if (n > kWeylTorusCap) {
    throw ResourceError("weyl_quadrature: torus dimension exceeds cap " +
                        std::to_string(kWeylTorusCap));
  }
  if (grid < 2) throw std::invalid_argument("weyl_quadrature: need grid >= 2");
}

// Odometer over [0, grid)^n.
bool advance(std::vector<int>& idx, int grid) {
  for (size_t i = 0; i < idx.size(); ++i) {
    if (++idx[i] < grid) return true;
    idx[i] = 0;
  }
  return false;
}

}  // namespace

std::complex<double> weyl_quadrature(
    const std::function<std::complex<double>(const std::vector<double>&)>& class_fn, int n,
    int grid) {
  check_torus_args(n, grid);
  const double step = 2.0 * M_PI / grid;

  // 1-D table of pairwise weights 2 - 2 cos(step * delta).
  std::vector<double> pair_weight(static_cast<size_t>(grid));
  for (int delta = 0; delta < grid; ++delta) pair_weight[static_cast<size_t>(delta)] = 2.0 - 2.0 * std::cos(step * delta);

  std::vector<int> idx(static_cast<size_t>(n), 0);
  std::vector<double> theta(static_cast<size_t>(n));
  std::complex<double> acc{0.0, 0.0};
  do {
    double jac = 1.0;
    for (int a = 0; a < n; ++a) {
      theta[static_cast<size_t>(a)] = step * idx[static_cast<size_t>(a)];
      for (int b = a + 1; b < n; ++b) {
        int delta = idx[static_cast<size_t>(a)] - idx[static_cast<size_t>(b)];
        if (delta < 0) delta += grid;
        jac *= pair_weight[static_cast<size_t>(delta)];
      }
    }
    if (jac != 0.0) acc += jac * class_fn(theta);
  } while (advance(idx, grid));

  double cells = std::pow(static_cast<double>(grid), n);
  return acc / (cells * factorial(n).get_d());
}

double weyl_trace_power_moment(int n, int k, int power, int grid) {
  if (k < 1 || power < 0) throw std::invalid_argument("weyl_trace_power_moment: bad k or power");
  if (grid == 0) grid = min_grid_for_degree(power * k + n - 1);
  check_torus_args(n, grid);
  const double step = 2.0 * M_PI / grid;

  std::vector<double> pair_weight(static_cast<size_t>(grid));
  std::vector<std::complex<double>> phase_k(static_cast<size_t>(grid));
  for (int m = 0; m < grid; ++m) {
    pair_weight[static_cast<size_t>(m)] = 2.0 - 2.0 * std::cos(step * m);
    phase_k[static_cast<size_t>(m)] = std::polar(1.0, step * m * k);
  }

  std::vector<int> idx(static_cast<size_t>(n), 0);
  double acc = 0.0;
  do {
    double jac = 1.0;
    for (int a = 0; a < n && jac != 0.0; ++a) {
      for (int b = a + 1; b < n; ++b) {
        int delta = idx[static_cast<size_t>(a)] - idx[static_cast<size_t>(b)];
        if (delta < 0) delta += grid;
        jac *= pair_weight[static_cast<size_t>(delta)];
      }
    }
    if (jac == 0.0) continue;
    std::complex<double> tr{0.0, 0.0};
    for (int a = 0; a < n; ++a) tr += phase_k[static_cast<size_t>(idx[static_cast<size_t>(a)])];
    acc += jac * std::pow(std::norm(tr), power);
  } while (advance(idx, grid));

  double cells = std::pow(static_cast<double>(grid), n);
  return acc / (cells * factorial(n).get_d());
}

double weyl_jacobian_normalization(int n, int grid) {
  if (grid == 0) grid = min_grid_for_degree(n - 1);
  double avg = weyl_trace_power_moment(n, 1, 0, grid);  // f == 1
  return avg * factorial(n).get_d();
}

}  // namespace haarmoments
