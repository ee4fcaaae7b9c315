#include "haarmoments/symfunc.hpp"

namespace haarmoments {

RationalVector tensor_product(const RationalVector& x, const RationalVector& y) {
  RationalVector xy;
  xy.reserve(x.size() * y.size());
  for (const auto& a : x) {
    for (const auto& b : y) xy.push_back(a * b);
  }
  return xy;
}

namespace {

Rational power_sum_single(int r, const RationalVector& x) {
  Rational acc = 0;
  for (const auto& xi : x) {
    Rational p;
    mpz_pow_ui(p.get_num_mpz_t(), xi.get_num_mpz_t(), static_cast<unsigned long>(r));
    mpz_pow_ui(p.get_den_mpz_t(), xi.get_den_mpz_t(), static_cast<unsigned long>(r));
    acc += p;
  }
  return acc;
}

}  // namespace

Rational power_sum(const Partition& gamma, const RationalVector& x) {
  if (x.empty()) throw std::invalid_argument("power_sum: empty variable vector");
  Rational acc = 1;
  for (int part : gamma.parts()) acc *= power_sum_single(part, x);
  return acc;
}

Rational schur_poly(const Partition& lambda, const RationalVector& x) {
  if (x.empty()) throw std::invalid_argument("schur_poly: empty variable vector");
  if (lambda.length() > static_cast<int>(x.size())) return 0;
  const int k = lambda.weight();
  if (k == 0) return 1;
  Rational acc = 0;
  for (const auto& gamma : partitions_of(k)) {
    acc += Rational(character(lambda, gamma)) * power_sum(gamma, x) / Rational(z_gamma(gamma));
  }
  return acc;
}

BigInt kronecker(const Partition& lambda, const Partition& mu, const Partition& nu) {
  const int k = lambda.weight();
  if (mu.weight() != k || nu.weight() != k) {
    throw std::invalid_argument("kronecker: lambda, mu, nu must partition the same k");
  }
  Rational acc = 0;
  for (const auto& gamma : partitions_of(k)) {
    acc += Rational(character(lambda, gamma) * character(mu, gamma) * character(nu, gamma)) /
           Rational(z_gamma(gamma));
  }
  if (acc.get_den() != 1 || acc < 0) {
    throw std::logic_error("kronecker: sum is not a non-negative integer");
  }
  return acc.get_num();
}

Rational schur_tensor_expand(const Partition& lambda, const RationalVector& x,
                             const RationalVector& y) {
  const int k = lambda.weight();
  Rational acc = 0;
  for (const auto& mu : partitions_of(k)) {
    Rational sx = schur_poly(mu, x);
    if (sx == 0) continue;
    for (const auto& nu : partitions_of(k)) {
      BigInt g = kronecker(lambda, mu, nu);
      if (g == 0) continue;
      acc += Rational(g) * sx * schur_poly(nu, y);
    }
  }
  Rational direct = schur_poly(lambda, tensor_product(x, y));
  if (acc != direct) {
    throw std::logic_error("schur_tensor_expand: expansion disagrees with direct evaluation");
  }
  return acc;
}

}  // namespace haarmoments
