#include "haarmoments/weingarten.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

namespace haarmoments {

GroupAlgebraElement GroupAlgebraElement::zero(int k) {
  GroupAlgebraElement e;
  e.k = k;
  e.coeff.assign(Permutation::all(k).size(), GaussianRational(0));
  return e;
}

namespace {

// Rank of a permutation in the lexicographic enumeration, via the factorial
// number system. O(k^2), fine at this scale.
size_t perm_rank(const Permutation& pi) {
  const int k = pi.k();
  size_t rank = 0;
  for (int i = 0; i < k; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < k; ++j) {
      if (pi(j) < pi(i)) ++smaller;
    }
    size_t f = 1;
    for (int m = 2; m <= k - 1 - i; ++m) f *= static_cast<size_t>(m);
    rank += static_cast<size_t>(smaller) * f;
  }
  return rank;
}

}  // namespace

GroupAlgebraElement operator*(const GroupAlgebraElement& f, const GroupAlgebraElement& g) {
  if (f.k != g.k) throw std::invalid_argument("GroupAlgebraElement: weight mismatch");
  const auto& perms = Permutation::all(f.k);
  GroupAlgebraElement out = GroupAlgebraElement::zero(f.k);
  for (size_t s = 0; s < perms.size(); ++s) {
    if (f.coeff[s].is_zero()) continue;
    for (size_t r = 0; r < perms.size(); ++r) {
      if (g.coeff[r].is_zero()) continue;
      out.coeff[perm_rank(perms[s] * perms[r])] += f.coeff[s] * g.coeff[r];
    }
  }
  return out;
}

ClassFunction GroupAlgebraElement::to_class_function() const {
  const auto& perms = Permutation::all(k);
  ClassFunction cf;
  cf.k = k;
  for (size_t i = 0; i < perms.size(); ++i) {
    const GaussianRational& v = coeff[i];
    if (!v.is_real()) throw std::logic_error("GroupAlgebraElement: non-real central element");
    Partition type = cycle_type(perms[i]);
    auto it = cf.values.find(type);
    if (it == cf.values.end()) {
      cf.values.emplace(std::move(type), v.re);
    } else if (it->second != v.re) {
      throw std::logic_error("GroupAlgebraElement: not constant on conjugacy classes");
    }
  }
  return cf;
}

const ClassFunction& weingarten_fn(int k, int d) {
  if (k < 1 || d < 1) throw std::invalid_argument("weingarten_fn: need k >= 1, d >= 1");
  static std::mutex mtx;
  static std::map<std::pair<int, int>, ClassFunction> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find({k, d});
  if (it != cache.end()) return it->second;

  ClassFunction wg;
  wg.k = k;
  const Rational norm(1, factorial(k) * factorial(k));
  for (const auto& gamma : partitions_of(k)) wg.values.emplace(gamma, Rational(0));
  for (const auto& lambda : partitions_of(k, d)) {
    BigInt f = f_lambda(lambda);
    Rational weight = norm * Rational(f * f) / Rational(schur_dim(lambda, d));
    for (auto& [gamma, value] : wg.values) {
      value += weight * Rational(character(lambda, gamma));
    }
  }
  return cache.emplace(std::make_pair(k, d), std::move(wg)).first->second;
}

Rational weingarten_value(int k, int d, const Partition& type) {
  return weingarten_fn(k, d).at(type);
}

Rational monomial_integral(const std::vector<int>& rows, const std::vector<int>& cols,
                           const std::vector<int>& rows2, const std::vector<int>& cols2, int d) {
  if (rows.size() != cols.size() || rows2.size() != cols2.size()) {
    throw std::invalid_argument("monomial_integral: each U-tuple needs matching rows and cols");
  }
  auto check_range = [d](const std::vector<int>& v) {
    for (int i : v) {
      if (i < 1 || i > d) throw std::invalid_argument("monomial_integral: index out of 1..d");
    }
  };
  check_range(rows);
  check_range(cols);
  check_range(rows2);
  check_range(cols2);

  if (rows.size() != rows2.size()) return 0;  // unbalanced U vs conj(U) powers
  const int k = static_cast<int>(rows.size());
  if (k == 0) return 1;

  auto multiset_mismatch = [](std::vector<int> a, std::vector<int> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a != b;
  };
  if (multiset_mismatch(rows, rows2) || multiset_mismatch(cols, cols2)) return 0;

  const ClassFunction& wg = weingarten_fn(k, d);
  const auto& perms = Permutation::all(k);
  Rational acc = 0;
  for (const auto& sigma : perms) {
    bool ok = true;
    for (int m = 0; m < k && ok; ++m) {
      ok = rows[static_cast<size_t>(m)] == rows2[static_cast<size_t>(sigma(m))];
    }
    if (!ok) continue;
    for (const auto& tau : perms) {
      bool ok2 = true;
      for (int m = 0; m < k && ok2; ++m) {
        ok2 = cols[static_cast<size_t>(m)] == cols2[static_cast<size_t>(tau(m))];
      }
      if (!ok2) continue;
      acc += wg.at(cycle_type(sigma * tau.inverse()));
    }
  }
  return acc;
}

GroupAlgebraElement conditional_expectation_coeffs(const ExactOperator& a) {
  const int k = a.k;
  const int d = a.d;
  if (a.mat.rows() != a.dim() || a.mat.cols() != a.dim()) {
    throw std::invalid_argument("conditional_expectation: matrix is not d^k x d^k");
  }
  const auto& perms = Permutation::all(k);
  const ClassFunction& wg = weingarten_fn(k, d);

  // t_sigma = Tr(A P(sigma^-1)), then convolve with Wg:
  // c_rho = sum_sigma t_sigma Wg(sigma^-1 rho).
  std::vector<GaussianRational> t(perms.size());
  for (size_t s = 0; s < perms.size(); ++s) {
    t[s] = trace_with_permutation(a.mat, perms[s].inverse(), d);
  }
  GroupAlgebraElement c = GroupAlgebraElement::zero(k);
  for (size_t r = 0; r < perms.size(); ++r) {
    GaussianRational acc(0);
    for (size_t s = 0; s < perms.size(); ++s) {
      if (t[s].is_zero()) continue;
      acc += t[s] * GaussianRational(wg.at(cycle_type(perms[s].inverse() * perms[r])));
    }
    c.coeff[r] = acc;
  }
  return c;
}

ExactOperator conditional_expectation(const ExactOperator& a, std::int64_t cap) {
  check_dense_cap(a.dim(), cap);
  GroupAlgebraElement c = conditional_expectation_coeffs(a);
  const auto& perms = Permutation::all(a.k);
  ExactOperator out{a.k, a.d, ExactMatrix::Zero(a.dim(), a.dim())};
  for (size_t r = 0; r < perms.size(); ++r) {
    if (c.coeff[r].is_zero()) continue;
    out.mat += c.coeff[r] * permutation_operator<GaussianRational>(perms[r], a.d, cap);
  }
  return out;
}

ExactOperator central_projector(const Partition& lambda, int d, std::int64_t cap) {
  const int k = lambda.weight();
  if (k < 1) throw std::invalid_argument("central_projector: lambda must be non-empty");
  const std::int64_t n = dense_dim(d, k);
  check_dense_cap(n, cap);
  const Rational scale = ratio(f_lambda(lambda), factorial(k));
  ExactOperator out{k, d, ExactMatrix::Zero(n, n)};
  for (const auto& pi : Permutation::all(k)) {
    Rational coeff = scale * Rational(character(lambda, cycle_type(pi)));
    if (coeff == 0) continue;
    out.mat += GaussianRational(coeff) * permutation_operator<GaussianRational>(pi, d, cap);
  }
  return out;
}

std::vector<TwirlCoefficient> twirl_power_coeffs(const ExactMatrix& x, int k) {
  if (x.rows() != x.cols()) throw std::invalid_argument("twirl_power: X must be square");
  const int d = static_cast<int>(x.rows());

  // Trace powers m_r = Tr(X^r) feed the Frobenius expansion:
  // Tr(C_lambda X^{xk}) / Tr(C_lambda) = [sum_gamma chi p_gamma(m)/z_gamma] / s_lambda(1^d).
  std::vector<GaussianRational> m(static_cast<size_t>(k) + 1);
  ExactMatrix power = ExactMatrix::Identity(d, d);
  for (int r = 1; r <= k; ++r) {
    power = (power * x).eval();
    m[static_cast<size_t>(r)] = power.trace();
  }

  std::vector<TwirlCoefficient> coeffs;
  for (const auto& lambda : partitions_of(k, d)) {
    GaussianRational num(0);
    for (const auto& gamma : partitions_of(k)) {
      GaussianRational p(1);
      for (int part : gamma.parts()) p *= m[static_cast<size_t>(part)];
      num += GaussianRational(Rational(character(lambda, gamma)) / Rational(z_gamma(gamma))) * p;
    }
    num /= GaussianRational(Rational(schur_dim(lambda, d)));
    coeffs.push_back({lambda, num});
  }
  return coeffs;
}

TwirlResult twirl_power(const ExactMatrix& x, int k, std::int64_t cap) {
  const int d = static_cast<int>(x.rows());
  const std::int64_t n = dense_dim(d, k);
  check_dense_cap(n, cap);
  TwirlResult result;
  result.coefficients = twirl_power_coeffs(x, k);
  result.op = ExactOperator{k, d, ExactMatrix::Zero(n, n)};
  for (const auto& c : result.coefficients) {
    if (c.value.is_zero()) continue;
    result.op.mat += c.value * central_projector(c.lambda, d, cap).mat;
  }
  return result;
}

ExactOperator sphere_projector_average(int k, int d, std::int64_t cap) {
  if (k < 1 || d < 1) throw std::invalid_argument("sphere_projector_average: need k, d >= 1");
  ExactOperator c = central_projector(Partition({k}), d, cap);
  c.mat *= GaussianRational(Rational(1, binomial(k + d - 1, k)));
  return c;
}

BigInt closed_moment_tr2(int k, int d) {
  if (k < 1 || d < 1) throw std::invalid_argument("closed_moment_tr2: need k, d >= 1");
  return std::min(k, d);
}

BigInt closed_moment_tr4(int k, int d) {
  if (k < 1 || d < 2) throw std::invalid_argument("closed_moment_tr4: need k >= 1, d >= 2");
  if (k >= d) return BigInt(d) * (2 * d - 1);
  // The moment is sum over lambda |- 2k with at most d rows of
  // chi_{lambda,(k,k)}^2; for d >= 2k that is the full column norm 2k^2,
  // and for k < d < 2k the length restriction removes exactly 2k - d.
  if (d <= 2 * k) return BigInt(2) * k * k - (2 * k - d);
  return BigInt(2) * k * k;
}

namespace {

// Union-find component count for the index-identification graph of a
// Weingarten summand.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int a) {
    while (parent_[static_cast<size_t>(a)] != a) {
      parent_[static_cast<size_t>(a)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(a)])];
      a = parent_[static_cast<size_t>(a)];
    }
    return a;
  }
  void unite(int a, int b) { parent_[static_cast<size_t>(find(a))] = find(b); }
  int components() {
    int c = 0;
    for (int i = 0; i < static_cast<int>(parent_.size()); ++i) {
      if (find(i) == i) ++c;
    }
    return c;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

Rational trace_power_moment(int k, int n, int d) {
  if (k < 1 || n < 1 || d < 1) throw std::invalid_argument("trace_power_moment: bad arguments");
  const int kk = n * k;  // weight of the monomial sum
  if (kk > 7) {
    throw ResourceError("trace_power_moment: nk = " + std::to_string(kk) +
                        " needs (nk)!^2 summands; capped at nk <= 7");
  }
  const auto& perms = Permutation::all(kk);
  const ClassFunction& wg = weingarten_fn(kk, d);

  // Factor f = s*k + m reads entry U_{a(s,m), a(s,m+1 mod k)} of trace
  // factor s; the conjugate side uses variables b(s,m). Row deltas glue
  // a-row(f) to b-row(sigma(f)), column deltas glue the cyclic successors.
  auto row_var = [k](int f) { return f; };                              // a(s,m)
  auto col_var = [k](int f) { return (f / k) * k + (f % k + 1) % k; };  // a(s,m+1)

  std::vector<BigInt> d_pow(static_cast<size_t>(2 * kk) + 1);
  d_pow[0] = 1;
  for (size_t i = 1; i < d_pow.size(); ++i) d_pow[i] = d_pow[i - 1] * d;

  Rational acc = 0;
  for (const auto& sigma : perms) {
    for (const auto& tau : perms) {
      const Rational& w = wg.at(cycle_type(sigma * tau.inverse()));
      if (w == 0) continue;
      UnionFind uf(2 * kk);
      for (int f = 0; f < kk; ++f) {
        uf.unite(row_var(f), kk + row_var(sigma(f)));
        uf.unite(col_var(f), kk + col_var(tau(f)));
      }
      acc += w * Rational(d_pow[static_cast<size_t>(uf.components())]);
    }
  }
  return acc;
}

ExactMatrix uk_twirl(const ExactMatrix& a, int k) {
  if (a.rows() != a.cols()) throw std::invalid_argument("uk_twirl: A must be square");
  const int d = static_cast<int>(a.rows());
  if (d < 2) throw std::invalid_argument("uk_twirl: need d >= 2");
  if (k < 1) throw std::invalid_argument("uk_twirl: need k >= 1");
  const int m = std::min(k, d);
  const GaussianRational keep(ratio(m - 1, static_cast<long>(d) * d - 1));
  const GaussianRational mix(
      ratio(static_cast<long>(d) * d - m, static_cast<long>(d) * (static_cast<long>(d) * d - 1)));
  return keep * a + (mix * a.trace()) * ExactMatrix::Identity(d, d);
}

ExactMatrix uk_pair_integral(int k, int d, std::int64_t cap) {
  if (d < 2) throw std::invalid_argument("uk_pair_integral: need d >= 2");
  const std::int64_t n = dense_dim(d, 2);
  check_dense_cap(n, cap);
  if (k == 0) return ExactMatrix::Identity(n, n);
  const int m = std::min(std::abs(k), d);
  const GaussianRational ci(ratio(m - 1, static_cast<long>(d) * d - 1));
  const GaussianRational cf(
      ratio(static_cast<long>(d) * d - m, static_cast<long>(d) * (static_cast<long>(d) * d - 1)));
  return ci * ExactMatrix::Identity(n, n) + cf * swap_operator<GaussianRational>(d, cap);
}

Rational visibility_moment(const ExactMatrix& a, int order) {
  if (a.rows() != a.cols()) throw std::invalid_argument("visibility_moment: A must be square");
  const int d = static_cast<int>(a.rows());
  ExactMatrix gram = dagger(a) * a;
  GaussianRational t1 = gram.trace();
  if (!t1.is_real()) throw std::logic_error("visibility_moment: Tr(A^dag A) must be real");
  if (order == 2) {
    return t1.re / d;
  }
  if (order == 4) {
    if (d < 2) throw std::invalid_argument("visibility_moment: order 4 needs d >= 2");
    GaussianRational t2 = (gram * gram).eval().trace();
    if (!t2.is_real()) throw std::logic_error("visibility_moment: Tr((A^dag A)^2) must be real");
    const long dd = static_cast<long>(d) * d - 1;
    return ratio(2, dd) * t1.re * t1.re - ratio(2, static_cast<long>(d) * dd) * t2.re;
  }
  throw std::invalid_argument("visibility_moment: order must be 2 or 4");
}

Rational visibility_moment2_multipartite(const ExactMatrix& a, const std::vector<int>& dims) {
  long total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("visibility_moment2_multipartite: bad dimension");
    total *= d;
  }
  if (a.rows() != a.cols() || a.rows() != total) {
    throw std::invalid_argument("visibility_moment2_multipartite: A must be prod(d_j) square");
  }
  GaussianRational t = (dagger(a) * a).eval().trace();
  if (!t.is_real()) throw std::logic_error("visibility_moment2_multipartite: trace must be real");
  return t.re / total;
}

std::pair<Rational, Rational> superop_twirl_coeffs(const Rational& trace_phi,
                                                   const Rational& trace_phi_of_identity, int d) {
  if (d < 2) throw std::invalid_argument("superop_twirl_coeffs: need d >= 2");
  const Rational denom(static_cast<long>(d) * (static_cast<long>(d) * d - 1));
  Rational c_tr = (d * trace_phi_of_identity - trace_phi) / denom;
  Rational c_id = (d * trace_phi - trace_phi_of_identity) / denom;
  return {c_tr, c_id};
}

Rational depolarizing_p(const Rational& trace_phi, int d) {
  if (d < 2) throw std::invalid_argument("depolarizing_p: need d >= 2");
  return (trace_phi - 1) / Rational(static_cast<long>(d) * d - 1);
}

Rational average_purity_mixed(int d_a, int d_b, const Rational& purity_ab) {
  if (d_a < 1 || d_b < 1) throw std::invalid_argument("average_purity: need d_A, d_B >= 1");
  const long d = static_cast<long>(d_a) * d_b;
  if (d == 1) return 1;
  const Rational denom(d * d - 1);
  return Rational(d * d_b - d_a) / denom + Rational(d * d_a - d_b) / denom * purity_ab;
}

Rational average_purity(int d_a, int d_b) { return average_purity_mixed(d_a, d_b, Rational(1)); }

GaussianRational sphere_moment2(const ExactMatrix& x, const ExactMatrix& y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
    throw std::invalid_argument("sphere_moment2: X and Y must be square of equal size");
  }
  const long d = x.rows();
  GaussianRational t = trace_product(x, y) + x.trace() * y.trace();
  return t * GaussianRational(Rational(1, d * (d + 1)));
}

Rational sphere_moment2_superop(const Rational& trace_phi, const Rational& trace_phi_of_identity,
                                int d) {
  if (d < 1) throw std::invalid_argument("sphere_moment2_superop: need d >= 1");
  return (trace_phi_of_identity + trace_phi) / Rational(static_cast<long>(d) * (d + 1));
}

ExactOperator fourier_pair_integral(const FourierCoeffs& fhat, const FourierCoeffs& ghat, int d,
                                    std::int64_t cap) {
  const std::int64_t n = dense_dim(d, 2);
  check_dense_cap(n, cap);
  ExactOperator out{2, d, ExactMatrix::Zero(n, n)};
  for (const auto& [k, fk] : fhat) {
    auto it = ghat.find(-k);
    if (it == ghat.end()) continue;
    GaussianRational w = fk * it->second;
    if (w.is_zero()) continue;
    out.mat += w * uk_pair_integral(k, d, cap);
  }
  return out;
}

GaussianRational fourier_pair_trace(const FourierCoeffs& fhat, const FourierCoeffs& ghat, int d) {
  GaussianRational acc(0);
  for (const auto& [k, fk] : fhat) {
    auto it = ghat.find(-k);
    if (it == ghat.end()) continue;
    long tr = k == 0 ? static_cast<long>(d) * d : std::min(std::abs(k), d);
    acc += fk * it->second * GaussianRational(Rational(tr));
  }
  return acc;
}

Rational partial_trace_projector_coeff(const Partition& lambda, const Partition& mu,
                                       const Partition& nu, int d_b) {
  const int k = lambda.weight();
  if (mu.weight() != k || nu.weight() != k) {
    throw std::invalid_argument("partial_trace_projector_coeff: weight mismatch");
  }
  return Rational(f_lambda(lambda) * schur_dim(nu, d_b) * kronecker(lambda, mu, nu)) /
         Rational(f_lambda(mu));
}

Rational projector_triple_trace(const Partition& lambda, const Partition& mu, const Partition& nu,
                                int d_a, int d_b) {
  const int k = lambda.weight();
  if (mu.weight() != k || nu.weight() != k) {
    throw std::invalid_argument("projector_triple_trace: weight mismatch");
  }
  return Rational(f_lambda(lambda) * kronecker(lambda, mu, nu) * schur_dim(mu, d_a) *
                  schur_dim(nu, d_b));
}

PartitionMap<Rational> symmetric_partial_trace_coeffs(int k, int d_b) {
  PartitionMap<Rational> out;
  for (const auto& mu : partitions_of(k)) {
    out.emplace(mu, Rational(schur_dim(mu, d_b)) / Rational(f_lambda(mu)));
  }
  return out;
}

ExactOperator vec_moment(int k, int d, std::int64_t cap) {
  if (k < 1 || d < 1) throw std::invalid_argument("vec_moment: need k, d >= 1");
  const std::int64_t n2 = dense_dim(d, 2 * k);
  check_dense_cap(n2, cap);
  const auto& perms = Permutation::all(k);
  const ClassFunction& wg = weingarten_fn(k, d);

  std::vector<ExactMatrix> p_ops;
  p_ops.reserve(perms.size());
  for (const auto& pi : perms) p_ops.push_back(permutation_operator<GaussianRational>(pi, d, cap));

  ExactOperator out{2 * k, d, ExactMatrix::Zero(n2, n2)};
  for (size_t s = 0; s < perms.size(); ++s) {
    for (size_t r = 0; r < perms.size(); ++r) {
      const Rational& w = wg.at(cycle_type(perms[s].inverse() * perms[r]));
      if (w == 0) continue;
      out.mat += GaussianRational(w) * kron(p_ops[r], p_ops[s]);
    }
  }
  return out;
}

}  // namespace haarmoments
