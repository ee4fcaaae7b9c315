#include <catch2/catch_amalgamated.hpp>

#include "haarmoments/haar.hpp"
#include "haarmoments/verify.hpp"
#include "haarmoments/weingarten.hpp"
#include "haarmoments/weyl.hpp"
#include "oracles.hpp"

using namespace haarmoments;

namespace {

ExactOperator random_operator(int k, int d, RngStream& rng) {
  const auto n = dense_dim(d, k);
  return {k, d, random_exact_matrix(static_cast<int>(n), static_cast<int>(n), rng)};
}

// Literal brute-force Weingarten index summation of int |Tr U^k|^2 through
// the monomial-integral oracle, for cross-checking the collapsed summation.
Rational tr2_by_monomial_sum(int k, int d) {
  Rational acc = 0;
  const auto paths = dense_dim(d, k);
  std::vector<int> rows(static_cast<size_t>(k)), cols(static_cast<size_t>(k));
  std::vector<int> rows2(static_cast<size_t>(k)), cols2(static_cast<size_t>(k));
  for (std::int64_t a = 0; a < paths; ++a) {
    auto ai = unflatten_index(a, d, k);
    for (int m = 0; m < k; ++m) {
      rows[static_cast<size_t>(m)] = ai[static_cast<size_t>(m)] + 1;
      cols[static_cast<size_t>(m)] = ai[static_cast<size_t>((m + 1) % k)] + 1;
    }
    for (std::int64_t b = 0; b < paths; ++b) {
      auto bi = unflatten_index(b, d, k);
      for (int m = 0; m < k; ++m) {
        rows2[static_cast<size_t>(m)] = bi[static_cast<size_t>(m)] + 1;
        cols2[static_cast<size_t>(m)] = bi[static_cast<size_t>((m + 1) % k)] + 1;
      }
      acc += monomial_integral(rows, cols, rows2, cols2, d);
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("Weingarten values at k = 1 and k = 2") {
  for (int d = 1; d <= 5; ++d) {
    REQUIRE(weingarten_value(1, d, Partition({1})) == Rational(1, d));
  }
  for (int d = 2; d <= 6; ++d) {
    const long dd = static_cast<long>(d) * d - 1;
    REQUIRE(weingarten_value(2, d, Partition({1, 1})) == Rational(1, dd));
    REQUIRE(weingarten_value(2, d, Partition({2})) == Rational(-1, d * dd));
  }
}

TEST_CASE("Weingarten function matches exact Gram inversion") {
  for (int k = 2; k <= 4; ++k) {
    for (int d = k; d <= 4; ++d) {
      auto by_gram = oracles::weingarten_via_gram(k, d);
      const auto& perms = Permutation::all(k);
      const ClassFunction& wg = weingarten_fn(k, d);
      for (size_t s = 0; s < perms.size(); ++s) {
        REQUIRE(wg.at(cycle_type(perms[s])) == by_gram[s]);
      }
    }
  }
}

TEST_CASE("Weingarten inverse identity") {
  const int k = 3, d = 4;
  const auto& perms = Permutation::all(k);
  const ClassFunction& wg = weingarten_fn(k, d);
  for (const auto& sigma : perms) {
    for (const auto& pi : perms) {
      Rational acc = 0;
      for (const auto& tau : perms) {
        Rational dp;
        mpz_ui_pow_ui(dp.get_num_mpz_t(), static_cast<unsigned long>(d),
                      static_cast<unsigned long>((tau * pi.inverse()).cycle_count()));
        acc += wg.at(cycle_type(sigma * tau.inverse())) * dp;
      }
      REQUIRE(acc == (sigma == pi ? 1 : 0));
    }
  }
}

TEST_CASE("monomial integrals") {
  for (int d = 1; d <= 4; ++d) {
    REQUIRE(monomial_integral({1}, {1}, {1}, {1}, d) == Rational(1, d));
  }
  for (int d = 2; d <= 5; ++d) {
    REQUIRE(monomial_integral({1, 2}, {1, 2}, {1, 2}, {1, 2}, d) ==
            Rational(1, static_cast<long>(d) * d - 1));
  }
  // Unbalanced U vs conj(U) powers vanish.
  REQUIRE(monomial_integral({1, 2}, {1, 2}, {1}, {1}, 3) == 0);
  REQUIRE(monomial_integral({1}, {1}, {}, {}, 3) == 0);
  // Row or column multiset mismatch vanishes.
  REQUIRE(monomial_integral({1, 1}, {1, 2}, {1, 2}, {1, 2}, 3) == 0);
  REQUIRE(monomial_integral({1, 2}, {2, 2}, {1, 2}, {1, 2}, 3) == 0);
  REQUIRE_THROWS_AS(monomial_integral({1, 5}, {1, 2}, {1, 2}, {1, 2}, 3), std::invalid_argument);
  REQUIRE_THROWS_AS(monomial_integral({1, 2}, {1}, {1, 2}, {1, 2}, 3), std::invalid_argument);

  // Invariance under simultaneously permuting the slots of (rows, cols) and
  // of (rows2, cols2).
  Rational base = monomial_integral({1, 2, 1}, {2, 2, 1}, {1, 1, 2}, {2, 1, 2}, 3);
  for (const auto& pi : Permutation::all(3)) {
    std::vector<int> rows(3), cols(3), rows2(3), cols2(3);
    const std::vector<int> r{1, 2, 1}, c{2, 2, 1}, r2{1, 1, 2}, c2{2, 1, 2};
    for (int m = 0; m < 3; ++m) {
      rows[static_cast<size_t>(pi(m))] = r[static_cast<size_t>(m)];
      cols[static_cast<size_t>(pi(m))] = c[static_cast<size_t>(m)];
      rows2[static_cast<size_t>(pi(m))] = r2[static_cast<size_t>(m)];
      cols2[static_cast<size_t>(pi(m))] = c2[static_cast<size_t>(m)];
    }
    REQUIRE(monomial_integral(rows, cols, rows2, cols2, 3) == base);
  }
}

TEST_CASE("conditional expectation at k = 1 and on permutation operators") {
  RngStream rng(23, 0);
  for (int d : {2, 3, 5}) {
    ExactOperator a = random_operator(1, d, rng);
    ExactOperator e = conditional_expectation(a);
    ExactMatrix expected =
        (a.mat.trace() * GaussianRational(Rational(1, d))) * ExactMatrix::Identity(d, d);
    REQUIRE(exact_equal(e.mat, expected));
  }
  // E_k fixes its range, also when d < k (singular Gram element).
  for (auto [k, d] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3}}) {
    for (const auto& pi : Permutation::all(k)) {
      ExactMatrix p = permutation_operator<GaussianRational>(pi, d);
      ExactOperator e = conditional_expectation({k, d, p});
      REQUIRE(exact_equal(e.mat, p));
    }
  }
}

TEST_CASE("conditional expectation projects, preserves trace, is a bimodule map") {
  RngStream rng(29, 0);
  for (auto [k, d] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    ExactOperator a = random_operator(k, d, rng);
    ExactOperator e = conditional_expectation(a);
    REQUIRE(e.mat.trace() == a.mat.trace());
    ExactOperator ee = conditional_expectation(e);
    REQUIRE(exact_equal(ee.mat, e.mat));
    // Matches the character-free Gram projection.
    REQUIRE(exact_equal(e.mat, oracles::gram_projection(a.mat, k, d)));
  }
  {
    const int k = 3, d = 2;
    ExactOperator a = random_operator(k, d, rng);
    const auto& perms = Permutation::all(k);
    ExactMatrix ps = permutation_operator<GaussianRational>(perms[2], d);
    ExactMatrix pt = permutation_operator<GaussianRational>(perms[4], d);
    ExactOperator mid = conditional_expectation({k, d, (ps * a.mat * pt).eval()});
    ExactMatrix expected = ps * conditional_expectation(a).mat * pt;
    REQUIRE(exact_equal(mid.mat, expected));
  }
}

TEST_CASE("k = 2 conditional expectation splits into wedge and vee parts") {
  RngStream rng(31, 0);
  for (int d : {2, 3}) {
    const auto n = dense_dim(d, 2);
    ExactMatrix f = swap_operator<GaussianRational>(d);
    ExactMatrix id = ExactMatrix::Identity(n, n);
    ExactMatrix p_wedge = (id - f) * GaussianRational(Rational(1, 2));
    ExactMatrix p_vee = (id + f) * GaussianRational(Rational(1, 2));
    ExactOperator a = random_operator(2, d, rng);
    GaussianRational tr = a.mat.trace();
    GaussianRational trf = trace_product(a.mat, f);
    GaussianRational lambda =
        (tr - trf) * GaussianRational(Rational(1, static_cast<long>(d) * (d - 1)));
    GaussianRational mu =
        (tr + trf) * GaussianRational(Rational(1, static_cast<long>(d) * (d + 1)));
    REQUIRE(exact_equal(conditional_expectation(a).mat, lambda * p_wedge + mu * p_vee));
  }
}

TEST_CASE("central projectors") {
  for (int d : {2, 3}) {
    const auto n = dense_dim(d, 2);
    ExactMatrix f = swap_operator<GaussianRational>(d);
    ExactMatrix id = ExactMatrix::Identity(n, n);
    REQUIRE(exact_equal(central_projector(Partition({2}), d).mat,
                        (id + f) * GaussianRational(Rational(1, 2))));
    REQUIRE(exact_equal(central_projector(Partition({1, 1}), d).mat,
                        (id - f) * GaussianRational(Rational(1, 2))));
  }
  {
    // C_(2,1) = (1/3)(2 P_e - P_(123) - P_(132)).
    const int d = 2;
    ExactMatrix expected =
        GaussianRational(Rational(2, 3)) *
            ExactMatrix(ExactMatrix::Identity(dense_dim(d, 3), dense_dim(d, 3))) -
        GaussianRational(Rational(1, 3)) *
            permutation_operator<GaussianRational>(Permutation::from_cycles(3, {{1, 2, 3}}), d) -
        GaussianRational(Rational(1, 3)) *
            permutation_operator<GaussianRational>(Permutation::from_cycles(3, {{1, 3, 2}}), d);
    REQUIRE(exact_equal(central_projector(Partition({2, 1}), d).mat, expected));
  }
  for (auto [k, d] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {4, 2}}) {
    const auto n = dense_dim(d, k);
    ExactMatrix sum = ExactMatrix::Zero(n, n);
    for (const auto& lambda : partitions_of(k)) {
      ExactOperator c = central_projector(lambda, d);
      REQUIRE(c.mat.trace() ==
              GaussianRational(Rational(f_lambda(lambda) * schur_dim(lambda, d))));
      REQUIRE(exact_equal((c.mat * c.mat).eval(), c.mat));
      sum += c.mat;
    }
    REQUIRE(exact_equal(sum, ExactMatrix::Identity(n, n)));
  }
  // C_lambda commutes with P(pi) exactly and with sampled V^{xk} numerically.
  {
    const int k = 3, d = 2;
    ExactOperator c = central_projector(Partition({2, 1}), d);
    for (const auto& pi : Permutation::all(k)) {
      ExactMatrix p = permutation_operator<GaussianRational>(pi, d);
      REQUIRE(exact_equal((c.mat * p).eval(), (p * c.mat).eval()));
    }
    ComplexMatrix cd = to_complex(c.mat);
    RngStream rng(37, 0);
    for (int rep = 0; rep < 20; ++rep) {
      ComplexMatrix v = haar_sample(d, rng);
      ComplexMatrix vk = Eigen::kroneckerProduct(v, Eigen::kroneckerProduct(v, v).eval()).eval();
      REQUIRE(max_abs(cd * vk - vk * cd) < 1e-10);
    }
  }
}

TEST_CASE("twirl of tensor powers") {
  RngStream rng(41, 0);
  // X = identity: every coefficient 1, result identity.
  for (auto [k, d] : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}}) {
    TwirlResult r = twirl_power(ExactMatrix::Identity(d, d), k);
    for (const auto& tc : r.coefficients) REQUIRE(tc.value == GaussianRational(1));
    REQUIRE(exact_equal(r.op.mat, ExactMatrix::Identity(dense_dim(d, k), dense_dim(d, k))));
  }
  // twirl_power(X, k) = E_k(X^{xk}) exactly.
  for (auto [k, d] :
       std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2}, {4, 3}}) {
    ExactMatrix x = random_exact_matrix(d, d, rng);
    TwirlResult r = twirl_power(x, k);
    ExactOperator direct = conditional_expectation({k, d, tensor_power(x, k)});
    REQUIRE(exact_equal(r.op.mat, direct.mat));
  }
}

TEST_CASE("sphere projector averages") {
  for (int d : {2, 3}) {
    ExactOperator avg = sphere_projector_average(1, d);
    REQUIRE(exact_equal(avg.mat, ExactMatrix(ExactMatrix::Identity(d, d) *
                                             GaussianRational(Rational(1, d)))));
  }
  {
    const int d = 2;
    ExactMatrix f = swap_operator<GaussianRational>(d);
    ExactMatrix id = ExactMatrix::Identity(4, 4);
    ExactMatrix p_vee = (id + f) * GaussianRational(Rational(1, 2));
    REQUIRE(exact_equal(sphere_projector_average(2, d).mat,
                        ExactMatrix(p_vee * GaussianRational(Rational(1, 3)))));
  }
  for (auto [k, d] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}}) {
    ExactOperator avg = sphere_projector_average(k, d);
    REQUIRE(avg.mat.trace() == GaussianRational(1));
    const auto n = dense_dim(d, k);
    ExactMatrix basis = ExactMatrix::Zero(n, n);
    basis(0, 0) = 1;
    REQUIRE(exact_equal(avg.mat, conditional_expectation({k, d, basis}).mat));
  }
}

TEST_CASE("second trace moment min(k, d)") {
  REQUIRE(closed_moment_tr2(1, 7) == 1);
  REQUIRE(closed_moment_tr2(3, 2) == 2);
  REQUIRE(closed_moment_tr2(2, 5) == 2);
  for (int k = 1; k <= 4; ++k) {
    for (int d = 1; d <= 4; ++d) {
      REQUIRE(trace_power_moment(k, 1, d) == Rational(std::min(k, d)));
    }
  }
  // The collapsed summation agrees with the literal monomial-integral sum.
  for (int k = 1; k <= 3; ++k) {
    for (int d = 1; d <= 3; ++d) {
      REQUIRE(tr2_by_monomial_sum(k, d) == trace_power_moment(k, 1, d));
    }
  }
  // Beyond-closed-form moments stay computable up to the enumeration cap;
  // |Tr U^2|^6 at d = 2 has kn = 6 > d, where no closed form is claimed.
  // 20 = quadrature = sum over lambda |- 6 with <= 2 rows of chi((2,2,2))^2.
  REQUIRE(trace_power_moment(2, 3, 2) == 20);
  REQUIRE_THROWS_AS(trace_power_moment(4, 2, 3), ResourceError);
}

TEST_CASE("fourth trace moment piecewise formula") {
  REQUIRE(closed_moment_tr4(2, 5) == 8);        // 2k <= d-1
  REQUIRE(closed_moment_tr4(2, 4) == 8);        // middle branch at 2k = d
  REQUIRE(closed_moment_tr4(1, 2) == 2);        // middle branch at d = 2
  REQUIRE(closed_moment_tr4(4, 3) == 15);       // k >= d: d(2d-1)
  // Strict middle region k < d < 2k: the length restriction removes 2k - d
  // from the full column norm 2k^2.
  REQUIRE(closed_moment_tr4(2, 3) == 7);
  REQUIRE(closed_moment_tr4(3, 4) == 16);
  REQUIRE(closed_moment_tr4(3, 5) == 17);
  REQUIRE(closed_moment_tr4(4, 5) == 29);
  for (int d = 2; d <= 5; ++d) {
    for (int k = d; k <= d + 2; ++k) {
      REQUIRE(closed_moment_tr4(k, d) == BigInt(d) * (2 * d - 1));
    }
  }
  // Exact Weingarten summation over S_{2k} confirms every branch, and both
  // agree with the independent character-orthogonality route
  // sum_{lambda |- 2k, len <= d} chi_{lambda,(k,k)}^2.
  for (int k = 1; k <= 3; ++k) {
    for (int d = 2; d <= 5; ++d) {
      REQUIRE(trace_power_moment(k, 2, d) == Rational(closed_moment_tr4(k, d)));
      BigInt chi_sum = 0;
      for (const auto& lam : partitions_of(2 * k, d)) {
        BigInt chi = character(lam, Partition({k, k}));
        chi_sum += chi * chi;
      }
      REQUIRE(chi_sum == closed_moment_tr4(k, d));
    }
  }
}

TEST_CASE("U^k twirl and pair integral") {
  RngStream rng(43, 0);
  for (int d : {2, 3}) {
    ExactMatrix a = random_exact_matrix(d, d, rng);
    ExactMatrix e1 =
        (a.trace() * GaussianRational(Rational(1, d))) * ExactMatrix::Identity(d, d);
    REQUIRE(exact_equal(uk_twirl(a, 1), e1));
    REQUIRE(exact_equal(uk_twirl(ExactMatrix::Identity(d, d), 5),
                        ExactMatrix(ExactMatrix::Identity(d, d))));
  }
  {
    ExactMatrix a = ExactMatrix::Zero(2, 2);
    a(0, 0) = 1;
    ExactMatrix result = uk_twirl(a, 3);
    REQUIRE(result(0, 0) == GaussianRational(Rational(2, 3)));
    REQUIRE(result(1, 1) == GaussianRational(Rational(1, 3)));
    REQUIRE(result(0, 1).is_zero());
    REQUIRE(result(1, 0).is_zero());
  }
  // Monte Carlo cross-check of the d=2, k=3 twirl.
  {
    RngStream base(47, 0);
    McEstimate est = mc_sample(
        [](RngStream& r) {
          ComplexMatrix u = haar_sample(2, r);
          ComplexMatrix u3 = u * u * u;
          ComplexMatrix a = ComplexMatrix::Zero(2, 2);
          a(0, 0) = 1;
          return (u3 * a * u3.adjoint())(0, 0);
        },
        20000, base);
    REQUIRE(std::abs(est.z_against(2.0 / 3.0)) <= 5.0);
  }
  // Trace of the pair integral is min(|k|, d); k = 1 collapses to F/d.
  for (int d : {2, 3}) {
    for (int k : {-3, -1, 1, 2, 5}) {
      GaussianRational tr = uk_pair_integral(k, d).trace();
      REQUIRE(tr == GaussianRational(Rational(std::min(std::abs(k), d))));
    }
    REQUIRE(exact_equal(uk_pair_integral(0, d),
                        ExactMatrix(ExactMatrix::Identity(d * d, d * d))));
    REQUIRE(exact_equal(uk_pair_integral(1, d),
                        ExactMatrix(swap_operator<GaussianRational>(d) *
                                    GaussianRational(Rational(1, d)))));
  }
}

TEST_CASE("visibility moments") {
  for (int d = 2; d <= 4; ++d) {
    ExactMatrix id = ExactMatrix::Identity(d, d);
    REQUIRE(visibility_moment(id, 2) == 1);
    REQUIRE(visibility_moment(id, 4) == 2);
  }
  RngStream rng(53, 0);
  ExactMatrix a = random_exact_matrix(3, 3, rng);
  ExactMatrix gram = dagger(a) * a;
  REQUIRE(visibility_moment(a, 2) == gram.trace().re / 3);
  REQUIRE_THROWS_AS(visibility_moment(a, 3), std::invalid_argument);

  ExactMatrix b = random_exact_matrix(6, 6, rng);
  REQUIRE(visibility_moment2_multipartite(b, {2, 3}) ==
          (dagger(b) * b).eval().trace().re / 6);
}

TEST_CASE("unitarily invariant super-operator coefficients") {
  const int d = 4;
  // Identity super-operator: Tr Phi = d^2, Tr Phi(1) = d -> (0, 1).
  auto [c_tr, c_id] = superop_twirl_coeffs(Rational(d * d), Rational(d), d);
  REQUIRE(c_tr == 0);
  REQUIRE(c_id == 1);
  // Phi(X) = Tr_B(X) (x) 1_B on d = d_A d_B.
  const int d_a = 2, d_b = 3, dd = d_a * d_b;
  auto [tr_coeff, id_coeff] =
      superop_twirl_coeffs(Rational(static_cast<long>(d_a) * d_a * d_b),
                           Rational(static_cast<long>(d_a) * d_b * d_b), dd);
  REQUIRE(tr_coeff == Rational(static_cast<long>(dd) * d_b - d_a, static_cast<long>(dd) * dd - 1));
  REQUIRE(id_coeff == Rational(static_cast<long>(dd) * d_a - d_b, static_cast<long>(dd) * dd - 1));
  // Trace-preserving case: depolarizing parameter.
  REQUIRE(depolarizing_p(Rational(1), 2) == 0);
  REQUIRE(depolarizing_p(Rational(4), 2) == 1);
}

TEST_CASE("average purity") {
  REQUIRE(average_purity(2, 2) == Rational(4, 5));
  REQUIRE(average_purity(1, 5) == 1);
  REQUIRE(average_purity(5, 1) == 1);
  REQUIRE(average_purity_mixed(2, 3, Rational(1)) == average_purity(2, 3));
  REQUIRE(average_purity_mixed(2, 2, Rational(1, 4)) ==
          ratio(2 * 4 - 2, 15) + ratio(2 * 4 - 2, 15) * Rational(1, 4));
}

TEST_CASE("sphere second moment") {
  for (int d = 2; d <= 4; ++d) {
    ExactMatrix id = ExactMatrix::Identity(d, d);
    REQUIRE(sphere_moment2(id, id) == GaussianRational(1));
  }
  {
    ExactMatrix proj = ExactMatrix::Zero(2, 2);
    proj(0, 0) = 1;
    REQUIRE(sphere_moment2(proj, proj) == GaussianRational(Rational(1, 3)));
  }
  // Consistency with the assembled two-fold twirl contracted on |00>.
  RngStream rng(59, 0);
  ExactMatrix x = random_exact_matrix(2, 2, rng);
  ExactOperator e2 = conditional_expectation({2, 2, kron(x, x)});
  REQUIRE(sphere_moment2(x, x) == e2.mat(0, 0));
  REQUIRE(sphere_moment2_superop(Rational(7), Rational(3), 2) == ratio(10, 6));
}

TEST_CASE("Fourier pair integrals") {
  const int d = 3;
  // Constants only: identity.
  FourierCoeffs f0{{0, GaussianRational(1)}};
  REQUIRE(exact_equal(fourier_pair_integral(f0, f0, d).mat,
                      ExactMatrix(ExactMatrix::Identity(d * d, d * d))));
  // f = g = chi_1: no (k, -k) pairing, zero operator.
  FourierCoeffs chi1{{1, GaussianRational(1)}};
  REQUIRE(exact_zero(fourier_pair_integral(chi1, chi1, d).mat));
  // Pairing with g_hat(-1) = 1 instead: trace min(1, d) = 1.
  FourierCoeffs chi1_neg{{-1, GaussianRational(1)}};
  REQUIRE(fourier_pair_integral(chi1, chi1_neg, d).mat.trace() == GaussianRational(1));
  REQUIRE(fourier_pair_trace(chi1, chi1_neg, d) == GaussianRational(1));
  // f = g = chi_k paired with its reflection: trace min(k, d) for every k.
  for (int k = 1; k <= 4; ++k) {
    FourierCoeffs fk{{k, GaussianRational(1)}};
    FourierCoeffs gk{{-k, GaussianRational(1)}};
    REQUIRE(fourier_pair_integral(fk, gk, d).mat.trace() ==
            GaussianRational(Rational(std::min(k, d))));
  }

  // Mixed support {-2..2}: trace formula against assembled operator and
  // against Weyl quadrature of Tr f(U) Tr g(U).
  RngStream rng(61, 0);
  FourierCoeffs fh, gh;
  for (int k = -2; k <= 2; ++k) {
    fh[k] = GaussianRational(random_small_rational(rng), random_small_rational(rng));
    gh[k] = GaussianRational(random_small_rational(rng), random_small_rational(rng));
  }
  ExactOperator op = fourier_pair_integral(fh, gh, d);
  GaussianRational tr = fourier_pair_trace(fh, gh, d);
  REQUIRE(op.mat.trace() == tr);

  auto eval_series = [](const FourierCoeffs& coeffs, double theta) {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [k, c] : coeffs) acc += c.to_complex() * std::polar(1.0, k * theta);
    return acc;
  };
  std::complex<double> quad = weyl_quadrature(
      [&](const std::vector<double>& theta) {
        std::complex<double> tf{0.0, 0.0}, tg{0.0, 0.0};
        for (double t : theta) {
          tf += eval_series(fh, t);
          tg += eval_series(gh, t);
        }
        return tf * tg;
      },
      d, min_grid_for_degree(2 + 2 + d - 1));
  REQUIRE(std::abs(quad - tr.to_complex()) < 1e-10);
}

TEST_CASE("partial trace of projector products") {
  // Full-trace identity and the lambda = (k) reduction.
  const int d_a = 2, d_b = 2;
  for (int k : {2, 3}) {
    for (const auto& mu : partitions_of(k)) {
      for (const auto& nu : partitions_of(k)) {
        Rational coeff = partial_trace_projector_coeff(Partition({k}), mu, nu, d_b);
        Rational expected =
            mu == nu ? Rational(Rational(schur_dim(nu, d_b)) / Rational(f_lambda(nu)))
                     : Rational(0);
        REQUIRE(coeff == expected);
      }
    }
  }
  REQUIRE(partial_trace_projector_coeff(Partition({2}), Partition({2}), Partition({2}), 2) == 3);
  REQUIRE(projector_triple_trace(Partition({2}), Partition({2}), Partition({2}), 2, 2) == 9);

  auto coeffs = symmetric_partial_trace_coeffs(3, d_b);
  for (const auto& mu : partitions_of(3)) {
    REQUIRE(coeffs.at(mu) == Rational(schur_dim(mu, d_b)) / Rational(f_lambda(mu)));
  }
  REQUIRE_THROWS_AS(
      partial_trace_projector_coeff(Partition({2}), Partition({3}), Partition({2}), 2),
      std::invalid_argument);

  // Dense exact verification at k = 2, d_A = d_B = 2: done in the acceptance
  // suite; here check Tr_B C^{AB}_(2) = sum_mu [s_mu/f^mu] C^A_mu densely.
  {
    const int k = 2;
    ExactMatrix cab = ExactMatrix::Zero(16, 16);
    const Rational scale(f_lambda(Partition({k})), factorial(k));
    for (const auto& pi : Permutation::all(k)) {
      Rational c = scale * Rational(character(Partition({k}), cycle_type(pi)));
      cab += GaussianRational(c) * kron(permutation_operator<GaussianRational>(pi, d_a),
                                        permutation_operator<GaussianRational>(pi, d_b));
    }
    ExactMatrix lhs = partial_trace_second(cab, std::int64_t{4}, std::int64_t{4});
    ExactMatrix rhs = ExactMatrix::Zero(4, 4);
    for (const auto& [mu, c] : symmetric_partial_trace_coeffs(k, d_b)) {
      rhs += GaussianRational(c) * central_projector(mu, d_a).mat;
    }
    REQUIRE(exact_equal(lhs, rhs));
  }
}

TEST_CASE("group algebra convolution of Gram element and Weingarten function") {
  // Delta(1) * Wg is the sum of the central idempotents supported on
  // lambda |- (k, d): per class, sum_lambda (f^lambda/k!) chi_lambda(gamma).
  const int k = 3, d = 2;
  const auto& perms = Permutation::all(k);
  GroupAlgebraElement gram = GroupAlgebraElement::zero(k);
  GroupAlgebraElement wg = GroupAlgebraElement::zero(k);
  for (size_t i = 0; i < perms.size(); ++i) {
    Rational dp;
    mpz_ui_pow_ui(dp.get_num_mpz_t(), d, static_cast<unsigned long>(perms[i].cycle_count()));
    gram.coeff[i] = GaussianRational(dp);
    wg.coeff[i] = GaussianRational(weingarten_value(k, d, cycle_type(perms[i])));
  }
  ClassFunction idempotent = (gram * wg).to_class_function();
  for (const auto& gamma : partitions_of(k)) {
    Rational expected = 0;
    for (const auto& lambda : partitions_of(k, d)) {
      expected += ratio(f_lambda(lambda), factorial(k)) * Rational(character(lambda, gamma));
    }
    REQUIRE(idempotent.at(gamma) == expected);
  }
}

TEST_CASE("trace is cyclic on exact operators") {
  RngStream rng(67, 0);
  ExactMatrix a = random_exact_matrix(5, 5, rng);
  ExactMatrix b = random_exact_matrix(5, 5, rng);
  REQUIRE(trace_product(a, b) == trace_product(b, a));
  REQUIRE((a * b).eval().trace() == trace_product(a, b));
  // Conjugation is an involution and dagger reverses products.
  GaussianRational z = random_gaussian_rational(rng);
  REQUIRE(z.conj().conj() == z);
  REQUIRE(exact_equal(dagger(ExactMatrix(a * b)), ExactMatrix(dagger(b) * dagger(a))));
}

TEST_CASE("multipartite visibility against Monte Carlo") {
  const int d1 = 2, d2 = 2;
  RngStream seed_stream(73, 0);
  ExactMatrix a = random_exact_matrix(d1 * d2, d1 * d2, seed_stream);
  Rational exact = visibility_moment2_multipartite(a, {d1, d2});
  ComplexMatrix ac = to_complex(a);
  RngStream base(73, 1);
  McEstimate est = mc_sample(
      [&](RngStream& rng) {
        ComplexMatrix u = haar_sample(d1, rng);
        ComplexMatrix v = haar_sample(d2, rng);
        std::complex<double> t = (ac * Eigen::kroneckerProduct(u, v).eval()).trace();
        return std::complex<double>(std::norm(t), 0.0);
      },
      40000, base);
  REQUIRE(std::abs(est.z_against(exact.get_d())) <= 5.0);
}

TEST_CASE("vectorized tensor-power moment") {
  for (int d : {2, 3}) {
    ExactOperator m = vec_moment(1, d);
    REQUIRE(exact_equal(m.mat, ExactMatrix(ExactMatrix::Identity(d * d, d * d) *
                                           GaussianRational(Rational(1, d)))));
  }
  {
    const int k = 2, d = 2;
    ExactOperator m = vec_moment(k, d);
    const auto n = dense_dim(d, k);  // 4
    // Trace d^k; the normalized average of unit vectors has trace 1.
    REQUIRE(m.mat.trace() == GaussianRational(Rational(n)));
    ExactMatrix normalized = m.mat * GaussianRational(Rational(1, n));
    REQUIRE(normalized.trace() == GaussianRational(1));

    // Positive semidefinite (numerically).
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(to_complex(m.mat));
    REQUIRE(es.eigenvalues().minCoeff() > -1e-12);

    // Reshuffle against E_2 on matrix units: R[(i,x),(j,y)] = <i|E(|x><y|)|j>.
    for (std::int64_t x = 0; x < n; ++x) {
      for (std::int64_t y = 0; y < n; ++y) {
        ExactMatrix unit = ExactMatrix::Zero(n, n);
        unit(x, y) = 1;
        ExactOperator e = conditional_expectation({k, d, unit});
        for (std::int64_t i = 0; i < n; ++i) {
          for (std::int64_t j = 0; j < n; ++j) {
            REQUIRE(m.mat(i * n + x, j * n + y) == e.mat(i, j));
          }
        }
      }
    }
  }
  REQUIRE_THROWS_AS(vec_moment(4, 3), ResourceError);
}
