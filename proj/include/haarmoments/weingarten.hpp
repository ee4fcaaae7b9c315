#pragma once

#include <map>
#include <utility>
#include <vector>

#include "haarmoments/characters.hpp"
#include "haarmoments/symfunc.hpp"
#include "haarmoments/tensor.hpp"

namespace haarmoments {

/// Dense exact operator on (C^d)^{x k}.
struct ExactOperator {
  int k = 0;
  int d = 0;
  ExactMatrix mat;

  std::int64_t dim() const { return dense_dim(d, k); }
};

/// Element of the group algebra C[S_k] with Gaussian-rational coefficients,
/// indexed by the lexicographic rank of the permutation. The class-function
/// view compresses |S_k| down to p(k) when the element is central.
struct GroupAlgebraElement {
  int k = 0;
  std::vector<GaussianRational> coeff;  // size k!, Permutation::all(k) order

  static GroupAlgebraElement zero(int k);

  /// Convolution (f*g)(rho) = sum_sigma f(sigma) g(sigma^-1 rho).
  friend GroupAlgebraElement operator*(const GroupAlgebraElement& f, const GroupAlgebraElement& g);

  /// Requires the element to be constant on conjugacy classes with real
  /// rational values; throws otherwise.
  ClassFunction to_class_function() const;
};

/// The Weingarten class function on S_k at dimension d:
///   Wg = (1/k!^2) sum_{lambda |- (k,d)} (f^lambda)^2 / s_lambda(1^d) chi_lambda.
/// For d < k this is the pseudo-inverse of the Gram element on its support.
/// Memoized per (k, d).
const ClassFunction& weingarten_fn(int k, int d);

/// Wg evaluated on a permutation's cycle type.
Rational weingarten_value(int k, int d, const Partition& cycle_type);

/// Exact monomial Haar integral
///   int U_{i1 j1} ... U_{ik jk} conj(U_{i'1 j'1}) ... conj(U_{i'l j'l}) dU.
/// Indices are 1-based in 1..d. Returns 0 when k != l or when the row or
/// column multisets mismatch.
Rational monomial_integral(const std::vector<int>& rows, const std::vector<int>& cols,
                           const std::vector<int>& rows2, const std::vector<int>& cols2, int d);

/// Conditional expectation (twirl) E_k(A) = int U^{xk} A (U^{xk})^dagger dU,
/// the orthogonal projection onto span{P(pi)}. Exact.
ExactOperator conditional_expectation(const ExactOperator& a,
                                      std::int64_t cap = kDefaultDenseCap);

/// Group-algebra coefficients of E_k(A): E_k(A) = sum_rho c_rho P(rho).
GroupAlgebraElement conditional_expectation_coeffs(const ExactOperator& a);

/// Central projector C_lambda = (f^lambda / k!) sum_pi chi_lambda(pi) P(pi)
/// onto the lambda-isotypic block of (C^d)^{x k}.
ExactOperator central_projector(const Partition& lambda, int d,
                                std::int64_t cap = kDefaultDenseCap);

struct TwirlCoefficient {
  Partition lambda;
  GaussianRational value;  // Tr(C_lambda X^{xk}) / Tr(C_lambda)
};

struct TwirlResult {
  std::vector<TwirlCoefficient> coefficients;  // lambda |- (k,d), canonical order
  ExactOperator op;                            // sum_lambda Delta_lambda C_lambda
};

/// int (U X U^dagger)^{xk} dU = sum_lambda [Tr(C_lambda X^{xk})/Tr C_lambda] C_lambda.
/// Coefficients come from the Frobenius expansion in the trace powers of X,
/// so no d^k object is formed unless the assembled operator is requested.
std::vector<TwirlCoefficient> twirl_power_coeffs(const ExactMatrix& x, int k);
TwirlResult twirl_power(const ExactMatrix& x, int k, std::int64_t cap = kDefaultDenseCap);

/// int |psi><psi|^{xk} dpsi = C_(k) / binom(k+d-1, k), the uniform average
/// over unit vectors.
ExactOperator sphere_projector_average(int k, int d, std::int64_t cap = kDefaultDenseCap);

/// int |Tr U^k|^2 dU = min(k, d).
BigInt closed_moment_tr2(int k, int d);

/// int |Tr U^k|^4 dU, piecewise: 2k^2, 2k^2 + 2k - d, d(2d-1). Branches are
/// tested in the order k >= d, then d <= 2k, then 2k <= d-1.
BigInt closed_moment_tr4(int k, int d);

/// int |Tr U^k|^{2n} dU by exact Weingarten summation over S_{nk} x S_{nk},
/// with the index sums collapsed to d^{#constraint components}. Valid for
/// every k, n, d within reach of (nk)!^2 enumeration.
Rational trace_power_moment(int k, int n, int d);

/// int U^k A (U^k)^dagger dU
///   = [(min(k,d)-1)/(d^2-1)] A + [(d^2-min(k,d))/(d(d^2-1))] Tr(A) 1.
ExactMatrix uk_twirl(const ExactMatrix& a, int k);

/// int U^k (x) U^{-k} dU for k != 0; the k = 0 convention is the identity
/// on C^{d^2}.
ExactMatrix uk_pair_integral(int k, int d, std::int64_t cap = kDefaultDenseCap);

/// int |Tr(A U)|^{order} dU for order 2 or 4.
Rational visibility_moment(const ExactMatrix& a, int order);

/// Multipartite variant: int...int |Tr(A (U_1 x ... x U_n))|^2 = Tr(A^dag A)/prod d_j.
Rational visibility_moment2_multipartite(const ExactMatrix& a, const std::vector<int>& dims);

/// Coefficients (c_tr, c_id) of the unitarily invariant form of a twirled
/// super-operator: Phi_T(X) = c_tr Tr(X) 1 + c_id X.
std::pair<Rational, Rational> superop_twirl_coeffs(const Rational& trace_phi,
                                                   const Rational& trace_phi_of_identity, int d);

/// Depolarizing parameter p = (Tr Phi - 1)/(d^2 - 1) of a trace-preserving
/// unitarily invariant channel.
Rational depolarizing_p(const Rational& trace_phi, int d);

/// Mean subsystem purity <Tr rho_A'^2> over U(d_A d_B)-rotated states with
/// given input purity Tr(rho_AB^2).
Rational average_purity_mixed(int d_a, int d_b, const Rational& purity_ab);

/// Pure-state case: (d_A + d_B)/(d_A d_B + 1).
Rational average_purity(int d_a, int d_b);

/// int <psi|X|psi><psi|Y|psi> dpsi = (Tr XY + Tr X Tr Y)/(d(d+1)).
GaussianRational sphere_moment2(const ExactMatrix& x, const ExactMatrix& y);

/// Super-operator companion: int <psi|Phi(|psi><psi|)|psi> dpsi
///   = (Tr Phi(1) + Tr Phi)/(d(d+1)).
Rational sphere_moment2_superop(const Rational& trace_phi, const Rational& trace_phi_of_identity,
                                int d);

/// Finitely supported Fourier coefficients k -> f_hat(k).
using FourierCoeffs = std::map<int, GaussianRational>;

/// int f(U) (x) g(U) dU = sum_k f_hat(k) g_hat(-k) M_k with
/// M_0 = 1_{d^2} and M_k = uk_pair_integral(k, d) otherwise.
ExactOperator fourier_pair_integral(const FourierCoeffs& fhat, const FourierCoeffs& ghat, int d,
                                    std::int64_t cap = kDefaultDenseCap);

/// Trace of the above without assembling it:
/// sum_{k != 0} f_hat(k) g_hat(-k) min(|k|, d) + d^2 f_hat(0) g_hat(0).
GaussianRational fourier_pair_trace(const FourierCoeffs& fhat, const FourierCoeffs& ghat, int d);

/// Scalar in Tr_B[C^{AB}_lambda (C^A_mu (x) C^B_nu)] = coeff * C^A_mu,
/// namely f^lambda s_nu(1^{d_B}) g_{lambda mu nu} / f^mu.
Rational partial_trace_projector_coeff(const Partition& lambda, const Partition& mu,
                                       const Partition& nu, int d_b);

/// Full trace Tr[C^{AB}_lambda (C^A_mu (x) C^B_nu)]
///   = f^lambda g_{lambda mu nu} s_mu(1^{d_A}) s_nu(1^{d_B}).
Rational projector_triple_trace(const Partition& lambda, const Partition& mu, const Partition& nu,
                                int d_a, int d_b);

/// Tr_B C^{AB}_{(k)} = sum_mu [s_mu(1^{d_B})/f^mu] C^A_mu; returns the
/// coefficient map mu -> s_mu(1^{d_B})/f^mu.
PartitionMap<Rational> symmetric_partial_trace_coeffs(int k, int d_b);

/// int |vec(U^{xk})><vec(U^{xk})| dU = sum_{sigma,rho} Wg(sigma^-1 rho)
/// P(rho) (x) P(sigma) on out (x) in, the (unnormalized) Choi matrix of E_k.
/// Trace is d^k; dividing by d^k gives the unit-trace state average.
ExactOperator vec_moment(int k, int d, std::int64_t cap = kDefaultDenseCap);

}  // namespace haarmoments
