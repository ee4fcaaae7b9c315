#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <Eigen/Core>

namespace haarmoments {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Raised when an operation would exceed a configured dense-size cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

BigInt factorial(int n);
BigInt binomial(int n, int k);

/// num/den in canonical form. The raw two-argument mpq constructor does not
/// reduce fractions, which silently breaks exact comparisons; every ratio
/// with a non-trivial denominator goes through here.
inline Rational ratio(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("ratio: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}
inline Rational ratio(long num, long den) { return ratio(BigInt(num), BigInt(den)); }

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input
/// or zero denominator.
Rational rational_from_string(const std::string& s);

/// "p" when the denominator is 1, otherwise "p/q" (canonical form).
std::string rational_to_string(const Rational& r);

/// Exact conversion; every double is a dyadic rational.
inline Rational rational_from_double(double x) { return Rational(x); }

inline double to_double(const Rational& r) { return r.get_d(); }

/// Complex number with exact rational real and imaginary parts. A field:
/// all arithmetic below is exact, conjugation is an involution.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(int v) : re(v), im(0) {}  // NOLINT: implicit for Eigen literals
  GaussianRational(Rational r) : re(std::move(r)), im(0) {}  // NOLINT
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_real() const { return im == 0; }
  bool is_zero() const { return re == 0 && im == 0; }

  GaussianRational conj() const { return {re, Rational(-im)}; }
  Rational norm2() const { return re * re + im * im; }

  GaussianRational operator-() const { return {Rational(-re), Rational(-im)}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {Rational(a.re + b.re), Rational(a.im + b.im)};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {Rational(a.re - b.re), Rational(a.im - b.im)};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {Rational(a.re * b.re - a.im * b.im), Rational(a.re * b.im + a.im * b.re)};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational n = b.norm2();
    if (n == 0) throw std::invalid_argument("GaussianRational: division by zero");
    return {Rational((a.re * b.re + a.im * b.im) / n), Rational((a.im * b.re - a.re * b.im) / n)};
  }

  GaussianRational& operator+=(const GaussianRational& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& b) {
    re -= b.re;
    im -= b.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
  GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  /// "p/q" for real values, "(re, im)" with rational components otherwise.
  std::string str() const;
};

inline GaussianRational conj(const GaussianRational& z) { return z.conj(); }

}  // namespace haarmoments

namespace Eigen {

// GaussianRational is registered as a plain (non-complex) exact field so that
// dense products, sums and Kronecker products work on it. Conjugation-aware
// operations (adjoints) go through haarmoments::dagger, never .adjoint().
template <>
struct NumTraits<haarmoments::GaussianRational>
    : GenericNumTraits<haarmoments::GaussianRational> {
  typedef haarmoments::GaussianRational Real;
  typedef haarmoments::GaussianRational NonInteger;
  typedef haarmoments::GaussianRational Nested;
  typedef haarmoments::GaussianRational Literal;

  static inline Real epsilon() { return haarmoments::GaussianRational(0); }
  static inline Real dummy_precision() { return haarmoments::GaussianRational(0); }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 120,
  };
};

}  // namespace Eigen
