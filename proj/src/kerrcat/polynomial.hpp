#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace kerrcat {

using Rational = boost::multiprecision::cpp_rational;

/// Converts a finite double to the rational it represents exactly.
Rational to_rational(double value);
double to_double(const Rational& value);
/// Exact square root, or InexactConversion when value is not a rational square.
Rational exact_sqrt(const Rational& value);

/// a + i b with a, b rational.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(int r) : re(r) {}                  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
  std::string str() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);
};

GaussianRational operator+(GaussianRational a, const GaussianRational& b);
GaussianRational operator-(GaussianRational a, const GaussianRational& b);
GaussianRational operator-(const GaussianRational& a);
GaussianRational operator*(GaussianRational a, const GaussianRational& b);
GaussianRational operator/(GaussianRational a, const GaussianRational& b);
bool operator==(const GaussianRational& a, const GaussianRational& b);
inline bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

/// Which pair of conjugate variables a polynomial is written in.
/// Complex: key (j, k) is a^j (a*)^k. Quadrature: key (j, k) is x^j p^k.
enum class Basis { Complex, Quadrature };

using Exponents = std::pair<int, int>;

/// Polynomial in two commuting phase-space variables with exact
/// coefficients. Zero coefficients are never stored. `lambda` is the
/// deformation parameter ([x, p] = i lambda); the complex basis carries it
/// only so that conversions know the scale.
class PhaseSpacePolynomial {
 public:
  using Terms = std::map<Exponents, GaussianRational>;

  explicit PhaseSpacePolynomial(Basis basis = Basis::Complex, Rational lambda = Rational(1));

  static PhaseSpacePolynomial constant(const GaussianRational& c, Basis basis = Basis::Complex,
                                       Rational lambda = Rational(1));
  static PhaseSpacePolynomial monomial(int j, int k, const GaussianRational& c = 1, Basis basis = Basis::Complex,
                                       Rational lambda = Rational(1));

  Basis basis() const { return basis_; }
  const Rational& lambda() const { return lambda_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  GaussianRational coefficient(int j, int k) const;

  void add_term(int j, int k, const GaussianRational& c);

  /// d^nj/dv1^nj d^nk/dv2^nk, with (v1, v2) = (a, a*) or (x, p).
  PhaseSpacePolynomial derivative(int nj, int nk) const;

  /// Pointwise (commutative) product.
  PhaseSpacePolynomial operator*(const PhaseSpacePolynomial& o) const;
  PhaseSpacePolynomial operator+(const PhaseSpacePolynomial& o) const;
  PhaseSpacePolynomial operator-(const PhaseSpacePolynomial& o) const;
  PhaseSpacePolynomial operator-() const;
  PhaseSpacePolynomial scaled(const GaussianRational& c) const;
  bool operator==(const PhaseSpacePolynomial& o) const;
  bool operator!=(const PhaseSpacePolynomial& o) const { return !(*this == o); }

  /// Evaluates at (v1, v2). For the complex basis pass v1 = a and v2 = conj(a).
  std::complex<double> evaluate(std::complex<double> v1, std::complex<double> v2) const;

  std::string str() const;

 private:
  void require_compatible(const PhaseSpacePolynomial& o) const;

  Basis basis_;
  Rational lambda_;
  Terms terms_;
};

/// Operator ordering of a NormalOrderedOperatorPoly.
/// CreationLeft: key (j, k) is (a^dag)^j a^k. XLeft: key (j, k) is X^j P^k.
enum class Ordering { CreationLeft, XLeft };

/// Polynomial operator stored in a fixed ordering with exact coefficients.
class NormalOrderedOperatorPoly {
 public:
  using Terms = std::map<Exponents, GaussianRational>;

  explicit NormalOrderedOperatorPoly(Ordering ordering = Ordering::CreationLeft, Rational lambda = Rational(1));

  Ordering ordering() const { return ordering_; }
  const Rational& lambda() const { return lambda_; }
  const Terms& terms() const { return terms_; }
  GaussianRational coefficient(int j, int k) const;
  void add_term(int j, int k, const GaussianRational& c);

  /// coefficient(j, k) == conj(coefficient(k, j)) for every key. Only
  /// meaningful for CreationLeft.
  bool is_hermitian() const;

  bool operator==(const NormalOrderedOperatorPoly& o) const;
  bool operator!=(const NormalOrderedOperatorPoly& o) const { return !(*this == o); }
  std::string str() const;

 private:
  Ordering ordering_;
  Rational lambda_;
  Terms terms_;
};

}  // namespace kerrcat
