#include "kerrcat/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kerrcat/error.hpp"

namespace kerrcat {

namespace mp = boost::multiprecision;

Rational to_rational(double value) {
  require(std::isfinite(value), ErrorCode::InvalidArgument, "cannot convert a non-finite value to a rational");
  if (value == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  // mantissa * 2^53 is an integer for every double.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational r{mp::cpp_int(scaled)};
  const mp::cpp_int power = mp::cpp_int(1) << std::abs(exponent);
  return exponent >= 0 ? r * Rational(power) : r / Rational(power);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational exact_sqrt(const Rational& value) {
  require(value >= 0, ErrorCode::InexactConversion, "square root of a negative rational");
  const mp::cpp_int num = mp::numerator(value);
  const mp::cpp_int den = mp::denominator(value);
  const mp::cpp_int rn = mp::sqrt(num);
  const mp::cpp_int rd = mp::sqrt(den);
  require(rn * rn == num && rd * rd == den, ErrorCode::InexactConversion,
          "square root of " + value.str() + " is not rational");
  return Rational(rn, rd);
}

// GaussianRational -------------------------------------------------------

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  const Rational n = o.re * o.re + o.im * o.im;
  require(n != 0, ErrorCode::InvalidArgument, "division by zero");
  *this *= o.conj();
  re /= n;
  im /= n;
  return *this;
}

GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
bool operator==(const GaussianRational& a, const GaussianRational& b) { return a.re == b.re && a.im == b.im; }

std::string GaussianRational::str() const {
  if (im == 0) return re.str();
  if (re == 0) return im.str() + "i";
  return "(" + re.str() + (im < 0 ? "-" : "+") + Rational(mp::abs(im)).str() + "i)";
}

// PhaseSpacePolynomial ---------------------------------------------------

PhaseSpacePolynomial::PhaseSpacePolynomial(Basis basis, Rational lambda) : basis_(basis), lambda_(std::move(lambda)) {
  require(lambda_ > 0, ErrorCode::InvalidArgument, "lambda must be positive");
}

PhaseSpacePolynomial PhaseSpacePolynomial::constant(const GaussianRational& c, Basis basis, Rational lambda) {
  return monomial(0, 0, c, basis, std::move(lambda));
}

PhaseSpacePolynomial PhaseSpacePolynomial::monomial(int j, int k, const GaussianRational& c, Basis basis,
                                                    Rational lambda) {
  PhaseSpacePolynomial p(basis, std::move(lambda));
  p.add_term(j, k, c);
  return p;
}

int PhaseSpacePolynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

GaussianRational PhaseSpacePolynomial::coefficient(int j, int k) const {
  const auto it = terms_.find({j, k});
  return it == terms_.end() ? GaussianRational() : it->second;
}

void PhaseSpacePolynomial::add_term(int j, int k, const GaussianRational& c) {
  require(j >= 0 && k >= 0, ErrorCode::InvalidArgument, "exponents must be non-negative");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace({j, k}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PhaseSpacePolynomial PhaseSpacePolynomial::derivative(int nj, int nk) const {
  require(nj >= 0 && nk >= 0, ErrorCode::InvalidArgument, "derivative orders must be non-negative");
  PhaseSpacePolynomial out(basis_, lambda_);
  for (const auto& [e, c] : terms_) {
    const auto [j, k] = e;
    if (j < nj || k < nk) continue;
    mp::cpp_int factor = 1;
    for (int s = 0; s < nj; ++s) factor *= j - s;
    for (int s = 0; s < nk; ++s) factor *= k - s;
    out.add_term(j - nj, k - nk, c * GaussianRational(Rational(factor)));
  }
  return out;
}

void PhaseSpacePolynomial::require_compatible(const PhaseSpacePolynomial& o) const {
  require(basis_ == o.basis_ && lambda_ == o.lambda_, ErrorCode::BasisMismatch,
          "polynomials use different bases or deformation parameters");
}

PhaseSpacePolynomial PhaseSpacePolynomial::operator*(const PhaseSpacePolynomial& o) const {
  require_compatible(o);
  PhaseSpacePolynomial out(basis_, lambda_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) out.add_term(e1.first + e2.first, e1.second + e2.second, c1 * c2);
  return out;
}

PhaseSpacePolynomial PhaseSpacePolynomial::operator+(const PhaseSpacePolynomial& o) const {
  require_compatible(o);
  PhaseSpacePolynomial out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e.first, e.second, c);
  return out;
}

PhaseSpacePolynomial PhaseSpacePolynomial::operator-(const PhaseSpacePolynomial& o) const { return *this + (-o); }

PhaseSpacePolynomial PhaseSpacePolynomial::operator-() const { return scaled(GaussianRational(-1)); }

PhaseSpacePolynomial PhaseSpacePolynomial::scaled(const GaussianRational& c) const {
  PhaseSpacePolynomial out(basis_, lambda_);
  for (const auto& [e, v] : terms_) out.add_term(e.first, e.second, v * c);
  return out;
}

bool PhaseSpacePolynomial::operator==(const PhaseSpacePolynomial& o) const {
  return basis_ == o.basis_ && lambda_ == o.lambda_ && terms_.size() == o.terms_.size() &&
         std::equal(terms_.begin(), terms_.end(), o.terms_.begin(),
                    [](const auto& a, const auto& b) { return a.first == b.first && a.second == b.second; });
}

std::complex<double> PhaseSpacePolynomial::evaluate(std::complex<double> v1, std::complex<double> v2) const {
  std::complex<double> sum = 0.0;
  for (const auto& [e, c] : terms_) sum += c.to_complex() * std::pow(v1, e.first) * std::pow(v2, e.second);
  return sum;
}

namespace {

std::string render(const std::map<Exponents, GaussianRational>& terms, const char* v1, const char* v2) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    if (e.first > 0) os << "*" << v1 << (e.first > 1 ? "^" + std::to_string(e.first) : "");
    if (e.second > 0) os << "*" << v2 << (e.second > 1 ? "^" + std::to_string(e.second) : "");
  }
  return os.str();
}

}  // namespace

std::string PhaseSpacePolynomial::str() const {
  return basis_ == Basis::Complex ? render(terms_, "a", "a*") : render(terms_, "x", "p");
}

// NormalOrderedOperatorPoly ----------------------------------------------

NormalOrderedOperatorPoly::NormalOrderedOperatorPoly(Ordering ordering, Rational lambda)
    : ordering_(ordering), lambda_(std::move(lambda)) {
  require(lambda_ > 0, ErrorCode::InvalidArgument, "lambda must be positive");
}

GaussianRational NormalOrderedOperatorPoly::coefficient(int j, int k) const {
  const auto it = terms_.find({j, k});
  return it == terms_.end() ? GaussianRational() : it->second;
}

void NormalOrderedOperatorPoly::add_term(int j, int k, const GaussianRational& c) {
  require(j >= 0 && k >= 0, ErrorCode::InvalidArgument, "exponents must be non-negative");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace({j, k}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool NormalOrderedOperatorPoly::is_hermitian() const {
  for (const auto& [e, c] : terms_)
    if (coefficient(e.second, e.first) != c.conj()) return false;
  return true;
}

bool NormalOrderedOperatorPoly::operator==(const NormalOrderedOperatorPoly& o) const {
  return ordering_ == o.ordering_ && lambda_ == o.lambda_ && terms_.size() == o.terms_.size() &&
         std::equal(terms_.begin(), terms_.end(), o.terms_.begin(),
                    [](const auto& a, const auto& b) { return a.first == b.first && a.second == b.second; });
}

std::string NormalOrderedOperatorPoly::str() const {
  return ordering_ == Ordering::CreationLeft ? render(terms_, "A+", "A") : render(terms_, "X", "P");
}

}  // namespace kerrcat
