#include "kerrcat/phasespace.hpp"

#include <cmath>

#include "kerrcat/error.hpp"

namespace kerrcat::phasespace {

namespace {

using Poly = PhaseSpacePolynomial;
namespace mp = boost::multiprecision;

Rational binomial(int n, int k) {
  mp::cpp_int c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return Rational(c);
}

Rational factorial(int n) {
  mp::cpp_int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

GaussianRational power(const GaussianRational& base, int n) {
  GaussianRational r(1);
  for (int i = 0; i < n; ++i) r *= base;
  return r;
}

// (u1 v1 + u2 v2)^n expanded as {exponent of v1 -> coefficient}.
std::vector<GaussianRational> binomial_row(const GaussianRational& u1, const GaussianRational& u2, int n) {
  std::vector<GaussianRational> row(n + 1);
  for (int s = 0; s <= n; ++s) row[s] = GaussianRational(binomial(n, s)) * power(u1, s) * power(u2, n - s);
  return row;
}

// Substitutes v1 -> c (w1 + s1 w2) and v2 -> c' (w1 + s2 w2) term by term.
Poly substitute(const Poly& f, Basis target, const Rational& lambda, const GaussianRational& u1a,
                const GaussianRational& u1b, const GaussianRational& u2a, const GaussianRational& u2b,
                const Rational& scale_sq, bool inverse_scale) {
  Poly out(target, lambda);
  for (const auto& [e, c] : f.terms()) {
    const auto [j, k] = e;
    const int deg = j + k;
    Rational scale = 1;
    for (int i = 0; i < deg / 2; ++i) scale *= scale_sq;
    if (deg % 2 == 1) scale *= exact_sqrt(scale_sq);
    if (inverse_scale) scale = 1 / scale;
    const auto row1 = binomial_row(u1a, u1b, j);
    const auto row2 = binomial_row(u2a, u2b, k);
    for (int s = 0; s <= j; ++s)
      for (int t = 0; t <= k; ++t)
        out.add_term(s + t, deg - s - t, c * row1[s] * row2[t] * GaussianRational(scale));
  }
  return out;
}

Poly drift_operator(const Poly& w) {
  const Poly a = Poly::monomial(1, 0, 1, w.basis(), w.lambda());
  const Poly ac = Poly::monomial(0, 1, 1, w.basis(), w.lambda());
  return (a * w).derivative(1, 0) + (ac * w).derivative(0, 1);
}

struct Dissipator {
  Rational kappa;
  Rational n_th;

  Poly operator()(const Poly& w) const {
    const Poly a = Poly::monomial(1, 0);
    const Poly ac = Poly::monomial(0, 1);
    const Poly half = Poly::constant(GaussianRational(Rational(1, 2)));
    const Poly n_sym = ac * a - half;       // symbol of a^dag a
    const Poly m_sym = a * ac + half;       // symbol of a a^dag
    const Poly loss = star_product(star_product(a, w), ac) -
                      (star_product(n_sym, w) + star_product(w, n_sym)).scaled(GaussianRational(Rational(1, 2)));
    const Poly gain = star_product(star_product(ac, w), a) -
                      (star_product(m_sym, w) + star_product(w, m_sym)).scaled(GaussianRational(Rational(1, 2)));
    return loss.scaled(GaussianRational(kappa * (1 + n_th))) + gain.scaled(GaussianRational(kappa * n_th));
  }
};

}  // namespace

Poly star_product_term(const Poly& f, const Poly& g, int order) {
  require(f.basis() == g.basis() && f.lambda() == g.lambda(), ErrorCode::BasisMismatch,
          "star product operands use different bases or deformation parameters");
  require(order >= 0, ErrorCode::InvalidArgument, "series order must be non-negative");
  GaussianRational prefactor = f.basis() == Basis::Complex ? GaussianRational(Rational(1, 2))
                                                           : GaussianRational(Rational(0), f.lambda() / 2);
  prefactor = power(prefactor, order) / GaussianRational(factorial(order));
  Poly out(f.basis(), f.lambda());
  for (int k = 0; k <= order; ++k) {
    const Poly df = f.derivative(order - k, k);
    if (df.is_zero()) continue;
    const Poly dg = g.derivative(k, order - k);
    if (dg.is_zero()) continue;
    const Rational sign = (k % 2 == 0) ? Rational(1) : Rational(-1);
    out = out + (df * dg).scaled(prefactor * GaussianRational(binomial(order, k) * sign));
  }
  return out;
}

Poly star_product(const Poly& f, const Poly& g) {
  Poly out(f.basis(), f.lambda());
  if (f.is_zero() || g.is_zero()) {
    require(f.basis() == g.basis() && f.lambda() == g.lambda(), ErrorCode::BasisMismatch,
            "star product operands use different bases or deformation parameters");
    return out;
  }
  const int top = std::min(f.degree(), g.degree());
  for (int n = 0; n <= top; ++n) out = out + star_product_term(f, g, n);
  return out;
}

Poly moyal_bracket(const Poly& f, const Poly& g) {
  const Poly c = star_product(f, g) - star_product(g, f);
  if (f.basis() == Basis::Complex) return c;
  return c.scaled(GaussianRational(1) / GaussianRational(Rational(0), f.lambda()));
}

Poly poisson_bracket(const Poly& f, const Poly& g) {
  require(f.basis() == g.basis() && f.lambda() == g.lambda(), ErrorCode::BasisMismatch,
          "Poisson bracket operands use different bases or deformation parameters");
  return f.derivative(1, 0) * g.derivative(0, 1) - f.derivative(0, 1) * g.derivative(1, 0);
}

Poly wigner_transform_operator(const NormalOrderedOperatorPoly& op) {
  if (op.ordering() == Ordering::CreationLeft) {
    Poly out(Basis::Complex, op.lambda());
    for (const auto& [e, c] : op.terms()) {
      const Poly left = Poly::monomial(0, e.first, 1, Basis::Complex, op.lambda());
      const Poly right = Poly::monomial(e.second, 0, 1, Basis::Complex, op.lambda());
      out = out + star_product(left, right).scaled(c);
    }
    return out;
  }
  Poly out(Basis::Quadrature, op.lambda());
  for (const auto& [e, c] : op.terms()) {
    const Poly left = Poly::monomial(e.first, 0, 1, Basis::Quadrature, op.lambda());
    const Poly right = Poly::monomial(0, e.second, 1, Basis::Quadrature, op.lambda());
    out = out + star_product(left, right).scaled(c);
  }
  return out;
}

NormalOrderedOperatorPoly mccoy_quantize(const Poly& f) {
  const bool complex = f.basis() == Basis::Complex;
  const GaussianRational step = complex ? GaussianRational(Rational(1, 2)) : GaussianRational(Rational(0), -f.lambda() / 2);
  Poly ordered(f.basis(), f.lambda());
  Poly current = f;
  GaussianRational weight(1);
  for (int n = 0; !current.is_zero(); ++n) {
    ordered = ordered + current.scaled(weight);
    current = current.derivative(1, 1);
    weight = weight * step / GaussianRational(Rational(n + 1));
  }
  NormalOrderedOperatorPoly out(complex ? Ordering::CreationLeft : Ordering::XLeft, f.lambda());
  for (const auto& [e, c] : ordered.terms()) {
    if (complex)
      out.add_term(e.second, e.first, c);  // a^j a*^k -> (a^dag)^k a^j
    else
      out.add_term(e.first, e.second, c);
  }
  return out;
}

NormalOrderedOperatorPoly kerr_lamb_shift_check(double delta, double kerr) {
  Poly f(Basis::Complex);
  f.add_term(1, 1, GaussianRational(to_rational(delta)));
  f.add_term(2, 2, GaussianRational(-to_rational(kerr)));
  return mccoy_quantize(f);
}

NormalOrderedOperatorPoly hamiltonian_operator(const HamiltonianParams& params) {
  params.validate();
  NormalOrderedOperatorPoly h(Ordering::CreationLeft);
  h.add_term(1, 1, GaussianRational(to_rational(params.delta)));
  h.add_term(2, 2, GaussianRational(-to_rational(params.kerr)));
  h.add_term(2, 0, GaussianRational(to_rational(params.eps2)));
  h.add_term(0, 2, GaussianRational(to_rational(params.eps2)));
  h.add_term(4, 0, GaussianRational(to_rational(params.eps4)));
  h.add_term(0, 4, GaussianRational(to_rational(params.eps4)));
  return h;
}

Poly to_quadrature(const Poly& f, const Rational& lambda) {
  require(f.basis() == Basis::Complex, ErrorCode::BasisMismatch, "to_quadrature expects a complex-basis polynomial");
  const GaussianRational one(1), i = GaussianRational::i();
  // a = (x + i p)/sqrt(2 lambda), a* = (x - i p)/sqrt(2 lambda)
  return substitute(f, Basis::Quadrature, lambda, one, i, one, -i, 2 * lambda, true);
}

Poly to_complex(const Poly& f) {
  require(f.basis() == Basis::Quadrature, ErrorCode::BasisMismatch, "to_complex expects a quadrature polynomial");
  const GaussianRational one(1), i = GaussianRational::i();
  // x = sqrt(lambda/2)(a + a*), p = sqrt(lambda/2)(-i a + i a*)
  return substitute(f, Basis::Complex, f.lambda(), one, one, -i, i, f.lambda() / 2, false);
}

Poly effective_hamiltonian_surface(const HamiltonianParams& params, const Rational& lambda) {
  return to_quadrature(wigner_transform_operator(hamiltonian_operator(params)), lambda);
}

namespace {

Rational classical_lambda(const HamiltonianParams& params) {
  require(params.eps2 > 0.0, ErrorCode::Domain, "the rescaled surface needs e2 > 0");
  return to_rational(params.kerr) / (2 * to_rational(params.eps2));
}

}  // namespace

Poly rescaled_surface(const HamiltonianParams& params) {
  const Rational lambda = classical_lambda(params);
  const Rational factor = -lambda * lambda / to_rational(params.kerr);
  return effective_hamiltonian_surface(params, lambda).scaled(GaussianRational(factor));
}

Poly classical_limit_surface(const HamiltonianParams& params) {
  params.validate();
  const Rational lambda = classical_lambda(params);
  const Rational factor = -lambda * lambda / to_rational(params.kerr);
  Poly symbol(Basis::Complex);
  symbol.add_term(1, 1, GaussianRational(to_rational(params.delta)));
  symbol.add_term(2, 2, GaussianRational(-to_rational(params.kerr)));
  symbol.add_term(2, 0, GaussianRational(to_rational(params.eps2)));
  symbol.add_term(0, 2, GaussianRational(to_rational(params.eps2)));
  symbol.add_term(4, 0, GaussianRational(to_rational(params.eps4)));
  symbol.add_term(0, 4, GaussianRational(to_rational(params.eps4)));
  return to_quadrature(symbol, lambda).scaled(GaussianRational(factor));
}

FokkerPlanckReport lindblad_phase_space_rhs_symbols(double kappa, double n_th, int max_degree) {
  require(kappa >= 0.0 && n_th >= 0.0, ErrorCode::InvalidArgument, "kappa and n_th must be non-negative");
  require(max_degree >= 2, ErrorCode::InvalidArgument, "max_degree must be at least 2");
  const Dissipator l{to_rational(kappa), to_rational(n_th)};
  const Poly one = Poly::constant(1);
  const Poly aac = Poly::monomial(1, 1);

  // Extract the coefficients from two probes, then verify on all monomials.
  const GaussianRational drift = l(one).coefficient(0, 0) / GaussianRational(2);
  const GaussianRational diffusion = (l(aac) - drift_operator(aac).scaled(drift)).coefficient(0, 0);

  FokkerPlanckReport r;
  r.kappa = kappa;
  r.n_th = n_th;
  r.drift = to_double(drift.re);
  r.diffusion_complex = to_double(diffusion.re);
  r.diffusion_quadrature = r.diffusion_complex / 2.0;
  r.diffusion_quadrature_lambda2 = r.diffusion_complex;

  bool all = drift.im == 0 && diffusion.im == 0;
  int checked = 0;
  for (int deg = 0; deg <= max_degree; ++deg)
    for (int j = 0; j <= deg; ++j) {
      const Poly w = Poly::monomial(j, deg - j);
      const Poly expected = drift_operator(w).scaled(drift) + w.derivative(1, 1).scaled(diffusion);
      all = all && (l(w) == expected);
      ++checked;
    }
  r.matches_all_monomials = all;
  r.monomials_checked = checked;

  const Dissipator hotter{l.kappa, l.n_th + 1};
  r.drift_independent_of_n_th = hotter(one).coefficient(0, 0) / GaussianRational(2) == drift;

  HamiltonianParams hp;
  hp.delta = 1.0;
  hp.eps2 = 1.0;
  hp.eps4 = 0.5;
  const Poly h = wigner_transform_operator(hamiltonian_operator(hp));
  bool odd_only = true;
  for (int deg = 0; deg <= max_degree; ++deg)
    for (int j = 0; j <= deg; ++j) {
      const Poly w = Poly::monomial(j, deg - j);
      Poly odd_sum(Basis::Complex);
      for (int n = 0; n <= std::min(h.degree(), deg); ++n) {
        const Poly t = star_product_term(h, w, n);
        if (n % 2 == 0)
          odd_only = odd_only && t == star_product_term(w, h, n);
        else
          odd_sum = odd_sum + t;
      }
      odd_only = odd_only && moyal_bracket(h, w) == odd_sum.scaled(GaussianRational(2));
    }
  r.hamiltonian_part_odd_only = odd_only;
  return r;
}

}  // namespace kerrcat::phasespace
