#include <cmath>
#include <random>

#include "kerrcat/phasespace.hpp"
#include "support.hpp"

using namespace kerrcat;
using namespace kerrcat::phasespace;
using Poly = PhaseSpacePolynomial;
using GR = GaussianRational;

namespace {

const GR half{Rational(1, 2)};

Poly a_(Basis b = Basis::Complex) { return Poly::monomial(1, 0, 1, b); }
Poly astar(Basis b = Basis::Complex) { return Poly::monomial(0, 1, 1, b); }

Poly random_poly(std::mt19937& rng, int max_degree, Basis basis = Basis::Complex, Rational lambda = Rational(1)) {
  std::uniform_int_distribution<int> coef(-4, 4), den(1, 3), keep(0, 2);
  Poly p(basis, lambda);
  for (int j = 0; j <= max_degree; ++j)
    for (int k = 0; j + k <= max_degree; ++k)
      if (keep(rng) == 0) p.add_term(j, k, GR(Rational(coef(rng), den(rng)), Rational(coef(rng), den(rng))));
  if (p.is_zero()) p.add_term(0, 0, 1);
  return p;
}

NormalOrderedOperatorPoly random_operator(std::mt19937& rng, int max_degree) {
  std::uniform_int_distribution<int> coef(-5, 5), keep(0, 1);
  NormalOrderedOperatorPoly op;
  for (int j = 0; j <= max_degree; ++j)
    for (int k = 0; j + k <= max_degree; ++k)
      if (keep(rng)) op.add_term(j, k, GR(Rational(coef(rng), 2), Rational(coef(rng), 3)));
  return op;
}

Rational binomial(int n, int k) {
  Rational r(1);
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Star-product series written out independently: order n carries
// (i lambda/2)^n / n! (quadrature) or (1/2)^n / n! (complex) times
// sum_k C(n,k) (-1)^k [d1^(n-k) d2^k F][d2^(n-k) d1^k G].
// `dF(a, b)` returns d1^a d2^b F as a polynomial times the common weight.
template <class DerivF>
Poly star_series(DerivF dF, const Poly& g, int max_order, Basis basis, const Rational& lambda) {
  Poly out(basis, lambda);
  GR step = basis == Basis::Complex ? half : GR(Rational(0), lambda / 2);
  GR pref(1);
  Rational fact(1);
  for (int n = 0; n <= max_order; ++n) {
    if (n > 0) {
      pref *= step;
      fact *= n;
    }
    for (int k = 0; k <= n; ++k) {
      const Rational c = binomial(n, k) * (k % 2 ? -1 : 1) / fact;
      out = out + (dF(n - k, k) * g.derivative(k, n - k)).scaled(pref * GR(c));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("star products of the Wigner-transform table") {
  // a* * a = a a* - 1/2
  Poly expected = Poly::monomial(1, 1) - Poly::constant(half);
  CHECK(star_product(astar(), a_()) == expected);
  // a*^2 * a^2 = a^2 a*^2 - 2 a a* + 1/2
  const Poly lhs = star_product(Poly::monomial(0, 2), Poly::monomial(2, 0));
  expected = Poly::monomial(2, 2) - Poly::monomial(1, 1, 2) + Poly::constant(half);
  CHECK(lhs == expected);
  // {{a, a*}} = 1
  CHECK(moyal_bracket(a_(), astar()) == Poly::constant(1));
  CHECK(star_product(a_(), astar()) - star_product(astar(), a_()) == Poly::constant(1));
}

TEST_CASE("Wigner transform of ordered operators") {
  NormalOrderedOperatorPoly n;
  n.add_term(1, 1, 1);
  CHECK(wigner_transform_operator(n) == Poly::monomial(1, 1) - Poly::constant(half));

  NormalOrderedOperatorPoly kerr;
  kerr.add_term(2, 2, 1);
  CHECK(wigner_transform_operator(kerr) ==
        Poly::monomial(2, 2) - Poly::monomial(1, 1, 2) + Poly::constant(half));

  NormalOrderedOperatorPoly drive;
  drive.add_term(2, 0, 1);
  drive.add_term(0, 2, 1);
  CHECK(wigner_transform_operator(drive) == Poly::monomial(2, 0) + Poly::monomial(0, 2));
}

TEST_CASE("McCoy quantization") {
  auto aa = mccoy_quantize(Poly::monomial(1, 1));
  NormalOrderedOperatorPoly expected;
  expected.add_term(1, 1, 1);
  expected.add_term(0, 0, half);
  CHECK(aa == expected);

  auto quartic = mccoy_quantize(Poly::monomial(2, 2));
  NormalOrderedOperatorPoly q;
  q.add_term(2, 2, 1);
  q.add_term(1, 1, 2);
  q.add_term(0, 0, half);
  CHECK(quartic == q);
  CHECK(quartic.is_hermitian());

  // xp in the quadrature basis orders to XP - i lambda/2 with X on the left.
  for (Rational lambda : {Rational(1), Rational(1, 3)}) {
    auto xp = mccoy_quantize(Poly::monomial(1, 1, 1, Basis::Quadrature, lambda));
    CHECK(xp.ordering() == Ordering::XLeft);
    CHECK(xp.coefficient(1, 1) == GR(1));
    CHECK(xp.coefficient(0, 0) == GR(Rational(0), -lambda / 2));
  }
}

TEST_CASE("Kerr frequency renormalization") {
  auto h = kerr_lamb_shift_check(0.0, 1.0);
  CHECK(h.coefficient(1, 1) == GR(-2));
  CHECK(h.coefficient(2, 2) == GR(-1));
  CHECK(h.coefficient(0, 0) == GR(Rational(-1, 2)));
  CHECK(kerr_lamb_shift_check(2.0, 1.0).coefficient(1, 1).is_zero());
  auto g = kerr_lamb_shift_check(0.75, 0.5);
  CHECK(g.coefficient(1, 1) == GR(Rational(-1, 4)));
  CHECK(g.coefficient(0, 0) == GR(Rational(1, 8)));
}

TEST_CASE("McCoy and Wigner transforms are inverse") {
  std::mt19937 rng(21);
  for (int i = 0; i < 50; ++i) {
    const Poly f = random_poly(rng, 5);
    CHECK(wigner_transform_operator(mccoy_quantize(f)) == f);
    const auto op = random_operator(rng, 4);
    CHECK(mccoy_quantize(wigner_transform_operator(op)) == op);
  }
  for (int i = 0; i < 10; ++i) {
    const Poly f = random_poly(rng, 4, Basis::Quadrature, Rational(2, 5));
    CHECK(wigner_transform_operator(mccoy_quantize(f)) == f);
  }
}

TEST_CASE("star product algebra") {
  std::mt19937 rng(8);
  for (int i = 0; i < 30; ++i) {
    const Poly f = random_poly(rng, 4), g = random_poly(rng, 4), h = random_poly(rng, 4);
    CHECK(star_product(star_product(f, g), h) == star_product(f, star_product(g, h)));
  }
  for (int i = 0; i < 10; ++i) {
    const Rational lambda(3, 7);
    const Poly f = random_poly(rng, 3, Basis::Quadrature, lambda), g = random_poly(rng, 3, Basis::Quadrature, lambda),
               h = random_poly(rng, 3, Basis::Quadrature, lambda);
    CHECK(star_product(star_product(f, g), h) == star_product(f, star_product(g, h)));
  }
  // Leading order is the pointwise product.
  const Poly f = random_poly(rng, 3), g = random_poly(rng, 3);
  CHECK(star_product_term(f, g, 0) == f * g);
  CHECK(star_product_term(f, g, 7).is_zero());
  CHECK_ERROR_CODE(star_product(a_(), a_(Basis::Quadrature)), ErrorCode::BasisMismatch);
  CHECK_ERROR_CODE(star_product(Poly::monomial(1, 0, 1, Basis::Quadrature, Rational(1)),
                                Poly::monomial(1, 0, 1, Basis::Quadrature, Rational(2))),
                   ErrorCode::BasisMismatch);
}

TEST_CASE("star product matches an independently written series") {
  std::mt19937 rng(13);
  for (Basis basis : {Basis::Complex, Basis::Quadrature}) {
    const Rational lambda = basis == Basis::Complex ? Rational(1) : Rational(2, 3);
    for (int i = 0; i < 10; ++i) {
      const Poly f = random_poly(rng, 4, basis, lambda), g = random_poly(rng, 4, basis, lambda);
      const Poly ref = star_series([&](int a, int b) { return f.derivative(a, b); }, g, 4, basis, lambda);
      CHECK(star_product(f, g) == ref);
    }
  }
}

TEST_CASE("Moyal bracket") {
  std::mt19937 rng(17);
  const Poly f = random_poly(rng, 4);
  CHECK(moyal_bracket(f, f).is_zero());
  const Poly g = random_poly(rng, 4);
  CHECK(moyal_bracket(f, g) == -moyal_bracket(g, f));

  const Rational lambda(1, 4);
  const Poly x = Poly::monomial(1, 0, 1, Basis::Quadrature, lambda);
  const Poly p = Poly::monomial(0, 1, 1, Basis::Quadrature, lambda);
  CHECK(moyal_bracket(x, p) == Poly::constant(1, Basis::Quadrature, lambda));

  // Degree <= 2 in either argument: Moyal equals Poisson.
  for (int i = 0; i < 10; ++i) {
    const Poly q = random_poly(rng, 2), w = random_poly(rng, 5);
    CHECK(moyal_bracket(q, w) == poisson_bracket(q, w));
    CHECK(moyal_bracket(w, q) == poisson_bracket(w, q));
  }

  // Quartic with cubic: the correction starts at lambda^2.
  auto diff = [&](const Rational& lam) {
    const Poly h = Poly::monomial(4, 0, 1, Basis::Quadrature, lam) + Poly::monomial(2, 2, 3, Basis::Quadrature, lam);
    const Poly w = Poly::monomial(0, 3, 1, Basis::Quadrature, lam) + Poly::monomial(1, 2, 2, Basis::Quadrature, lam);
    return moyal_bracket(h, w) - poisson_bracket(h, w);
  };
  const Poly d1 = diff(Rational(1)), d2 = diff(Rational(2));
  CHECK_FALSE(d1.is_zero());
  for (const auto& [key, c] : d2.terms()) CHECK(c == d1.coefficient(key.first, key.second) * GR(4));
  CHECK(d2.terms().size() == d1.terms().size());

  // Groenewold: a cubic pair whose Moyal and Poisson brackets differ.
  const Poly x3 = Poly::monomial(3, 0, 1, Basis::Quadrature), p3 = Poly::monomial(0, 3, 1, Basis::Quadrature);
  CHECK(moyal_bracket(x3, p3) != poisson_bracket(x3, p3));

  // Quadratic generators are classical.
  const Poly hq = Poly::monomial(2, 0, 3) + Poly::monomial(1, 1, GR(Rational(1), Rational(2))) + Poly::monomial(0, 2, 3);
  for (int i = 0; i < 5; ++i) {
    const Poly w = random_poly(rng, 6);
    CHECK(moyal_bracket(hq, w) == poisson_bracket(hq, w));
  }
}

TEST_CASE("integral of a star product equals the integral of the product") {
  // F = Q(x, p) exp(-(x^2 + p^2)/2) decays, G is a polynomial, so every
  // correction term of F * G is a total derivative and integrates to zero.
  std::mt19937 rng(29);
  const Rational lambda(1);
  for (int trial = 0; trial < 5; ++trial) {
    const Poly q = random_poly(rng, 3, Basis::Quadrature, lambda);
    const Poly g = random_poly(rng, 3, Basis::Quadrature, lambda);
    const Poly x = Poly::monomial(1, 0, 1, Basis::Quadrature, lambda);
    const Poly p = Poly::monomial(0, 1, 1, Basis::Quadrature, lambda);
    // d/dx (Q w) = (dQ/dx - x Q) w with w the Gaussian weight.
    auto dF = [&](int a, int b) {
      Poly r = q;
      for (int i = 0; i < a; ++i) r = r.derivative(1, 0) - x * r;
      for (int i = 0; i < b; ++i) r = r.derivative(0, 1) - p * r;
      return r;
    };
    const Poly star = star_series(dF, g, 3, Basis::Quadrature, lambda);
    const Poly plain = q * g;
    auto integrate = [](const Poly& f) {
      const int n = 241;
      const double l = 12.0, h = 2.0 * l / (n - 1);
      std::complex<double> s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double xv = -l + i * h, pv = -l + j * h;
          s += f.evaluate(xv, pv) * std::exp(-(xv * xv + pv * pv) / 2.0);
        }
      return s * h * h;
    };
    const auto lhs = integrate(star), rhs = integrate(plain);
    CHECK(std::abs(lhs - rhs) < 1e-6 * std::max(1.0, std::abs(rhs)));
    CHECK(star != plain);
  }
}

TEST_CASE("basis conversions") {
  std::mt19937 rng(31);
  const Rational lambda(1, 2);  // sqrt(2 lambda) = 1
  for (int i = 0; i < 10; ++i) {
    Poly f = random_poly(rng, 4, Basis::Complex, lambda);
    CHECK(to_complex(to_quadrature(f, lambda)) == f);
  }
  // a a* = (x^2 + p^2)/(2 lambda)
  const Poly n = to_quadrature(Poly::monomial(1, 1), Rational(1));
  CHECK(n == Poly::monomial(2, 0, half, Basis::Quadrature) + Poly::monomial(0, 2, half, Basis::Quadrature));
  CHECK_ERROR_CODE(to_quadrature(a_(), Rational(1)), ErrorCode::InexactConversion);
  CHECK_ERROR_CODE(to_complex(a_()), ErrorCode::BasisMismatch);
}

TEST_CASE("quantum metapotential surface") {
  const HamiltonianParams p{1.0, 1.0, 2.0, 0.0, 0};
  SUBCASE("agrees with the transformed Hamiltonian up to a constant") {
    const Rational lambda(1, 2);
    const Poly surface = effective_hamiltonian_surface(p, lambda);
    Poly from_op = wigner_transform_operator(hamiltonian_operator(p));
    from_op = to_quadrature(from_op, lambda);
    Poly diff = surface - from_op;
    const auto c0 = diff.coefficient(0, 0);
    diff.add_term(0, 0, -c0);
    CHECK(diff.is_zero());
  }
  SUBCASE("rescaled form") {
    const Poly r = rescaled_surface(p);
    // x^2/2 coefficient -(1 + D/2e2 + 2 lambda) with lambda = K/2e2 = 1/4.
    CHECK(r.coefficient(2, 0) == GR(Rational(-7, 8)));
    CHECK(r.coefficient(4, 0) == GR(Rational(1, 4)));
    CHECK(r.coefficient(2, 2) == GR(Rational(1, 2)));
  }
  SUBCASE("classical limit and the mu parametrization") {
    const Poly c = classical_limit_surface(p);
    const Rational mu(1, 4);
    CHECK(c.coefficient(2, 0) == GR(-(1 + mu) / 2));
    CHECK(c.coefficient(0, 2) == GR(-(mu - 1) / 2));
    CHECK(c.coefficient(0, 0).is_zero());
    CHECK(c.coefficient(4, 0) == GR(Rational(1, 4)));
  }
}

TEST_CASE("Fokker-Planck symbols of the dissipator") {
  const auto r0 = lindblad_phase_space_rhs_symbols(1.0, 0.0);
  CHECK(r0.matches_all_monomials);
  CHECK(r0.monomials_checked == 28);
  CHECK(r0.drift == doctest::Approx(0.5));
  CHECK(r0.diffusion_complex == doctest::Approx(0.5));
  CHECK(r0.diffusion_quadrature == doctest::Approx(0.25));
  CHECK(r0.diffusion_quadrature_lambda2 == doctest::Approx(0.5));
  CHECK(r0.drift_independent_of_n_th);
  CHECK(r0.hamiltonian_part_odd_only);

  const auto r1 = lindblad_phase_space_rhs_symbols(0.2, 0.3);
  CHECK(r1.matches_all_monomials);
  CHECK(r1.drift == doctest::Approx(0.1));
  CHECK(r1.diffusion_complex == doctest::Approx(0.2 * 0.8));
  CHECK(r1.diffusion_quadrature == doctest::Approx(0.1 * 0.8));
}
