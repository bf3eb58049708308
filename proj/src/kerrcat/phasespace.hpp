#pragma once

#include "kerrcat/fock.hpp"
#include "kerrcat/polynomial.hpp"

namespace kerrcat::phasespace {

/// n-th order term of the star-product series. Complex basis:
///   (1/2)^n/n! sum_k C(n,k) (-1)^k [d_a^(n-k) d_a*^k F][d_a*^(n-k) d_a^k G]
/// Quadrature basis: the same with (i lambda/2)^n and (x, p) for (a, a*).
PhaseSpacePolynomial star_product_term(const PhaseSpacePolynomial& f, const PhaseSpacePolynomial& g, int order);

/// Exact star product; the series stops at min(deg F, deg G).
PhaseSpacePolynomial star_product(const PhaseSpacePolynomial& f, const PhaseSpacePolynomial& g);

/// F*G - G*F in the complex basis, and (F*G - G*F)/(i lambda) in the
/// quadrature basis, so both reduce to the Poisson bracket at leading order
/// with {{a, a*}} = 1 and {{x, p}} = 1.
PhaseSpacePolynomial moyal_bracket(const PhaseSpacePolynomial& f, const PhaseSpacePolynomial& g);

/// dF/da dG/da* - dF/da* dG/da, or dF/dx dG/dp - dF/dp dG/dx.
PhaseSpacePolynomial poisson_bracket(const PhaseSpacePolynomial& f, const PhaseSpacePolynomial& g);

/// Weyl symbol of an ordered operator polynomial. (a^dag)^j a^k maps to
/// a*^j * a^k and X^j P^k maps to x^j * p^k.
PhaseSpacePolynomial wigner_transform_operator(const NormalOrderedOperatorPoly& op);

/// McCoy map back to an ordered operator. Complex basis: exp((1/2) d_a d_a*)
/// then a* to the left. Quadrature basis: exp(-(i lambda/2) d_x d_p) then x
/// to the left.
NormalOrderedOperatorPoly mccoy_quantize(const PhaseSpacePolynomial& f);

/// Quantizes D a*a - K a*^2 a^2. The result is
/// (D - 2K) A+ A - K A+^2 A^2 + (D - K)/2.
NormalOrderedOperatorPoly kerr_lamb_shift_check(double delta, double kerr);

/// The model Hamiltonian as an ordered operator polynomial.
NormalOrderedOperatorPoly hamiltonian_operator(const HamiltonianParams& params);

/// x = sqrt(lambda/2)(a + a*), p = -i sqrt(lambda/2)(a - a*) and back. Odd
/// degrees need sqrt(2 lambda) rational; otherwise InexactConversion.
PhaseSpacePolynomial to_quadrature(const PhaseSpacePolynomial& f, const Rational& lambda);
PhaseSpacePolynomial to_complex(const PhaseSpacePolynomial& f);

/// Weyl symbol of H in quadratures with [x, p] = i lambda:
/// (D + 2K) r2/2lambda - K (r2/2lambda)^2 + e2 (x^2 - p^2)/lambda + e4 (...) + const.
PhaseSpacePolynomial effective_hamiltonian_surface(const HamiltonianParams& params, const Rational& lambda);

/// Surface at lambda = K/2e2 multiplied by -lambda^2/K, so that the x^2/2
/// coefficient is -(1 + D/2e2 + 2 lambda).
PhaseSpacePolynomial rescaled_surface(const HamiltonianParams& params);

/// rescaled_surface with the 2 lambda terms and the constant dropped:
/// (x^2 + p^2)^2/4 - (1 + mu) x^2/2 - (mu - 1) p^2/2 with mu = D/2e2.
PhaseSpacePolynomial classical_limit_surface(const HamiltonianParams& params);

/// Phase-space image of kappa (1 + n) D[a] + kappa n D[a^dag], checked
/// exactly on every monomial W of total degree <= max_degree against
/// drift * (d_a a + d_a* a*) W + diffusion * d_a d_a* W.
struct FokkerPlanckReport {
  double kappa = 0.0;
  double n_th = 0.0;
  double drift = 0.0;                  // coefficient of (d_x x + d_p p), equal in both bases
  double diffusion_complex = 0.0;      // coefficient of d_a d_a*
  double diffusion_quadrature = 0.0;   // coefficient of (d_x^2 + d_p^2) at lambda = 1
  double diffusion_quadrature_lambda2 = 0.0;  // same with a = (x + i p)/2
  bool matches_all_monomials = false;
  int monomials_checked = 0;
  bool drift_independent_of_n_th = false;
  bool hamiltonian_part_odd_only = false;  // even-order star terms cancel in {{H, W}}
};

FokkerPlanckReport lindblad_phase_space_rhs_symbols(double kappa = 1.0, double n_th = 0.0, int max_degree = 6);

}  // namespace kerrcat::phasespace
