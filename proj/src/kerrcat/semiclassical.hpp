#pragma once

#include <string>

namespace kerrcat::semiclassical {

/// Number of classical wells and saddles of the metapotential.
enum class PhaseRegion { SingleNode, DoubleNode, TripleNode };

const char* to_string(PhaseRegion region) noexcept;

/// SingleNode iff D < -2 e2; DoubleNode iff -2 e2 <= D < 2 e2; TripleNode iff D >= 2 e2.
PhaseRegion classify_phase(double delta, double eps2);

/// H_cl = D r^2/2 - K r^4/4 + e2 (x^2 - p^2) with r^2 = x^2 + p^2, in units where [x, p] = i.
double metapotential_classical(double x, double p, double delta, double eps2, double kerr = 1.0);

/// Analytic gradient of metapotential_classical.
void metapotential_gradient(double x, double p, double delta, double eps2, double kerr, double& gx, double& gp);

/// Distances are between the two nodes (on the x axis) and between the two
/// saddles (on the p axis). Depths are metapotential values relative to the
/// origin. Everything is zero in the single-node phase.
struct MetapotentialGeometry {
  PhaseRegion region = PhaseRegion::SingleNode;
  double node_distance = 0.0;
  double saddle_distance = 0.0;
  double node_depth = 0.0;
  double saddle_depth = 0.0;
  double barrier_height = 0.0;
  double separatrix_area = 0.0;
};

MetapotentialGeometry geometry(double delta, double eps2, double kerr = 1.0);

/// Phase-space area enclosed by the separatrix: the lemniscate in the
/// double-node phase and the bean between the two saddles in the triple-node
/// phase. Zero in the single-node phase.
double separatrix_area(double delta, double eps2, double kerr = 1.0);

/// Both closed forms evaluated irrespective of the phase (the triple-node one
/// needs D >= 2 e2, the double-node one |D| <= 2 e2).
double double_node_area(double delta, double eps2, double kerr = 1.0);
double triple_node_area(double delta, double eps2, double kerr = 1.0);

/// Bound states below the separatrix with Maslov index 2.
///
/// `n` is the branch formula D/2K + e2/(pi K) - 1/2 (double node) or
/// sqrt(8 e2 D)/(pi K) - 1/2 (triple node). `n_area` is area/2pi - 1/2.
/// Counts are floor(max(N, 0)) read as the highest excited in-well quantum
/// number; in_well_pairs = excited_count + 1.
struct EbkCount {
  PhaseRegion region = PhaseRegion::SingleNode;
  double n = -0.5;
  double n_area = -0.5;
  int excited_count = 0;
  int excited_count_area = 0;
  int in_well_pairs = 1;
  bool boundary = false;      // D == 2 e2, where the two branch formulas disagree
  double n_double_branch = 0.0;
  double n_triple_branch = 0.0;
};

EbkCount ebk_bound_state_count(double delta, double eps2, double kerr = 1.0);

/// Signed tunnel splitting f cos(theta) exp(-A) with theta = (pi/2)(D/K - 1).
/// Exactly zero at even D/K. Throws Domain unless D > 0 and e2 > 0.
double wkb_splitting(double delta, double eps2, double kerr = 1.0);

/// The WKB exponent A.
double wkb_exponent(double delta, double eps2, double kerr = 1.0);

/// lambda = K / 2 e2, the phase-space scale of the classical-limit frame.
double classical_limit_lambda(double eps2, double kerr = 1.0);

/// Quadratures scale as sqrt(lambda) at fixed operator a = (x + i p)/sqrt(2 lambda).
struct PhasePoint {
  double x = 0.0;
  double p = 0.0;
};
PhasePoint rescale_quadratures(PhasePoint point, double from_lambda, double to_lambda);

}  // namespace kerrcat::semiclassical
