#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "kerrcat/fock.hpp"
#include "kerrcat/sweep.hpp"

namespace kerrcat::spectra {

/// Eigenpairs sorted by descending energy (the wells sit at the top of the
/// spectrum, so index 0 is the ground state) with photon-number parity labels.
struct EigenSystem {
  RealVector eigenvalues;
  std::vector<int> parities;
  ComplexMatrix eigenvectors;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
  StateVector vector(int index) const { return eigenvectors.col(index); }
};

/// Signed splitting of the ground pair: (top even-parity level) - (top odd-parity level).
struct TunnelSplitting {
  double delta_e = 0.0;
  double abs_delta_e = 0.0;
  int ground_parity = 1;
};

/// Strict throws DegenerateBasis when an eigenvector has no definite parity;
/// Lenient labels it 0 instead (useful for matrices without parity symmetry).
enum class ParityMode { Strict, Lenient };

/// Parity-resolved diagonalization. Matrices that only couple equal-parity
/// Fock states are split into even and odd blocks; otherwise parities come
/// from <Pi> with degenerate clusters rotated onto Pi eigenvectors.
EigenSystem eigensystem(const RealMatrix& h, ParityMode mode = ParityMode::Strict);
EigenSystem eigensystem(const ComplexMatrix& h, ParityMode mode = ParityMode::Strict);

/// Convenience: eigensystem(build_hamiltonian(params)).
EigenSystem solve(const HamiltonianParams& params);

/// Largest ||H v - lambda v|| / max(1, |lambda|) over all pairs.
double max_residual(const RealMatrix& h, const EigenSystem& es);
double max_residual(const ComplexMatrix& h, const EigenSystem& es);

/// Eigenvalues of the even and odd parity blocks, each sorted descending.
std::pair<RealVector, RealVector> parity_block_eigenvalues(const RealMatrix& h);

TunnelSplitting tunnel_splitting(const HamiltonianParams& params);

/// Quasi-degenerate opposite-parity pair, as indices into an EigenSystem.
struct LevelPair {
  int even_index = 0;
  int odd_index = 0;
  double gap = 0.0;  // |E_even - E_odd|
};

/// Greedy pairing in descending energy: the highest unpaired level is paired
/// with the next unpaired level of opposite parity. Ties within 1e-9 are
/// broken by the largest |<even|X|odd>|.
std::vector<LevelPair> pair_levels(const EigenSystem& es, int max_pairs);

struct SplittingSweep {
  SweepResult table;          // delta, de_signed, abs_de
  std::vector<double> zeros;  // Delta values where the signed splitting vanishes
};

/// Signed splitting on a sorted Delta grid (other parameters from p0), with
/// zeros located by bisection to 1e-8 in Delta/K.
SplittingSweep splitting_sweep(const HamiltonianParams& p0, const std::vector<double>& delta_grid,
                               unsigned threads = 0);

/// Bisection refinement of sign changes of f on a sorted grid. Grid points
/// with |f| <= zero_tolerance count as zeros themselves.
/// Runs of consecutive near-zero grid points collapse to the point of
/// smallest |f|.
std::vector<double> find_zeros(const std::vector<double>& grid, const std::vector<double>& values,
                               const std::function<double(double)>& f, double tolerance = 1e-8,
                               double zero_tolerance = 1e-11);

struct DegeneracyReport {
  int m = 0;
  double eps2 = 0.0;
  int expected_pairs = 0;
  int degenerate_pairs = 0;        // leading pairs with gap < 1e-8 K and opposite parity
  double max_intra_gap = 0.0;      // over the leading degenerate pairs
  double next_gap = 0.0;           // gap of the first non-degenerate pair
  bool ok = false;
};

/// Counts exact degeneracies at Delta = 2 m K.
DegeneracyReport degeneracy_check(int m, double eps2, double kerr = 1.0, int dim = 0);

struct ExactBlock {
  RealVector block_eigenvalues;   // (m+1) eigenvalues of the decoupled displaced block, descending
  double offset = 0.0;            // scalar removed by the displacement, D a^2 - K a^4 + 2 e2 a^2
  RealVector aligned;             // block_eigenvalues + offset
  RealVector full_top;            // top 2(m+1) eigenvalues of the full Hamiltonian
  double max_mismatch = 0.0;      // worst distance of an aligned value to its two nearest full levels
};

/// Top-left (m+1) x (m+1) block of the displaced Hamiltonian at
/// Delta = 2 m K, alpha = sqrt(e2/K), aligned against the full spectrum.
ExactBlock exact_block_eigenvalues(int m, double eps2, double kerr = 1.0, int dim = 0);

/// e2 sqrt((n+1)(n+2)).
double first_order_crossing_amplitude(int n, double eps2);

/// Second-order shift of Kerr level `level` under the squeeze drive:
/// e2^2 [ (l+1)(l+2) / (-2D + 2K(2l+1)) + l(l-1) / (2D - 2K(2l-3)) ].
/// Throws Pole when a denominator with non-zero numerator vanishes.
double second_order_energy(int level, const HamiltonianParams& params);

/// Unperturbed Kerr level D n - K n (n - 1).
double kerr_level(int n, const HamiltonianParams& params);

struct LocalizedPair {
  StateVector right;
  StateVector left;
  double x_right = 0.0;   // <X> of the right state, > 0
  bool not_quasi_degenerate = false;  // pair gap exceeds the gap to the next pair
};

/// (v+ + v-)/sqrt2 and (v+ - v-)/sqrt2 for pair `pair_index`, oriented so the
/// right state has <X> > 0 with X = a + a^dag.
LocalizedPair localized_pair(const EigenSystem& es, int pair_index);

/// Signed top-pair splitting over a Delta grid with eps4 > 0, and the
/// Delta locations where even and odd top levels cross.
SplittingSweep quartic_drive_spectrum(const HamiltonianParams& params, const std::vector<double>& delta_grid,
                                      unsigned threads = 0);

}  // namespace kerrcat::spectra
