#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace kerrcat {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using StateVector = Eigen::VectorXcd;
using SparseRealMatrix = Eigen::SparseMatrix<double>;

/// Model specification for H = D a^dag a - K a^dag2 a^2 + e2 (a^dag2 + a^2) + e4 (a^dag4 + a^4).
///
/// Energies are in units of `kerr` when kerr = 1 (hbar = 1). A zero `dim`
/// selects default_dimension() at construction time.
struct HamiltonianParams {
  double delta = 0.0;
  double kerr = 1.0;
  double eps2 = 0.0;
  double eps4 = 0.0;
  int dim = 0;

  /// Throws InvalidArgument / InvalidDimension.
  void validate() const;
  /// dim if set, otherwise default_dimension(delta, kerr, eps2).
  int resolved_dim() const;
};

/// max(60, ceil(10 (D/K + 2 e2/K))).
int default_dimension(double delta, double kerr, double eps2);

namespace fock {

RealMatrix annihilation(int dim);
RealMatrix creation(int dim);
RealMatrix number(int dim);
RealMatrix parity_operator(int dim);

RealMatrix build_hamiltonian(const HamiltonianParams& params);

/// Same operator as build_hamiltonian in compressed storage; used by the
/// master-equation right-hand side where H is banded.
SparseRealMatrix build_sparse_hamiltonian(const HamiltonianParams& params);

/// D(alpha) = exp(alpha a^dag - conj(alpha) a) truncated to dim levels.
/// Requires |alpha|^2 <= dim / 4.
ComplexMatrix displacement_operator(std::complex<double> alpha, int dim);

/// Amplitudes exp(-|alpha|^2/2) alpha^n / sqrt(n!) for n < dim.
StateVector coherent_state(std::complex<double> alpha, int dim);

/// D(alpha) H D^dag(alpha) for real alpha, built term by term in the Fock
/// basis with the scalar displaced_frame_offset() removed. Requires eps4 = 0.
/// At alpha = sqrt(e2/K) the a^dag2 + a^2 term cancels and the matrix is
/// tridiagonal.
RealMatrix displaced_hamiltonian(const HamiltonianParams& params, double alpha);

/// D alpha^2 - K alpha^4 + 2 e2 alpha^2, the scalar dropped by
/// displaced_hamiltonian.
double displaced_frame_offset(const HamiltonianParams& params, double alpha);

}  // namespace fock
}  // namespace kerrcat
