#pragma once

#include "kerrcat/fock.hpp"

namespace kerrcat::linalg {

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
/// The series stops once a term's 1-norm drops below `tolerance` times the
/// running sum's.
ComplexMatrix expm_taylor(const ComplexMatrix& a, double tolerance = 1e-12);

/// max |M - M^dag| / max(1, max |M|).
double hermiticity_defect(const ComplexMatrix& m);
double symmetry_defect(const RealMatrix& m);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace kerrcat::linalg
