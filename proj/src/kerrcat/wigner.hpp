#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kerrcat/fock.hpp"

namespace kerrcat {

/// Square grid centred on the origin. half_width <= 0 selects
/// 2 (sqrt(2 <n> + 1) + 2) from the state's mean photon number.
struct WignerGridSpec {
  int nx = 201;
  int np = 201;
  double half_width = 0.0;
};

/// W(x, p) sampled on a uniform grid; values(i, j) sits at (x[i], p[j]).
struct WignerGrid {
  std::vector<double> x;
  std::vector<double> p;
  RealMatrix values;
  double cell_area = 0.0;

  double normalization() const;
  /// 2 pi sum W^2 dA, equal to the purity for hbar = 1.
  double purity_integral() const;
  double min_value() const;
  double max_value() const;

  /// Header "x,p,w", x outer and p inner.
  std::string to_csv() const;
  nlohmann::ordered_json to_json(const nlohmann::ordered_json& metadata = nlohmann::ordered_json::object()) const;
};

namespace phasespace {

/// (1/pi) Tr[rho D(2 alpha) Pi] with alpha = (x + i p)/sqrt2, using closed-form
/// matrix elements of the displacement operator. Throws TruncationRisk when
/// the grid half-width is below 1.5 sqrt(2 <n> + 1).
WignerGrid wigner_function(const StateVector& state, const WignerGridSpec& spec = {}, unsigned threads = 0);
WignerGrid wigner_function(const ComplexMatrix& rho, const WignerGridSpec& spec = {}, unsigned threads = 0);

/// Single point, same convention.
double wigner_at(const ComplexMatrix& rho, double x, double p);

/// <m| D(beta) |n> for all m, n < dim.
ComplexMatrix displacement_elements(std::complex<double> beta, int dim);

}  // namespace phasespace
}  // namespace kerrcat
