#include "kerrcat/calibration.hpp"

#include <cmath>

#include "kerrcat/error.hpp"

namespace kerrcat {

Calibration calibrate(double omega_x, double eps_x, double kerr) {
  require(std::isfinite(omega_x) && omega_x >= 0.0, ErrorCode::InvalidArgument, "omega_x must be finite and >= 0");
  require(std::isfinite(eps_x) && eps_x > 0.0, ErrorCode::InvalidArgument, "eps_x must be finite and > 0");
  require(std::isfinite(kerr) && kerr > 0.0, ErrorCode::InvalidArgument, "kerr must be finite and > 0");
  Calibration c;
  c.omega_x = omega_x;
  c.eps_x = eps_x;
  c.kerr = kerr;
  c.alpha0_sq = omega_x * omega_x / (16.0 * eps_x * eps_x);
  c.eps2 = kerr * c.alpha0_sq;
  return c;
}

}  // namespace kerrcat
