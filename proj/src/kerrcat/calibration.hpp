#pragma once

namespace kerrcat {

/// Squeeze-drive calibration from the Rabi frequency of a weak X drive.
struct Calibration {
  double omega_x = 0.0;
  double eps_x = 0.0;
  double kerr = 1.0;
  double alpha0_sq = 0.0;  // Omega_x^2 / (16 eps_x^2)
  double eps2 = 0.0;       // K |alpha_0|^2
};

/// Throws InvalidArgument unless omega_x >= 0, eps_x > 0 and kerr > 0.
Calibration calibrate(double omega_x, double eps_x, double kerr = 1.0);

}  // namespace kerrcat
