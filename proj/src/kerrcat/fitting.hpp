#pragma once

#include <vector>

namespace kerrcat::fitting {

/// y = offset + amplitude exp(-rate t) cos(omega t + phase).
struct SinusoidFit {
  double offset = 0.0;
  double amplitude = 0.0;
  double omega = 0.0;
  double phase = 0.0;
  double rate = 0.0;
  double rms = 0.0;
  bool converged = false;

  double decay_time() const;  // 1/rate, infinity when the rate vanishes
};

/// Least-squares fit of a damped cosine. The frequency is seeded by the peak
/// of a discrete Fourier scan of the mean-removed samples (a zero-frequency
/// peak yields omega = 0). Requires at least 6 samples.
SinusoidFit fit_decaying_sinusoid(const std::vector<double>& t, const std::vector<double>& y);

/// y = y0 exp(-t / time_constant), fitted as a line through log y over the
/// samples with y in [lo, hi] * y[0].
struct ExponentialFit {
  double y0 = 0.0;
  double time_constant = 0.0;
  int points = 0;
  bool resolved = false;  // at least two samples inside the window
};

ExponentialFit fit_exponential_window(const std::vector<double>& t, const std::vector<double>& y, double lo,
                                      double hi);

}  // namespace kerrcat::fitting
