#include "kerrcat/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <unsupported/Eigen/LevenbergMarquardt>

#include "kerrcat/error.hpp"

namespace kerrcat::fitting {

namespace {

// Parameters: offset, amplitude, omega, phase, rate.
struct DampedCosine {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  using QRSolver = Eigen::ColPivHouseholderQR<JacobianType>;

  const std::vector<double>& t;
  const std::vector<double>& y;

  int inputs() const { return 5; }
  int values() const { return static_cast<int>(t.size()); }

  int operator()(const Eigen::VectorXd& q, Eigen::VectorXd& r) const {
    for (std::size_t i = 0; i < t.size(); ++i)
      r(i) = q(0) + q(1) * std::exp(-q(4) * t[i]) * std::cos(q(2) * t[i] + q(3)) - y[i];
    return 0;
  }

  int df(const Eigen::VectorXd& q, Eigen::MatrixXd& j) const {
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double e = std::exp(-q(4) * t[i]);
      const double c = std::cos(q(2) * t[i] + q(3));
      const double s = std::sin(q(2) * t[i] + q(3));
      j(i, 0) = 1.0;
      j(i, 1) = e * c;
      j(i, 2) = -q(1) * e * s * t[i];
      j(i, 3) = -q(1) * e * s;
      j(i, 4) = -t[i] * q(1) * e * c;
    }
    return 0;
  }
};

}  // namespace

double SinusoidFit::decay_time() const {
  return rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
}

SinusoidFit fit_decaying_sinusoid(const std::vector<double>& t, const std::vector<double>& y) {
  require(t.size() == y.size() && t.size() >= 6, ErrorCode::InvalidArgument, "sinusoid fit needs >= 6 samples");
  const std::size_t n = t.size();
  const double span = t.back() - t.front();
  require(span > 0.0, ErrorCode::InvalidArgument, "sample times must increase");
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(n);

  // Fourier scan on a grid four times finer than the natural resolution.
  const double dt = span / static_cast<double>(n - 1);
  const double omega_max = std::numbers::pi / dt;
  const double step = 2.0 * std::numbers::pi / span / 4.0;
  double best_omega = 0.0, best_power = -1.0;
  for (double w = 0.0; w <= omega_max; w += step) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += (y[i] - mean) * std::polar(1.0, -w * t[i]);
    if (std::norm(acc) > best_power) {
      best_power = std::norm(acc);
      best_omega = w;
    }
  }
  double amp = 0.0;
  for (double v : y) amp = std::max(amp, std::abs(v - mean));

  SinusoidFit best;
  double best_cost = std::numeric_limits<double>::infinity();
  // Several phase seeds guard against the optimizer locking onto a wrong branch.
  for (double phase0 : {0.0, 0.5 * std::numbers::pi, std::numbers::pi, 1.5 * std::numbers::pi}) {
    Eigen::VectorXd q(5);
    q << mean, amp, best_omega, phase0, 0.0;
    DampedCosine f{t, y};
    Eigen::LevenbergMarquardt<DampedCosine> lm(f);
    lm.setMaxfev(2000);
    lm.setXtol(1e-12);
    lm.setFtol(1e-12);
    const auto status = lm.minimize(q);
    Eigen::VectorXd r(n);
    f(q, r);
    const double cost = r.squaredNorm();
    if (cost < best_cost) {
      best_cost = cost;
      best.offset = q(0);
      best.amplitude = q(1);
      best.omega = q(2);
      best.phase = q(3);
      best.rate = q(4);
      best.rms = std::sqrt(cost / static_cast<double>(n));
      best.converged = status != Eigen::LevenbergMarquardtSpace::ImproperInputParameters &&
                       status != Eigen::LevenbergMarquardtSpace::TooManyFunctionEvaluation;
    }
  }
  // Canonical form: positive amplitude and frequency.
  if (best.omega < 0.0) {
    best.omega = -best.omega;
    best.phase = -best.phase;
  }
  if (best.amplitude < 0.0) {
    best.amplitude = -best.amplitude;
    best.phase += std::numbers::pi;
  }
  best.phase = std::remainder(best.phase, 2.0 * std::numbers::pi);
  return best;
}

ExponentialFit fit_exponential_window(const std::vector<double>& t, const std::vector<double>& y, double lo,
                                      double hi) {
  require(t.size() == y.size() && !t.empty(), ErrorCode::InvalidArgument, "exponential fit needs samples");
  require(0.0 < lo && lo < hi, ErrorCode::InvalidArgument, "fit window must satisfy 0 < lo < hi");
  ExponentialFit fit;
  const double ref = y.front();
  require(ref > 0.0, ErrorCode::InvalidArgument, "exponential fit needs a positive initial value");
  double st = 0, sy = 0, stt = 0, sty = 0;
  int m = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (y[i] < lo * ref || y[i] > hi * ref) continue;
    const double ly = std::log(y[i]);
    st += t[i];
    sy += ly;
    stt += t[i] * t[i];
    sty += t[i] * ly;
    ++m;
  }
  fit.points = m;
  if (m < 2) return fit;
  const double den = m * stt - st * st;
  if (den <= 0.0) return fit;
  const double slope = (m * sty - st * sy) / den;
  const double intercept = (sy - slope * st) / m;
  if (slope >= 0.0) return fit;
  fit.y0 = std::exp(intercept);
  fit.time_constant = -1.0 / slope;
  fit.resolved = true;
  return fit;
}

}  // namespace kerrcat::fitting
