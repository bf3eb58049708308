#include "kerrcat/semiclassical.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "kerrcat/error.hpp"

namespace kerrcat::semiclassical {

namespace {

void check(double delta, double eps2, double kerr) {
  require(std::isfinite(delta) && std::isfinite(eps2) && std::isfinite(kerr), ErrorCode::InvalidArgument,
          "parameters must be finite");
  require(kerr > 0.0, ErrorCode::InvalidArgument, "kerr must be positive");
  require(eps2 >= 0.0, ErrorCode::InvalidArgument, "eps2 must be non-negative");
}

// cos(pi u / 2), exactly zero at odd integers u.
double cos_half_pi(double u) {
  double r = std::fmod(u, 4.0);
  if (r < 0) r += 4.0;
  if (r == 1.0 || r == 3.0) return 0.0;
  return std::cos(0.5 * std::numbers::pi * r);
}

}  // namespace

const char* to_string(PhaseRegion region) noexcept {
  switch (region) {
    case PhaseRegion::SingleNode: return "single-node";
    case PhaseRegion::DoubleNode: return "double-node";
    case PhaseRegion::TripleNode: return "triple-node";
  }
  return "unknown";
}

PhaseRegion classify_phase(double delta, double eps2) {
  require(std::isfinite(delta) && std::isfinite(eps2), ErrorCode::InvalidArgument, "parameters must be finite");
  require(eps2 >= 0.0, ErrorCode::InvalidArgument, "eps2 must be non-negative");
  if (delta < -2.0 * eps2) return PhaseRegion::SingleNode;
  if (delta < 2.0 * eps2) return PhaseRegion::DoubleNode;
  return PhaseRegion::TripleNode;
}

double metapotential_classical(double x, double p, double delta, double eps2, double kerr) {
  const double r2 = x * x + p * p;
  if (r2 == 0.0) return 0.0;
  const double cos2 = (x * x - p * p) / r2;
  return 0.5 * delta * r2 - 0.25 * kerr * r2 * r2 + eps2 * r2 * cos2;
}

void metapotential_gradient(double x, double p, double delta, double eps2, double kerr, double& gx, double& gp) {
  const double r2 = x * x + p * p;
  gx = delta * x - kerr * r2 * x + 2.0 * eps2 * x;
  gp = delta * p - kerr * r2 * p - 2.0 * eps2 * p;
}

double double_node_area(double delta, double eps2, double kerr) {
  check(delta, eps2, kerr);
  require(eps2 > 0.0 && std::abs(delta) <= 2.0 * eps2, ErrorCode::Domain, "double-node area needs |D| <= 2 e2");
  const double u = delta / (2.0 * eps2);
  return (delta / kerr) * std::acos(-u) + (2.0 * eps2 / kerr) * std::sqrt(std::max(0.0, 1.0 - u * u));
}

double triple_node_area(double delta, double eps2, double kerr) {
  check(delta, eps2, kerr);
  require(eps2 > 0.0 && delta >= 2.0 * eps2, ErrorCode::Domain, "triple-node area needs D >= 2 e2");
  return (4.0 * eps2 / kerr) * std::sqrt(delta / (2.0 * eps2) - 1.0) +
         (2.0 * delta / kerr) * std::asin(std::sqrt(2.0 * eps2 / delta));
}

double separatrix_area(double delta, double eps2, double kerr) {
  check(delta, eps2, kerr);
  if (eps2 == 0.0) return 0.0;
  switch (classify_phase(delta, eps2)) {
    case PhaseRegion::SingleNode: return 0.0;
    case PhaseRegion::DoubleNode: return double_node_area(delta, eps2, kerr);
    case PhaseRegion::TripleNode: return triple_node_area(delta, eps2, kerr);
  }
  return 0.0;
}

MetapotentialGeometry geometry(double delta, double eps2, double kerr) {
  check(delta, eps2, kerr);
  MetapotentialGeometry g;
  g.region = classify_phase(delta, eps2);
  if (g.region == PhaseRegion::SingleNode) return g;
  const double plus = delta + 2.0 * eps2;
  g.node_distance = 2.0 * std::sqrt(plus / kerr);
  g.node_depth = plus * plus / (4.0 * kerr);
  if (g.region == PhaseRegion::TripleNode) {
    const double minus = delta - 2.0 * eps2;
    g.saddle_distance = 2.0 * std::sqrt(minus / kerr);
    g.saddle_depth = minus * minus / (4.0 * kerr);
    g.barrier_height = 2.0 * delta * eps2 / kerr;
  } else {
    g.barrier_height = g.node_depth;
  }
  g.separatrix_area = separatrix_area(delta, eps2, kerr);
  return g;
}

EbkCount ebk_bound_state_count(double delta, double eps2, double kerr) {
  check(delta, eps2, kerr);
  EbkCount c;
  c.region = classify_phase(delta, eps2);
  const double pi = std::numbers::pi;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  c.n_double_branch = std::abs(delta) <= 2.0 * eps2 ? delta / (2.0 * kerr) + eps2 / (pi * kerr) - 0.5 : nan;
  c.n_triple_branch = delta >= 0.0 ? std::sqrt(8.0 * eps2 * delta) / (kerr * pi) - 0.5 : nan;
  switch (c.region) {
    case PhaseRegion::SingleNode: c.n = -0.5; break;
    case PhaseRegion::DoubleNode: c.n = c.n_double_branch; break;
    case PhaseRegion::TripleNode: c.n = c.n_triple_branch; break;
  }
  c.boundary = eps2 > 0.0 && delta == 2.0 * eps2;
  c.n_area = separatrix_area(delta, eps2, kerr) / (2.0 * pi) - 0.5;
  c.excited_count = static_cast<int>(std::floor(std::max(c.n, 0.0)));
  c.excited_count_area = static_cast<int>(std::floor(std::max(c.n_area, 0.0)));
  c.in_well_pairs = c.excited_count + 1;
  return c;
}

double wkb_exponent(double delta, double eps2, double kerr) {
  check(delta, eps2, kerr);
  require(delta > 0.0 && eps2 > 0.0, ErrorCode::Domain, "WKB splitting needs D > 0 and e2 > 0");
  const double ratio = 2.0 * eps2 / delta;
  return (2.0 * eps2 / kerr) * std::sqrt(delta / (2.0 * eps2) + 1.0) +
         (delta / kerr) * std::log(std::sqrt(ratio) + std::sqrt(1.0 + ratio));
}

double wkb_splitting(double delta, double eps2, double kerr) {
  const double a = wkb_exponent(delta, eps2, kerr);
  const double c = cos_half_pi(delta / kerr - 1.0);
  if (c == 0.0) return 0.0;
  const double s = 4.0 * eps2 / kerr;
  const double f = 2.0 * s * s * std::sqrt(kerr / (std::numbers::pi * delta)) *
                   std::pow(1.0 + delta / (2.0 * eps2), 1.25);
  return f * c * std::exp(-a);
}

double classical_limit_lambda(double eps2, double kerr) {
  require(eps2 > 0.0 && kerr > 0.0, ErrorCode::Domain, "classical-limit scale needs e2 > 0 and K > 0");
  return kerr / (2.0 * eps2);
}

PhasePoint rescale_quadratures(PhasePoint point, double from_lambda, double to_lambda) {
  require(from_lambda > 0.0 && to_lambda > 0.0, ErrorCode::InvalidArgument, "lambda must be positive");
  const double s = std::sqrt(to_lambda / from_lambda);
  return {point.x * s, point.p * s};
}

}  // namespace kerrcat::semiclassical
