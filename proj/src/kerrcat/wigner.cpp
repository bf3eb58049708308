#include "kerrcat/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kerrcat/error.hpp"
#include "kerrcat/parallel.hpp"
#include "kerrcat/sweep.hpp"

namespace kerrcat {

double WignerGrid::normalization() const { return values.sum() * cell_area; }
double WignerGrid::purity_integral() const { return 2.0 * std::numbers::pi * values.array().square().sum() * cell_area; }
double WignerGrid::min_value() const { return values.minCoeff(); }
double WignerGrid::max_value() const { return values.maxCoeff(); }

std::string WignerGrid::to_csv() const {
  std::string out = "x,p,w\n";
  out.reserve(x.size() * p.size() * 40);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      out += format_number(x[i]) + "," + format_number(p[j]) + "," + format_number(values(i, j)) + "\n";
  return out;
}

nlohmann::ordered_json WignerGrid::to_json(const nlohmann::ordered_json& metadata) const {
  nlohmann::ordered_json j;
  j["metadata"] = metadata;
  j["grid"] = {{"nx", x.size()}, {"np", p.size()},
               {"x_min", x.front()}, {"x_max", x.back()}, {"p_min", p.front()}, {"p_max", p.back()},
               {"cell_area", cell_area}, {"normalization", normalization()}};
  j["x"] = x;
  j["p"] = p;
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    std::vector<double> row(values.cols());
    for (Eigen::Index k = 0; k < values.cols(); ++k) row[k] = values(i, k);
    rows.push_back(row);
  }
  j["w"] = std::move(rows);
  return j;
}

namespace phasespace {

namespace {

// Normalized associated Laguerre values f_n^(k)(s) =
// sqrt(n!/(n+k)!) s^(k/2) exp(-s/2) L_n^(k)(s) for n + k < dim, stored by k.
class LaguerreTable {
 public:
  LaguerreTable(double s, int dim);
  double operator()(int k, int n) const { return data_[offset_[k] + n]; }

 private:
  std::vector<double> data_;
  std::vector<std::size_t> offset_;
};

LaguerreTable::LaguerreTable(double s, int dim) : data_(static_cast<std::size_t>(dim) * (dim + 1) / 2), offset_(dim) {
  std::size_t at = 0;
  for (int k = 0; k < dim; ++k) {
    const int len = dim - k;
    offset_[k] = at;
    double* row = data_.data() + at;
    at += len;
    if (k == 0)
      row[0] = std::exp(-0.5 * s);
    else
      row[0] = s > 0.0 ? std::exp(0.5 * k * std::log(s) - 0.5 * s - 0.5 * std::lgamma(k + 1.0)) : 0.0;
    if (len > 1) row[1] = (1.0 + k - s) * row[0] / std::sqrt(1.0 + k);
    for (int n = 1; n + 1 < len; ++n)
      row[n + 1] = ((2.0 * n + 1.0 + k - s) * row[n] - std::sqrt(n * (n + static_cast<double>(k))) * row[n - 1]) /
                   std::sqrt((n + 1.0) * (n + k + 1.0));
  }
}

// Index past the last Fock level with population above 1e-20; the rest of
// the density matrix cannot contribute at double precision.
int effective_dimension(const ComplexMatrix& rho) {
  int d = static_cast<int>(rho.rows());
  while (d > 2 && std::abs(rho(d - 1, d - 1)) < 1e-20) --d;
  return d;
}

double parity_trace(const ComplexMatrix& rho, int dim, std::complex<double> beta) {
  const LaguerreTable f(std::norm(beta), dim);
  const double phi = std::arg(beta);
  // Tr[rho D Pi] = sum_{m,n} rho(n,m) D(m,n) (-1)^n
  std::complex<double> sum = 0.0;
  for (int k = 0; k < dim; ++k) {
    const std::complex<double> up = std::polar(1.0, k * phi);
    const std::complex<double> down = (k % 2 == 0 ? 1.0 : -1.0) * std::conj(up);
    for (int n = 0; n + k < dim; ++n) {
      const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;
      // m = n + k, element D(m, n)
      sum += rho(n, n + k) * f(k, n) * up * sign_n;
      if (k > 0) {
        // m = n, column n + k: D(n, n+k) = f(k, n) (-1)^k e^{-ik phi}, parity of n + k
        const double sign_nk = ((n + k) % 2 == 0) ? 1.0 : -1.0;
        sum += rho(n + k, n) * f(k, n) * down * sign_nk;
      }
    }
  }
  return sum.real();
}

}  // namespace

ComplexMatrix displacement_elements(std::complex<double> beta, int dim) {
  require(dim >= 1, ErrorCode::InvalidDimension, "dim must be positive");
  const LaguerreTable f(std::norm(beta), dim);
  const double phi = std::arg(beta);
  ComplexMatrix d(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const std::complex<double> up = std::polar(1.0, k * phi);
    const std::complex<double> down = (k % 2 == 0 ? 1.0 : -1.0) * std::conj(up);
    for (int n = 0; n + k < dim; ++n) {
      d(n + k, n) = f(k, n) * up;
      d(n, n + k) = f(k, n) * down;
    }
  }
  return d;
}

double wigner_at(const ComplexMatrix& rho, double x, double p) {
  const std::complex<double> beta = std::sqrt(2.0) * std::complex<double>(x, p);
  return parity_trace(rho, effective_dimension(rho), beta) / std::numbers::pi;
}

WignerGrid wigner_function(const ComplexMatrix& rho, const WignerGridSpec& spec, unsigned threads) {
  require(rho.rows() == rho.cols() && rho.rows() >= 2, ErrorCode::InvalidDimension, "density matrix must be square");
  require(spec.nx >= 2 && spec.np >= 2, ErrorCode::InvalidArgument, "grid needs at least 2 points per axis");
  const std::complex<double> tr = rho.trace();
  require(std::abs(tr - 1.0) < 1e-8, ErrorCode::InvalidArgument, "state is not normalized");
  const int dim = static_cast<int>(rho.rows());
  double mean_n = 0.0;
  for (int n = 0; n < dim; ++n) mean_n += n * rho(n, n).real();
  const double support = std::sqrt(2.0 * mean_n + 1.0);
  const double half = spec.half_width > 0.0 ? spec.half_width : 2.0 * (support + 2.0);
  require(half >= 1.5 * support, ErrorCode::TruncationRisk,
          "grid half-width " + format_number(half) + " is below 1.5 times the state support " + format_number(support));

  WignerGrid g;
  g.x.resize(spec.nx);
  g.p.resize(spec.np);
  const double dx = 2.0 * half / (spec.nx - 1);
  const double dp = 2.0 * half / (spec.np - 1);
  for (int i = 0; i < spec.nx; ++i) g.x[i] = -half + i * dx;
  for (int j = 0; j < spec.np; ++j) g.p[j] = -half + j * dp;
  g.cell_area = dx * dp;
  g.values.resize(spec.nx, spec.np);
  const int effective = effective_dimension(rho);
  parallel_for(static_cast<std::size_t>(spec.nx), threads, [&](std::size_t i) {
    for (int j = 0; j < spec.np; ++j) {
      const std::complex<double> beta = std::sqrt(2.0) * std::complex<double>(g.x[i], g.p[j]);
      g.values(static_cast<Eigen::Index>(i), j) = parity_trace(rho, effective, beta) / std::numbers::pi;
    }
  });
  return g;
}

WignerGrid wigner_function(const StateVector& state, const WignerGridSpec& spec, unsigned threads) {
  require(std::abs(state.norm() - 1.0) < 1e-8, ErrorCode::InvalidArgument, "state is not normalized");
  return wigner_function(ComplexMatrix(state * state.adjoint()), spec, threads);
}

}  // namespace phasespace
}  // namespace kerrcat
