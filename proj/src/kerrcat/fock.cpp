#include "kerrcat/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "kerrcat/error.hpp"
#include "kerrcat/linalg.hpp"

namespace kerrcat {

void HamiltonianParams::validate() const {
  require(std::isfinite(delta) && std::isfinite(kerr) && std::isfinite(eps2) && std::isfinite(eps4),
          ErrorCode::InvalidArgument, "Hamiltonian parameters must be finite");
  require(kerr > 0.0, ErrorCode::InvalidArgument, "kerr must be positive");
  require(dim == 0 || dim >= 4, ErrorCode::InvalidDimension,
          "truncation dimension must be at least 4, got " + std::to_string(dim));
}

int HamiltonianParams::resolved_dim() const { return dim > 0 ? dim : default_dimension(delta, kerr, eps2); }

int default_dimension(double delta, double kerr, double eps2) {
  const double scale = 10.0 * (delta / kerr + 2.0 * std::abs(eps2) / kerr);
  return std::max(60, static_cast<int>(std::ceil(scale)));
}

namespace fock {

RealMatrix annihilation(int dim) {
  require(dim >= 2, ErrorCode::InvalidDimension, "ladder operators need dim >= 2");
  RealMatrix a = RealMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

RealMatrix creation(int dim) { return annihilation(dim).transpose(); }

RealMatrix number(int dim) {
  require(dim >= 1, ErrorCode::InvalidDimension, "dim must be positive");
  RealMatrix n = RealMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = k;
  return n;
}

RealMatrix parity_operator(int dim) {
  require(dim >= 1, ErrorCode::InvalidDimension, "dim must be positive");
  RealMatrix p = RealMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return p;
}

namespace {

// <n+s| (a^dag)^s |n> = sqrt((n+1)...(n+s))
double raising_element(int n, int s) {
  double v = 1.0;
  for (int j = 1; j <= s; ++j) v *= std::sqrt(static_cast<double>(n + j));
  return v;
}

std::vector<Eigen::Triplet<double>> hamiltonian_triplets(const HamiltonianParams& p, int dim) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(dim) * 5);
  for (int n = 0; n < dim; ++n) {
    const double diag = p.delta * n - p.kerr * n * (n - 1.0);
    if (diag != 0.0) t.emplace_back(n, n, diag);
    if (p.eps2 != 0.0 && n + 2 < dim) {
      const double v = p.eps2 * raising_element(n, 2);
      t.emplace_back(n + 2, n, v);
      t.emplace_back(n, n + 2, v);
    }
    if (p.eps4 != 0.0 && n + 4 < dim) {
      const double v = p.eps4 * raising_element(n, 4);
      t.emplace_back(n + 4, n, v);
      t.emplace_back(n, n + 4, v);
    }
  }
  return t;
}

}  // namespace

RealMatrix build_hamiltonian(const HamiltonianParams& params) {
  params.validate();
  const int dim = params.resolved_dim();
  RealMatrix h = RealMatrix::Zero(dim, dim);
  for (const auto& t : hamiltonian_triplets(params, dim)) h(t.row(), t.col()) += t.value();
  return h;
}

SparseRealMatrix build_sparse_hamiltonian(const HamiltonianParams& params) {
  params.validate();
  const int dim = params.resolved_dim();
  const auto t = hamiltonian_triplets(params, dim);
  SparseRealMatrix h(dim, dim);
  h.setFromTriplets(t.begin(), t.end());
  return h;
}

ComplexMatrix displacement_operator(std::complex<double> alpha, int dim) {
  require(dim >= 2, ErrorCode::InvalidDimension, "displacement needs dim >= 2");
  require(std::isfinite(alpha.real()) && std::isfinite(alpha.imag()), ErrorCode::InvalidArgument,
          "alpha must be finite");
  require(std::norm(alpha) <= dim / 4.0, ErrorCode::TruncationRisk,
          "|alpha|^2 exceeds dim/4; increase the truncation dimension");
  const ComplexMatrix a = annihilation(dim).cast<std::complex<double>>();
  const ComplexMatrix generator = alpha * a.adjoint() - std::conj(alpha) * a;
  return linalg::expm_taylor(generator, 1e-12);
}

StateVector coherent_state(std::complex<double> alpha, int dim) {
  require(dim >= 1, ErrorCode::InvalidDimension, "dim must be positive");
  StateVector v(dim);
  std::complex<double> amp = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < dim; ++n) {
    v(n) = amp;
    amp *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return v;
}

RealMatrix displaced_hamiltonian(const HamiltonianParams& params, double alpha) {
  params.validate();
  require(params.eps4 == 0.0, ErrorCode::InvalidArgument, "displaced_hamiltonian requires eps4 = 0");
  require(std::isfinite(alpha), ErrorCode::InvalidArgument, "alpha must be finite");
  const int dim = params.resolved_dim();
  const double k = params.kerr;
  const double a2 = alpha * alpha;
  // a -> a - alpha expanded in normal order:
  //   -K a^dag2 a^2 + (D - 4K alpha^2) n + 2K alpha (a^dag n + n a)
  //   + (e2 - K alpha^2)(a^dag2 + a^2) + (2K alpha^3 - D alpha - 2 e2 alpha)(a^dag + a)
  const double linear = 2.0 * k * a2 * alpha - params.delta * alpha - 2.0 * params.eps2 * alpha;
  const double quad = params.eps2 - k * a2;
  RealMatrix h = RealMatrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    h(n, n) = -k * n * (n - 1.0) + (params.delta - 4.0 * k * a2) * n;
    if (n + 1 < dim) {
      const double v = (2.0 * k * alpha * n + linear) * std::sqrt(n + 1.0);
      h(n + 1, n) = v;
      h(n, n + 1) = v;
    }
    if (n + 2 < dim && quad != 0.0) {
      const double v = quad * raising_element(n, 2);
      h(n + 2, n) = v;
      h(n, n + 2) = v;
    }
  }
  return h;
}

double displaced_frame_offset(const HamiltonianParams& params, double alpha) {
  const double a2 = alpha * alpha;
  return params.delta * a2 - params.kerr * a2 * a2 + 2.0 * params.eps2 * a2;
}

}  // namespace fock
}  // namespace kerrcat
