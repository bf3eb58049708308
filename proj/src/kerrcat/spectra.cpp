#include "kerrcat/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "kerrcat/error.hpp"
#include "kerrcat/linalg.hpp"
#include "kerrcat/parallel.hpp"

namespace kerrcat::spectra {

namespace {

constexpr double kParityTolerance = 1e-6;
constexpr double kClusterTolerance = 1e-8;

template <typename Matrix>
bool couples_only_equal_parity(const Matrix& h) {
  for (Eigen::Index j = 0; j < h.cols(); ++j)
    for (Eigen::Index i = (j + 1) % 2; i < h.rows(); i += 2)
      if (h(i, j) != typename Matrix::Scalar(0)) return false;
  return true;
}

template <typename Matrix>
Matrix parity_block(const Matrix& h, int parity_offset) {
  const Eigen::Index n = (h.rows() - parity_offset + 1) / 2;
  Matrix b(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) b(i, j) = h(2 * i + parity_offset, 2 * j + parity_offset);
  return b;
}

struct Level {
  double energy;
  int parity;
  Eigen::Index column;
};

// Merges block solutions into one descending list. Exact ties put the even
// level first so that the order is reproducible.
void sort_levels(std::vector<Level>& levels) {
  std::stable_sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) {
    if (a.energy != b.energy) return a.energy > b.energy;
    return a.parity > b.parity;
  });
}

template <typename Matrix>
EigenSystem solve_blocks(const Matrix& h) {
  const int dim = static_cast<int>(h.rows());
  ComplexMatrix vectors = ComplexMatrix::Zero(dim, dim);
  std::vector<Level> levels;
  levels.reserve(dim);
  Eigen::Index next_column = 0;
  for (int offset = 0; offset < 2; ++offset) {
    const Matrix block = parity_block(h, offset);
    if (block.rows() == 0) continue;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(block);
    require(solver.info() == Eigen::Success, ErrorCode::NoConvergence, "eigensolver did not converge");
    for (Eigen::Index k = 0; k < block.rows(); ++k) {
      for (Eigen::Index i = 0; i < block.rows(); ++i)
        vectors(2 * i + offset, next_column) = std::complex<double>(solver.eigenvectors()(i, k));
      levels.push_back({solver.eigenvalues()(k), offset == 0 ? 1 : -1, next_column});
      ++next_column;
    }
  }
  sort_levels(levels);
  EigenSystem es;
  es.eigenvalues.resize(dim);
  es.parities.resize(dim);
  es.eigenvectors.resize(dim, dim);
  for (int k = 0; k < dim; ++k) {
    es.eigenvalues(k) = levels[k].energy;
    es.parities[k] = levels[k].parity;
    es.eigenvectors.col(k) = vectors.col(levels[k].column);
  }
  return es;
}

double parity_expectation(const StateVector& v) {
  double s = 0.0;
  for (Eigen::Index n = 0; n < v.size(); ++n) s += ((n % 2 == 0) ? 1.0 : -1.0) * std::norm(v(n));
  return s;
}

template <typename Matrix>
EigenSystem solve_generic(const Matrix& h, ParityMode mode) {
  const int dim = static_cast<int>(h.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  require(solver.info() == Eigen::Success, ErrorCode::NoConvergence, "eigensolver did not converge");
  EigenSystem es;
  es.eigenvalues = solver.eigenvalues().reverse();
  es.eigenvectors = solver.eigenvectors().rowwise().reverse().template cast<std::complex<double>>();
  es.parities.assign(dim, 0);

  const RealVector pi_diag = fock::parity_operator(dim).diagonal();
  int start = 0;
  while (start < dim) {
    int stop = start + 1;
    const double scale = std::max(1.0, std::abs(es.eigenvalues(start)));
    while (stop < dim && es.eigenvalues(stop - 1) - es.eigenvalues(stop) < kClusterTolerance * scale) ++stop;
    const int size = stop - start;
    bool ambiguous = false;
    for (int k = start; k < stop; ++k)
      if (std::abs(parity_expectation(es.eigenvectors.col(k))) < 1.0 - kParityTolerance) ambiguous = true;
    if (ambiguous && size > 1) {
      // Rotate the degenerate subspace onto eigenvectors of Pi.
      const ComplexMatrix v = es.eigenvectors.middleCols(start, size);
      const ComplexMatrix pi_sub = v.adjoint() * pi_diag.asDiagonal() * v;
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> rot(0.5 * (pi_sub + pi_sub.adjoint()));
      const ComplexMatrix rotated = v * rot.eigenvectors().rowwise().reverse();
      es.eigenvectors.middleCols(start, size) = rotated;
      const double mean = es.eigenvalues.segment(start, size).mean();
      es.eigenvalues.segment(start, size).setConstant(mean);
    }
    for (int k = start; k < stop; ++k) {
      const double p = parity_expectation(es.eigenvectors.col(k));
      if (std::abs(std::abs(p) - 1.0) <= kParityTolerance) {
        es.parities[k] = p > 0 ? 1 : -1;
      } else if (mode == ParityMode::Strict) {
        fail(ErrorCode::DegenerateBasis,
             "eigenvector " + std::to_string(k) + " has no definite parity (<Pi> = " + std::to_string(p) + ")");
      }
    }
    start = stop;
  }
  return es;
}

template <typename Matrix>
double residual(const Matrix& h, const EigenSystem& es) {
  require(h.rows() == es.dim(), ErrorCode::InvalidDimension, "matrix and eigensystem dimensions differ");
  const ComplexMatrix hc = h.template cast<std::complex<double>>();
  double worst = 0.0;
  for (int k = 0; k < es.dim(); ++k) {
    const StateVector v = es.eigenvectors.col(k);
    const double r = (hc * v - es.eigenvalues(k) * v).norm() / std::max(1.0, std::abs(es.eigenvalues(k)));
    worst = std::max(worst, r);
  }
  return worst;
}

double top_eigenvalue(const RealMatrix& block) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(block, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, ErrorCode::NoConvergence, "eigensolver did not converge");
  return solver.eigenvalues()(block.rows() - 1);
}

double signed_top_splitting(const HamiltonianParams& p) {
  const RealMatrix h = fock::build_hamiltonian(p);
  return top_eigenvalue(parity_block(h, 0)) - top_eigenvalue(parity_block(h, 1));
}

SplittingSweep signed_sweep(const HamiltonianParams& p0, const std::vector<double>& grid, unsigned threads) {
  p0.validate();
  require(grid.size() >= 2, ErrorCode::InvalidArgument, "sweep grid needs at least two points");
  require(std::is_sorted(grid.begin(), grid.end()), ErrorCode::InvalidArgument, "sweep grid must be sorted");
  std::vector<double> values(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    HamiltonianParams p = p0;
    p.delta = grid[i];
    values[i] = signed_top_splitting(p);
  });
  SplittingSweep out{SweepResult({"delta", "de_signed", "abs_de"}), {}};
  for (std::size_t i = 0; i < grid.size(); ++i) out.table.add_row({grid[i], values[i], std::abs(values[i])});
  out.zeros = find_zeros(grid, values, [&](double d) {
    HamiltonianParams p = p0;
    p.delta = d;
    return signed_top_splitting(p);
  });
  return out;
}

}  // namespace

EigenSystem eigensystem(const RealMatrix& h, ParityMode mode) {
  require(h.rows() == h.cols() && h.rows() > 0, ErrorCode::InvalidDimension, "eigensystem needs a square matrix");
  require(h.allFinite(), ErrorCode::InvalidArgument, "matrix has non-finite entries");
  require(linalg::symmetry_defect(h) < 1e-12, ErrorCode::NotHermitian, "matrix is not symmetric");
  if (couples_only_equal_parity(h)) return solve_blocks(h);
  return solve_generic(h, mode);
}

EigenSystem eigensystem(const ComplexMatrix& h, ParityMode mode) {
  require(h.rows() == h.cols() && h.rows() > 0, ErrorCode::InvalidDimension, "eigensystem needs a square matrix");
  require(h.allFinite(), ErrorCode::InvalidArgument, "matrix has non-finite entries");
  require(linalg::hermiticity_defect(h) < 1e-12, ErrorCode::NotHermitian, "matrix is not Hermitian");
  if (h.imag().isZero(0.0)) return eigensystem(RealMatrix(h.real()), mode);
  if (couples_only_equal_parity(h)) return solve_blocks(h);
  return solve_generic(h, mode);
}

EigenSystem solve(const HamiltonianParams& params) { return eigensystem(fock::build_hamiltonian(params)); }

double max_residual(const RealMatrix& h, const EigenSystem& es) { return residual(h, es); }
double max_residual(const ComplexMatrix& h, const EigenSystem& es) { return residual(h, es); }

std::pair<RealVector, RealVector> parity_block_eigenvalues(const RealMatrix& h) {
  auto values = [](const RealMatrix& b) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(b, Eigen::EigenvaluesOnly);
    require(solver.info() == Eigen::Success, ErrorCode::NoConvergence, "eigensolver did not converge");
    return RealVector(solver.eigenvalues().reverse());
  };
  return {values(parity_block(h, 0)), values(parity_block(h, 1))};
}

TunnelSplitting tunnel_splitting(const HamiltonianParams& params) {
  TunnelSplitting t;
  t.delta_e = signed_top_splitting(params);
  t.abs_delta_e = std::abs(t.delta_e);
  t.ground_parity = t.delta_e >= 0.0 ? 1 : -1;
  return t;
}

std::vector<LevelPair> pair_levels(const EigenSystem& es, int max_pairs) {
  const int dim = es.dim();
  if (max_pairs <= 0) max_pairs = dim / 2;
  const ComplexMatrix x = (fock::annihilation(dim) + fock::creation(dim)).cast<std::complex<double>>();
  std::vector<bool> used(dim, false);
  std::vector<LevelPair> pairs;
  for (int i = 0; i < dim && static_cast<int>(pairs.size()) < max_pairs; ++i) {
    if (used[i] || es.parities[i] == 0) continue;
    int best = -1;
    double best_overlap = -1.0;
    double first_energy = 0.0;
    for (int j = i + 1; j < dim; ++j) {
      if (used[j] || es.parities[j] != -es.parities[i]) continue;
      if (best >= 0 && first_energy - es.eigenvalues(j) > 1e-9) break;
      const double overlap = std::abs(es.eigenvectors.col(i).dot(x * es.eigenvectors.col(j)));
      if (best < 0) first_energy = es.eigenvalues(j);
      if (overlap > best_overlap) {
        best = j;
        best_overlap = overlap;
      }
    }
    if (best < 0) break;
    used[i] = used[best] = true;
    LevelPair p;
    p.even_index = es.parities[i] > 0 ? i : best;
    p.odd_index = es.parities[i] > 0 ? best : i;
    p.gap = std::abs(es.eigenvalues(i) - es.eigenvalues(best));
    pairs.push_back(p);
  }
  return pairs;
}

std::vector<double> find_zeros(const std::vector<double>& grid, const std::vector<double>& values,
                               const std::function<double(double)>& f, double tolerance, double zero_tolerance) {
  require(grid.size() == values.size(), ErrorCode::InvalidArgument, "grid and values differ in length");
  std::vector<double> zeros;
  const std::size_t n = grid.size();
  auto is_zero = [&](std::size_t i) { return std::abs(values[i]) <= zero_tolerance; };
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(i)) {
      std::size_t best = i;
      while (i + 1 < n && is_zero(i + 1)) {
        ++i;
        if (std::abs(values[i]) < std::abs(values[best])) best = i;
      }
      zeros.push_back(grid[best]);
      continue;
    }
    if (i + 1 >= n || is_zero(i + 1)) continue;
    if ((values[i] > 0) == (values[i + 1] > 0)) continue;
    double lo = grid[i], hi = grid[i + 1];
    double f_lo = values[i];
    while (hi - lo > tolerance) {
      const double mid = 0.5 * (lo + hi);
      const double f_mid = f(mid);
      if (f_mid == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((f_mid > 0) == (f_lo > 0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }
    zeros.push_back(0.5 * (lo + hi));
  }
  return zeros;
}

SplittingSweep splitting_sweep(const HamiltonianParams& p0, const std::vector<double>& delta_grid,
                               unsigned threads) {
  return signed_sweep(p0, delta_grid, threads);
}

DegeneracyReport degeneracy_check(int m, double eps2, double kerr, int dim) {
  require(m >= 0, ErrorCode::InvalidArgument, "m must be non-negative");
  HamiltonianParams p;
  p.delta = 2.0 * m * kerr;
  p.kerr = kerr;
  p.eps2 = eps2;
  p.dim = dim;
  p.validate();
  const int n = p.resolved_dim();
  require(n >= 2 * (m + 2), ErrorCode::InsufficientDimension,
          "dim " + std::to_string(n) + " cannot hold " + std::to_string(m + 2) + " level pairs");
  const EigenSystem es = solve(p);
  // Top states must not lean on the truncation edge.
  const int tail = std::max(2, n / 10);
  for (int k = 0; k < 2 * (m + 1); ++k) {
    const double w = es.eigenvectors.col(k).tail(tail).squaredNorm();
    require(w < 1e-10, ErrorCode::InsufficientDimension,
            "eigenvector " + std::to_string(k) + " has weight " + std::to_string(w) + " near the truncation edge");
  }
  const auto pairs = pair_levels(es, m + 2);
  DegeneracyReport r;
  r.m = m;
  r.eps2 = eps2;
  r.expected_pairs = m + 1;
  const double tol = 1e-8 * kerr;
  std::size_t k = 0;
  for (; k < pairs.size() && pairs[k].gap < tol; ++k) r.max_intra_gap = std::max(r.max_intra_gap, pairs[k].gap);
  r.degenerate_pairs = static_cast<int>(k);
  r.next_gap = k < pairs.size() ? pairs[k].gap : std::numeric_limits<double>::quiet_NaN();
  r.ok = r.degenerate_pairs == r.expected_pairs;
  return r;
}

ExactBlock exact_block_eigenvalues(int m, double eps2, double kerr, int dim) {
  require(m >= 0, ErrorCode::InvalidArgument, "m must be non-negative");
  require(eps2 >= 0.0, ErrorCode::InvalidArgument, "eps2 must be non-negative");
  HamiltonianParams p;
  p.delta = 2.0 * m * kerr;
  p.kerr = kerr;
  p.eps2 = eps2;
  p.dim = dim;
  p.validate();
  const double alpha = std::sqrt(eps2 / kerr);
  HamiltonianParams small = p;
  small.dim = std::max(4, m + 3);
  const RealMatrix hd = fock::displaced_hamiltonian(small, alpha);
  Eigen::SelfAdjointEigenSolver<RealMatrix> block(hd.topLeftCorner(m + 1, m + 1), Eigen::EigenvaluesOnly);
  ExactBlock out;
  out.block_eigenvalues = block.eigenvalues().reverse();
  out.offset = fock::displaced_frame_offset(p, alpha);
  out.aligned = out.block_eigenvalues.array() + out.offset;

  const auto [even, odd] = parity_block_eigenvalues(fock::build_hamiltonian(p));
  std::vector<double> all(even.data(), even.data() + even.size());
  all.insert(all.end(), odd.data(), odd.data() + odd.size());
  std::sort(all.begin(), all.end(), std::greater<>());
  const int top = std::min<int>(2 * (m + 1), static_cast<int>(all.size()));
  out.full_top = Eigen::Map<RealVector>(all.data(), top);
  for (Eigen::Index k = 0; k < out.aligned.size(); ++k) {
    std::vector<double> d(all.size());
    for (std::size_t j = 0; j < all.size(); ++j) d[j] = std::abs(all[j] - out.aligned(k));
    std::partial_sort(d.begin(), d.begin() + 2, d.end());
    out.max_mismatch = std::max(out.max_mismatch, d[1]);
  }
  return out;
}

double first_order_crossing_amplitude(int n, double eps2) {
  require(n >= 0, ErrorCode::InvalidArgument, "level index must be non-negative");
  return eps2 * std::sqrt((n + 1.0) * (n + 2.0));
}

double kerr_level(int n, const HamiltonianParams& params) {
  require(n >= 0, ErrorCode::InvalidArgument, "level index must be non-negative");
  return params.delta * n - params.kerr * n * (n - 1.0);
}

double second_order_energy(int level, const HamiltonianParams& params) {
  require(level >= 0, ErrorCode::InvalidArgument, "level index must be non-negative");
  const double l = level;
  const double up_num = (l + 1.0) * (l + 2.0);
  const double up_den = -2.0 * params.delta + 2.0 * params.kerr * (2.0 * l + 1.0);
  const double down_num = l * (l - 1.0);
  const double down_den = 2.0 * params.delta - 2.0 * params.kerr * (2.0 * l - 3.0);
  double sum = 0.0;
  for (const auto& [num, den] : {std::pair{up_num, up_den}, std::pair{down_num, down_den}}) {
    if (num == 0.0) continue;
    require(std::abs(den) >= 1e-12, ErrorCode::Pole,
            "second-order energy of level " + std::to_string(level) + " is resonant at this detuning");
    sum += num / den;
  }
  return params.eps2 * params.eps2 * sum;
}

LocalizedPair localized_pair(const EigenSystem& es, int pair_index) {
  require(pair_index >= 0, ErrorCode::InvalidArgument, "pair index must be non-negative");
  const auto pairs = pair_levels(es, pair_index + 2);
  require(pair_index < static_cast<int>(pairs.size()), ErrorCode::InvalidArgument,
          "eigensystem has fewer than " + std::to_string(pair_index + 1) + " opposite-parity pairs");
  const LevelPair& lp = pairs[pair_index];
  const int dim = es.dim();
  const ComplexMatrix x = (fock::annihilation(dim) + fock::creation(dim)).cast<std::complex<double>>();
  const StateVector plus = es.eigenvectors.col(lp.even_index);
  StateVector minus = es.eigenvectors.col(lp.odd_index);
  const std::complex<double> c = plus.dot(x * minus);
  if (std::abs(c) > 0.0) minus *= std::conj(c) / std::abs(c);

  LocalizedPair out;
  out.right = (plus + minus) / std::sqrt(2.0);
  out.left = (plus - minus) / std::sqrt(2.0);
  out.x_right = std::real(out.right.dot(x * out.right));

  // Compare the intra-pair gap against the distance to neighbouring pairs.
  double inter = std::numeric_limits<double>::infinity();
  for (int q : {pair_index - 1, pair_index + 1}) {
    if (q < 0 || q >= static_cast<int>(pairs.size())) continue;
    for (int a : {lp.even_index, lp.odd_index})
      for (int b : {pairs[q].even_index, pairs[q].odd_index})
        inter = std::min(inter, std::abs(es.eigenvalues(a) - es.eigenvalues(b)));
  }
  out.not_quasi_degenerate = lp.gap > inter;
  return out;
}

SplittingSweep quartic_drive_spectrum(const HamiltonianParams& params, const std::vector<double>& delta_grid,
                                      unsigned threads) {
  require(params.eps4 >= 0.0, ErrorCode::InvalidArgument, "eps4 must be non-negative");
  return signed_sweep(params, delta_grid, threads);
}

}  // namespace kerrcat::spectra
