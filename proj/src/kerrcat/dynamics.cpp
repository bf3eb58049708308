#include "kerrcat/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "kerrcat/error.hpp"
#include "kerrcat/fitting.hpp"
#include "kerrcat/parallel.hpp"
#include "kerrcat/semiclassical.hpp"

namespace kerrcat::dynamics {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

// Nonzero bands of H: diag(n), H(n, n+2), H(n, n+4).
struct Bands {
  RealVector diag;
  RealVector off2;
  RealVector off4;
};

Bands make_bands(const HamiltonianParams& p, int dim) {
  Bands b;
  b.diag.resize(dim);
  b.off2 = RealVector::Zero(std::max(0, dim - 2));
  b.off4 = RealVector::Zero(std::max(0, dim - 4));
  for (int n = 0; n < dim; ++n) {
    b.diag(n) = p.delta * n - p.kerr * n * (n - 1.0);
    if (n + 2 < dim) b.off2(n) = p.eps2 * std::sqrt((n + 1.0) * (n + 2.0));
    if (n + 4 < dim) b.off4(n) = p.eps4 * std::sqrt((n + 1.0) * (n + 2.0) * (n + 3.0) * (n + 4.0));
  }
  return b;
}

// H * m for a matrix or vector m.
template <typename M>
M apply_left(const Bands& b, const M& m) {
  const Eigen::Index d = m.rows();
  M out = b.diag.asDiagonal() * m;
  if (d > 2) {
    out.topRows(d - 2) += b.off2.asDiagonal() * m.bottomRows(d - 2);
    out.bottomRows(d - 2) += b.off2.asDiagonal() * m.topRows(d - 2);
  }
  if (d > 4 && b.off4.size() > 0 && b.off4.cwiseAbs().maxCoeff() > 0.0) {
    out.topRows(d - 4) += b.off4.asDiagonal() * m.bottomRows(d - 4);
    out.bottomRows(d - 4) += b.off4.asDiagonal() * m.topRows(d - 4);
  }
  return out;
}

// m * H (H real symmetric).
ComplexMatrix apply_right(const Bands& b, const ComplexMatrix& m) {
  return apply_left(b, ComplexMatrix(m.transpose())).transpose();
}

// Dissipator constants: gain/loss rates and the diagonal decay of the anticommutator.
struct Dissipation {
  double loss = 0.0;  // kappa (1 + n)
  double gain = 0.0;  // kappa n
  RealVector sq;      // sqrt(i + 1), i < dim - 1
  RealVector gamma;   // (loss * i + gain * m_i) / 2 with m_i = i + 1 (0 on the last level)

  bool active() const { return loss != 0.0 || gain != 0.0; }
};

Dissipation make_dissipation(double kappa, double n_th, int dim) {
  Dissipation d;
  d.loss = kappa * (1.0 + n_th);
  d.gain = kappa * n_th;
  d.sq.resize(dim - 1);
  for (int i = 0; i + 1 < dim; ++i) d.sq(i) = std::sqrt(i + 1.0);
  d.gamma.resize(dim);
  for (int i = 0; i < dim; ++i) d.gamma(i) = 0.5 * (d.loss * i + d.gain * (i + 1 < dim ? i + 1.0 : 0.0));
  return d;
}

ComplexMatrix rhs(const ComplexMatrix& rho, const Bands& b, const Dissipation& dis) {
  const Eigen::Index d = rho.rows();
  ComplexMatrix out = -kI * (apply_left(b, rho) - apply_right(b, rho));
  if (!dis.active()) return out;
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) out(i, j) -= (dis.gamma(i) + dis.gamma(j)) * rho(i, j);
  if (dis.loss != 0.0)
    out.topLeftCorner(d - 1, d - 1) +=
        dis.loss * (dis.sq.asDiagonal() * rho.bottomRightCorner(d - 1, d - 1) * dis.sq.asDiagonal());
  if (dis.gain != 0.0)
    out.bottomRightCorner(d - 1, d - 1) +=
        dis.gain * (dis.sq.asDiagonal() * rho.topLeftCorner(d - 1, d - 1) * dis.sq.asDiagonal());
  return out;
}

StateVector rhs(const StateVector& psi, const Bands& b, const Dissipation&) { return -kI * apply_left(b, psi); }

// Largest commutator frequency bound (Gershgorin) plus the dissipative rate.
double spectral_width(const Bands& b, const Dissipation& dis) {
  const Eigen::Index d = b.diag.size();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (Eigen::Index n = 0; n < d; ++n) {
    double r = 0.0;
    if (n + 2 < d) r += std::abs(b.off2(n));
    if (n >= 2) r += std::abs(b.off2(n - 2));
    if (n + 4 < d) r += std::abs(b.off4(n));
    if (n >= 4) r += std::abs(b.off4(n - 4));
    lo = std::min(lo, b.diag(n) - r);
    hi = std::max(hi, b.diag(n) + r);
  }
  return (hi - lo) + 2.0 * dis.gamma.maxCoeff() + 1e-12;
}

struct Sample {
  double s, trace, purity, n, x, energy, min_eig;
};

Sample observe(const ComplexMatrix& rho, const Bands& b, const ComplexMatrix& signal) {
  const Eigen::Index d = rho.rows();
  Sample o{};
  o.trace = rho.trace().real();
  o.purity = rho.cwiseAbs2().sum();
  for (Eigen::Index i = 0; i < d; ++i) o.n += i * rho(i, i).real();
  for (Eigen::Index i = 0; i + 1 < d; ++i) o.x += 2.0 * std::sqrt(i + 1.0) * rho(i + 1, i).real();
  o.energy = apply_left(b, rho).trace().real();
  o.s = rho.cwiseProduct(signal.transpose()).sum().real();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
  o.min_eig = es.eigenvalues()(0);
  return o;
}

Sample observe(const StateVector& psi, const Bands& b, const ComplexMatrix& signal) {
  const Eigen::Index d = psi.size();
  Sample o{};
  const double norm2 = psi.squaredNorm();
  o.trace = norm2;
  o.purity = norm2 * norm2;
  for (Eigen::Index i = 0; i < d; ++i) o.n += i * std::norm(psi(i));
  cd x = 0.0;
  for (Eigen::Index i = 0; i + 1 < d; ++i) x += std::conj(psi(i + 1)) * std::sqrt(i + 1.0) * psi(i);
  o.x = 2.0 * x.real();
  o.energy = psi.dot(apply_left(b, psi)).real();
  o.s = psi.dot(signal * psi).real();
  o.min_eig = 0.0;
  return o;
}

void push(Trajectory& tr, double t, const Sample& o) {
  tr.t.push_back(t);
  tr.s.push_back(o.s);
  tr.trace.push_back(o.trace);
  tr.purity.push_back(o.purity);
  tr.n.push_back(o.n);
  tr.x.push_back(o.x);
  tr.energy.push_back(o.energy);
  tr.min_eigenvalue.push_back(o.min_eig);
}

void symmetrize(ComplexMatrix& rho) { rho = 0.5 * (rho + rho.adjoint()).eval(); }
void symmetrize(StateVector&) {}

// Fixed-step RK4; bands_at(t) supplies H at each stage time.
template <typename State, typename BandsAt>
Trajectory rk4_run(const State& initial, const BandsAt& bands_at, const Dissipation& dis, const ComplexMatrix& signal,
                   double sample_dt, int samples, int steps_per_sample) {
  const double h = sample_dt / steps_per_sample;
  Trajectory tr;
  tr.dt_used = h;
  State y = initial;
  push(tr, 0.0, observe(y, bands_at(0.0), signal));
  for (int k = 0; k < samples; ++k) {
    for (int s = 0; s < steps_per_sample; ++s) {
      const double t = k * sample_dt + s * h;
      const Bands b0 = bands_at(t);
      const Bands bh = bands_at(t + 0.5 * h);
      const Bands b1 = bands_at(t + h);
      const State k1 = rhs(y, b0, dis);
      const State k2 = rhs(State(y + 0.5 * h * k1), bh, dis);
      const State k3 = rhs(State(y + 0.5 * h * k2), bh, dis);
      const State k4 = rhs(State(y + h * k3), b1, dis);
      y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      symmetrize(y);
    }
    const double t = (k + 1) * sample_dt;
    push(tr, t, observe(y, bands_at(t), signal));
    require(std::isfinite(tr.s.back()) && std::isfinite(tr.trace.back()), ErrorCode::NoConvergence,
            "integration diverged");
  }
  return tr;
}

bool agrees(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-6 * std::max(1.0, std::abs(b[i]))) return false;
  return true;
}

double trace_drift(const Trajectory& tr) {
  double worst = 0.0;
  for (double v : tr.trace) worst = std::max(worst, std::abs(v - 1.0));
  return worst;
}

template <typename State, typename BandsAt>
Trajectory rk4_controlled(const State& initial, const BandsAt& bands_at, const Dissipation& dis,
                          const ComplexMatrix& signal, double t_final, double sample_dt, double dt0) {
  const int samples = std::max(1, static_cast<int>(std::ceil(t_final / sample_dt - 1e-9)));
  sample_dt = t_final / samples;
  int steps = std::max(1, static_cast<int>(std::ceil(sample_dt / dt0 - 1e-9)));
  Trajectory prev = rk4_run(initial, bands_at, dis, signal, sample_dt, samples, steps);
  for (int halving = 1; halving <= 12; ++halving) {
    steps *= 2;
    Trajectory cur = rk4_run(initial, bands_at, dis, signal, sample_dt, samples, steps);
    if (trace_drift(cur) < 1e-7 && agrees(prev.s, cur.s) && agrees(prev.n, cur.n)) {
      cur.halvings = halving;
      return cur;
    }
    prev = std::move(cur);
  }
  fail(ErrorCode::NoConvergence, "RK4 step control did not converge after 12 halvings");
}

EigenSystem eigensystem_for(const HamiltonianParams& p) { return spectra::solve(p); }

int resolve_pairs(const LindbladConfig& cfg) {
  return cfg.well_pairs > 0 ? cfg.well_pairs : default_well_pairs(cfg.params);
}

}  // namespace

// Configs and containers -------------------------------------------------

void LindbladConfig::validate() const {
  params.validate();
  require(std::isfinite(kappa) && kappa >= 0.0, ErrorCode::InvalidArgument, "kappa must be finite and >= 0");
  require(std::isfinite(n_th) && n_th >= 0.0, ErrorCode::InvalidArgument, "n_th must be finite and >= 0");
  require(std::isfinite(t_final) && t_final > 0.0, ErrorCode::InvalidArgument, "t_final must be positive");
  require(dt >= 0.0 && sample_dt >= 0.0, ErrorCode::InvalidArgument, "time steps must be non-negative");
  require(well_pairs >= 0, ErrorCode::InvalidArgument, "well_pairs must be non-negative");
}

std::string Trajectory::to_csv() const {
  std::string out = "t,s,tr,purity,n\n";
  for (std::size_t i = 0; i < t.size(); ++i)
    out += format_number(t[i]) + "," + format_number(s[i]) + "," + format_number(trace[i]) + "," +
           format_number(purity[i]) + "," + format_number(n[i]) + "\n";
  return out;
}

SweepResult Trajectory::to_table() const {
  SweepResult r({"t", "s", "tr", "purity", "n"});
  for (std::size_t i = 0; i < t.size(); ++i) r.add_row({t[i], s[i], trace[i], purity[i], n[i]});
  return r;
}

// Well projectors --------------------------------------------------------

int default_well_pairs(const HamiltonianParams& params) {
  const double e2 = std::abs(params.eps2);
  return std::max(1, semiclassical::ebk_bound_state_count(params.delta, e2, params.kerr).in_well_pairs);
}

WellProjectors well_projector(const EigenSystem& es, int pairs) {
  require(pairs >= 1, ErrorCode::InvalidArgument, "well projectors need at least one pair");
  const int dim = es.dim();
  ComplexMatrix right_states(dim, pairs), left_states(dim, pairs);
  const auto available = spectra::pair_levels(es, pairs);
  require(static_cast<int>(available.size()) >= pairs, ErrorCode::RankDeficient,
          "only " + std::to_string(available.size()) + " opposite-parity pairs for " + std::to_string(pairs) +
              " requested");
  for (int k = 0; k < pairs; ++k) {
    const auto lp = spectra::localized_pair(es, k);
    right_states.col(k) = lp.right;
    left_states.col(k) = lp.left;
  }
  ComplexMatrix all(dim, 2 * pairs);
  all << right_states, left_states;
  const double defect = (all.adjoint() * all - ComplexMatrix::Identity(2 * pairs, 2 * pairs)).cwiseAbs().maxCoeff();
  require(defect < 1e-8, ErrorCode::RankDeficient, "localized states are not orthonormal");
  WellProjectors w;
  w.right = right_states * right_states.adjoint();
  w.left = left_states * left_states.adjoint();
  w.pairs = pairs;
  return w;
}

double well_signal(const ComplexMatrix& rho, const WellProjectors& projectors) {
  require(rho.rows() == projectors.right.rows() && rho.cols() == rho.rows(), ErrorCode::InvalidDimension,
          "density matrix and projectors differ in dimension");
  return (rho * projectors.signal_operator()).trace().real();
}

double well_signal(const ComplexMatrix& rho, const EigenSystem& es, int pairs) {
  return well_signal(rho, well_projector(es, pairs));
}

// Master equation --------------------------------------------------------

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const HamiltonianParams& params, double kappa, double n_th) {
  params.validate();
  const int dim = params.resolved_dim();
  require(rho.rows() == dim && rho.cols() == dim, ErrorCode::InvalidDimension,
          "density matrix is " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
              ", Hamiltonian dimension is " + std::to_string(dim));
  require(kappa >= 0.0 && n_th >= 0.0, ErrorCode::InvalidArgument, "kappa and n_th must be non-negative");
  return rhs(rho, make_bands(params, dim), make_dissipation(kappa, n_th, dim));
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const LindbladConfig& cfg) {
  return lindblad_rhs(rho, cfg.params, cfg.kappa, cfg.n_th);
}

Liouvillian liouvillian(const HamiltonianParams& params, double kappa, double n_th, Sector sector) {
  params.validate();
  const int dim = params.resolved_dim();
  Liouvillian l;
  std::vector<int> index(static_cast<std::size_t>(dim) * dim, -1);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) {
      const bool odd = ((i - j) % 2) != 0;
      if (sector == Sector::Even && odd) continue;
      if (sector == Sector::Odd && !odd) continue;
      index[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * dim] = static_cast<int>(l.entries.size());
      l.entries.emplace_back(i, j);
    }
  const Bands b = make_bands(params, dim);
  const Dissipation dis = make_dissipation(kappa, n_th, dim);
  const Eigen::Index size = static_cast<Eigen::Index>(l.entries.size());
  l.matrix = ComplexMatrix::Zero(size, size);
  auto at = [&](int i, int j) { return index[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * dim]; };
  auto h = [&](int i, int k) -> double {
    const int d = std::abs(i - k);
    const int lo = std::min(i, k);
    if (d == 0) return b.diag(i);
    if (d == 2) return b.off2(lo);
    if (d == 4 && b.off4.size() > lo) return b.off4(lo);
    return 0.0;
  };
  for (Eigen::Index row = 0; row < size; ++row) {
    const auto [i, j] = l.entries[row];
    // -i (H rho - rho H)(i, j)
    for (int k = std::max(0, i - 4); k <= std::min(dim - 1, i + 4); ++k) {
      const double v = h(i, k);
      if (v != 0.0) l.matrix(row, at(k, j)) += -kI * v;
    }
    for (int k = std::max(0, j - 4); k <= std::min(dim - 1, j + 4); ++k) {
      const double v = h(k, j);
      if (v != 0.0) l.matrix(row, at(i, k)) += kI * v;
    }
    l.matrix(row, row) -= dis.gamma(i) + dis.gamma(j);
    if (dis.loss != 0.0 && i + 1 < dim && j + 1 < dim)
      l.matrix(row, at(i + 1, j + 1)) += dis.loss * std::sqrt((i + 1.0) * (j + 1.0));
    if (dis.gain != 0.0 && i >= 1 && j >= 1) l.matrix(row, at(i - 1, j - 1)) += dis.gain * std::sqrt(1.0 * i * j);
  }
  return l;
}

ComplexMatrix thermal_state(int dim, double n_th) {
  require(dim >= 1, ErrorCode::InvalidDimension, "dim must be positive");
  require(n_th >= 0.0, ErrorCode::InvalidArgument, "n_th must be non-negative");
  const double q = n_th / (1.0 + n_th);
  RealVector p(dim);
  for (int n = 0; n < dim; ++n) p(n) = std::pow(q, n);
  p /= p.sum();
  return p.cast<cd>().asDiagonal();
}

StateVector initial_state(const LindbladConfig& cfg, const EigenSystem& es) {
  const int dim = es.dim();
  switch (cfg.initial.kind) {
    case InitialKind::RightWell: return spectra::localized_pair(es, 0).right;
    case InitialKind::LeftWell: return spectra::localized_pair(es, 0).left;
    case InitialKind::Vacuum: {
      StateVector v = StateVector::Zero(dim);
      v(0) = 1.0;
      return v;
    }
    case InitialKind::Fock: {
      require(cfg.initial.fock_n >= 0 && cfg.initial.fock_n < dim, ErrorCode::InvalidArgument,
              "Fock level outside the truncation");
      StateVector v = StateVector::Zero(dim);
      v(cfg.initial.fock_n) = 1.0;
      return v;
    }
    case InitialKind::Custom: {
      require(cfg.initial.custom.size() == dim, ErrorCode::InvalidDimension, "custom state has the wrong dimension");
      require(std::abs(cfg.initial.custom.norm() - 1.0) < 1e-8, ErrorCode::InvalidArgument,
              "custom state is not normalized");
      return cfg.initial.custom;
    }
  }
  fail(ErrorCode::Internal, "unknown initial state");
}

Trajectory evolve(const LindbladConfig& cfg) {
  cfg.validate();
  const int dim = cfg.params.resolved_dim();
  const EigenSystem es = eigensystem_for(cfg.params);
  const ComplexMatrix signal = well_projector(es, resolve_pairs(cfg)).signal_operator();
  const StateVector psi0 = initial_state(cfg, es);
  const Bands bands = make_bands(cfg.params, dim);
  const Dissipation dis = make_dissipation(cfg.kappa, cfg.n_th, dim);
  const double sample_dt = cfg.sample_dt > 0.0 ? cfg.sample_dt : cfg.t_final / 200.0;
  const auto bands_at = [&](double) -> const Bands& { return bands; };

  if (cfg.method == Method::Propagator) {
    const int samples = std::max(1, static_cast<int>(std::ceil(cfg.t_final / sample_dt - 1e-9)));
    const double step = cfg.t_final / samples;
    const Liouvillian l = liouvillian(cfg.params, cfg.kappa, cfg.n_th, Sector::All);
    const ComplexMatrix u = (l.matrix * step).exp();
    ComplexMatrix rho = psi0 * psi0.adjoint();
    Eigen::VectorXcd v(l.entries.size());
    for (std::size_t k = 0; k < l.entries.size(); ++k) v(k) = rho(l.entries[k].first, l.entries[k].second);
    Trajectory tr;
    tr.dt_used = step;
    push(tr, 0.0, observe(rho, bands, signal));
    for (int k = 1; k <= samples; ++k) {
      v = u * v;
      for (std::size_t e = 0; e < l.entries.size(); ++e) rho(l.entries[e].first, l.entries[e].second) = v(e);
      push(tr, k * step, observe(rho, bands, signal));
    }
    return tr;
  }

  const double dt0 = cfg.dt > 0.0 ? cfg.dt : 0.5 / spectral_width(bands, dis);
  if (cfg.method == Method::Auto && !dis.active())
    return rk4_controlled(psi0, bands_at, dis, signal, cfg.t_final, sample_dt, dt0);
  const ComplexMatrix rho0 = psi0 * psi0.adjoint();
  return rk4_controlled(rho0, bands_at, dis, signal, cfg.t_final, sample_dt, dt0);
}

TxResult tx_lifetime(const LindbladConfig& cfg) {
  cfg.validate();
  require(cfg.kappa > 0.0, ErrorCode::InvalidArgument, "T_X needs kappa > 0");
  const EigenSystem es = eigensystem_for(cfg.params);
  const ComplexMatrix signal = well_projector(es, resolve_pairs(cfg)).signal_operator();
  const StateVector psi0 = initial_state(cfg, es);
  const Liouvillian l = liouvillian(cfg.params, cfg.kappa, cfg.n_th, Sector::Odd);

  // s = tr(rho S) only sees the odd sector, where S lives.
  const Eigen::Index size = static_cast<Eigen::Index>(l.entries.size());
  Eigen::VectorXcd v(size), w(size);
  for (Eigen::Index k = 0; k < size; ++k) {
    const auto [i, j] = l.entries[k];
    v(k) = psi0(i) * std::conj(psi0(j));
    w(k) = signal(j, i);
  }
  auto signal_of = [&](const Eigen::VectorXcd& x) { return w.cwiseProduct(x).sum().real(); };

  TxResult r;
  double step = cfg.sample_dt > 0.0 ? cfg.sample_dt : 1.0;
  ComplexMatrix u = (l.matrix * step).exp();
  double t = 0.0;
  const double s0 = signal_of(v);
  require(s0 > 0.0, ErrorCode::InvalidArgument, "initial well signal must be positive");
  r.t.push_back(0.0);
  r.s.push_back(s0);
  int since_doubling = 0;
  while (t < cfg.t_final && r.s.back() >= 0.15 * s0) {
    v = u * v;
    t += step;
    r.t.push_back(t);
    r.s.push_back(signal_of(v));
    if (++since_doubling == 200) {
      u = u * u;
      step *= 2.0;
      since_doubling = 0;
    }
  }
  r.t_end = t;
  r.s_final = r.s.back();
  const auto fit = fitting::fit_exponential_window(r.t, r.s, 0.2, 0.95);
  r.fit_points = fit.points;
  r.lower_bound = r.s_final >= 0.2 * s0;
  if (fit.resolved) {
    r.t_x = fit.time_constant;
  } else {
    // Too few points in the window: bound from the last sample.
    const double ratio = std::max(r.s_final / s0, 1e-300);
    r.t_x = ratio < 1.0 ? r.t_end / -std::log(ratio) : std::numeric_limits<double>::infinity();
    r.lower_bound = r.lower_bound || ratio >= 0.2;
  }
  return r;
}

// Rabi map ---------------------------------------------------------------

RabiMap rabi_map(const LindbladConfig& base, const std::string& axis, const std::vector<double>& values,
                 const std::vector<double>& times, unsigned threads) {
  base.validate();
  require(axis == "delta" || axis == "eps2", ErrorCode::InvalidArgument, "Rabi axis must be delta or eps2");
  require(!values.empty(), ErrorCode::InvalidArgument, "Rabi map needs at least one parameter value");
  require(times.size() >= 6 && std::is_sorted(times.begin(), times.end()), ErrorCode::InvalidArgument,
          "Rabi map needs at least 6 sorted times");
  const bool closed = base.kappa == 0.0 && base.n_th == 0.0;
  if (!closed) {
    const double h = times[1] - times[0];
    for (std::size_t i = 1; i < times.size(); ++i)
      require(std::abs(times[i] - times[i - 1] - h) < 1e-9 * std::max(1.0, h), ErrorCode::InvalidArgument,
              "open-system Rabi maps need uniformly spaced times");
  }

  struct Column {
    std::vector<double> p;
    double omega = 0, rate = 0, abs_de = 0;
    int error = 0;
  };
  std::vector<Column> cols(values.size());
  parallel_for(values.size(), threads, [&](std::size_t c) {
    LindbladConfig cfg = base;
    (axis == "delta" ? cfg.params.delta : cfg.params.eps2) = values[c];
    try {
      const EigenSystem es = eigensystem_for(cfg.params);
      const ComplexMatrix signal = well_projector(es, resolve_pairs(cfg)).signal_operator();
      const StateVector psi0 = initial_state(cfg, es);
      auto& col = cols[c];
      col.p.resize(times.size());
      if (closed) {
        const StateVector coeff = es.eigenvectors.adjoint() * psi0;
        for (std::size_t k = 0; k < times.size(); ++k) {
          StateVector phased = coeff;
          for (int n = 0; n < es.dim(); ++n) phased(n) *= std::polar(1.0, -es.eigenvalues(n) * times[k]);
          const StateVector psi = es.eigenvectors * phased;
          col.p[k] = 0.5 * (1.0 - psi.dot(signal * psi).real());
        }
      } else {
        const Liouvillian l = liouvillian(cfg.params, cfg.kappa, cfg.n_th, Sector::All);
        Eigen::VectorXcd v(l.entries.size());
        for (std::size_t k = 0; k < l.entries.size(); ++k)
          v(k) = psi0(l.entries[k].first) * std::conj(psi0(l.entries[k].second));
        Eigen::VectorXcd wv(l.entries.size());
        for (std::size_t k = 0; k < l.entries.size(); ++k) wv(k) = signal(l.entries[k].second, l.entries[k].first);
        v = (l.matrix * times[0]).exp() * v;
        const ComplexMatrix u = (l.matrix * (times[1] - times[0])).exp();
        for (std::size_t k = 0; k < times.size(); ++k) {
          if (k > 0) v = u * v;
          col.p[k] = 0.5 * (1.0 - wv.cwiseProduct(v).sum().real());
        }
      }
      const auto fit = fitting::fit_decaying_sinusoid(times, col.p);
      col.omega = fit.omega;
      col.rate = fit.rate;
      col.abs_de = spectra::tunnel_splitting(cfg.params).abs_delta_e;
    } catch (const Error& e) {
      cols[c].error = static_cast<int>(e.code());
    }
  });

  RabiMap out{SweepResult({"delta", "eps2", "t", "p_transition"}),
              SweepResult({"delta", "eps2", "omega_fit", "decay_rate", "abs_de"})};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t c = 0; c < values.size(); ++c) {
    const double d = axis == "delta" ? values[c] : base.params.delta;
    const double e = axis == "eps2" ? values[c] : base.params.eps2;
    const auto& col = cols[c];
    for (std::size_t k = 0; k < times.size(); ++k)
      out.cells.add_row({d, e, times[k], col.error ? nan : col.p[k]}, col.error);
    if (col.error)
      out.fits.add_row({d, e, nan, nan, nan}, col.error);
    else
      out.fits.add_row({d, e, col.omega, col.rate, col.abs_de});
  }
  return out;
}

// Ramp protocols ---------------------------------------------------------

void RampProtocol::validate() const {
  require(!segments.empty(), ErrorCode::InvalidArgument, "protocol has no segments");
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    require(std::isfinite(s.duration) && s.duration > 0.0, ErrorCode::InvalidArgument,
            "segment " + std::to_string(i) + " needs a positive duration");
    require(std::isfinite(s.eps2_start) && std::isfinite(s.eps2_end) && std::isfinite(s.delta_start) &&
                std::isfinite(s.delta_end),
            ErrorCode::InvalidArgument, "segment values must be finite");
    if (i > 0) {
      const auto& p = segments[i - 1];
      require(std::abs(p.eps2_end - s.eps2_start) < 1e-12 && std::abs(p.delta_end - s.delta_start) < 1e-12,
              ErrorCode::InvalidArgument, "segment " + std::to_string(i) + " does not continue the previous one");
    }
  }
}

double RampProtocol::total_duration() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

std::pair<double, double> RampProtocol::at(double t) const {
  double start = 0.0;
  for (const auto& s : segments) {
    if (t <= start + s.duration) {
      const double f = std::clamp((t - start) / s.duration, 0.0, 1.0);
      return {s.eps2_start + f * (s.eps2_end - s.eps2_start), s.delta_start + f * (s.delta_end - s.delta_start)};
    }
    start += s.duration;
  }
  const auto& last = segments.back();
  return {last.eps2_end, last.delta_end};
}

Trajectory run_protocol(const RampProtocol& protocol, const LindbladConfig& cfg_in) {
  protocol.validate();
  LindbladConfig cfg = cfg_in;
  cfg.t_final = protocol.total_duration();
  cfg.validate();
  require(cfg.method != Method::Propagator, ErrorCode::InvalidArgument, "ramps need a time-stepping method");

  double max_delta = cfg.params.delta, max_eps2 = std::abs(cfg.params.eps2);
  for (const auto& s : protocol.segments) {
    max_delta = std::max({max_delta, s.delta_start, s.delta_end});
    max_eps2 = std::max({max_eps2, std::abs(s.eps2_start), std::abs(s.eps2_end)});
  }
  HamiltonianParams start = cfg.params;
  start.eps2 = protocol.segments.front().eps2_start;
  start.delta = protocol.segments.front().delta_start;
  start.dim = cfg.params.dim > 0 ? cfg.params.dim : default_dimension(max_delta, cfg.params.kerr, max_eps2);
  cfg.params = start;
  const int dim = start.dim;

  const EigenSystem es = eigensystem_for(start);
  const ComplexMatrix signal = well_projector(es, resolve_pairs(cfg)).signal_operator();
  const StateVector psi0 = initial_state(cfg, es);
  const Dissipation dis = make_dissipation(cfg.kappa, cfg.n_th, dim);
  const auto bands_at = [&](double t) {
    HamiltonianParams p = start;
    const auto [e2, d] = protocol.at(t);
    p.eps2 = e2;
    p.delta = d;
    return make_bands(p, dim);
  };
  double width = 0.0;
  for (const auto& s : protocol.segments) {
    for (double f : {0.0, 1.0}) {
      HamiltonianParams p = start;
      p.eps2 = s.eps2_start + f * (s.eps2_end - s.eps2_start);
      p.delta = s.delta_start + f * (s.delta_end - s.delta_start);
      width = std::max(width, spectral_width(make_bands(p, dim), dis));
    }
  }
  const double sample_dt = cfg.sample_dt > 0.0 ? cfg.sample_dt : cfg.t_final / 200.0;
  const double dt0 = cfg.dt > 0.0 ? cfg.dt : 0.5 / width;
  if (cfg.method == Method::Auto && !dis.active())
    return rk4_controlled(psi0, bands_at, dis, signal, cfg.t_final, sample_dt, dt0);
  const ComplexMatrix rho0 = psi0 * psi0.adjoint();
  return rk4_controlled(rho0, bands_at, dis, signal, cfg.t_final, sample_dt, dt0);
}

}  // namespace kerrcat::dynamics
