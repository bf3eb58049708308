#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kerrcat/fock.hpp"
#include "kerrcat/spectra.hpp"
#include "kerrcat/sweep.hpp"

namespace kerrcat::dynamics {

using spectra::EigenSystem;

enum class InitialKind { RightWell, LeftWell, Vacuum, Fock, Custom };

struct InitialState {
  InitialKind kind = InitialKind::RightWell;
  int fock_n = 0;
  StateVector custom;
};

enum class Method {
  Auto,        // RK4; state-vector RK4 when kappa = n_th = 0
  Rk4,         // density-matrix RK4 with step halving
  Propagator,  // exact exp(L dt) between samples (time-independent runs only)
};

/// Master-equation run specification. Times are in 1/K.
struct LindbladConfig {
  HamiltonianParams params;
  double kappa = 0.0;
  double n_th = 0.0;
  double t_final = 1.0;
  double dt = 0.0;         // initial RK4 step; 0 picks one from the Hamiltonian's spectral width
  double sample_dt = 0.0;  // observable spacing; 0 means t_final / 200
  InitialState initial;
  int well_pairs = 0;      // 0 ties the projector size to the EBK in-well count
  Method method = Method::Auto;

  void validate() const;
};

/// Sampled observables. `min_eigenvalue` is the smallest eigenvalue of rho.
struct Trajectory {
  std::vector<double> t;
  std::vector<double> s;
  std::vector<double> trace;
  std::vector<double> purity;
  std::vector<double> n;
  std::vector<double> x;
  std::vector<double> energy;
  std::vector<double> min_eigenvalue;
  double dt_used = 0.0;
  int halvings = 0;

  std::size_t size() const { return t.size(); }
  /// Header "t,s,tr,purity,n".
  std::string to_csv() const;
  SweepResult to_table() const;
};

/// Right and left well projectors built from the top `pairs` quasi-degenerate
/// pairs; S = P_R - P_L.
struct WellProjectors {
  ComplexMatrix right;
  ComplexMatrix left;
  int pairs = 0;

  ComplexMatrix signal_operator() const { return right - left; }
};

WellProjectors well_projector(const EigenSystem& es, int pairs);
/// EBK-based pair count: in_well_pairs at the given parameters, at least 1.
int default_well_pairs(const HamiltonianParams& params);

/// tr(rho (P_R - P_L)).
double well_signal(const ComplexMatrix& rho, const WellProjectors& projectors);
double well_signal(const ComplexMatrix& rho, const EigenSystem& es, int pairs);

/// -i[H, rho] + kappa(1 + n) D[a] rho + kappa n D[a^dag] rho.
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const HamiltonianParams& params, double kappa, double n_th);
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const LindbladConfig& cfg);

/// Sectors of the Liouvillian: it never mixes rho(i, j) entries with
/// different (i - j) mod 2.
enum class Sector { All, Even, Odd };

/// Dense Liouvillian acting on the listed rho(i, j) entries.
struct Liouvillian {
  ComplexMatrix matrix;
  std::vector<std::pair<int, int>> entries;
};

Liouvillian liouvillian(const HamiltonianParams& params, double kappa, double n_th, Sector sector = Sector::All);

/// Thermal state diag((1 - q) q^n), q = n/(1 + n), renormalized on the truncation.
ComplexMatrix thermal_state(int dim, double n_th);

/// Initial state vector per the config.
StateVector initial_state(const LindbladConfig& cfg, const EigenSystem& es);

/// Fixed-step RK4 with halving: the step is halved until the run conserves
/// trace to 1e-7 and the sampled s and <n> agree with the previous step size
/// to 1e-6 relative. Fails with NoConvergence after 12 halvings.
Trajectory evolve(const LindbladConfig& cfg);

struct TxResult {
  double t_x = 0.0;
  bool lower_bound = false;  // decay not resolved before t_final
  int fit_points = 0;
  double s_final = 0.0;
  double t_end = 0.0;
  std::vector<double> t;
  std::vector<double> s;
};

/// Well-switching time from the exact odd-sector propagator, starting in the
/// right well and fitting s0 exp(-t/T_X) over s in [0.2, 0.95] s0. The sample
/// spacing starts at sample_dt (default 1/K) and doubles every 200 samples.
TxResult tx_lifetime(const LindbladConfig& cfg);

/// Rabi map over a parameter axis ("delta" or "eps2").
struct RabiMap {
  SweepResult cells;  // delta, eps2, t, p_transition
  SweepResult fits;   // delta, eps2, omega_fit, decay_rate, abs_de
};

RabiMap rabi_map(const LindbladConfig& base, const std::string& axis, const std::vector<double>& values,
                 const std::vector<double>& times, unsigned threads = 0);

/// Piecewise-linear schedule for e2(t) and D(t).
struct RampSegment {
  double duration = 0.0;
  double eps2_start = 0.0;
  double eps2_end = 0.0;
  double delta_start = 0.0;
  double delta_end = 0.0;
};

struct RampProtocol {
  std::vector<RampSegment> segments;

  void validate() const;
  double total_duration() const;
  /// (eps2, delta) at time t, clamped to the schedule's ends.
  std::pair<double, double> at(double t) const;
};

/// Integrates with H(t) from the protocol. cfg supplies K, e4, dim and the
/// dissipation; the initial state and the well projectors are built at the
/// protocol's starting (e2, D). t_final is the protocol duration.
Trajectory run_protocol(const RampProtocol& protocol, const LindbladConfig& cfg);

}  // namespace kerrcat::dynamics
