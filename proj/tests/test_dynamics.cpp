#include <cmath>
#include <numbers>
#include <random>

#include "kerrcat/dynamics.hpp"
#include "kerrcat/fitting.hpp"
#include "support.hpp"

using namespace kerrcat;
using namespace kerrcat::dynamics;

namespace {

ComplexMatrix random_density(int dim, std::mt19937& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = {g(rng), g(rng)};
  ComplexMatrix rho = m * m.adjoint();
  return rho / rho.trace().real();
}

ComplexMatrix number_operator(int dim) {
  ComplexMatrix n = ComplexMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = k;
  return n;
}

}  // namespace

TEST_CASE("master-equation right-hand side") {
  std::mt19937 rng(2);
  HamiltonianParams p{1.3, 1.0, 0.9, 0.02, 16};
  const ComplexMatrix rho = random_density(16, rng);
  const ComplexMatrix d = lindblad_rhs(rho, p, 0.3, 0.4);
  CHECK(std::abs(d.trace()) < 1e-12);
  CHECK((d - d.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

  const ComplexMatrix h = fock::build_hamiltonian(p).cast<std::complex<double>>();
  const ComplexMatrix closed = lindblad_rhs(rho, p, 0.0, 0.0);
  const std::complex<double> i(0.0, 1.0);
  CHECK((closed - (-i * (h * rho - rho * h))).cwiseAbs().maxCoeff() < 1e-12);

  // A diagonal Hamiltonian leaves the thermal state stationary.
  HamiltonianParams q{0.7, 1.0, 0.0, 0.0, 60};
  const ComplexMatrix th = thermal_state(60, 0.2);
  CHECK(std::abs(th.trace().real() - 1.0) < 1e-14);
  CHECK(lindblad_rhs(th, q, 0.5, 0.2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Liouvillian matches the right-hand side") {
  std::mt19937 rng(6);
  HamiltonianParams p{2.0, 1.0, 0.6, 0.0, 8};
  const auto full = liouvillian(p, 0.2, 0.1);
  const ComplexMatrix rho = random_density(8, rng);
  Eigen::VectorXcd v(full.entries.size());
  for (std::size_t k = 0; k < full.entries.size(); ++k) v(k) = rho(full.entries[k].first, full.entries[k].second);
  const Eigen::VectorXcd lv = full.matrix * v;
  const ComplexMatrix d = lindblad_rhs(rho, p, 0.2, 0.1);
  double worst = 0.0;
  for (std::size_t k = 0; k < full.entries.size(); ++k)
    worst = std::max(worst, std::abs(lv(k) - d(full.entries[k].first, full.entries[k].second)));
  CHECK(worst < 1e-12);

  const auto odd = liouvillian(p, 0.2, 0.1, Sector::Odd);
  CHECK(odd.entries.size() == 32);
  for (auto [i, j] : odd.entries) CHECK((i - j) % 2 != 0);
}

TEST_CASE("damped oscillator") {
  LindbladConfig cfg;
  cfg.params = {0.4, 1.0, 0.0, 0.0, 12};
  cfg.kappa = 0.1;
  cfg.t_final = 20.0;
  cfg.initial.kind = InitialKind::Fock;
  cfg.initial.fock_n = 3;
  cfg.well_pairs = 1;
  const auto tr = evolve(cfg);
  double worst = 0.0;
  for (std::size_t k = 0; k < tr.size(); ++k) worst = std::max(worst, std::abs(tr.n[k] - 3.0 * std::exp(-0.1 * tr.t[k])));
  CHECK(worst < 1e-5);
}

TEST_CASE("thermalization") {
  LindbladConfig cfg;
  cfg.params = {0.0, 1.0, 0.0, 0.0, 20};
  cfg.kappa = 0.5;
  cfg.n_th = 0.2;
  cfg.t_final = 60.0;
  cfg.initial.kind = InitialKind::Vacuum;
  cfg.well_pairs = 1;
  const auto tr = evolve(cfg);
  CHECK(std::abs(tr.n.back() - 0.2) < 1e-4);
  // <n> relaxes as n_th (1 - exp(-kappa t)) from vacuum.
  const std::size_t mid = tr.size() / 4;
  CHECK(tr.n[mid] == doctest::Approx(0.2 * (1.0 - std::exp(-0.5 * tr.t[mid]))).epsilon(1e-5));
}

TEST_CASE("trace and positivity over a long run") {
  LindbladConfig cfg;
  cfg.params = {4.0, 1.0, 2.0, 0.0, 24};
  cfg.kappa = 0.05;
  cfg.n_th = 0.1;
  cfg.t_final = 200.0;
  cfg.sample_dt = 2.0;
  const auto tr = evolve(cfg);
  for (std::size_t k = 0; k < tr.size(); ++k) {
    CHECK(std::abs(tr.trace[k] - 1.0) < 1e-7);
    CHECK(tr.min_eigenvalue[k] >= -1e-7);
    CHECK(tr.purity[k] <= 1.0 + 1e-9);
  }
}

TEST_CASE("well signal") {
  HamiltonianParams p{4.0, 1.0, 2.0, 0.0, 40};
  const auto es = spectra::solve(p);
  LindbladConfig cfg;
  cfg.params = p;
  cfg.well_pairs = 2;
  const StateVector right = initial_state(cfg, es);
  cfg.initial.kind = InitialKind::LeftWell;
  const StateVector left = initial_state(cfg, es);
  CHECK(well_signal(right * right.adjoint(), es, 2) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(well_signal(left * left.adjoint(), es, 2) == doctest::Approx(-1.0).epsilon(1e-10));

  // Parity swaps the wells.
  const ComplexMatrix pi = fock::parity_operator(40).cast<std::complex<double>>();
  const StateVector flipped = pi * right;
  CHECK(well_signal(flipped * flipped.adjoint(), es, 2) == doctest::Approx(-1.0).epsilon(1e-10));

  const auto proj = well_projector(es, 2);
  CHECK((proj.right * proj.right - proj.right).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((proj.right * proj.left).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(default_well_pairs(p) >= 1);
}

TEST_CASE("closed-system Rabi oscillation") {
  LindbladConfig cfg;
  cfg.params = {1.0, 1.0, 0.11, 0.0, 40};
  cfg.t_final = 40.0;
  cfg.sample_dt = 0.1;
  cfg.well_pairs = 1;
  const auto tr = evolve(cfg);
  const auto fit = fitting::fit_decaying_sinusoid(tr.t, tr.s);
  REQUIRE(fit.converged);
  const double de = spectra::tunnel_splitting(cfg.params).abs_delta_e;
  CHECK(fit.omega == doctest::Approx(de).epsilon(1e-3));
  CHECK(std::abs(tr.purity.back() - 1.0) < 1e-9);

  // At D = 2K the pair is degenerate and the state stays put.
  cfg.params = {2.0, 1.0, 0.5, 0.0, 40};
  cfg.t_final = 50.0;
  const auto still = evolve(cfg);
  double drift = 0.0;
  for (double s : still.s) drift = std::max(drift, std::abs(s - still.s.front()));
  CHECK(drift < 1e-6);
}

TEST_CASE("ramp protocols") {
  LindbladConfig cfg;
  cfg.params = {0.0, 1.0, 0.0, 0.0, 40};
  cfg.well_pairs = 1;
  cfg.sample_dt = 0.5;

  SUBCASE("half Rabi period flips the wells") {
    HamiltonianParams p{1.0, 1.0, 0.11, 0.0, 40};
    const double de = spectra::tunnel_splitting(p).abs_delta_e;
    RampProtocol r{{{std::numbers::pi / de, 0.11, 0.11, 1.0, 1.0}}};
    const auto tr = run_protocol(r, cfg);
    CHECK(tr.s.front() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(tr.s.back() < -0.999);
  }
  SUBCASE("holding at a cancellation point") {
    RampProtocol r{{{40.0, 1.0, 1.0, 2.0, 2.0}}};
    const auto tr = run_protocol(r, cfg);
    CHECK(tr.s.back() > 0.999);
  }
  SUBCASE("slow round trip in eps2 at D = 2K") {
    RampProtocol r{{{30.0, 1.0, 2.0, 2.0, 2.0}, {30.0, 2.0, 1.0, 2.0, 2.0}}};
    CHECK(r.total_duration() == 60.0);
    CHECK(r.at(15.0).first == doctest::Approx(1.5));
    CHECK(r.at(100.0).first == 1.0);
    const auto tr = run_protocol(r, cfg);
    CHECK(tr.s.back() > 0.95);
  }
  SUBCASE("invalid schedules") {
    RampProtocol r{{{-1.0, 1.0, 1.0, 0.0, 0.0}}};
    CHECK_ERROR_CODE(r.validate(), ErrorCode::InvalidArgument);
    CHECK_ERROR_CODE(RampProtocol{}.validate(), ErrorCode::InvalidArgument);
  }
}

TEST_CASE("well-switching time") {
  LindbladConfig cfg;
  cfg.params = {1.0, 1.0, 2.17, 0.0, 30};
  cfg.kappa = 1.0 / 50.0;
  cfg.n_th = 0.05;
  cfg.t_final = 1e6;
  const auto a = tx_lifetime(cfg);
  cfg.params.delta = 3.0;
  const auto b = tx_lifetime(cfg);
  REQUIRE_FALSE(a.lower_bound);
  REQUIRE_FALSE(b.lower_bound);
  CHECK(a.fit_points >= 2);
  CHECK(b.t_x > a.t_x);
  CHECK(a.t_x > 0.0);

  // Weak dissipation and a short horizon leave the decay unresolved.
  cfg.kappa = 1e-6;
  cfg.n_th = 0.0;
  cfg.params.delta = 2.0;
  cfg.t_final = 50.0;
  const auto c = tx_lifetime(cfg);
  CHECK(c.lower_bound);
  cfg.kappa = 0.0;
  CHECK_ERROR_CODE(tx_lifetime(cfg), ErrorCode::InvalidArgument);
}

TEST_CASE("config validation") {
  LindbladConfig cfg;
  cfg.kappa = -1.0;
  CHECK_ERROR_CODE(cfg.validate(), ErrorCode::InvalidArgument);
  cfg.kappa = 0.0;
  cfg.t_final = 0.0;
  CHECK_ERROR_CODE(cfg.validate(), ErrorCode::InvalidArgument);
}
