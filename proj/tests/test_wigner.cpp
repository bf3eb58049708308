#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "kerrcat/dynamics.hpp"
#include "kerrcat/spectra.hpp"
#include "kerrcat/wigner.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace kerrcat;
using namespace kerrcat::phasespace;

namespace {

ComplexMatrix projector(const StateVector& v) { return v * v.adjoint(); }

StateVector fock_state(int n, int dim) {
  StateVector v = StateVector::Zero(dim);
  v(n) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("vacuum and single photon") {
  const int dim = 10;
  const ComplexMatrix vac = projector(fock_state(0, dim));
  CHECK(wigner_at(vac, 0.0, 0.0) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-13));
  CHECK(wigner_at(vac, 0.7, -0.4) == doctest::Approx(std::exp(-0.65) / std::numbers::pi).epsilon(1e-12));
  const ComplexMatrix one = projector(fock_state(1, dim));
  CHECK(wigner_at(one, 0.0, 0.0) == doctest::Approx(-1.0 / std::numbers::pi).epsilon(1e-13));
}

TEST_CASE("superpositions against the position-space integral") {
  std::mt19937 rng(4);
  std::normal_distribution<double> g;
  const int n = 7;
  std::vector<std::complex<double>> amps(n);
  double norm = 0.0;
  for (auto& a : amps) {
    a = {g(rng), g(rng)};
    norm += std::norm(a);
  }
  StateVector v(n);
  for (int k = 0; k < n; ++k) v(k) = amps[k] /= std::sqrt(norm);
  const ComplexMatrix rho = projector(v);
  for (auto [x, p] : {std::pair{0.0, 0.0}, std::pair{1.1, -0.3}, std::pair{-2.0, 1.7}, std::pair{0.4, 2.5}})
    CHECK(std::abs(wigner_at(rho, x, p) - oracle::wigner_q_integral(amps, x, p)) < 1e-9);
}

TEST_CASE("displacement matrix elements") {
  const std::complex<double> beta(0.6, -0.9);
  const ComplexMatrix d = displacement_elements(beta, 30);
  const ComplexMatrix full = fock::displacement_operator(beta, 60);
  CHECK((d - full.topLeftCorner(30, 30)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("cat eigenstate grid") {
  HamiltonianParams p{6.0, 1.0, 2.0, 0.0, 0};
  const auto es = spectra::solve(p);
  const auto grid = wigner_function(es.vector(0), {201, 201, 0.0}, 2);
  CHECK(std::abs(grid.normalization() - 1.0) < 1e-3);
  CHECK(std::abs(grid.purity_integral() - 1.0) < 1e-2);
  CHECK(grid.min_value() < -0.05);
  CHECK(grid.max_value() <= 1.0 / std::numbers::pi + 1e-12);
  CHECK(grid.values.rows() == 201);
  CHECK(grid.x.front() == doctest::Approx(-grid.x.back()));

  // Same answer regardless of thread count.
  const auto single = wigner_function(es.vector(0), {41, 41, 0.0}, 1);
  const auto multi = wigner_function(es.vector(0), {41, 41, 0.0}, 4);
  CHECK((single.values - multi.values).cwiseAbs().maxCoeff() == 0.0);

  CHECK_ERROR_CODE(wigner_function(es.vector(0), {21, 21, 1.0}), ErrorCode::TruncationRisk);
}

TEST_CASE("squeezed single-node state is nearly positive") {
  HamiltonianParams p{-6.0, 1.0, 2.0, 0.0, 0};
  const auto es = spectra::solve(p);
  const auto grid = wigner_function(es.vector(0), {161, 161, 0.0});
  CHECK(std::abs(grid.normalization() - 1.0) < 1e-3);
  CHECK(grid.min_value() > -1e-3);
}

TEST_CASE("thermal state") {
  const double n = 0.5;
  const ComplexMatrix rho = dynamics::thermal_state(40, n);
  CHECK(wigner_at(rho, 0.0, 0.0) == doctest::Approx(1.0 / (std::numbers::pi * (2 * n + 1))).epsilon(1e-8));
  const auto grid = wigner_function(rho, {121, 121, 0.0});
  CHECK(std::abs(grid.normalization() - 1.0) < 1e-3);
  CHECK(grid.purity_integral() == doctest::Approx(1.0 / (2 * n + 1)).epsilon(1e-3));
}

TEST_CASE("grid serialization") {
  const auto grid = wigner_function(fock_state(0, 5), {3, 4, 4.0});
  const std::string csv = grid.to_csv();
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,p,w");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 12);
  const auto j = grid.to_json({{"state", "vacuum"}});
  CHECK(j["metadata"]["state"] == "vacuum");
}
