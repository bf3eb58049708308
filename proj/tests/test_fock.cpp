#include <cmath>
#include <random>

#include "kerrcat/fock.hpp"
#include "kerrcat/linalg.hpp"
#include "kerrcat/spectra.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace kerrcat;

TEST_CASE("ladder operators") {
  const RealMatrix a2 = fock::annihilation(2);
  CHECK(a2(0, 1) == 1.0);
  CHECK(a2(0, 0) == 0.0);
  CHECK(a2(1, 0) == 0.0);
  CHECK(a2(1, 1) == 0.0);

  const RealMatrix a3 = fock::annihilation(3);
  CHECK(a3(1, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(fock::creation(3) == a3.transpose());

  // [a, a^dag] = 1 except in the last row and column, where truncation bites.
  const int dim = 12;
  const RealMatrix a = fock::annihilation(dim), ad = fock::creation(dim);
  const RealMatrix c = a * ad - ad * a;
  const RealMatrix inner = c.topLeftCorner(dim - 1, dim - 1) - RealMatrix::Identity(dim - 1, dim - 1);
  CHECK(inner.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(c(dim - 1, dim - 1) == doctest::Approx(-(dim - 1)));

  CHECK_ERROR_CODE(fock::annihilation(1), ErrorCode::InvalidDimension);
}

TEST_CASE("params validation and default dimension") {
  HamiltonianParams p;
  p.kerr = 0.0;
  CHECK_ERROR_CODE(p.validate(), ErrorCode::InvalidArgument);
  p.kerr = 1.0;
  p.dim = 3;
  CHECK_ERROR_CODE(p.validate(), ErrorCode::InvalidDimension);
  p.dim = 0;
  p.delta = NAN;
  CHECK_ERROR_CODE(p.validate(), ErrorCode::InvalidArgument);

  CHECK(default_dimension(0.0, 1.0, 0.0) == 60);
  CHECK(default_dimension(6.0, 1.0, 2.17) == 104);
  HamiltonianParams q{1.0, 1.0, 0.5, 0.0, 0};
  CHECK(q.resolved_dim() == 60);
  q.dim = 17;
  CHECK(q.resolved_dim() == 17);
}

TEST_CASE("Hamiltonian matrix elements") {
  SUBCASE("Kerr diagonal") {
    HamiltonianParams p{1.7, 1.0, 0.0, 0.0, 20};
    const RealMatrix h = fock::build_hamiltonian(p);
    for (int n = 0; n < 20; ++n) CHECK(h(n, n) == doctest::Approx(1.7 * n - n * (n - 1.0)).epsilon(1e-15));
    CHECK((h - RealMatrix(h.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("squeeze coupling") {
    HamiltonianParams p{0.0, 1.0, 1.0, 0.0, 4};
    const RealMatrix h = fock::build_hamiltonian(p);
    CHECK(h(0, 2) == doctest::Approx(std::sqrt(2.0)));
    CHECK(h(1, 3) == doctest::Approx(std::sqrt(6.0)));
    CHECK(h(2, 0) == h(0, 2));
  }
  SUBCASE("quartic coupling") {
    HamiltonianParams p{0.0, 1.0, 0.0, 0.3, 8};
    const RealMatrix h = fock::build_hamiltonian(p);
    CHECK(h(0, 4) == doctest::Approx(0.3 * std::sqrt(24.0)));
    CHECK(h(1, 5) == doctest::Approx(0.3 * std::sqrt(120.0)));
  }
  SUBCASE("sparse and dense builders agree") {
    HamiltonianParams p{2.3, 1.1, 0.7, 0.05, 30};
    const RealMatrix dense = fock::build_hamiltonian(p);
    const RealMatrix sparse = RealMatrix(fock::build_sparse_hamiltonian(p));
    CHECK((dense - sparse).cwiseAbs().maxCoeff() == 0.0);
    CHECK(linalg::symmetry_defect(dense) == 0.0);
  }
}

TEST_CASE("eigenvalues against a Jacobi oracle") {
  HamiltonianParams p{2.0, 1.0, 0.5, 0.0, 40};
  const RealMatrix h = fock::build_hamiltonian(p);
  oracle::Matrix m(40, std::vector<double>(40));
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 40; ++j) m[i][j] = h(i, j);
  const auto expected = oracle::jacobi_eigenvalues(m);
  const auto es = spectra::solve(p);
  double worst = 0.0;
  for (int i = 0; i < 40; ++i) worst = std::max(worst, std::abs(es.eigenvalues(i) - expected[i]));
  CHECK(worst < 1e-10);
}

TEST_CASE("parity commutes with the Hamiltonian") {
  const RealMatrix pi4 = fock::parity_operator(4);
  CHECK(pi4.diagonal()(0) == 1.0);
  CHECK(pi4.diagonal()(1) == -1.0);
  CHECK(pi4.diagonal()(2) == 1.0);
  CHECK(pi4.diagonal()(3) == -1.0);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0), pos(0.1, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    HamiltonianParams p{u(rng), pos(rng), u(rng), trial % 2 ? pos(rng) / 10 : 0.0, 30};
    const RealMatrix h = fock::build_hamiltonian(p);
    const RealMatrix pi = fock::parity_operator(30);
    CHECK((pi * h - h * pi).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("spectrum is even in eps2") {
  HamiltonianParams p{1.3, 1.0, 0.8, 0.0, 50};
  auto q = p;
  q.eps2 = -p.eps2;
  const auto a = spectra::solve(p), b = spectra::solve(q);
  CHECK((a.eigenvalues - b.eigenvalues).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("truncation convergence of the top levels") {
  for (auto [d, e] : {std::pair{10.0, 10.0}, std::pair{-10.0, 3.0}, std::pair{4.0, 0.5}}) {
    HamiltonianParams p{d, 1.0, e, 0.0, 100};
    auto q = p;
    q.dim = 140;
    const auto a = spectra::solve(p), b = spectra::solve(q);
    CHECK((a.eigenvalues.head(10) - b.eigenvalues.head(10)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("displacement operator") {
  const int dim = 40;
  CHECK((fock::displacement_operator(0.0, dim) - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-15);

  const std::complex<double> alpha(1.2, -0.4);
  const ComplexMatrix d = fock::displacement_operator(alpha, dim);
  const StateVector coherent = fock::coherent_state(alpha, dim);
  CHECK((d.col(0) - coherent).cwiseAbs().maxCoeff() < 1e-12);

  // Unitary on the block unaffected by truncation.
  const int safe = dim - static_cast<int>(std::ceil(4.0 * std::norm(alpha)));
  const ComplexMatrix ud = d.adjoint() * d;
  CHECK((ud.topLeftCorner(safe, safe) - ComplexMatrix::Identity(safe, safe)).cwiseAbs().maxCoeff() < 1e-8);

  // D(a) Pi = Pi D(-a): D(a) Pi |0> overlaps D(-a)|0> up to the parity sign.
  const ComplexMatrix pi = fock::parity_operator(dim).cast<std::complex<double>>();
  const StateVector lhs = (d * pi).col(0);
  const StateVector rhs = (pi * fock::displacement_operator(-alpha, dim)).col(0);
  CHECK(std::abs(lhs.dot(rhs)) == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_ERROR_CODE(fock::displacement_operator(4.0, 40), ErrorCode::TruncationRisk);
}

TEST_CASE("displaced Hamiltonian") {
  SUBCASE("alpha = 0 reduces to the undriven Kerr form") {
    HamiltonianParams p{1.5, 1.0, 0.0, 0.0, 20};
    const RealMatrix hd = fock::displaced_hamiltonian(p, 0.0);
    const RealMatrix h = fock::build_hamiltonian(p);
    CHECK((hd - h).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(fock::displaced_frame_offset(p, 0.0) == 0.0);
  }
  SUBCASE("decoupling brackets vanish at D = 2mK") {
    HamiltonianParams p{4.0, 1.0, 2.0, 0.0, 40};
    const double alpha = std::sqrt(2.0);
    const RealMatrix hd = fock::displaced_hamiltonian(p, alpha);
    // m = 2: no coupling between n = 2 and n = 3.
    // alpha^2 is 2 only up to rounding.
    CHECK(std::abs(hd(2, 3)) < 1e-12);
    CHECK(std::abs(hd(3, 2)) < 1e-12);
    CHECK(std::abs(hd(1, 2)) > 1.0);
    double off_band = 0.0;
    for (int i = 0; i < 40; ++i)
      for (int j = 0; j < 40; ++j)
        if (std::abs(i - j) > 1) off_band = std::max(off_band, std::abs(hd(i, j)));
    CHECK(off_band < 1e-12);
  }
  SUBCASE("matches D H D^dag in the well-resolved block") {
    HamiltonianParams p{1.0, 1.0, 0.5, 0.0, 60};
    const double alpha = std::sqrt(0.5);
    const ComplexMatrix d = fock::displacement_operator(alpha, 60);
    const ComplexMatrix full = d * fock::build_hamiltonian(p).cast<std::complex<double>>() * d.adjoint();
    const RealMatrix hd = fock::displaced_hamiltonian(p, alpha);
    const double offset = fock::displaced_frame_offset(p, alpha);
    const int k = 20;
    const ComplexMatrix diff = full.topLeftCorner(k, k) - hd.topLeftCorner(k, k).cast<std::complex<double>>() -
                               offset * ComplexMatrix::Identity(k, k);
    CHECK(diff.cwiseAbs().maxCoeff() < 1e-8);
  }
  SUBCASE("quartic drive is rejected") {
    HamiltonianParams p{1.0, 1.0, 0.5, 0.1, 20};
    CHECK_ERROR_CODE(fock::displaced_hamiltonian(p, 0.5), ErrorCode::InvalidArgument);
  }
}
