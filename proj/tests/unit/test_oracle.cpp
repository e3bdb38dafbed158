#include <doctest.h>

#include "spinbath/common_bath.hpp"
#include "spinbath/oracle.hpp"
#include "test_support.hpp"

using namespace spinbath;
using spinbath::testing::Gen;

namespace {

oracle::FullSystem common(int n, double ka, double kb, double j) {
  return oracle::FullSystem::build(oracle::Mode::Common, n, {ka, kb, j, {}, {}});
}

}  // namespace

TEST_CASE("one-nucleus spectrum matches the sector levels") {
  const auto sys = common(1, 1.0, 1.0, 0.0);
  const Eigen::MatrixXcd h = sys.dense_hamiltonian();
  REQUIRE(h.rows() == 8);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  // Levels of K(S_A + S_B).I with I = 1/2: F = 3/2 at K/2 (x4), F = 1/2 triplet at -K (x2),
  // F = 1/2 singlet at 0 (x2).
  const Eigen::VectorXd ev = es.eigenvalues();
  const std::vector<double> expected{-1.0, -1.0, 0.0, 0.0, 0.5, 0.5, 0.5, 0.5};
  for (int i = 0; i < 8; ++i) CHECK(ev(i) == doctest::Approx(expected[static_cast<std::size_t>(i)]).epsilon(1e-12));

  const SectorSpectrum sp = sector_spectrum(CommonBathSystem{1.0, 1.0, 0.0, BathDistribution::delta(HalfSpin::from_twice(1))},
                                            HalfSpin::from_twice(1));
  CHECK(sp.lambda1 == doctest::Approx(0.5));
}

TEST_CASE("Hamiltonian is Hermitian and conserves total F^z") {
  for (auto mode : {oracle::Mode::Common, oracle::Mode::Separate}) {
    const double j = mode == oracle::Mode::Common ? 1.3 : 0.0;
    const auto sys = oracle::FullSystem::build(mode, 4, {0.9, 0.4, j, {}, {}});
    const Eigen::MatrixXcd h = sys.dense_hamiltonian();
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    const Eigen::MatrixXcd fz = sys.twice_total_fz().cast<Complex>().asDiagonal();
    CHECK((h * fz - fz * h).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("build validation") {
  CHECK_THROWS_AS(oracle::FullSystem::build(oracle::Mode::Common, oracle::kMaxBathSpins + 1, {}), InvalidInput);
  CHECK_THROWS_AS(oracle::FullSystem::build(oracle::Mode::Separate, 4, {1.0, 1.0, 0.5, {}, {}}), InvalidInput);
  CHECK_THROWS_AS(oracle::FullSystem::build(oracle::Mode::Inhomogeneous, 3, {1.0, 1.0, 0.0, {1.0}, {1.0}}),
                  InvalidInput);
}

TEST_CASE("full-space evolution conserves norm and energy") {
  const auto sys = common(5, 1.0, 0.6, 2.0);
  Gen gen(7);
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(sys.dimension()));
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = {gen.normal(), gen.normal()};
  psi.normalize();
  const Eigen::MatrixXcd h = sys.dense_hamiltonian();
  const double e0 = (psi.adjoint() * h * psi)(0, 0).real();
  const Eigen::VectorXcd out = sys.evolve_full(psi, 3.7);
  CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((out.adjoint() * h * out)(0, 0).real() == doctest::Approx(e0).epsilon(1e-12));
  const Eigen::VectorXcd ref = spinbath::testing::expm_taylor(h, 3.7) * psi;
  CHECK((out - ref).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("reduced evolution basics") {
  const auto sys = common(4, 1.0, 0.5, 1.0);
  const TwoQubitState s0 = states::r_state(0.5);
  CHECK(spinbath::testing::max_abs_diff(sys.evolve_reduced(s0, oracle::BathState::fully_mixed(), 0.0), s0) < 1e-14);
  for (double t : {0.4, 3.0}) CHECK(purity(sys.evolve_reduced(s0, oracle::BathState::fully_mixed(), t)) <= 1.0 + 1e-12);

  const auto free = common(4, 0.0, 0.0, 3.0);
  for (double t : {0.4, 3.0}) CHECK(decoherence_measure(free.evolve_reduced(s0, oracle::BathState::fully_mixed(), t)) < 1e-12);
}

TEST_CASE("singlet population from the oracle matches the sector sum") {
  const int n = 6;
  const CommonBathSystem csys{1.0, 0.4, 2.0, unpolarized_exact(n)};
  const auto full = common(n, 1.0, 0.4, 2.0);
  const Eigen::Vector4cd s0 = ops::bell_basis().col(0);
  for (double t : {0.3, 1.1, 4.0}) {
    const Mat4c rho = full.evolve_reduced(state_to_density(states::singlet()), oracle::BathState::fully_mixed(), t).matrix();
    CHECK(std::abs((s0.adjoint() * rho * s0)(0, 0).real() - singlet_survival(csys, t)) < 1e-10);
  }
}

TEST_CASE("sector-projected bath matches a single-sector distribution") {
  const int n = 5;
  const HalfSpin spin = HalfSpin::from_twice(3);
  const auto full = common(n, 1.0, 0.3, 1.5);
  const CommonBathEvolver ev(CommonBathSystem{1.0, 0.3, 1.5, BathDistribution::delta(spin)});
  Gen gen(17);
  const DensityMatrix4 rho(gen.density());
  for (double t : {0.5, 2.5}) {
    const Mat4c a = full.evolve_reduced(rho, oracle::BathState::sector_projected(spin), t).matrix();
    CHECK((a - ev.evolve(rho, t).matrix()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("inhomogeneous mode with equal couplings reduces to common mode") {
  const int n = 4;
  const auto a = oracle::FullSystem::build(oracle::Mode::Inhomogeneous, n,
                                           {0.0, 0.0, 0.8, std::vector<double>(n, 1.1), std::vector<double>(n, 0.2)});
  const auto b = common(n, 1.1, 0.2, 0.8);
  CHECK((a.dense_hamiltonian() - b.dense_hamiltonian()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("bath spin spectrum") {
  for (int n = 1; n <= 6; ++n) CHECK(oracle::bath_spin_spectrum_check(n).matches());
  const auto t2 = oracle::bath_spin_spectrum_check(2);
  for (const auto& row : t2.rows) {
    if (row.spin.twice() == 0) CHECK(row.observed == 1);
    if (row.spin.twice() == 2) CHECK(row.observed == 3);
  }
  const auto t3 = oracle::bath_spin_spectrum_check(3);
  for (const auto& row : t3.rows) {
    if (row.spin.twice() == 1) CHECK(row.observed == 4);
    if (row.spin.twice() == 3) CHECK(row.observed == 4);
  }
  const auto t1 = oracle::bath_spin_spectrum_check(1);
  REQUIRE(t1.rows.size() == 1);
  CHECK(t1.rows[0].eigenvalue == doctest::Approx(0.75));
  CHECK(t1.rows[0].observed == 2);
}

TEST_CASE("bath spin eigenvectors") {
  const auto vecs = oracle::bath_spin_eigenvectors(4, HalfSpin::from_twice(2));
  CHECK(vecs.size() == 9);
}
