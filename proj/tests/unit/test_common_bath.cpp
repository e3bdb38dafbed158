#include <doctest.h>

#include <algorithm>
#include <vector>

#include "spinbath/common_bath.hpp"
#include "spinbath/oracle.hpp"
#include "test_support.hpp"

using namespace spinbath;
using spinbath::testing::Gen;
using spinbath::testing::max_abs_diff;

namespace {

CommonBathSystem make_system(double ka, double kb, double j, int n) {
  return CommonBathSystem{ka, kb, j, unpolarized_exact(n)};
}

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("sector spectrum matches dense diagonalization") {
  for (double j : {0.0, 0.7, 5.0}) {
    for (int twice : {1, 2, 5}) {
      const HalfSpin spin = HalfSpin::from_twice(twice);
      const CommonBathSystem sys{1.3, 0.4, j, BathDistribution::delta(spin)};
      const SectorSpectrum sp = sector_spectrum(sys, spin);
      std::vector<double> expected;
      const int m = spin.multiplicity();
      for (int i = 0; i < m + 2; ++i) expected.push_back(sp.lambda1);
      for (int i = 0; i < m; ++i) {
        expected.push_back(sp.zeta_plus);
        expected.push_back(sp.zeta_minus);
      }
      for (int i = 0; i < m - 2; ++i) expected.push_back(sp.lambda2);
      std::sort(expected.begin(), expected.end());
      const auto got = sorted_eigenvalues(sector_hamiltonian(sys, spin));
      REQUIRE(got.size() == expected.size());
      for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-12));
      CHECK(sp.p * sp.p + sp.q * sp.q == doctest::Approx(1.0));
    }
    const CommonBathSystem zero{1.3, 0.4, j, BathDistribution::delta(HalfSpin{})};
    const auto got = sorted_eigenvalues(sector_hamiltonian(zero, HalfSpin{}));
    REQUIRE(got.size() == 4);
    CHECK(got[0] == doctest::Approx(0.0));
    for (int i = 1; i < 4; ++i) CHECK(got[i] == doctest::Approx(j));
  }
}

TEST_CASE("a-coefficient propagator equals the matrix exponential") {
  for (int twice : {0, 1, 2, 3, 6}) {
    const HalfSpin spin = HalfSpin::from_twice(twice);
    for (auto [ka, kb, j] : {std::tuple{1.0, 1.0, 0.0}, {1.0, 0.4, 1.0}, {0.3, 1.7, 20.0}}) {
      const CommonBathSystem sys{ka, kb, j, BathDistribution::delta(spin)};
      for (double t : {0.0, 0.37, 2.9}) {
        const Eigen::MatrixXcd u = sector_unitary_from_coefficients(a_coefficients(sys, spin, t));
        const Eigen::MatrixXcd ref = spinbath::testing::expm_taylor(sector_hamiltonian(sys, spin), t);
        CHECK((u - ref).cwiseAbs().maxCoeff() < 1e-11);
        CHECK((sector_unitary_dense(sys, spin, t) - ref).cwiseAbs().maxCoeff() < 1e-11);
      }
    }
  }
}

TEST_CASE("a7 vanishes and the F = I block coefficients are unitary-consistent") {
  const HalfSpin spin = HalfSpin::from_twice(3);
  const CommonBathSystem sys{1.0, 0.2, 2.0, BathDistribution::delta(spin)};
  const auto c = a_coefficients(sys, spin, 1.1);
  CHECK(std::abs(c.a7()) == 0.0);
  CHECK(std::abs(c.a2() - c.a6()) < 1e-15);
}

TEST_CASE("projectors resolve the identity") {
  for (int twice : {0, 1, 4}) {
    const SectorOperators ops(HalfSpin::from_twice(twice));
    const auto p = ops.projectors();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(ops.x.rows(), ops.x.cols());
    for (const auto& m : p) {
      sum += m;
      CHECK((m * m - m).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK((sum - Eigen::MatrixXcd::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("sector-exact evolution agrees with the full-space oracle") {
  Gen gen(11);
  for (auto [ka, kb, j] : {std::tuple{1.0, 1.0, 0.0}, {1.0, 0.4, 1.0}, {0.8, -0.3, 3.0}}) {
    const int n = 5;
    const CommonBathEvolver ev(make_system(ka, kb, j, n));
    const auto full = oracle::FullSystem::build(oracle::Mode::Common, n, {ka, kb, j, {}, {}});
    for (int k = 0; k < 3; ++k) {
      const DensityMatrix4 rho(gen.density());
      const double t = gen.uniform(0.0, 6.0);
      const Mat4c a = ev.evolve(rho, t).matrix();
      const Mat4c b = full.evolve_reduced(rho, oracle::BathState::fully_mixed(), t).matrix();
      CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("symmetric f-map equals sector-exact evolution") {
  Gen gen(5);
  for (double j : {0.0, 1.0, 7.5}) {
    const CommonBathSystem sys = make_system(1.0, 1.0, j, 8);
    const CommonBathEvolver ev(sys);
    for (int k = 0; k < 4; ++k) {
      const TwoQubitState s0 = density_to_state(DensityMatrix4(gen.density()));
      const double t = gen.uniform(0.0, 5.0);
      CHECK(max_abs_diff(evolve_symmetric(sys, s0, t), ev.evolve(s0, t)) < 1e-11);
    }
  }
  CHECK_THROWS_AS(f_coefficients_symmetric(make_system(1.0, 0.5, 0.0, 4), 1.0), InvalidInput);
}

TEST_CASE("f-coefficient identities hold") {
  const CommonBathSystem sys = make_system(1.0, 1.0, 2.0, 10);
  for (double t : {0.3, 1.7, 4.0}) {
    const FCoefficients f = f_coefficients_symmetric(sys, t);
    CHECK(f.f1 == doctest::Approx(f.f4));
    CHECK(f.f2 == doctest::Approx(f.f1 - f.f0.real()));
    CHECK(f.f8 == doctest::Approx(f.f7 - f.f0.real()));
    CHECK(f.f7 + f.f8 + 3.0 * f.f9 == doctest::Approx(1.0));
    CHECK(f.f10 == doctest::Approx(-f.f3));
  }
  const FCoefficients f0 = f_coefficients_symmetric(sys, 0.0);
  CHECK(f0.f1 == doctest::Approx(1.0));
  CHECK(f0.f7 == doctest::Approx(1.0));
  CHECK(f0.f2 == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("Bell-class coefficients reproduce the evolved density matrix") {
  for (auto [ka, kb, j] : {std::tuple{1.0, 1.0, 0.0}, {1.0, 0.4, 1.0}, {1.5, 0.5, 10.0}}) {
    const CommonBathSystem sys = make_system(ka, kb, j, 6);
    const CommonBathEvolver ev(sys);
    for (double r : {-0.5, 0.0, 0.5, 1.0}) {
      for (double t : {0.4, 2.2}) {
        const Mat4c a = bell_class_coefficients(sys, r, t).density().matrix();
        const Mat4c b = ev.evolve(state_to_density(states::r_state(r)), t).matrix();
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-11);
      }
    }
  }
}

TEST_CASE("singlet survival equals the singlet population") {
  const CommonBathSystem sys = make_system(1.0, 0.4, 3.0, 7);
  const CommonBathEvolver ev(sys);
  const Eigen::Vector4cd s0 = ops::bell_basis().col(0);
  for (double t : {0.0, 0.5, 3.3}) {
    const Mat4c rho = ev.evolve(state_to_density(states::singlet()), t).matrix();
    CHECK(singlet_survival(sys, t) == doctest::Approx((s0.adjoint() * rho * s0)(0, 0).real()).epsilon(1e-12));
  }
}

TEST_CASE("evolution preserves trace, Hermiticity and positivity") {
  Gen gen(99);
  const CommonBathEvolver ev(make_system(0.9, 0.35, 1.5, 9));
  for (int k = 0; k < 10; ++k) {
    const DensityMatrix4 rho(gen.density());
    const Mat4c out = ev.evolve(rho, gen.uniform(0.0, 10.0)).matrix();
    CHECK(std::abs(out.trace() - 1.0) < 1e-12);
    CHECK((out - out.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(check_physical(DensityMatrix4::trusted(out), 1e-12).physical);
  }
}

TEST_CASE("R parameter special values") {
  CHECK(r_parameter(states::singlet()) == doctest::Approx(-6.0).epsilon(1e-15));
  CHECK(r_parameter(states::triplet0()) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r_parameter(states::bell_t1()) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r_parameter(states::up_down()) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("short-time rate matches the quadratic coefficient of D") {
  Gen gen(3);
  for (auto [ka, kb, j] : {std::tuple{1.0, 1.0, 0.0}, {1.0, 0.4, 5.0}}) {
    const CommonBathSystem sys = make_system(ka, kb, j, 6);
    const CommonBathEvolver ev(sys);
    for (int k = 0; k < 3; ++k) {
      const TwoQubitState s0 = states::from_ket(gen.ket());
      const double rate = short_time_tau_inv_sq_common(s0, sys);
      auto purity_at = [&](double t) { return purity(ev.evolve(s0, t)); };
      const double fitted = spinbath::testing::quadratic_coefficient(purity_at, 1e-3);
      CHECK(fitted == doctest::Approx(rate).epsilon(1e-5));
    }
  }
  CHECK_THROWS_AS(short_time_tau_common(states::singlet(), make_system(1.0, 1.0, 0.0, 4)), Divergence);
  CHECK_THROWS_AS(short_time_tau_inv_sq_common(states::werner(0.5), make_system(1.0, 1.0, 0.0, 4)),
                  InvalidInput);
}

TEST_CASE("transverse and longitudinal rates differ by a factor of two") {
  const CommonBathSystem sys = make_system(1.0, 1.0, 0.0, 8);
  const CommonBathEvolver ev(sys);
  const TransverseLongitudinalRates rates = transverse_longitudinal_rates(sys);
  CHECK(rates.rate_zz == doctest::Approx(2.0 * rates.rate_xx));
  const TwoQubitState t0 = states::triplet0();
  auto pxx = [&](double t) { return ev.evolve(t0, t).pi(0, 0); };
  auto pzz = [&](double t) { return ev.evolve(t0, t).pi(2, 2); };
  CHECK(spinbath::testing::quadratic_coefficient(pxx, 1e-3) == doctest::Approx(rates.rate_xx).epsilon(1e-5));
  CHECK(spinbath::testing::quadratic_coefficient(pzz, 1e-3) == doctest::Approx(rates.rate_zz).epsilon(1e-5));
}

TEST_CASE("large-J singlet survival tracks the exact result") {
  const CommonBathSystem sys{1.2, 0.8, 100.0, gaussian_approx(100, GaussianVariant::Sec3a)};
  const double beta = large_j_beta(sys);
  CHECK(large_j_ratio(sys) > 1.0);
  for (double t : {0.05, 0.5, 2.0}) {
    CHECK(std::abs(singlet_survival_large_j(sys, t) - singlet_survival(sys, t)) < 10.0 * beta * beta);
  }
}
