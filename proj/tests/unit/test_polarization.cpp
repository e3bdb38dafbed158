#include <doctest.h>

#include <vector>

#include "spinbath/polarization.hpp"
#include "test_support.hpp"

using namespace spinbath;
using spinbath::testing::Gen;

namespace {

Mat4c projector(const Eigen::Vector4cd& v) { return v * v.adjoint(); }

Eigen::Vector4cd basis(int i) {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  v(i) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("state_to_density on reference states") {
  CHECK((state_to_density(TwoQubitState{}).matrix() - Mat4c::Identity() / 4.0).norm() < 1e-15);

  TwoQubitState singlet;
  singlet.pi = -Mat3::Identity();
  const Eigen::Vector4cd s0 = (basis(1) - basis(2)) / std::sqrt(2.0);
  CHECK((state_to_density(singlet).matrix() - projector(s0)).norm() < 1e-15);

  TwoQubitState ud;
  ud.p_a.z() = 1.0;
  ud.p_b.z() = -1.0;
  ud.pi(2, 2) = -1.0;
  CHECK((state_to_density(ud).matrix() - projector(basis(1))).norm() < 1e-15);
}

TEST_CASE("density_to_state on reference states") {
  const TwoQubitState mixed = density_to_state(DensityMatrix4());
  CHECK(mixed.p_a.norm() == 0.0);
  CHECK(mixed.pi.norm() == 0.0);

  // Direct traces: for the singlet <S_A^m S_B^n> = -delta_mn / 4.
  const TwoQubitState w = density_to_state(state_to_density(states::werner(0.6)));
  CHECK(w.p_a.norm() < 1e-15);
  CHECK(w.p_b.norm() < 1e-15);
  CHECK((w.pi + 0.6 * Mat3::Identity()).norm() < 1e-15);

  const TwoQubitState ud = density_to_state(DensityMatrix4(projector(basis(1))));
  CHECK(ud.p_a.z() == doctest::Approx(1.0));
  CHECK(ud.p_b.z() == doctest::Approx(-1.0));
  CHECK(ud.pi(2, 2) == doctest::Approx(-1.0));
}

TEST_CASE("density matrix validation") {
  Mat4c bad = Mat4c::Identity() / 4.0;
  bad(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix4{bad}, InvalidInput);
  CHECK_THROWS_AS(DensityMatrix4{Mat4c::Identity()}, InvalidInput);
  Mat4c neg = Mat4c::Zero();
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_NOTHROW(DensityMatrix4{neg});
  CHECK_FALSE(check_physical(DensityMatrix4(neg)).physical);
  CHECK(check_physical(DensityMatrix4(neg)).min_eigenvalue == doctest::Approx(-0.5));
}

TEST_CASE("decoherence measure") {
  Gen gen(1);
  for (int k = 0; k < 20; ++k) CHECK(decoherence_measure(states::from_ket(gen.ket())) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(decoherence_measure(TwoQubitState{}) == doctest::Approx(0.75));
  CHECK(decoherence_measure(states::werner(0.5)) == doctest::Approx(0.5625));
  // Independent route: 1 - Tr rho^2.
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix4 rho(gen.density());
    const double direct = 1.0 - (rho.matrix() * rho.matrix()).trace().real();
    CHECK(decoherence_measure(density_to_state(rho)) == doctest::Approx(direct).epsilon(1e-13));
  }
}

TEST_CASE("concurrence reference values") {
  CHECK(concurrence(states::singlet()) == doctest::Approx(1.0));
  CHECK(concurrence(states::up_down()) == doctest::Approx(0.0));
  CHECK(concurrence(states::werner(0.6)) == doctest::Approx(0.4));
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.9}) {
    CHECK(concurrence(states::werner(p)) == doctest::Approx(std::max((3.0 * p - 1.0) / 2.0, 0.0)).epsilon(1e-12));
  }
}

// Concurrence is square-root sensitive at rank-deficient states, so round-off
// of order 1e-16 in rho shows up near 1e-8.
TEST_CASE("concurrence equals 2|ad - bc| on pure states") {
  Gen gen(2);
  for (int k = 0; k < 50; ++k) {
    const Eigen::Vector4cd v = gen.ket();
    CHECK(std::abs(concurrence(states::from_ket(v)) - spinbath::testing::pure_concurrence(v)) < 1e-6);
  }
}

TEST_CASE("concurrence lies in [0, 1] and is invariant under local unitaries") {
  Gen gen(3);
  for (int k = 0; k < 30; ++k) {
    const Mat4c rho = gen.density();
    const double c = concurrence(DensityMatrix4(rho));
    CHECK(c >= 0.0);
    CHECK(c <= 1.0 + 1e-12);
    Eigen::Matrix2cd g1;
    Eigen::Matrix2cd g2;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        g1(i, j) = {gen.normal(), gen.normal()};
        g2(i, j) = {gen.normal(), gen.normal()};
      }
    const Eigen::Matrix2cd u1 = Eigen::HouseholderQR<Eigen::Matrix2cd>(g1).householderQ();
    const Eigen::Matrix2cd u2 = Eigen::HouseholderQR<Eigen::Matrix2cd>(g2).householderQ();
    Mat4c u;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) u.block<2, 2>(2 * i, 2 * j) = u1(i, j) * u2;
    const Mat4c rotated = u * rho * u.adjoint();
    CHECK(concurrence(DensityMatrix4(0.5 * (rotated + rotated.adjoint()))) == doctest::Approx(c).epsilon(1e-9));
  }
}

TEST_CASE("block concurrence matches the general formula") {
  CHECK(concurrence_sz_block(states::triplet0()) == doctest::Approx(1.0));
  CHECK(concurrence_sz_block(states::up_down()) == doctest::Approx(0.0));
  const TwoQubitState s = states::sz_superposition(0.5);
  CHECK(s.pi(0, 0) == doctest::Approx(0.8));
  CHECK(s.pi(1, 1) == doctest::Approx(0.8));
  CHECK(s.p_a.z() == doctest::Approx(0.6));
  CHECK(s.p_b.z() == doctest::Approx(-0.6));
  CHECK(concurrence_sz_block(s) == doctest::Approx(0.8));

  Gen gen(4);
  for (int k = 0; k < 40; ++k) {
    const DensityMatrix4 rho(gen.sz_block_density());
    CHECK(concurrence_sz_block(density_to_state(rho)) == doctest::Approx(concurrence(rho)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(concurrence_sz_block(states::bell_t1()), InvalidInput);
  CHECK_THROWS_WITH_AS(concurrence_sz_block(states::general_pure(Complex(1.0, 0.0), 1.0, 0.0)),
                       doctest::Contains("S^z"), InvalidInput);
}

TEST_CASE("round trip through the density matrix") {
  Gen gen(5);
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix4 rho(gen.density());
    const Mat4c back = state_to_density(density_to_state(rho)).matrix();
    CHECK((back - rho.matrix()).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("named states") {
  const TwoQubitState singlet = states::singlet();
  CHECK((singlet.pi + Mat3::Identity()).norm() < 1e-15);
  CHECK(spinbath::testing::max_abs_diff(states::r_state(1.0), singlet) < 1e-15);
  CHECK(spinbath::testing::max_abs_diff(states::werner(1.0), singlet) < 1e-15);
  CHECK(spinbath::testing::max_abs_diff(states::general_pure(Complex(0.0, 0.0), 0.0, 0.0), states::up_down()) < 1e-15);
  CHECK(spinbath::testing::max_abs_diff(states::general_pure(Complex(1.0, 0.0), 0.0, 0.0), singlet) < 1e-15);
  CHECK(spinbath::testing::max_abs_diff(states::r_state(-1.0), states::triplet0()) < 1e-15);

  const TwoQubitState t1 = states::bell_t1();
  CHECK(t1.pi(0, 0) == doctest::Approx(1.0));
  CHECK(t1.pi(1, 1) == doctest::Approx(-1.0));
  CHECK(t1.pi(2, 2) == doctest::Approx(1.0));
  const TwoQubitState t2 = states::bell_t2();
  CHECK(t2.pi(0, 0) == doctest::Approx(-1.0));
  CHECK(t2.pi(1, 1) == doctest::Approx(1.0));

  const std::vector<double> one{0.5};
  CHECK(spinbath::testing::max_abs_diff(states::make_named_state("r_state", one), states::r_state(0.5)) == 0.0);
  CHECK_THROWS_AS(states::make_named_state("bogus"), InvalidInput);
  CHECK_THROWS_AS(states::make_named_state("werner"), InvalidInput);
  CHECK_THROWS_AS(states::werner(1.5), InvalidInput);
  for (const auto& info : states::named_state_catalog()) {
    const std::vector<double> params(static_cast<std::size_t>(info.n_params), 0.5);
    const TwoQubitState s = states::make_named_state(info.name, params);
    CHECK(check_physical(state_to_density(s)).physical);
  }
}

TEST_CASE("exact Bell states agree with their kets") {
  const Mat4c& b = ops::bell_basis();
  CHECK(spinbath::testing::max_abs_diff(states::singlet(), states::from_ket(b.col(0))) < 1e-15);
  CHECK(spinbath::testing::max_abs_diff(states::triplet0(), states::from_ket(b.col(1))) < 1e-15);
  CHECK(spinbath::testing::max_abs_diff(states::bell_t1(), states::from_ket(b.col(2))) < 1e-15);
  CHECK(spinbath::testing::max_abs_diff(states::bell_t2(), states::from_ket(b.col(3))) < 1e-15);
  CHECK(spinbath::testing::max_abs_diff(states::up_down(), states::from_ket(basis(1))) < 1e-15);
  const Eigen::Vector4cd s0 = b.col(0);
  const Mat4c w = 0.3 * projector(s0) + 0.7 * Mat4c::Identity() / 4.0;
  CHECK(spinbath::testing::max_abs_diff(states::werner(0.3), density_to_state(DensityMatrix4(w))) < 1e-15);
}

TEST_CASE("single-qubit linear entropy") {
  CHECK(single_qubit_decoherence(Vec3::Zero()) == doctest::Approx(0.5));
  CHECK(single_qubit_decoherence(Vec3(0.0, 0.0, 1.0)) == doctest::Approx(0.0));
}
