#include <doctest.h>

#include <numbers>

#include "spinbath/timescale.hpp"
#include "spinbath/timeseries.hpp"
#include "test_support.hpp"

using namespace spinbath;
using spinbath::testing::Gen;

namespace {

CommonBathSystem system_with(double ka, double kb, int n = 6) {
  return CommonBathSystem{ka, kb, 0.0, unpolarized_exact(n)};
}

}  // namespace

TEST_CASE("general short-time rate") {
  const auto sym = system_with(1.0, 1.0);
  CHECK(std::abs(tau_inv_sq_general(states::singlet(), sym)) <= 1e-14);
  const auto asym = system_with(1.0, 0.4);
  const double m = moment(asym.bath, MomentKind::IIplus1);
  CHECK(tau_inv_sq_general(states::up_down(), asym) == doctest::Approx(m * (1.0 + 0.16) / 3.0));
  Gen gen(21);
  for (int k = 0; k < 100; ++k) {
    const auto sys = system_with(gen.uniform(-2.0, 2.0), gen.uniform(-2.0, 2.0));
    const TwoQubitState s = states::from_ket(gen.ket());
    CHECK(tau_inv_sq_general(s, sys) == doctest::Approx(short_time_tau_inv_sq_common(s, sys)).epsilon(1e-12));
  }
}

TEST_CASE("separable identity") {
  for (auto [ka, kb] : {std::pair{1.0, 1.0}, {1.0, 0.3}, {2.0, -0.7}}) {
    const auto sys = system_with(ka, kb);
    const double m = moment(sys.bath, MomentKind::IIplus1);
    const double tau_a_inv_sq = ka * ka * m / 3.0;
    const double tau_b_inv_sq = kb * kb * m / 3.0;
    CHECK(std::abs(short_time_tau_inv_sq_common(states::up_down(), sys) - (tau_a_inv_sq + tau_b_inv_sq)) < 1e-12);
  }
}

TEST_CASE("pure-state parametrization") {
  CHECK(tau_inv_sq_pure({}, 0.3, 2.5) == doctest::Approx(2.5));
  CHECK(tau_inv_sq_pure({Complex(1.0, 0.0), 0.0, 0.0}, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(tau_inv_sq_pure({Complex(-1.0, 0.0), 0.0, 0.0}, 1.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(tau_inv_sq_pure({}, 1.5), InvalidInput);

  Gen gen(4);
  for (int k = 0; k < 40; ++k) {
    const PureStateParam base{Complex(gen.normal(), gen.normal()), gen.uniform(0.0, std::numbers::pi), 0.0};
    const double delta = gen.uniform(-1.0, 1.0);
    double lo = 1e300;
    double hi = -1e300;
    for (double phi : linspace(0.0, 2.0 * std::numbers::pi, 9)) {
      PureStateParam p = base;
      p.phi = phi;
      const double v = tau_inv_sq_pure(p, delta);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(hi - lo <= 1e-14);
  }
}

TEST_CASE("parametrized rate equals the direct rate") {
  Gen gen(6);
  for (int k = 0; k < 50; ++k) {
    const double ka = gen.uniform(-2.0, 2.0);
    const double kb = gen.uniform(-2.0, 2.0);
    const auto sys = system_with(ka, kb);
    const PureStateParam p{Complex(gen.normal(), gen.normal()), gen.uniform(0.0, std::numbers::pi),
                           gen.uniform(0.0, 6.0)};
    const TwoQubitState s = states::general_pure(p.gamma, p.theta, p.phi);
    const double expected = tau_inv_sq_general(s, sys);
    const double got = tau_inv_sq_pure(p, delta_from_couplings(ka, kb), tau_scale(sys));
    CHECK(got == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("delta from couplings") {
  CHECK(delta_from_couplings(0.7, 0.7) == doctest::Approx(1.0));
  CHECK(delta_from_couplings(0.7, 0.0) == doctest::Approx(0.0));
  CHECK(delta_from_couplings(1.0, -1.0) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(delta_from_couplings(0.0, 0.0), InvalidInput);
  CHECK(delta_from_inhomogeneous({{0.3, 0.5, 1.0}, {0.3, 0.5, 1.0}, 1.0, 1.0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(delta_from_inhomogeneous({{0.0}, {0.0}, 1.0, 1.0}), InvalidInput);
}

TEST_CASE("optimal gamma") {
  CHECK(gamma_opt(0.5) == doctest::Approx(1.0));
  CHECK(gamma_opt(0.8) == doctest::Approx(1.0));
  CHECK(gamma_opt(0.0) == 0.0);
  CHECK(gamma_opt(1e-9) == doctest::Approx(5e-10).epsilon(1e-6));
  CHECK(gamma_opt(-1.0) == doctest::Approx(std::sqrt(3.0) - 2.0).epsilon(1e-12));
  CHECK(gamma_opt(0.5 - 1e-12) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK_THROWS_AS(gamma_opt(1.2), InvalidInput);
}

TEST_CASE("optimal gamma is a stationary point") {
  for (double delta : linspace(-1.0, 0.5, 101)) {
    const double g = gamma_opt(delta);
    const double h = 1e-5;
    auto f = [&](double x) { return tau_inv_sq_pure({Complex(x, 0.0), 0.0, 0.0}, delta); };
    CHECK(std::abs((f(g + h) - f(g - h)) / (2.0 * h)) <= 1e-8);
  }
}

TEST_CASE("grid scan finds the analytic optimum") {
  for (double delta : {0.0, 0.3, 0.8, -0.6}) {
    const ScanResult r = scan_optimum(delta);
    CHECK(std::abs(r.gamma.real() - gamma_opt(delta)) < 1e-4);
    CHECK(std::abs(r.gamma.imag()) <= r.gamma_step);
    if (gamma_opt(delta) != 0.0) CHECK(std::abs(r.theta) <= r.theta_step);
  }
}

TEST_CASE("Gaussian envelope couplings") {
  CHECK(delta_from_inhomogeneous(gaussian_couplings(0.0, 3.0)) == doctest::Approx(1.0));
  CHECK(delta_from_inhomogeneous(gaussian_couplings(30.0, 3.0)) < 1e-10);
  const double d = delta_from_inhomogeneous(gaussian_couplings(4.0, 4.0));
  CHECK(d == doctest::Approx(std::exp(-0.5)).epsilon(1e-6));
  CHECK(std::abs(d - 0.6) <= 0.05);
  CHECK_THROWS_AS(gaussian_couplings(4.0, 20.0, LatticeSpec{30}), InvalidInput);
}

TEST_CASE("inhomogeneous rate reduces to the homogeneous one") {
  const int n = 50;
  InhomogeneousCouplings c{std::vector<double>(n, 1.2), std::vector<double>(n, 0.4), 1.0, 1.0};
  const double delta = delta_from_couplings(1.2, 0.4);
  CHECK(delta_from_inhomogeneous(c) == doctest::Approx(delta));
  const double m = 7.5;
  const double scale = m * (1.2 * 1.2 + 0.4 * 0.4) / 3.0;
  for (double g : {-0.8, 0.0, 0.4, 1.0})
    CHECK(tau_inv_sq_inhomogeneous(Complex(g, 0.0), c, m) == doctest::Approx(tau_inv_sq_pure({Complex(g, 0.0), 0.0, 0.0}, delta, scale)));

  InhomogeneousCouplings same{std::vector<double>(n, 1.0), std::vector<double>(n, 1.0), 1.0, 1.0};
  CHECK(tau_inv_sq_inhomogeneous(Complex(1.0, 0.0), same, m) == doctest::Approx(0.0).epsilon(1e-15));

  const auto env = gaussian_couplings(4.0, 4.0);
  const double big_delta = delta_from_inhomogeneous(env);
  const double best = tau_inv_sq_inhomogeneous(Complex(gamma_opt(big_delta), 0.0), env, m);
  for (double g : linspace(-2.0, 2.0, 401)) CHECK(tau_inv_sq_inhomogeneous(Complex(g, 0.0), env, m) >= best - 1e-14);
}
