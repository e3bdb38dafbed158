#include "spinbath/polarization.hpp"

#include <algorithm>
#include <string>

#include <Eigen/Eigenvalues>

namespace spinbath {

namespace {

constexpr Complex kI{0.0, 1.0};

Eigen::Matrix2cd pauli_half(int m) {
  Eigen::Matrix2cd s;
  switch (m) {
    case 0: s << 0.0, 0.5, 0.5, 0.0; break;
    case 1: s << 0.0, -0.5 * kI, 0.5 * kI, 0.0; break;
    default: s << 0.5, 0.0, 0.0, -0.5; break;
  }
  return s;
}

Mat4c kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Mat4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

struct OperatorTable {
  std::array<Mat4c, 3> a;
  std::array<Mat4c, 3> b;
  Mat4c syy;
  Mat4c bell;

  OperatorTable() {
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    for (int m = 0; m < 3; ++m) {
      a[m] = kron(pauli_half(m), id);
      b[m] = kron(id, pauli_half(m));
    }
    const Eigen::Matrix2cd sy = 2.0 * pauli_half(1);
    syy = kron(sy, sy);

    const double h = 1.0 / std::sqrt(2.0);
    bell.setZero();
    bell(1, 0) = h;  bell(2, 0) = -h;  // S0
    bell(1, 1) = h;  bell(2, 1) = h;   // T0
    bell(0, 2) = h;  bell(3, 2) = h;   // T1
    bell(0, 3) = h;  bell(3, 3) = -h;  // T2
  }
};

const OperatorTable& table() {
  static const OperatorTable t;
  return t;
}

double hermitian_defect(const Mat4c& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

namespace ops {
const Mat4c& spin_a(int m) { return table().a.at(m); }
const Mat4c& spin_b(int m) { return table().b.at(m); }
const Mat4c& sigma_yy() { return table().syy; }
const Mat4c& bell_basis() { return table().bell; }
}  // namespace ops

DensityMatrix4::DensityMatrix4(const Mat4c& m, double tol) : m_(m) {
  if (!m.allFinite()) throw InvalidInput("density matrix has non-finite entries");
  const double herm = hermitian_defect(m);
  if (herm > tol) {
    throw InvalidInput("density matrix is not Hermitian (defect " +
                       std::to_string(herm) + ")");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > tol) {
    throw InvalidInput("density matrix trace is " + std::to_string(tr.real()) +
                       ", expected 1");
  }
}

DensityMatrix4 DensityMatrix4::trusted(const Mat4c& m) {
  return DensityMatrix4(m, Trusted{});
}

PhysicalityReport check_physical(const DensityMatrix4& rho, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat4c> es(rho.matrix(), Eigen::EigenvaluesOnly);
  PhysicalityReport r;
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  r.physical = r.min_eigenvalue >= -tol;
  return r;
}

DensityMatrix4 state_to_density(const TwoQubitState& s) {
  Mat4c rho = Mat4c::Identity() / 4.0;
  for (int m = 0; m < 3; ++m) {
    rho += 0.5 * s.p_a(m) * ops::spin_a(m);
    rho += 0.5 * s.p_b(m) * ops::spin_b(m);
    for (int n = 0; n < 3; ++n)
      rho += s.pi(m, n) * ops::spin_a(m) * ops::spin_b(n);
  }
  return DensityMatrix4::trusted(rho);
}

TwoQubitState density_to_state(const DensityMatrix4& rho) {
  const Mat4c& r = rho.matrix();
  TwoQubitState s;
  for (int m = 0; m < 3; ++m) {
    s.p_a(m) = 2.0 * (r * ops::spin_a(m)).trace().real();
    s.p_b(m) = 2.0 * (r * ops::spin_b(m)).trace().real();
    for (int n = 0; n < 3; ++n)
      s.pi(m, n) = 4.0 * (r * ops::spin_a(m) * ops::spin_b(n)).trace().real();
  }
  return s;
}

double purity(const TwoQubitState& s) {
  return 0.25 * (1.0 + s.p_a.squaredNorm() + s.p_b.squaredNorm() +
                 s.pi.squaredNorm());
}

double decoherence_measure(const TwoQubitState& s) { return 1.0 - purity(s); }

double single_qubit_decoherence(const Vec3& p) {
  return 0.5 * (1.0 - p.squaredNorm());
}

double concurrence(const DensityMatrix4& rho) {
  // Hermitian route: the eigenvalues of sqrt(rho) rho~ sqrt(rho) equal those
  // of rho rho~ and are real and non-negative.
  Eigen::SelfAdjointEigenSolver<Mat4c> es(rho.matrix());
  const Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Mat4c sqrt_rho = es.eigenvectors() * ev.asDiagonal() *
                         es.eigenvectors().adjoint();
  const Mat4c& yy = ops::sigma_yy();
  const Mat4c tilde = yy * rho.matrix().conjugate() * yy;
  Mat4c m = sqrt_rho * tilde * sqrt_rho;
  m = 0.5 * (m + m.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Mat4c> es2(m, Eigen::EigenvaluesOnly);
  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(0.0, es2.eigenvalues()(i)));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double concurrence(const TwoQubitState& s) {
  return concurrence(state_to_density(s));
}

double concurrence_sz_block(const TwoQubitState& s) {
  const Mat4c r = state_to_density(s).matrix();
  // Total S^z: +1 for index 0, 0 for 1 and 2, -1 for 3.
  constexpr std::array<int, 4> sz{1, 0, 0, -1};
  constexpr std::array<const char*, 4> label{"uu", "ud", "du", "dd"};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (sz[i] != sz[j] && std::abs(r(i, j)) > 1e-10) {
        throw InvalidInput(std::string("state does not commute with total S^z: "
                                       "coherence <") + label[i] + "|rho|" +
                           label[j] + "> = " + std::to_string(std::abs(r(i, j))));
      }
    }
  }
  const double coh = std::hypot(s.pi(0, 0) + s.pi(1, 1), s.pi(0, 1) - s.pi(1, 0));
  const double pz = s.p_a(2) + s.p_b(2);
  // 2 sqrt(rho_uu rho_dd) in polarization form.
  const double pop = std::sqrt(std::max(0.0, (1.0 + s.pi(2, 2)) * (1.0 + s.pi(2, 2)) - pz * pz));
  return 0.5 * std::max(coh - pop, 0.0);
}

namespace states {

TwoQubitState from_ket(const Eigen::Vector4cd& ket) {
  const Eigen::Vector4cd v = ket.normalized();
  return density_to_state(DensityMatrix4::trusted(v * v.adjoint()));
}

namespace {
TwoQubitState correlated(double xx, double yy, double zz) {
  TwoQubitState s;
  s.pi.diagonal() << xx, yy, zz;
  return s;
}
}  // namespace

// Bell states and |ud> have integer polarizations; build them exactly.
TwoQubitState singlet() { return correlated(-1.0, -1.0, -1.0); }
TwoQubitState triplet0() { return correlated(1.0, 1.0, -1.0); }
TwoQubitState bell_t1() { return correlated(1.0, -1.0, 1.0); }
TwoQubitState bell_t2() { return correlated(-1.0, 1.0, 1.0); }

TwoQubitState up_down() {
  TwoQubitState s = correlated(0.0, 0.0, -1.0);
  s.p_a.z() = 1.0;
  s.p_b.z() = -1.0;
  return s;
}

TwoQubitState r_state(double r) {
  const Eigen::Vector4cd v = ((1.0 + r) * ops::bell_basis().col(0) +
                              (1.0 - r) * ops::bell_basis().col(1)) /
                             std::sqrt(2.0 * (1.0 + r * r));
  return from_ket(v);
}

TwoQubitState sz_superposition(double r) {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  v(1) = 1.0;
  v(2) = r;
  return from_ket(v);
}

TwoQubitState werner(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidInput("werner weight p must lie in [0, 1], got " + std::to_string(p));
  }
  TwoQubitState s;
  s.pi = -p * Mat3::Identity();
  return s;
}

Eigen::Vector4cd general_pure_ket(Complex gamma, double theta, double phi) {
  const Complex eip = std::polar(1.0, phi);
  const Eigen::Vector2cd up_z(1.0, 0.0);
  const Eigen::Vector2cd down_z(0.0, 1.0);
  const Eigen::Vector2cd up_n(std::cos(theta / 2), eip * std::sin(theta / 2));
  const Eigen::Vector2cd down_n(-std::conj(eip) * std::sin(theta / 2), std::cos(theta / 2));
  auto prod = [](const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
    Eigen::Vector4cd v;
    v << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
    return v;
  };
  const Eigen::Vector4cd v = prod(up_z, down_n) - gamma * prod(down_z, up_n);
  return v / std::sqrt(1.0 + std::norm(gamma));
}

TwoQubitState general_pure(Complex gamma, double theta, double phi) {
  return from_ket(general_pure_ket(gamma, theta, phi));
}

namespace {
constexpr std::array<NamedStateInfo, 9> kCatalog{{
    {"singlet", 0},
    {"triplet0", 0},
    {"bell_T1", 0},
    {"bell_T2", 0},
    {"up_down", 0},
    {"r_state", 1},
    {"sz_superposition", 1},
    {"werner", 1},
    {"general_pure", 4},
}};
}  // namespace

std::span<const NamedStateInfo> named_state_catalog() { return kCatalog; }

TwoQubitState make_named_state(std::string_view name, std::span<const double> params) {
  const auto it = std::find_if(kCatalog.begin(), kCatalog.end(),
                               [&](const NamedStateInfo& e) { return e.name == name; });
  if (it == kCatalog.end()) {
    throw InvalidInput("unknown state name '" + std::string(name) + "'");
  }
  if (static_cast<int>(params.size()) != it->n_params) {
    throw InvalidInput("state '" + std::string(name) + "' expects " +
                       std::to_string(it->n_params) + " parameter(s), got " +
                       std::to_string(params.size()));
  }
  if (name == "singlet") return singlet();
  if (name == "triplet0") return triplet0();
  if (name == "bell_T1") return bell_t1();
  if (name == "bell_T2") return bell_t2();
  if (name == "up_down") return up_down();
  if (name == "r_state") return r_state(params[0]);
  if (name == "sz_superposition") return sz_superposition(params[0]);
  if (name == "werner") return werner(params[0]);
  return general_pure(Complex(params[0], params[1]), params[2], params[3]);
}

}  // namespace states

}  // namespace spinbath
