#pragma once

#include <array>
#include <span>
#include <string_view>

#include "spinbath/types.hpp"

namespace spinbath {

/// Two-qubit state in polarization form:
///   rho = I/4 + 1/2 P_A.S_A + 1/2 P_B.S_B + sum_mn Pi^{mn} S_A^m S_B^n
/// with S = sigma/2. P_X = 2 Tr[rho S_X], Pi^{mn} = 4 Tr[rho S_A^m S_B^n].
struct TwoQubitState {
  Vec3 p_a = Vec3::Zero();
  Vec3 p_b = Vec3::Zero();
  Mat3 pi = Mat3::Zero();
};

/// 4x4 density matrix in the basis {up-up, up-down, down-up, down-down}
/// (first label is qubit A, quantization along z).
class DensityMatrix4 {
 public:
  DensityMatrix4() : m_(Mat4c::Identity() / 4.0) {}

  /// Validates Hermiticity and unit trace to `tol`; throws InvalidInput.
  explicit DensityMatrix4(const Mat4c& m, double tol = 1e-10);

  /// Wraps a matrix known to be Hermitian with unit trace.
  static DensityMatrix4 trusted(const Mat4c& m);

  const Mat4c& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }

 private:
  struct Trusted {};
  DensityMatrix4(const Mat4c& m, Trusted) : m_(m) {}
  Mat4c m_;
};

struct PhysicalityReport {
  bool physical = true;
  double min_eigenvalue = 0.0;
};

/// Positivity check; eigenvalues below -tol mark the matrix non-physical.
PhysicalityReport check_physical(const DensityMatrix4& rho, double tol = 1e-12);

DensityMatrix4 state_to_density(const TwoQubitState& s);
TwoQubitState density_to_state(const DensityMatrix4& rho);

/// D = 1 - Tr rho^2 = [3 - P_A^2 - P_B^2 - sum (Pi^{mn})^2] / 4.
double decoherence_measure(const TwoQubitState& s);
double purity(const TwoQubitState& s);

/// Wootters concurrence, max(0, l1 - l2 - l3 - l4) with l_i the square roots
/// of the eigenvalues of rho (sy x sy) rho* (sy x sy) in decreasing order.
double concurrence(const DensityMatrix4& rho);
double concurrence(const TwoQubitState& s);

/// Closed form for states commuting with S_A^z + S_B^z. Throws InvalidInput
/// when a coherence between different total-S^z blocks exceeds 1e-10.
double concurrence_sz_block(const TwoQubitState& s);

/// Single-qubit reduced states and their linear entropy 1 - Tr rho_X^2.
double single_qubit_decoherence(const Vec3& p);

// --- Named states --------------------------------------------------------

namespace states {

TwoQubitState from_ket(const Eigen::Vector4cd& ket);

TwoQubitState singlet();
/// (|ud> + |du>)/sqrt2
TwoQubitState triplet0();
/// (|uu> + |dd>)/sqrt2
TwoQubitState bell_t1();
/// (|uu> - |dd>)/sqrt2
TwoQubitState bell_t2();
TwoQubitState up_down();

/// Bell-basis superposition [(1+r)|S0> + (1-r)|T0>] / sqrt(2(1+r^2)),
/// which equals (|ud> - r|du>)/sqrt(1+r^2).
TwoQubitState r_state(double r);

/// (|ud> + r|du>)/sqrt(1+r^2); P^z_A = -P^z_B = (1-r^2)/(1+r^2).
TwoQubitState sz_superposition(double r);

/// p|S0><S0| + (1-p) I/4, p in [0, 1].
TwoQubitState werner(double p);

/// (|up_z, down_n> - gamma |down_z, up_n>)/sqrt(1+|gamma|^2) with n the unit
/// vector at polar angles (theta, phi).
TwoQubitState general_pure(Complex gamma, double theta, double phi);
Eigen::Vector4cd general_pure_ket(Complex gamma, double theta, double phi);

/// Dispatch by name: singlet, triplet0, bell_T1, bell_T2, up_down,
/// r_state(r), sz_superposition(r), werner(p),
/// general_pure(re_gamma, im_gamma, theta, phi).
TwoQubitState make_named_state(std::string_view name,
                               std::span<const double> params = {});

/// Names accepted by make_named_state, with their parameter counts.
struct NamedStateInfo {
  std::string_view name;
  int n_params;
};
std::span<const NamedStateInfo> named_state_catalog();

}  // namespace states

// --- Operators and bases ---------------------------------------------------

namespace ops {

/// S_A^m (m = 0,1,2 for x,y,z) on the two-qubit space.
const Mat4c& spin_a(int m);
const Mat4c& spin_b(int m);
/// sigma_y x sigma_y
const Mat4c& sigma_yy();

/// Columns are |S0>, |T0>, |T1>, |T2>.
const Mat4c& bell_basis();

}  // namespace ops

}  // namespace spinbath
