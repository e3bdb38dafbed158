#pragma once

#include <array>
#include <memory>
#include <vector>

#include "spinbath/bath.hpp"
#include "spinbath/polarization.hpp"

namespace spinbath {

/// H = (K_A S_A + K_B S_B).I + J S_A.S_B with one shared unpolarized bath.
struct CommonBathSystem {
  double k_a = 1.0;
  double k_b = 1.0;
  double j = 0.0;
  BathDistribution bath = BathDistribution::delta(HalfSpin::from_twice(1));
};

/// Eigen-structure of one bath sector. Energies are for the exchange term
/// written as J S^2/2 (J S_A.S_B shifted by 3J/4), which puts the singlet at 0.
struct SectorSpectrum {
  HalfSpin spin;
  /// Eigenvalues of the F = I block spanned by the singlet and the F = I
  /// triplet, zeta_plus >= zeta_minus.
  double zeta_plus = 0.0;
  double zeta_minus = 0.0;
  /// F = I+1 and F = I-1 triplet levels.
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lam_plus = 0.0;
  double lam_minus = 0.0;
  /// Normalized diagonal gap and signed mixing of the F = I block; p^2 + q^2 = 1.
  double p = 1.0;
  double q = 0.0;
};

SectorSpectrum sector_spectrum(const CommonBathSystem& sys, HalfSpin spin);

/// Sector propagator exp(-iHt) written as
///   U = (a1 + a2 D)(1 - Sigma) + (a3 + a4 X + a5 X^2 + a6 D + a7 (S_A x S_B).I) Sigma
/// with X = S.I, D = (S_A - S_B).I and Sigma = S^2/2 the triplet projector.
struct SectorCoefficients {
  SectorSpectrum spectrum;
  double t = 0.0;
  std::array<Complex, 7> a{};

  Complex a1() const { return a[0]; }
  Complex a2() const { return a[1]; }
  Complex a3() const { return a[2]; }
  Complex a4() const { return a[3]; }
  Complex a5() const { return a[4]; }
  Complex a6() const { return a[5]; }
  Complex a7() const { return a[6]; }
};

SectorCoefficients a_coefficients(const CommonBathSystem& sys, HalfSpin spin, double t);

/// Operators on the 4(2I+1)-dimensional space qubits (x) spin I. Basis index
/// is qubit_index * (2I+1) + k with bath magnetization m = I - k.
struct SectorOperators {
  explicit SectorOperators(HalfSpin spin);

  HalfSpin spin;
  std::array<Eigen::MatrixXcd, 3> s_a;
  std::array<Eigen::MatrixXcd, 3> s_b;
  std::array<Eigen::MatrixXcd, 3> bath;
  Eigen::MatrixXcd x;      // (S_A + S_B).I
  Eigen::MatrixXcd d;      // (S_A - S_B).I
  Eigen::MatrixXcd cross;  // (S_A x S_B).I
  Eigen::MatrixXcd sigma;  // S^2/2

  /// Projectors onto total-spin levels: F=I+1 triplet, F=I singlet,
  /// F=I triplet, F=I-1 triplet (empty levels give zero matrices).
  std::array<Eigen::MatrixXcd, 4> projectors() const;
};

/// Dense sector Hamiltonian K_A S_A.I + K_B S_B.I + J S^2/2.
Eigen::MatrixXcd sector_hamiltonian(const CommonBathSystem& sys, HalfSpin spin);

/// exp(-iHt) on the sector from the spectral decomposition of the dense matrix.
Eigen::MatrixXcd sector_unitary_dense(const CommonBathSystem& sys, HalfSpin spin, double t);

/// Sector propagator assembled from the a-coefficients.
Eigen::MatrixXcd sector_unitary_from_coefficients(const SectorCoefficients& c);

/// Coefficients of the polarization map for K_A = K_B:
///   P_A(t) = f1 P_A + f2 P_B + f3 v,    v_n = eps_nij Pi^ij
///   P_B(t) = f4 P_B + f5 P_A - f6 v
///   Pi(t)  = f7 Pi + f8 Pi^T + f9 Tr(Pi) 1 + f10 eps_mnk (P_A - P_B)_k
struct FCoefficients {
  Complex f0{1.0, 0.0};
  double f1 = 1.0, f2 = 0.0, f3 = 0.0, f4 = 1.0, f5 = 0.0, f6 = 0.0;
  double f7 = 1.0, f8 = 0.0, f9 = 0.0, f10 = 0.0;
};

FCoefficients f_coefficients_symmetric(const CommonBathSystem& sys, double t);

TwoQubitState apply_f_map(const FCoefficients& f, const TwoQubitState& s0);

TwoQubitState evolve_symmetric(const CommonBathSystem& sys, const TwoQubitState& s0, double t);

/// Sector-exact reduced dynamics for arbitrary K_A, K_B, J. Each sector is
/// split into blocks of fixed total F^z (at most 4 states), diagonalized once.
class CommonBathEvolver {
 public:
  explicit CommonBathEvolver(CommonBathSystem sys);
  ~CommonBathEvolver();
  CommonBathEvolver(CommonBathEvolver&&) noexcept;
  CommonBathEvolver& operator=(CommonBathEvolver&&) noexcept;

  const CommonBathSystem& system() const { return sys_; }

  DensityMatrix4 evolve(const DensityMatrix4& rho0, double t) const;
  TwoQubitState evolve(const TwoQubitState& s0, double t) const;

 private:
  struct Impl;
  CommonBathSystem sys_;
  std::unique_ptr<Impl> impl_;
};

TwoQubitState evolve_asymmetric(const CommonBathSystem& sys, const TwoQubitState& s0, double t);

/// Reduced state for the input [(1+r)|S0> + (1-r)|T0>]/sqrt(2(1+r^2)):
///   rho = c1 |S0><S0| + c2 |T0><T0| + c4 (|T1><T1| + |T2><T2|)
///       + c3 |T0><S0| + c5 |T1><T2| + h.c.
struct BellClassCoefficients {
  double c1 = 1.0;
  double c2 = 0.0;
  Complex c3{0.0, 0.0};
  double c4 = 0.0;
  Complex c5{0.0, 0.0};

  DensityMatrix4 density() const;
};

BellClassCoefficients bell_class_coefficients(const CommonBathSystem& sys, double r, double t);

/// <S0|rho(t)|S0> for a singlet input: sum lambda [cos^2 + p^2 sin^2](Lambda_- t).
double singlet_survival(const CommonBathSystem& sys, double t);

/// beta = (K_A - K_B) sqrt(N) / (2J).
double large_j_beta(const CommonBathSystem& sys);

/// 1 - 3 beta^2 [1 - cos(Jt + 5/2 atan(beta t)) / (1 + beta^2 t^2)^(5/4)].
double singlet_survival_large_j(const CommonBathSystem& sys, double t);

/// J / ((K_A + K_B) sqrt(<I(I+1)>)); the large-J form needs this >= 10.
double large_j_ratio(const CommonBathSystem& sys);

/// R = Tr(Pi Pi) - (Tr Pi)^2.
double r_parameter(const TwoQubitState& s);

/// 1/tau_D^2 = <I(I+1)> [(K_A^2 + K_B^2)(3 - P^2) + K_A K_B R] / 6 for a pure
/// initial state; independent of J.
double short_time_tau_inv_sq_common(const TwoQubitState& s0, const CommonBathSystem& sys);
double short_time_tau_common(const TwoQubitState& s0, const CommonBathSystem& sys);

/// Quadratic decay coefficients of Pi^xx and Pi^zz for a T0 input at K_A = K_B:
/// (2/3) K^2 <I(I+1)> and (4/3) K^2 <I(I+1)>.
struct TransverseLongitudinalRates {
  double rate_xx = 0.0;
  double rate_zz = 0.0;
};

TransverseLongitudinalRates transverse_longitudinal_rates(const CommonBathSystem& sys);

}  // namespace spinbath
