#pragma once

#include <vector>

#include "spinbath/common_bath.hpp"

namespace spinbath {

/// (|up_z, down_n> - gamma |down_z, up_n>)/sqrt(1+|gamma|^2), n at (theta, phi).
struct PureStateParam {
  Complex gamma{0.0, 0.0};
  double theta = 0.0;
  double phi = 0.0;
};

/// (2/3) <I(I+1)> Var(K_A S_A + K_B S_B) on a pure two-qubit state.
double tau_inv_sq_general(const TwoQubitState& s0, const CommonBathSystem& sys);

/// delta = 2 K_A K_B / (K_A^2 + K_B^2).
double delta_from_couplings(double k_a, double k_b);

/// scale = <I(I+1)> (K_A^2 + K_B^2) / 3.
double tau_scale(const CommonBathSystem& sys);

/// scale [1 + 2|g|^2 (1 - delta cos theta)/(1+|g|^2)^2
///          - 2 delta cos^2(theta/2) Re g/(1+|g|^2)]
double tau_inv_sq_pure(const PureStateParam& param, double delta, double scale = 1.0);

/// Real gamma minimizing tau_inv_sq_pure at theta = 0.
double gamma_opt(double delta);

struct ScanGrid {
  int points = 41;
  double gamma_extent = 3.0;
  int refine_sweeps = 60;
};

struct ScanResult {
  Complex gamma{0.0, 0.0};
  double theta = 0.0;
  double tau_inv_sq = 0.0;
  /// Grid spacings of the coarse stage.
  double gamma_step = 0.0;
  double theta_step = 0.0;
};

/// Coarse grid over (Re gamma, Im gamma, theta) with phi = 0, followed by
/// coordinate-wise golden-section refinement. Deterministic. The objective is
/// invariant under gamma -> 1/conj(gamma); the result has |gamma| <= 1.
ScanResult scan_optimum(double delta, const ScanGrid& grid = {});

/// Per-nucleus couplings and the bath scale factors.
struct InhomogeneousCouplings {
  std::vector<double> k_a;
  std::vector<double> k_b;
  double eta1 = 1.0;
  double eta2 = 1.0;
};

/// eta2 sum 2 K_A^i K_B^i / sum (K_A^i^2 + K_B^i^2).
double delta_from_inhomogeneous(const InhomogeneousCouplings& c);

struct LatticeSpec {
  /// Sites run over [-half_width, half_width]^2 with unit spacing.
  int half_width = 60;
};

/// K_q^i = exp(-|r_i - r_q|^2 / l^2) with the two centers at (-d/2, 0) and
/// (d/2, 0) on a square unit lattice.
InhomogeneousCouplings gaussian_couplings(double separation_d, double confinement_l,
                                          const LatticeSpec& lattice = {});

/// (eta1/3) <I(I+1)> (sum (K_A^i^2 + K_B^i^2) / N)
///   [1 + 2|g|^2 (1 - Delta)/(1+|g|^2)^2 - 2 Delta Re g/(1+|g|^2)]
double tau_inv_sq_inhomogeneous(Complex gamma, const InhomogeneousCouplings& c,
                                double moment_i_iplus1);

}  // namespace spinbath
