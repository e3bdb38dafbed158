#pragma once

#include <optional>
#include <vector>

#include "spinbath/polarization.hpp"

namespace spinbath::oracle {

inline constexpr int kMaxBathSpins = 12;

enum class Mode { Separate, Common, Inhomogeneous };

struct Couplings {
  double k_a = 1.0;
  double k_b = 1.0;
  double j = 0.0;
  /// Per-nucleus couplings, used only in Inhomogeneous mode.
  std::vector<double> k_a_i;
  std::vector<double> k_b_i;
};

/// Initial bath state: fully mixed, or the normalized projector onto total
/// bath spin I.
struct BathState {
  std::optional<HalfSpin> sector;

  static BathState fully_mixed() { return {}; }
  static BathState sector_projected(HalfSpin spin) { return {spin}; }
};

/// Two qubits plus n bath spin-1/2 with pairwise Heisenberg couplings.
/// Basis states are bit strings: bit n+1 is qubit A, bit n is qubit B, bits
/// n-1..0 are the nuclei; a set bit is spin down. Every Hamiltonian here
/// conserves the number of down spins, so it is diagonalized per block.
class FullSystem {
 public:
  /// Separate mode: nuclei [0, n/2) couple to A with k_a, the rest to B with
  /// k_b, and J must vanish. Common mode: every nucleus couples with k_a and
  /// k_b. Inhomogeneous mode: per-nucleus lists of length n.
  static FullSystem build(Mode mode, int n_bath, const Couplings& couplings);

  Mode mode() const { return mode_; }
  int n_bath() const { return n_bath_; }
  std::size_t dimension() const { return std::size_t{4} << n_bath_; }
  const std::vector<double>& k_a_per_nucleus() const { return ka_; }
  const std::vector<double>& k_b_per_nucleus() const { return kb_; }
  double j() const { return j_; }

  /// Dense Hamiltonian in the bit basis.
  Eigen::MatrixXcd dense_hamiltonian() const;
  /// Diagonal of 2 F^z in the bit basis.
  Eigen::VectorXd twice_total_fz() const;

  /// exp(-iHt) applied to a full-space vector.
  Eigen::VectorXcd evolve_full(const Eigen::VectorXcd& psi0, double t) const;

  DensityMatrix4 evolve_reduced(const DensityMatrix4& rho0, const BathState& bath, double t) const;
  TwoQubitState evolve_reduced(const TwoQubitState& s0, const BathState& bath, double t) const;

 private:
  struct Block {
    std::vector<std::size_t> states;
    Eigen::MatrixXd h;
    Eigen::MatrixXd v;
    Eigen::VectorXd e;
  };
  struct BathVector {
    double weight = 0.0;
    int downs = 0;
    std::vector<std::pair<std::size_t, double>> amps;
  };

  FullSystem() = default;
  void diagonalize();
  std::vector<BathVector> bath_vectors(const BathState& bath) const;
  Eigen::MatrixXcd block_unitary(const Block& b, double t) const;

  Mode mode_ = Mode::Common;
  int n_bath_ = 0;
  std::vector<double> ka_;
  std::vector<double> kb_;
  double j_ = 0.0;
  std::vector<Block> blocks_;             // indexed by number of down spins
  std::vector<std::size_t> position_;     // full index -> position in its block
};

struct SpectrumRow {
  HalfSpin spin;
  double eigenvalue = 0.0;
  std::size_t observed = 0;
  std::size_t expected = 0;
};

struct SpectrumTable {
  std::vector<SpectrumRow> rows;
  /// Eigenvalues that matched no I(I+1).
  std::size_t unmatched = 0;
  bool matches() const;
};

/// Diagonalizes (sum_i I_i)^2 on n spin-1/2 and histograms the eigenvalues
/// against I(I+1) with expected counts d_N(I)(2I+1).
SpectrumTable bath_spin_spectrum_check(int n_bath);

/// Eigenvectors of (sum_i I_i)^2 with eigenvalue I(I+1), each with a definite
/// bath magnetization. Entries are (bath bit-string, amplitude).
std::vector<std::vector<std::pair<std::size_t, double>>> bath_spin_eigenvectors(int n_bath,
                                                                               HalfSpin spin);

}  // namespace spinbath::oracle
