#include "spinbath/common_bath.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "spinbath/parallel.hpp"

namespace spinbath {

namespace {

constexpr Complex kI{0.0, 1.0};

// Qubit basis index q: bit 1 is qubit A, bit 0 is qubit B; a set bit is spin down.
constexpr int twice_sz_a(int q) { return (q & 2) ? -1 : 1; }
constexpr int twice_sz_b(int q) { return (q & 1) ? -1 : 1; }
constexpr int twice_sz_total(int q) { return twice_sz_a(q) + twice_sz_b(q); }

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::array<Eigen::MatrixXcd, 3> spin_matrices(HalfSpin spin) {
  const int n = spin.multiplicity();
  const double c = spin.casimir();
  Eigen::MatrixXcd up = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double m = spin.value() - k;
    z(k, k) = m;
    if (k > 0) up(k - 1, k) = std::sqrt(c - m * (m + 1.0));
  }
  const Eigen::MatrixXcd down = up.adjoint();
  return {(up + down) / 2.0, (up - down) / (2.0 * kI), z};
}

bool symmetric_couplings(const CommonBathSystem& sys) {
  return std::abs(sys.k_a - sys.k_b) <= 1e-15 * std::max(std::abs(sys.k_a), std::abs(sys.k_b));
}

}  // namespace

SectorSpectrum sector_spectrum(const CommonBathSystem& sys, HalfSpin spin) {
  const double kbar = 0.5 * (sys.k_a + sys.k_b);
  const double kappa = 0.5 * (sys.k_a - sys.k_b);
  const double gap = sys.j - kbar;
  const double mix = kappa * std::sqrt(spin.casimir());

  SectorSpectrum s;
  s.spin = spin;
  s.lam_plus = 0.5 * gap;
  s.lam_minus = 0.5 * std::sqrt(gap * gap + 4.0 * mix * mix);
  s.zeta_plus = s.lam_plus + s.lam_minus;
  s.zeta_minus = s.lam_plus - s.lam_minus;
  if (s.lam_minus > 0.0) {
    s.p = gap / (2.0 * s.lam_minus);
    s.q = mix / s.lam_minus;
  }
  s.lambda1 = sys.j + spin.value() * kbar;
  s.lambda2 = sys.j - (spin.value() + 1.0) * kbar;
  return s;
}

SectorCoefficients a_coefficients(const CommonBathSystem& sys, HalfSpin spin, double t) {
  SectorCoefficients c;
  c.spectrum = sector_spectrum(sys, spin);
  c.t = t;
  const SectorSpectrum& s = c.spectrum;
  const Complex env = std::exp(-kI * (s.lam_plus * t));
  const double cs = std::cos(s.lam_minus * t);
  const double sn = std::sin(s.lam_minus * t);
  c.a[0] = env * (cs + kI * (s.p * sn));

  if (spin.twice() == 0) {
    c.a[2] = std::exp(-kI * (s.lambda1 * t));
    return c;
  }
  const double cas = spin.casimir();
  const double two_i1 = spin.multiplicity();
  const double i = spin.value();
  // F = I triplet channel amplitude.
  const Complex f_i = env * (cs - kI * (s.p * sn));
  const Complex e1 = std::exp(-kI * (s.lambda1 * t));
  const Complex e2 = std::exp(-kI * (s.lambda2 * t));
  const double den = cas * two_i1;
  c.a[1] = -kI * s.q * env * sn / std::sqrt(cas);
  c.a[2] = (e1 - e2) / two_i1 + f_i;
  c.a[3] = (e1 * (i * (i + 2.0)) - e2 * (i * i - 1.0) - f_i * two_i1) / den;
  c.a[4] = (e1 * i + e2 * (i + 1.0) - f_i * two_i1) / den;
  c.a[5] = c.a[1];
  return c;
}

SectorOperators::SectorOperators(HalfSpin s) : spin(s) {
  const int nb = s.multiplicity();
  const auto ib = spin_matrices(s);
  const Eigen::MatrixXcd id_b = Eigen::MatrixXcd::Identity(nb, nb);
  const Eigen::MatrixXcd id_q = Eigen::MatrixXcd::Identity(4, 4);
  for (int m = 0; m < 3; ++m) {
    s_a[m] = kron(ops::spin_a(m), id_b);
    s_b[m] = kron(ops::spin_b(m), id_b);
    bath[m] = kron(id_q, ib[m]);
  }
  const Eigen::Index n = 4 * nb;
  x = Eigen::MatrixXcd::Zero(n, n);
  d = Eigen::MatrixXcd::Zero(n, n);
  cross = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd s2 = Eigen::MatrixXcd::Zero(n, n);
  for (int m = 0; m < 3; ++m) {
    x += (s_a[m] + s_b[m]) * bath[m];
    d += (s_a[m] - s_b[m]) * bath[m];
    s2 += (s_a[m] + s_b[m]) * (s_a[m] + s_b[m]);
    const int k1 = (m + 1) % 3;
    const int k2 = (m + 2) % 3;
    cross += (s_a[k1] * s_b[k2] - s_a[k2] * s_b[k1]) * bath[m];
  }
  sigma = s2 / 2.0;
}

std::array<Eigen::MatrixXcd, 4> SectorOperators::projectors() const {
  const Eigen::Index n = x.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(n, n);
  const double i = spin.value();
  std::array<Eigen::MatrixXcd, 4> p{zero, id - sigma, zero, zero};
  // Lagrange interpolation over the triplet values of X: I, -1, -(I+1).
  if (spin.twice() == 0) {
    p[0] = sigma;
  } else if (spin.twice() == 1) {
    p[0] = sigma * (x + id) / (i + 1.0);
    p[2] = sigma * (x - i * id) / (-1.0 - i);
  } else {
    p[0] = sigma * (x + id) * (x + (i + 1.0) * id) / ((i + 1.0) * (2.0 * i + 1.0));
    p[2] = sigma * (x - i * id) * (x + (i + 1.0) * id) / (-(i + 1.0) * i);
    p[3] = sigma * (x - i * id) * (x + id) / ((2.0 * i + 1.0) * i);
  }
  return p;
}

Eigen::MatrixXcd sector_hamiltonian(const CommonBathSystem& sys, HalfSpin spin) {
  const SectorOperators o(spin);
  Eigen::MatrixXcd h = sys.j * o.sigma;
  for (int m = 0; m < 3; ++m) h += (sys.k_a * o.s_a[m] + sys.k_b * o.s_b[m]) * o.bath[m];
  return h;
}

Eigen::MatrixXcd sector_unitary_dense(const CommonBathSystem& sys, HalfSpin spin, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sector_hamiltonian(sys, spin));
  const Eigen::VectorXcd phases =
      (-kI * t * es.eigenvalues().cast<Complex>()).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd sector_unitary_from_coefficients(const SectorCoefficients& c) {
  const SectorOperators o(c.spectrum.spin);
  const Eigen::Index n = o.x.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd singlet_part = (c.a1() * id + c.a2() * o.d) * (id - o.sigma);
  const Eigen::MatrixXcd triplet_part =
      (c.a3() * id + c.a4() * o.x + c.a5() * o.x * o.x + c.a6() * o.d + c.a7() * o.cross) *
      o.sigma;
  return singlet_part + triplet_part;
}

FCoefficients f_coefficients_symmetric(const CommonBathSystem& sys, double t) {
  if (!symmetric_couplings(sys)) {
    throw InvalidInput("f_coefficients_symmetric requires K_A = K_B; use evolve_asymmetric");
  }
  Complex f0{0.0, 0.0};
  double s1 = 0.0;
  double s7 = 0.0;
  for (const auto& e : sys.bath.entries()) {
    const SectorCoefficients a = a_coefficients(sys, e.spin, t);
    const double c = e.spin.casimir();
    const Complex a3 = a.a3();
    const Complex a5 = a.a5();
    const double cross = 4.0 * std::real(a3 * std::conj(a5));
    f0 += e.weight * (a3 + (2.0 / 3.0) * c * a5);
    s1 += e.weight * (1.0 + std::norm(a3) + (std::norm(a5) + cross) * c / 3.0);
    s7 += e.weight * (std::norm(a3) + (std::norm(a5) * (8.0 * c - 1.0) / 5.0 + cross) * c / 3.0);
  }
  FCoefficients f;
  f.f0 = f0;
  f.f1 = f.f4 = 0.25 * s1 + 0.5 * f0.real();
  f.f2 = f.f5 = f.f1 - f0.real();
  f.f3 = f.f6 = 0.5 * f0.imag();
  f.f7 = -0.25 + 0.75 * s7 + 0.5 * f0.real();
  f.f8 = f.f7 - f0.real();
  f.f9 = (1.0 - f.f7 - f.f8) / 3.0;
  f.f10 = -0.5 * f0.imag();
  return f;
}

TwoQubitState apply_f_map(const FCoefficients& f, const TwoQubitState& s0) {
  const Vec3 v(s0.pi(1, 2) - s0.pi(2, 1), s0.pi(2, 0) - s0.pi(0, 2), s0.pi(0, 1) - s0.pi(1, 0));
  const Vec3 w = s0.p_a - s0.p_b;
  Mat3 eps_w;
  eps_w << 0.0, w(2), -w(1), -w(2), 0.0, w(0), w(1), -w(0), 0.0;

  TwoQubitState s;
  s.p_a = f.f1 * s0.p_a + f.f2 * s0.p_b + f.f3 * v;
  s.p_b = f.f4 * s0.p_b + f.f5 * s0.p_a - f.f6 * v;
  s.pi = f.f7 * s0.pi + f.f8 * s0.pi.transpose() + f.f9 * s0.pi.trace() * Mat3::Identity() +
         f.f10 * eps_w;
  return s;
}

TwoQubitState evolve_symmetric(const CommonBathSystem& sys, const TwoQubitState& s0, double t) {
  return apply_f_map(f_coefficients_symmetric(sys, t), s0);
}

// --- Sector-exact evolver ---------------------------------------------------

struct CommonBathEvolver::Impl {
  struct Block {
    int n = 0;
    std::array<int, 4> pos{-1, -1, -1, -1};
    Eigen::Matrix4d v = Eigen::Matrix4d::Zero();
    Eigen::Vector4d e = Eigen::Vector4d::Zero();
  };
  struct Sector {
    int twice_i = 0;
    double weight = 0.0;
    // Block for total 2F^z = M sits at index (M + twice_i + 2) / 2.
    std::vector<Block> blocks;
  };
  std::vector<Sector> sectors;

  static Block build_block(const CommonBathSystem& sys, int twice_i, int big_m) {
    Block b;
    std::array<int, 4> member{};
    for (int q = 0; q < 4; ++q) {
      const int mm = big_m - twice_sz_total(q);
      if (std::abs(mm) <= twice_i) {
        b.pos[q] = b.n;
        member[b.n++] = q;
      }
    }
    const double cas = 0.25 * twice_i * (twice_i + 2);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(b.n, b.n);
    for (int i = 0; i < b.n; ++i) {
      const int q = member[i];
      const double m = 0.5 * (big_m - twice_sz_total(q));
      const double sa = 0.5 * twice_sz_a(q);
      const double sb = 0.5 * twice_sz_b(q);
      h(i, i) = (sys.k_a * sa + sys.k_b * sb) * m + sys.j * sa * sb;
      for (int k = i + 1; k < b.n; ++k) {
        const int r = member[k];
        const int diff = q ^ r;
        double val = 0.0;
        if (diff == 2 || diff == 1) {
          // One qubit flips against the bath; take the state where it is up.
          const int up_state = (q & diff) ? r : q;
          const double m_up = 0.5 * (big_m - twice_sz_total(up_state));
          const double amp = std::sqrt(cas - m_up * (m_up + 1.0));
          val = 0.5 * (diff == 2 ? sys.k_a : sys.k_b) * amp;
        } else if (diff == 3 && (q == 1 || q == 2)) {
          val = 0.5 * sys.j;
        }
        h(i, k) = h(k, i) = val;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    b.v.topLeftCorner(b.n, b.n) = es.eigenvectors();
    b.e.head(b.n) = es.eigenvalues();
    return b;
  }

  Impl(const CommonBathSystem& sys) {
    for (const auto& entry : sys.bath.entries()) {
      if (entry.weight == 0.0) continue;
      Sector s;
      s.twice_i = entry.spin.twice();
      s.weight = entry.weight;
      for (int big_m = -s.twice_i - 2; big_m <= s.twice_i + 2; big_m += 2)
        s.blocks.push_back(build_block(sys, s.twice_i, big_m));
      sectors.push_back(std::move(s));
    }
  }

  static Mat4c evolve_sector(const Sector& s, const Mat4c& rho0, double t) {
    std::vector<Mat4c> u(s.blocks.size());
    for (std::size_t k = 0; k < s.blocks.size(); ++k) {
      const Block& b = s.blocks[k];
      Mat4c uk = Mat4c::Zero();
      for (int i = 0; i < b.n; ++i)
        for (int j = 0; j < b.n; ++j) {
          Complex acc{0.0, 0.0};
          for (int l = 0; l < b.n; ++l)
            acc += b.v(i, l) * b.v(j, l) * std::exp(-kI * (b.e(l) * t));
          uk(i, j) = acc;
        }
      u[k] = uk;
    }
    auto block_index = [&](int big_m) { return static_cast<std::size_t>((big_m + s.twice_i + 2) / 2); };

    Mat4c acc = Mat4c::Zero();
    for (int mm = -s.twice_i; mm <= s.twice_i; mm += 2) {
      for (int a = 0; a < 4; ++a) {
        const int ma = twice_sz_total(a) + mm;
        const std::size_t ka = block_index(ma);
        const Block& ba = s.blocks[ka];
        for (int b = 0; b < 4; ++b) {
          const Complex r = rho0(a, b);
          if (r == Complex{0.0, 0.0}) continue;
          const int mb = twice_sz_total(b) + mm;
          const std::size_t kb = block_index(mb);
          const Block& bb = s.blocks[kb];
          for (int c = 0; c < 4; ++c) {
            const int pc = ba.pos[c];
            if (pc < 0) continue;
            const int mm_out = ma - twice_sz_total(c);
            const Complex uc = u[ka](pc, ba.pos[a]);
            for (int d = 0; d < 4; ++d) {
              const int pd = bb.pos[d];
              if (pd < 0 || mb - twice_sz_total(d) != mm_out) continue;
              acc(c, d) += r * uc * std::conj(u[kb](pd, bb.pos[b]));
            }
          }
        }
      }
    }
    return acc * (s.weight / (s.twice_i + 1));
  }
};

CommonBathEvolver::CommonBathEvolver(CommonBathSystem sys)
    : sys_(std::move(sys)), impl_(std::make_unique<Impl>(sys_)) {}
CommonBathEvolver::~CommonBathEvolver() = default;
CommonBathEvolver::CommonBathEvolver(CommonBathEvolver&&) noexcept = default;
CommonBathEvolver& CommonBathEvolver::operator=(CommonBathEvolver&&) noexcept = default;

DensityMatrix4 CommonBathEvolver::evolve(const DensityMatrix4& rho0, double t) const {
  const auto& sectors = impl_->sectors;
  std::vector<Mat4c> parts(sectors.size());
  parallel_for(sectors.size(), [&](std::size_t k) {
    parts[k] = Impl::evolve_sector(sectors[k], rho0.matrix(), t);
  });
  Mat4c rho = Mat4c::Zero();
  for (const auto& p : parts) rho += p;
  return DensityMatrix4::trusted(0.5 * (rho + rho.adjoint()));
}

TwoQubitState CommonBathEvolver::evolve(const TwoQubitState& s0, double t) const {
  return density_to_state(evolve(state_to_density(s0), t));
}

TwoQubitState evolve_asymmetric(const CommonBathSystem& sys, const TwoQubitState& s0, double t) {
  return CommonBathEvolver(sys).evolve(s0, t);
}

// --- Bell-class states ------------------------------------------------------

DensityMatrix4 BellClassCoefficients::density() const {
  Mat4c bell = Mat4c::Zero();
  bell(0, 0) = c1;
  bell(1, 1) = c2;
  bell(2, 2) = c4;
  bell(3, 3) = c4;
  bell(1, 0) = c3;
  bell(0, 1) = std::conj(c3);
  bell(2, 3) = c5;
  bell(3, 2) = std::conj(c5);
  const Mat4c& u = ops::bell_basis();
  return DensityMatrix4::trusted(u * bell * u.adjoint());
}

BellClassCoefficients bell_class_coefficients(const CommonBathSystem& sys, double r, double t) {
  const double norm = std::sqrt(2.0 * (1.0 + r * r));
  const double alpha = (1.0 + r) / norm;
  const double beta = (1.0 - r) / norm;
  const double a2w = alpha * alpha;
  const double b2w = beta * beta;
  const double ab = alpha * beta;

  BellClassCoefficients out;
  out.c1 = 0.0;
  for (const auto& e : sys.bath.entries()) {
    const SectorCoefficients a = a_coefficients(sys, e.spin, t);
    const double c = e.spin.casimir();
    const double a1n = std::norm(a.a1());
    const double a2n = std::norm(a.a2());
    const Complex a3 = a.a3();
    const Complex a5 = a.a5();
    out.c1 += e.weight * (a2w * a1n + b2w * a2n * c / 3.0);
    out.c2 += e.weight * (a2w * (1.0 - a1n) / 3.0 +
                          b2w * (std::norm(a3) +
                                 (c / 3.0) * (4.0 * std::real(a3 * std::conj(a5)) +
                                              (8.0 * c - 1.0) * std::norm(a5) / 5.0)));
    out.c3 += e.weight * ab * (std::conj(a.a1()) * (a3 + (2.0 / 3.0) * c * a5) + a2n * c / 3.0);
    out.c5 -= e.weight * ab * (c / 3.0) *
              std::real(std::conj(a.a2()) * (2.0 * a.a4() - a5));
  }
  out.c4 = 0.5 * (1.0 - out.c1 - out.c2);
  return out;
}

double singlet_survival(const CommonBathSystem& sys, double t) {
  double c1 = 0.0;
  for (const auto& e : sys.bath.entries()) {
    const SectorSpectrum s = sector_spectrum(sys, e.spin);
    const double cs = std::cos(s.lam_minus * t);
    const double sn = std::sin(s.lam_minus * t);
    c1 += e.weight * (cs * cs + s.p * s.p * sn * sn);
  }
  return c1;
}

double large_j_beta(const CommonBathSystem& sys) {
  if (sys.j == 0.0) throw InvalidInput("large-J form needs J != 0");
  if (sys.bath.n_spins() <= 0) throw InvalidInput("large-J form needs the bath size N");
  return (sys.k_a - sys.k_b) * std::sqrt(static_cast<double>(sys.bath.n_spins())) / (2.0 * sys.j);
}

double singlet_survival_large_j(const CommonBathSystem& sys, double t) {
  const double beta = large_j_beta(sys);
  const double bt = beta * t;
  return 1.0 - 3.0 * beta * beta *
                   (1.0 - std::cos(sys.j * t + 2.5 * std::atan(bt)) / std::pow(1.0 + bt * bt, 1.25));
}

double large_j_ratio(const CommonBathSystem& sys) {
  const double scale = (std::abs(sys.k_a) + std::abs(sys.k_b)) *
                       std::sqrt(moment(sys.bath, MomentKind::IIplus1));
  return std::abs(sys.j) / scale;
}

// --- Short-time scales --------------------------------------------------------

double r_parameter(const TwoQubitState& s) {
  const double tr = s.pi.trace();
  return (s.pi * s.pi).trace() - tr * tr;
}

double short_time_tau_inv_sq_common(const TwoQubitState& s0, const CommonBathSystem& sys) {
  if (std::abs(decoherence_measure(s0)) > 1e-10) {
    throw InvalidInput("short-time formula requires a pure initial state");
  }
  const double p2 = s0.p_a.squaredNorm();
  const double ka2 = sys.k_a * sys.k_a;
  const double kb2 = sys.k_b * sys.k_b;
  return moment(sys.bath, MomentKind::IIplus1) *
         ((ka2 + kb2) * (3.0 - p2) + sys.k_a * sys.k_b * r_parameter(s0)) / 6.0;
}

double short_time_tau_common(const TwoQubitState& s0, const CommonBathSystem& sys) {
  const double inv_sq = short_time_tau_inv_sq_common(s0, sys);
  if (inv_sq <= 1e-14) throw Divergence("decoherence time is infinite for this state");
  return 1.0 / std::sqrt(inv_sq);
}

TransverseLongitudinalRates transverse_longitudinal_rates(const CommonBathSystem& sys) {
  if (!symmetric_couplings(sys)) {
    throw InvalidInput("transverse/longitudinal rates require K_A = K_B");
  }
  const double base = sys.k_a * sys.k_a * moment(sys.bath, MomentKind::IIplus1);
  return {2.0 * base / 3.0, 4.0 * base / 3.0};
}

}  // namespace spinbath
