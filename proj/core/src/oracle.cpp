#include "spinbath/oracle.hpp"

#include <bit>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

#include "spinbath/bath.hpp"

namespace spinbath::oracle {

namespace {

struct Pair {
  int p;
  int q;
  double g;
};

// Real symmetric matrix of sum g S_p.S_q on the given basis states.
Eigen::MatrixXd heisenberg_block(const std::vector<std::size_t>& states,
                                 const std::map<std::size_t, Eigen::Index>& pos,
                                 const std::vector<Pair>& pairs) {
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t s = states[static_cast<std::size_t>(i)];
    for (const auto& pr : pairs) {
      const bool bp = (s >> pr.p) & 1u;
      const bool bq = (s >> pr.q) & 1u;
      h(i, i) += pr.g * (bp == bq ? 0.25 : -0.25);
      if (bp != bq) {
        const std::size_t flipped = s ^ ((std::size_t{1} << pr.p) | (std::size_t{1} << pr.q));
        h(pos.at(flipped), i) += 0.5 * pr.g;
      }
    }
  }
  return h;
}

std::vector<std::vector<std::size_t>> states_by_downs(int bits) {
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(bits + 1));
  for (std::size_t s = 0; s < (std::size_t{1} << bits); ++s)
    out[static_cast<std::size_t>(std::popcount(s))].push_back(s);
  return out;
}

std::vector<Pair> bath_pairs(int n) {
  std::vector<Pair> pairs;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) pairs.push_back({p, q, 2.0});
  return pairs;
}

void check_size(int n_bath) {
  if (n_bath < 0 || n_bath > kMaxBathSpins) {
    throw InvalidInput("oracle bath size " + std::to_string(n_bath) + " exceeds the cap of " +
                       std::to_string(kMaxBathSpins) + " spins");
  }
}

}  // namespace

FullSystem FullSystem::build(Mode mode, int n_bath, const Couplings& c) {
  check_size(n_bath);
  FullSystem sys;
  sys.mode_ = mode;
  sys.n_bath_ = n_bath;
  const auto n = static_cast<std::size_t>(n_bath);
  switch (mode) {
    case Mode::Separate:
      if (c.j != 0.0) throw InvalidInput("separate-bath mode assumes J = 0");
      for (std::size_t i = 0; i < n; ++i) {
        const bool to_a = i < n / 2;
        sys.ka_.push_back(to_a ? c.k_a : 0.0);
        sys.kb_.push_back(to_a ? 0.0 : c.k_b);
      }
      break;
    case Mode::Common:
      sys.ka_.assign(n, c.k_a);
      sys.kb_.assign(n, c.k_b);
      sys.j_ = c.j;
      break;
    case Mode::Inhomogeneous:
      if (c.k_a_i.size() != n || c.k_b_i.size() != n) {
        throw InvalidInput("inhomogeneous mode needs one K_A and one K_B per nucleus");
      }
      sys.ka_ = c.k_a_i;
      sys.kb_ = c.k_b_i;
      sys.j_ = c.j;
      break;
  }
  sys.diagonalize();
  return sys;
}

void FullSystem::diagonalize() {
  const int bits = n_bath_ + 2;
  const int qa = n_bath_ + 1;
  const int qb = n_bath_;
  std::vector<Pair> pairs;
  for (int i = 0; i < n_bath_; ++i) {
    if (ka_[static_cast<std::size_t>(i)] != 0.0) pairs.push_back({qa, i, ka_[static_cast<std::size_t>(i)]});
    if (kb_[static_cast<std::size_t>(i)] != 0.0) pairs.push_back({qb, i, kb_[static_cast<std::size_t>(i)]});
  }
  if (j_ != 0.0) pairs.push_back({qa, qb, j_});

  position_.assign(dimension(), 0);
  blocks_.clear();
  for (auto& states : states_by_downs(bits)) {
    std::map<std::size_t, Eigen::Index> pos;
    for (std::size_t i = 0; i < states.size(); ++i) {
      pos[states[i]] = static_cast<Eigen::Index>(i);
      position_[states[i]] = i;
    }
    Block b;
    b.h = heisenberg_block(states, pos, pairs);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.h);
    b.v = es.eigenvectors();
    b.e = es.eigenvalues();
    b.states = std::move(states);
    blocks_.push_back(std::move(b));
  }
}

Eigen::MatrixXcd FullSystem::dense_hamiltonian() const {
  if (n_bath_ > 8) throw InvalidInput("dense Hamiltonian limited to 8 bath spins");
  const auto dim = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& b : blocks_) {
    const Eigen::MatrixXd& hb = b.h;
    for (std::size_t i = 0; i < b.states.size(); ++i)
      for (std::size_t k = 0; k < b.states.size(); ++k)
        h(static_cast<Eigen::Index>(b.states[i]), static_cast<Eigen::Index>(b.states[k])) =
            hb(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  }
  return h;
}

Eigen::VectorXd FullSystem::twice_total_fz() const {
  const int bits = n_bath_ + 2;
  Eigen::VectorXd fz(static_cast<Eigen::Index>(dimension()));
  for (std::size_t s = 0; s < dimension(); ++s)
    fz(static_cast<Eigen::Index>(s)) = bits - 2 * std::popcount(s);
  return fz;
}

Eigen::MatrixXcd FullSystem::block_unitary(const Block& b, double t) const {
  const Eigen::ArrayXd et = b.e.array() * t;
  const Eigen::MatrixXd re = b.v * et.cos().matrix().asDiagonal() * b.v.transpose();
  const Eigen::MatrixXd im = b.v * (-et.sin()).matrix().asDiagonal() * b.v.transpose();
  Eigen::MatrixXcd u(re.rows(), re.cols());
  u.real() = re;
  u.imag() = im;
  return u;
}

Eigen::VectorXcd FullSystem::evolve_full(const Eigen::VectorXcd& psi0, double t) const {
  if (static_cast<std::size_t>(psi0.size()) != dimension()) {
    throw InvalidInput("state vector has the wrong dimension");
  }
  Eigen::VectorXcd out(psi0.size());
  for (const auto& b : blocks_) {
    const auto n = static_cast<Eigen::Index>(b.states.size());
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = psi0(static_cast<Eigen::Index>(b.states[static_cast<std::size_t>(i)]));
    const Eigen::VectorXcd w = b.v * ((-Complex(0.0, 1.0) * t * b.e.cast<Complex>()).array().exp() *
                                      (b.v.transpose() * v).array()).matrix();
    for (Eigen::Index i = 0; i < n; ++i) out(static_cast<Eigen::Index>(b.states[static_cast<std::size_t>(i)])) = w(i);
  }
  return out;
}

std::vector<FullSystem::BathVector> FullSystem::bath_vectors(const BathState& bath) const {
  std::vector<BathVector> out;
  const std::size_t n_env = std::size_t{1} << n_bath_;
  if (!bath.sector) {
    const double w = 1.0 / static_cast<double>(n_env);
    for (std::size_t e = 0; e < n_env; ++e)
      out.push_back({w, std::popcount(e), {{e, 1.0}}});
    return out;
  }
  auto vecs = bath_spin_eigenvectors(n_bath_, *bath.sector);
  if (vecs.empty()) {
    throw InvalidInput("bath of " + std::to_string(n_bath_) + " spins has no sector I=" +
                       std::to_string(bath.sector->value()));
  }
  const double w = 1.0 / static_cast<double>(vecs.size());
  for (auto& v : vecs) {
    const int downs = std::popcount(v.front().first);
    out.push_back({w, downs, std::move(v)});
  }
  return out;
}

DensityMatrix4 FullSystem::evolve_reduced(const DensityMatrix4& rho0, const BathState& bath,
                                          double t) const {
  const Mat4c& r0 = rho0.matrix();
  const std::size_t n_env = std::size_t{1} << n_bath_;
  const std::size_t mask = n_env - 1;

  std::vector<Eigen::MatrixXcd> u(blocks_.size());
  for (std::size_t k = 0; k < blocks_.size(); ++k) u[k] = block_unitary(blocks_[k], t);

  std::array<bool, 4> active{};
  for (int a = 0; a < 4; ++a) active[a] = r0.row(a).cwiseAbs().maxCoeff() > 0.0;

  Mat4c rho = Mat4c::Zero();
  std::array<Eigen::MatrixXcd, 4> psi;
  for (const auto& bv : bath_vectors(bath)) {
    for (std::size_t a = 0; a < 4; ++a) {
      if (!active[a]) continue;
      const std::size_t k = static_cast<std::size_t>(std::popcount(a) + bv.downs);
      const Block& b = blocks_[k];
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(b.states.size()));
      for (const auto& [env, amp] : bv.amps)
        v(static_cast<Eigen::Index>(position_[(a << n_bath_) | env])) = amp;
      const Eigen::VectorXcd w = u[k] * v;
      psi[a] = Eigen::MatrixXcd::Zero(4, static_cast<Eigen::Index>(n_env));
      for (std::size_t i = 0; i < b.states.size(); ++i) {
        const std::size_t s = b.states[i];
        psi[a](static_cast<Eigen::Index>(s >> n_bath_), static_cast<Eigen::Index>(s & mask)) =
            w(static_cast<Eigen::Index>(i));
      }
    }
    for (int a = 0; a < 4; ++a) {
      if (!active[a]) continue;
      for (int b = 0; b < 4; ++b) {
        if (!active[b] || r0(a, b) == Complex{0.0, 0.0}) continue;
        rho += bv.weight * r0(a, b) * (psi[a] * psi[b].adjoint());
      }
    }
  }
  return DensityMatrix4::trusted(0.5 * (rho + rho.adjoint()));
}

TwoQubitState FullSystem::evolve_reduced(const TwoQubitState& s0, const BathState& bath,
                                         double t) const {
  return density_to_state(evolve_reduced(state_to_density(s0), bath, t));
}

bool SpectrumTable::matches() const {
  if (unmatched != 0) return false;
  for (const auto& r : rows)
    if (r.observed != r.expected) return false;
  return true;
}

SpectrumTable bath_spin_spectrum_check(int n_bath) {
  check_size(n_bath);
  if (n_bath < 1) throw InvalidInput("bath spectrum check needs at least one spin");
  SpectrumTable table;
  for (int twice = n_bath % 2; twice <= n_bath; twice += 2) {
    const HalfSpin s = HalfSpin::from_twice(twice);
    table.rows.push_back({s, s.casimir(), 0,
                          static_cast<std::size_t>(multiplicity(n_bath, s)) *
                              static_cast<std::size_t>(s.multiplicity())});
  }
  const auto pairs = bath_pairs(n_bath);
  for (const auto& states : states_by_downs(n_bath)) {
    std::map<std::size_t, Eigen::Index> pos;
    for (std::size_t i = 0; i < states.size(); ++i) pos[states[i]] = static_cast<Eigen::Index>(i);
    Eigen::MatrixXd h = heisenberg_block(states, pos, pairs);
    h.diagonal().array() += 0.75 * n_bath;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      bool hit = false;
      for (auto& row : table.rows) {
        if (std::abs(es.eigenvalues()(i) - row.eigenvalue) < 1e-8) {
          ++row.observed;
          hit = true;
          break;
        }
      }
      if (!hit) ++table.unmatched;
    }
  }
  return table;
}

std::vector<std::vector<std::pair<std::size_t, double>>> bath_spin_eigenvectors(int n_bath,
                                                                               HalfSpin spin) {
  check_size(n_bath);
  std::vector<std::vector<std::pair<std::size_t, double>>> out;
  const auto pairs = bath_pairs(n_bath);
  for (const auto& states : states_by_downs(n_bath)) {
    std::map<std::size_t, Eigen::Index> pos;
    for (std::size_t i = 0; i < states.size(); ++i) pos[states[i]] = static_cast<Eigen::Index>(i);
    Eigen::MatrixXd h = heisenberg_block(states, pos, pairs);
    h.diagonal().array() += 0.75 * n_bath;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      if (std::abs(es.eigenvalues()(k) - spin.casimir()) > 1e-8) continue;
      std::vector<std::pair<std::size_t, double>> v;
      for (std::size_t i = 0; i < states.size(); ++i) {
        const double amp = es.eigenvectors()(static_cast<Eigen::Index>(i), k);
        if (amp != 0.0) v.emplace_back(states[i], amp);
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace spinbath::oracle
