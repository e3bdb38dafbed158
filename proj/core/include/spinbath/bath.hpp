#pragma once

#include <functional>
#include <string>
#include <vector>

#include "spinbath/types.hpp"

namespace spinbath {

struct BathEntry {
  HalfSpin spin;
  double weight = 0.0;
};

/// Normalized weights over total bath-spin sectors.
class BathDistribution {
 public:
  /// Validates: weights non-negative and summing to 1 within 1e-12, spins
  /// strictly ascending.
  BathDistribution(std::vector<BathEntry> entries, int n_spins, std::string label);

  /// All weight on one sector.
  static BathDistribution delta(HalfSpin spin);

  const std::vector<BathEntry>& entries() const { return entries_; }
  int n_spins() const { return n_spins_; }
  const std::string& label() const { return label_; }
  std::size_t size() const { return entries_.size(); }

  /// Drops sectors whose weight is below rel_cutoff times the largest weight
  /// and renormalizes the rest. Returns a copy when nothing is dropped.
  BathDistribution pruned(double rel_cutoff) const;

 private:
  std::vector<BathEntry> entries_;
  int n_spins_ = 0;
  std::string label_;
};

enum class MomentKind { ISq, IIplus1 };

double moment(const BathDistribution& d, MomentKind kind);
double moment(const BathDistribution& d, const std::function<double(HalfSpin)>& f);

/// Number of spin-I multiplets in N spin-1/2: C(N, N/2-I) - C(N, N/2-I-1).
unsigned long long multiplicity(int n_spins, HalfSpin spin);

/// Exact sector weights of the fully mixed state of N spin-1/2,
/// lambda_I = d_N(I)(2I+1)/2^N. Valid for 1 <= N <= 64.
BathDistribution unpolarized_exact(int n_spins);

enum class GaussianVariant {
  /// lambda ~ I^2 exp(-I^2/(2N))
  Intro,
  /// lambda ~ I^2 exp(-2I^2/N)
  Sec3a,
};

/// Gaussian approximation sampled on the physical I grid of N spins.
BathDistribution gaussian_approx(int n_spins, GaussianVariant variant);

std::string to_string(GaussianVariant v);
GaussianVariant gaussian_variant_from_string(const std::string& s);

}  // namespace spinbath
