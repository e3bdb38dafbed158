#include "spinbath/bath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spinbath {

namespace {

__extension__ using u128 = unsigned __int128;

u128 binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<u128>(n - k + i) / static_cast<u128>(i);
  return r;
}

double to_double(u128 v) {
  const auto hi = static_cast<unsigned long long>(v >> 64);
  const auto lo = static_cast<unsigned long long>(v);
  return std::ldexp(static_cast<double>(hi), 64) + static_cast<double>(lo);
}

}  // namespace

BathDistribution::BathDistribution(std::vector<BathEntry> entries, int n_spins,
                                   std::string label)
    : entries_(std::move(entries)), n_spins_(n_spins), label_(std::move(label)) {
  if (entries_.empty()) throw InvalidInput("bath distribution has no sectors");
  double sum = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      throw InvalidInput("bath weight for I=" + std::to_string(e.spin.value()) +
                         " is negative or non-finite");
    }
    if (i > 0 && !(entries_[i - 1].spin < e.spin)) {
      throw InvalidInput("bath spins must be strictly ascending");
    }
    sum += e.weight;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw InvalidInput("bath weights sum to " + std::to_string(sum) + ", expected 1");
  }
}

BathDistribution BathDistribution::delta(HalfSpin spin) {
  return BathDistribution({{spin, 1.0}}, 0, "delta");
}

BathDistribution BathDistribution::pruned(double rel_cutoff) const {
  double wmax = 0.0;
  for (const auto& e : entries_) wmax = std::max(wmax, e.weight);
  std::vector<BathEntry> kept;
  double sum = 0.0;
  for (const auto& e : entries_) {
    if (e.weight >= rel_cutoff * wmax) {
      kept.push_back(e);
      sum += e.weight;
    }
  }
  for (auto& e : kept) e.weight /= sum;
  return BathDistribution(std::move(kept), n_spins_, label_);
}

double moment(const BathDistribution& d, MomentKind kind) {
  if (kind == MomentKind::ISq) {
    return moment(d, [](HalfSpin s) { return s.value() * s.value(); });
  }
  return moment(d, [](HalfSpin s) { return s.casimir(); });
}

double moment(const BathDistribution& d, const std::function<double(HalfSpin)>& f) {
  double acc = 0.0;
  for (const auto& e : d.entries()) acc += e.weight * f(e.spin);
  return acc;
}

unsigned long long multiplicity(int n_spins, HalfSpin spin) {
  if (n_spins < 1 || n_spins > 64) {
    throw InvalidInput("multiplicity needs 1 <= N <= 64, got " + std::to_string(n_spins));
  }
  const int twice = spin.twice();
  if (twice > n_spins || (n_spins - twice) % 2 != 0) return 0;
  const int k = (n_spins - twice) / 2;
  return static_cast<unsigned long long>(binomial(n_spins, k) - binomial(n_spins, k - 1));
}

BathDistribution unpolarized_exact(int n_spins) {
  if (n_spins < 1 || n_spins > 64) {
    throw InvalidInput("unpolarized_exact needs 1 <= N <= 64, got " +
                       std::to_string(n_spins));
  }
  std::vector<BathEntry> entries;
  for (int twice = n_spins % 2; twice <= n_spins; twice += 2) {
    const HalfSpin s = HalfSpin::from_twice(twice);
    const u128 num = static_cast<u128>(multiplicity(n_spins, s)) *
                     static_cast<u128>(s.multiplicity());
    entries.push_back({s, std::ldexp(to_double(num), -n_spins)});
  }
  // Each weight is exact up to one rounding; renormalize against drift.
  const double sum = std::accumulate(entries.begin(), entries.end(), 0.0,
                                     [](double a, const BathEntry& e) { return a + e.weight; });
  for (auto& e : entries) e.weight /= sum;
  return BathDistribution(std::move(entries), n_spins, "exact");
}

BathDistribution gaussian_approx(int n_spins, GaussianVariant variant) {
  if (n_spins < 2) {
    throw InvalidInput("gaussian_approx needs N >= 2, got " + std::to_string(n_spins));
  }
  const double n = n_spins;
  const double c = variant == GaussianVariant::Intro ? 1.0 / (2.0 * n) : 2.0 / n;
  std::vector<BathEntry> entries;
  double sum = 0.0;
  for (int twice = n_spins % 2; twice <= n_spins; twice += 2) {
    const HalfSpin s = HalfSpin::from_twice(twice);
    const double w = s.value() * s.value() * std::exp(-c * s.value() * s.value());
    entries.push_back({s, w});
    sum += w;
  }
  for (auto& e : entries) e.weight /= sum;
  return BathDistribution(std::move(entries), n_spins, "gaussian-" + to_string(variant));
}

std::string to_string(GaussianVariant v) {
  return v == GaussianVariant::Intro ? "intro" : "sec3a";
}

GaussianVariant gaussian_variant_from_string(const std::string& s) {
  if (s == "intro") return GaussianVariant::Intro;
  if (s == "sec3a") return GaussianVariant::Sec3a;
  throw InvalidInput("unknown gaussian variant '" + s + "' (expected intro or sec3a)");
}

}  // namespace spinbath
