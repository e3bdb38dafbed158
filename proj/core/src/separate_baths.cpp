#include "spinbath/separate_baths.hpp"

#include <cmath>

#include "spinbath/parallel.hpp"

namespace spinbath {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_symmetric(const SeparateBathSystem& sys) {
  if (sys.k_a != sys.k_b) {
    throw InvalidInput("short-time formula assumes K_A = K_B (got " +
                       std::to_string(sys.k_a) + ", " + std::to_string(sys.k_b) + ")");
  }
  const double ma = moment(sys.bath_a, MomentKind::IIplus1);
  const double mb = moment(sys.bath_b, MomentKind::IIplus1);
  if (std::abs(ma - mb) > 1e-12 * std::max(1.0, std::abs(ma))) {
    throw InvalidInput("short-time formula assumes identical bath moments (got " +
                       std::to_string(ma) + ", " + std::to_string(mb) + ")");
  }
}

}  // namespace

PQ pq_single(double k, HalfSpin spin, double t) {
  if (k == 0.0) return {};
  // Lambda = K(2I+1)/4; the F = I +- 1/2 levels sit at -/+ Lambda after
  // removing the common phase.
  const double lam = k * spin.multiplicity() / 4.0;
  const double c = std::cos(lam * t);
  const double s = std::sin(lam * t);
  return {c - kI * (k * s / (4.0 * lam)), -kI * (k * s / lam)};
}

double g_sector(double k, HalfSpin spin, double t) {
  const PQ pq = pq_single(k, spin, t);
  return 1.0 - spin.casimir() * std::norm(pq.q) / 3.0;
}

double g_single(double k, const BathDistribution& bath, double t) {
  double g = 0.0;
  for (const auto& e : bath.entries()) g += e.weight * g_sector(k, e.spin, t);
  return g;
}

GCoefficients g_coefficients(const SeparateBathSystem& sys, double t) {
  GCoefficients g;
  g.g1 = g_single(sys.k_a, sys.bath_a, t);
  g.g1_tilde = g_single(sys.k_b, sys.bath_b, t);
  g.g2 = g.g1 * g.g1_tilde;
  return g;
}

TwoQubitState evolve(const SeparateBathSystem& sys, const TwoQubitState& s0, double t) {
  const GCoefficients g = g_coefficients(sys, t);
  TwoQubitState s;
  s.p_a = g.g1 * s0.p_a;
  s.p_b = g.g1_tilde * s0.p_b;
  s.pi = g.g2 * s0.pi;
  return s;
}

TimeSeries decoherence_series(const SeparateBathSystem& sys, const TwoQubitState& s0,
                              const std::vector<double>& times) {
  const bool pure = std::abs(decoherence_measure(s0)) < 1e-12;
  const double pa = s0.p_a.norm();
  const bool closed_form = pure && std::abs(pa - s0.p_b.norm()) < 1e-12;

  std::vector<std::vector<double>> rows(times.size());
  parallel_for(times.size(), [&](std::size_t i) {
    const double t = times[i];
    const GCoefficients g = g_coefficients(sys, t);
    const TwoQubitState s = evolve(sys, s0, t);
    double d = 0.0;
    if (closed_form) {
      const double p2 = pa * pa;
      d = 0.25 * (3.0 - (g.g1 * g.g1 + g.g1_tilde * g.g1_tilde) * p2 -
                  g.g2 * g.g2 * (3.0 - 2.0 * p2));
    } else {
      d = decoherence_measure(s);
    }
    rows[i] = {t, d, concurrence(s), g.g1, g.g1_tilde, g.g2};
  });

  TimeSeries ts({"t", "D", "C", "g1", "g1_tilde", "g2"});
  ts.set_meta("d_path", closed_form ? "closed-form" : "general");
  for (auto& r : rows) ts.add_row(std::move(r));
  return ts;
}

double short_time_tau_d(const SeparateBathSystem& sys, double p0) {
  require_symmetric(sys);
  const double inv_sq =
      sys.k_a * sys.k_a * moment(sys.bath_a, MomentKind::IIplus1) * (3.0 - p0 * p0) / 3.0;
  if (inv_sq <= 0.0) throw Divergence("decoherence time is infinite (no coupling)");
  return 1.0 / std::sqrt(inv_sq);
}

double short_time_tau_c(const SeparateBathSystem& sys, double p0) {
  require_symmetric(sys);
  if (std::abs(p0) >= 1.0) {
    throw Divergence("concurrence decay time undefined for an unentangled state (P0 = 1)");
  }
  const double inv_sq = sys.k_a * sys.k_a * moment(sys.bath_a, MomentKind::IIplus1) *
                        (3.0 - 2.0 * p0 * p0) / (3.0 * (1.0 - p0 * p0));
  if (inv_sq <= 0.0) throw Divergence("concurrence decay time is infinite (no coupling)");
  return 1.0 / std::sqrt(inv_sq);
}

std::optional<double> sudden_death_time(const SeparateBathSystem& sys,
                                        const TwoQubitState& s0, double horizon,
                                        int samples) {
  if (std::abs(concurrence(s0) - 1.0) > 1e-10) {
    throw InvalidInput("sudden_death_time expects a maximally entangled Bell state");
  }
  if (samples < 2 || !(horizon > 0.0)) throw InvalidInput("need horizon > 0 and samples >= 2");
  auto excess = [&](double t) { return g_coefficients(sys, t).g2 - 1.0 / 3.0; };
  double prev_t = 0.0;
  for (int i = 1; i < samples; ++i) {
    const double t = horizon * i / (samples - 1);
    if (excess(t) <= 0.0) {
      double lo = prev_t;
      double hi = t;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0.0 ? lo : hi) = mid;
      }
      return hi;
    }
    prev_t = t;
  }
  return std::nullopt;
}

}  // namespace spinbath
