#include "spinbath/timescale.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "spinbath/parallel.hpp"

namespace spinbath {

namespace {

// Golden-section minimization of f on [lo, hi].
double golden_min(const std::function<double(double)>& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  // The interval ends are candidates too when the minimum sits on a bound.
  double best = x;
  double fbest = f(x);
  for (double e : {lo, hi}) {
    const double fe = f(e);
    if (fe < fbest) {
      best = e;
      fbest = fe;
    }
  }
  return best;
}

}  // namespace

double tau_inv_sq_general(const TwoQubitState& s0, const CommonBathSystem& sys) {
  if (std::abs(decoherence_measure(s0)) > 1e-10) {
    throw InvalidInput("tau_inv_sq_general requires a pure initial state");
  }
  const Mat4c rho = state_to_density(s0).matrix();
  double var = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Mat4c o = sys.k_a * ops::spin_a(k) + sys.k_b * ops::spin_b(k);
    const double mean = (rho * o).trace().real();
    var += (rho * o * o).trace().real() - mean * mean;
  }
  return 2.0 / 3.0 * moment(sys.bath, MomentKind::IIplus1) * var;
}

double delta_from_couplings(double k_a, double k_b) {
  const double den = k_a * k_a + k_b * k_b;
  if (den == 0.0) throw InvalidInput("delta undefined when both couplings vanish");
  return 2.0 * k_a * k_b / den;
}

double tau_scale(const CommonBathSystem& sys) {
  return moment(sys.bath, MomentKind::IIplus1) * (sys.k_a * sys.k_a + sys.k_b * sys.k_b) / 3.0;
}

double tau_inv_sq_pure(const PureStateParam& param, double delta, double scale) {
  if (delta < -1.0 - 1e-12 || delta > 1.0 + 1e-12) {
    throw InvalidInput("delta must lie in [-1, 1], got " + std::to_string(delta));
  }
  const double g2 = std::norm(param.gamma);
  const double den = 1.0 + g2;
  const double c_half = std::cos(param.theta / 2.0);
  return scale * (1.0 + 2.0 * g2 * (1.0 - delta * std::cos(param.theta)) / (den * den) -
                  2.0 * delta * c_half * c_half * param.gamma.real() / den);
}

double gamma_opt(double delta) {
  if (delta < -1.0 - 1e-12 || delta > 1.0 + 1e-12) {
    throw InvalidInput("delta must lie in [-1, 1], got " + std::to_string(delta));
  }
  if (delta >= 0.5) return 1.0;
  if (std::abs(delta) < 1e-6) {
    // Series of the closed form: delta/2 + delta^2/2 + 5 delta^3/8.
    return delta / 2.0 + delta * delta / 2.0 + 5.0 * delta * delta * delta / 8.0;
  }
  return ((1.0 - delta) - std::sqrt(1.0 - 2.0 * delta)) / delta;
}

ScanResult scan_optimum(double delta, const ScanGrid& grid) {
  if (grid.points < 3) throw InvalidInput("scan grid needs at least 3 points per axis");
  const int n = grid.points;
  const double ext = grid.gamma_extent;
  const double gstep = 2.0 * ext / (n - 1);
  const double tstep = std::numbers::pi / (n - 1);
  auto objective = [delta](double re, double im, double th) {
    return tau_inv_sq_pure({Complex(re, im), th, 0.0}, delta);
  };

  // Coarse stage: best cell per Re-gamma slice, then reduce in order.
  struct Cell {
    double value;
    int i, j, k;
  };
  std::vector<Cell> best(static_cast<std::size_t>(n));
  parallel_for(best.size(), [&](std::size_t i) {
    Cell c{std::numeric_limits<double>::infinity(), 0, 0, 0};
    const double re = -ext + gstep * static_cast<double>(i);
    for (int j = 0; j < n; ++j) {
      const double im = -ext + gstep * j;
      for (int k = 0; k < n; ++k) {
        const double v = objective(re, im, tstep * k);
        if (v < c.value) c = {v, static_cast<int>(i), j, k};
      }
    }
    best[i] = c;
  });
  Cell c = best.front();
  for (const auto& b : best)
    if (b.value < c.value) c = b;

  double re = -ext + gstep * c.i;
  double im = -ext + gstep * c.j;
  double th = tstep * c.k;
  double prev = c.value;
  for (int sweep = 0; sweep < grid.refine_sweeps; ++sweep) {
    const double w = sweep == 0 ? 1.0 : 0.5;
    re = golden_min([&](double x) { return objective(x, im, th); }, re - w * gstep, re + w * gstep);
    im = golden_min([&](double x) { return objective(re, x, th); }, im - w * gstep, im + w * gstep);
    th = golden_min([&](double x) { return objective(re, im, x); },
                    std::max(0.0, th - w * tstep), std::min(std::numbers::pi, th + w * tstep));
    const double cur = objective(re, im, th);
    if (std::abs(prev - cur) < 1e-15 && sweep > 2) break;
    prev = cur;
  }
  // gamma and 1/conj(gamma) give the same value; report the one inside the unit disk.
  Complex g(re, im);
  if (std::norm(g) > 1.0) g /= std::norm(g);
  return {g, th, objective(g.real(), g.imag(), th), gstep, tstep};
}

double delta_from_inhomogeneous(const InhomogeneousCouplings& c) {
  if (c.k_a.size() != c.k_b.size()) {
    throw InvalidInput("coupling lists differ in length");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < c.k_a.size(); ++i) {
    num += 2.0 * c.k_a[i] * c.k_b[i];
    den += c.k_a[i] * c.k_a[i] + c.k_b[i] * c.k_b[i];
  }
  if (den == 0.0) throw InvalidInput("Delta undefined when all couplings vanish");
  return c.eta2 * num / den;
}

InhomogeneousCouplings gaussian_couplings(double separation_d, double confinement_l,
                                          const LatticeSpec& lattice) {
  if (!(separation_d >= 0.0) || !(confinement_l > 0.0)) {
    throw InvalidInput("need d >= 0 and l > 0");
  }
  const double need = separation_d / 2.0 + 5.0 * confinement_l;
  if (lattice.half_width < need) {
    throw InvalidInput("lattice half-width " + std::to_string(lattice.half_width) +
                       " does not cover 5l around both centers (need " +
                       std::to_string(need) + ")");
  }
  InhomogeneousCouplings c;
  const double l2 = confinement_l * confinement_l;
  const double xa = -separation_d / 2.0;
  const double xb = separation_d / 2.0;
  for (int x = -lattice.half_width; x <= lattice.half_width; ++x) {
    for (int y = -lattice.half_width; y <= lattice.half_width; ++y) {
      const double y2 = static_cast<double>(y) * y;
      c.k_a.push_back(std::exp(-((x - xa) * (x - xa) + y2) / l2));
      c.k_b.push_back(std::exp(-((x - xb) * (x - xb) + y2) / l2));
    }
  }
  return c;
}

double tau_inv_sq_inhomogeneous(Complex gamma, const InhomogeneousCouplings& c,
                                double moment_i_iplus1) {
  const double delta = delta_from_inhomogeneous(c);
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < c.k_a.size(); ++i) sum_sq += c.k_a[i] * c.k_a[i] + c.k_b[i] * c.k_b[i];
  const double scale = c.eta1 / 3.0 * moment_i_iplus1 * sum_sq / static_cast<double>(c.k_a.size());
  const double g2 = std::norm(gamma);
  const double den = 1.0 + g2;
  return scale * (1.0 + 2.0 * g2 * (1.0 - delta) / (den * den) - 2.0 * delta * gamma.real() / den);
}

}  // namespace spinbath
