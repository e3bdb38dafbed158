#include "spinbath/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "spinbath/bath.hpp"
#include "spinbath/common_bath.hpp"
#include "spinbath/oracle.hpp"
#include "spinbath/parallel.hpp"
#include "spinbath/polarization.hpp"
#include "spinbath/separate_baths.hpp"
#include "spinbath/timescale.hpp"

#ifndef SPINBATH_VERSION
#define SPINBATH_VERSION "0.0.0"
#endif

namespace spinbath {

const char* version() { return SPINBATH_VERSION; }

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& key, int line) {
  double out = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  if (!v.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(out)) {
    throw ConfigError("line " + std::to_string(line) + ": field '" + key +
                      "' expects a number, got '" + v + "'");
  }
  return out;
}

int parse_int(const std::string& v, const std::string& key, int line) {
  int out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw ConfigError("line " + std::to_string(line) + ": field '" + key +
                      "' expects an integer, got '" + v + "'");
  }
  return out;
}

std::vector<double> parse_list(const std::string& v, const std::string& key, int line) {
  std::vector<double> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), key, line));
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
  return s;
}

bool is_fig(const std::string& s) { return s.size() == 4 && s.rfind("fig", 0) == 0 && s[3] >= '1' && s[3] <= '6'; }

bool is_common(const std::string& s) {
  return s == "common-symmetric" || s == "common-asymmetric";
}

BathDistribution make_bath(const ScenarioConfig& cfg) {
  const std::string kind = cfg.bath.value_or("exact");
  const int n = cfg.bath_n.value_or(0);
  BathDistribution b = kind == "exact" ? unpolarized_exact(n)
                       : kind == "gaussian-intro" ? gaussian_approx(n, GaussianVariant::Intro)
                       : kind == "gaussian-sec3a" ? gaussian_approx(n, GaussianVariant::Sec3a)
                                                  : throw ConfigError("unknown bath '" + kind + "'");
  return cfg.prune > 0.0 ? b.pruned(cfg.prune) : b;
}

std::vector<std::string> state_columns(const std::string& prefix = "") {
  const char* ax = "xyz";
  std::vector<std::string> cols;
  for (int m = 0; m < 3; ++m) cols.push_back(prefix + "PA_" + ax[m]);
  for (int m = 0; m < 3; ++m) cols.push_back(prefix + "PB_" + ax[m]);
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) cols.push_back(prefix + "Pi_" + ax[m] + ax[n]);
  return cols;
}

void append_state(std::vector<double>& row, const TwoQubitState& s) {
  for (int m = 0; m < 3; ++m) row.push_back(s.p_a(m));
  for (int m = 0; m < 3; ++m) row.push_back(s.p_b(m));
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) row.push_back(s.pi(m, n));
}

double max_abs_diff(const TwoQubitState& a, const TwoQubitState& b) {
  return std::max({(a.p_a - b.p_a).cwiseAbs().maxCoeff(), (a.p_b - b.p_b).cwiseAbs().maxCoeff(),
                   (a.pi - b.pi).cwiseAbs().maxCoeff()});
}

// Rows computed in parallel and appended in time order.
TimeSeries tabulate(std::vector<std::string> columns, const std::vector<double>& xs,
                    const std::function<std::vector<double>(double)>& row_at) {
  std::vector<std::vector<double>> rows(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    std::vector<double> r{xs[i]};
    const auto vals = row_at(xs[i]);
    r.insert(r.end(), vals.begin(), vals.end());
    rows[i] = std::move(r);
  });
  TimeSeries ts(std::move(columns));
  for (auto& r : rows) ts.add_row(std::move(r));
  return ts;
}

void echo_config(TimeSeries& ts, const ScenarioConfig& cfg, const std::vector<std::string>& defaulted) {
  ts.set_meta("scenario", cfg.scenario);
  ts.set_meta("version", version());
  if (cfg.k_a) ts.set_meta("k_a", *cfg.k_a);
  if (cfg.k_b) ts.set_meta("k_b", *cfg.k_b);
  if (cfg.j) ts.set_meta("j", *cfg.j);
  if (cfg.bath) ts.set_meta("bath", *cfg.bath);
  if (cfg.bath_n) ts.set_meta("bath_n", std::to_string(*cfg.bath_n));
  if (cfg.prune > 0.0) ts.set_meta("prune", cfg.prune);
  if (cfg.state) ts.set_meta("state", *cfg.state);
  if (!cfg.state_params.empty()) ts.set_meta("state_params", join(cfg.state_params));
  if (cfg.t_max) ts.set_meta("t_max", *cfg.t_max);
  if (cfg.samples) ts.set_meta("samples", std::to_string(*cfg.samples));
  if (!cfg.j_values.empty()) ts.set_meta("j_values", join(cfg.j_values));
  if (!cfg.r_values.empty()) ts.set_meta("r_values", join(cfg.r_values));
  if (!defaulted.empty()) {
    std::string d;
    for (std::size_t i = 0; i < defaulted.size(); ++i) d += (i ? "," : "") + defaulted[i];
    ts.set_meta("defaulted", d);
  }
}

void add_bath_meta(TimeSeries& ts, const BathDistribution& b) {
  ts.set_meta("moment_I_Iplus1", moment(b, MomentKind::IIplus1));
  ts.set_meta("moment_I_sq", moment(b, MomentKind::ISq));
  ts.set_meta("bath_sectors", std::to_string(b.size()));
}

std::vector<double> times_of(const ScenarioConfig& cfg) {
  return linspace(0.0, *cfg.t_max, *cfg.samples);
}

// --- Scenario runners ---------------------------------------------------------

RunResult run_separate(const ScenarioConfig& cfg) {
  const BathDistribution bath = make_bath(cfg);
  const SeparateBathSystem sys{*cfg.k_a, *cfg.k_b, bath, bath};
  const TwoQubitState s0 = states::make_named_state(*cfg.state, cfg.state_params);
  RunResult r;
  r.series = decoherence_series(sys, s0, times_of(cfg));
  add_bath_meta(r.series, bath);
  return r;
}

RunResult run_common(const ScenarioConfig& cfg) {
  CommonBathSystem sys{*cfg.k_a, *cfg.k_b, *cfg.j, make_bath(cfg)};
  const TwoQubitState s0 = states::make_named_state(*cfg.state, cfg.state_params);
  auto cols = state_columns();
  cols.insert(cols.begin(), "t");
  cols.push_back("D");
  cols.push_back("C");
  RunResult r;
  if (cfg.scenario == "common-symmetric") {
    r.series = tabulate(cols, times_of(cfg), [&](double t) {
      const TwoQubitState s = evolve_symmetric(sys, s0, t);
      std::vector<double> row;
      append_state(row, s);
      row.push_back(decoherence_measure(s));
      row.push_back(concurrence(s));
      return row;
    });
  } else {
    const CommonBathEvolver ev(sys);
    const auto ts = times_of(cfg);
    TimeSeries out(cols);
    for (double t : ts) {
      const TwoQubitState s = ev.evolve(s0, t);
      std::vector<double> row{t};
      append_state(row, s);
      row.push_back(decoherence_measure(s));
      row.push_back(concurrence(s));
      out.add_row(std::move(row));
    }
    r.series = std::move(out);
  }
  add_bath_meta(r.series, sys.bath);
  if (std::abs(decoherence_measure(s0)) < 1e-10) {
    r.summary.emplace_back("tau_inv_sq_short_time",
                           format_number(short_time_tau_inv_sq_common(s0, sys)));
  }
  return r;
}

RunResult run_oracle_compare(const ScenarioConfig& cfg) {
  const TwoQubitState s0 = states::make_named_state(*cfg.state, cfg.state_params);
  const int n = *cfg.bath_n;
  const auto times = times_of(cfg);
  RunResult r;
  std::function<TwoQubitState(double)> analytic;
  oracle::FullSystem full = [&] {
    if (cfg.oracle_mode == "separate") {
      return oracle::FullSystem::build(oracle::Mode::Separate, 2 * n, {*cfg.k_a, *cfg.k_b, 0.0, {}, {}});
    }
    return oracle::FullSystem::build(oracle::Mode::Common, n, {*cfg.k_a, *cfg.k_b, *cfg.j, {}, {}});
  }();
  std::optional<CommonBathEvolver> ev;
  std::optional<SeparateBathSystem> sep;
  if (cfg.oracle_mode == "separate") {
    sep.emplace(SeparateBathSystem{*cfg.k_a, *cfg.k_b, unpolarized_exact(n), unpolarized_exact(n)});
  } else {
    ev.emplace(CommonBathSystem{*cfg.k_a, *cfg.k_b, *cfg.j, unpolarized_exact(n)});
  }
  r.series = tabulate({"t", "max_dev", "D_analytic", "D_oracle"}, times, [&](double t) {
    const TwoQubitState a = sep ? evolve(*sep, s0, t) : ev->evolve(s0, t);
    const TwoQubitState o = full.evolve_reduced(s0, oracle::BathState::fully_mixed(), t);
    return std::vector<double>{max_abs_diff(a, o), decoherence_measure(a), decoherence_measure(o)};
  });
  const auto dev = r.series.column("max_dev");
  const double worst = *std::max_element(dev.begin(), dev.end());
  r.summary.emplace_back("max_deviation", format_number(worst));
  r.checks.push_back({"oracle_agreement", worst <= cfg.tolerance,
                      "max deviation " + format_number(worst) + " vs tolerance " +
                          format_number(cfg.tolerance)});
  return r;
}

RunResult run_optimize(const ScenarioConfig& cfg) {
  const auto deltas = linspace(cfg.delta_min, cfg.delta_max, cfg.delta_points);
  ScanGrid grid;
  grid.points = cfg.grid_points;
  RunResult r;
  r.series = tabulate({"delta", "gamma_opt", "scan_re_gamma", "scan_im_gamma", "scan_theta",
                       "scan_tau_inv_sq", "analytic_tau_inv_sq"},
                      deltas, [&](double d) {
                        const ScanResult s = scan_optimum(d, grid);
                        const double g = gamma_opt(d);
                        return std::vector<double>{g, s.gamma.real(), s.gamma.imag(), s.theta,
                                                   s.tau_inv_sq, tau_inv_sq_pure({g, 0.0, 0.0}, d)};
                      });
  double worst_gamma = 0.0;
  double worst_theta = 0.0;
  double worst_im = 0.0;
  for (const auto& row : r.series.rows()) {
    worst_gamma = std::max(worst_gamma, std::abs(row[2] - row[1]));
    worst_im = std::max(worst_im, std::abs(row[3]));
    // At gamma = 0 the objective does not depend on theta.
    if (row[1] != 0.0) worst_theta = std::max(worst_theta, row[4]);
  }
  const double gstep = 2.0 * ScanGrid{}.gamma_extent / (cfg.grid_points - 1);
  const double tstep = std::numbers::pi / (cfg.grid_points - 1);
  r.summary.emplace_back("max_gamma_error", format_number(worst_gamma));
  r.summary.emplace_back("max_abs_im_gamma", format_number(worst_im));
  r.summary.emplace_back("max_theta", format_number(worst_theta));
  r.checks.push_back({"gamma_matches_closed_form", worst_gamma <= 1e-4, format_number(worst_gamma)});
  r.checks.push_back({"im_gamma_zero", worst_im <= gstep, format_number(worst_im)});
  r.checks.push_back({"theta_zero", worst_theta <= tstep, format_number(worst_theta)});
  return r;
}

RunResult run_fig1(const ScenarioConfig& cfg) {
  const BathDistribution bath = make_bath(cfg);
  const SeparateBathSystem sys{*cfg.k_a, *cfg.k_b, bath, bath};
  const std::vector<double> rs = cfg.r_values;
  std::vector<TwoQubitState> s0;
  std::vector<std::string> cols{"t"};
  std::vector<double> c0;
  for (double rv : rs) {
    s0.push_back(states::sz_superposition(rv));
    c0.push_back(concurrence(s0.back()));
    cols.push_back("purity_C0=" + format_number(c0.back()));
  }
  for (std::size_t k = 0; k < rs.size(); ++k) cols.push_back("C_C0=" + format_number(c0[k]));
  RunResult r;
  r.series = tabulate(cols, times_of(cfg), [&](double t) {
    std::vector<double> row;
    std::vector<double> cs;
    for (const auto& s : s0) {
      const TwoQubitState st = evolve(sys, s, t);
      row.push_back(1.0 - decoherence_measure(st));
      cs.push_back(concurrence(st));
    }
    row.insert(row.end(), cs.begin(), cs.end());
    return row;
  });
  add_bath_meta(r.series, bath);
  // Larger initial concurrence loses purity faster: compare mean purities.
  std::vector<std::pair<double, double>> mean_purity;
  for (std::size_t k = 0; k < rs.size(); ++k) {
    const auto col = r.series.column(cols[k + 1]);
    double m = 0.0;
    for (double v : col) m += v;
    mean_purity.emplace_back(c0[k], m / static_cast<double>(col.size()));
  }
  std::sort(mean_purity.begin(), mean_purity.end());
  bool ordered = true;
  for (std::size_t k = 1; k < mean_purity.size(); ++k)
    ordered = ordered && mean_purity[k].second < mean_purity[k - 1].second;
  r.checks.push_back({"purity_ordering", ordered, "mean purity decreases with C(0)"});
  try {
    const auto sd = sudden_death_time(sys, states::singlet(), *cfg.t_max);
    r.summary.emplace_back("sudden_death_time", sd ? format_number(*sd) : "none");
  } catch (const InvalidInput&) {
  }
  return r;
}

// Mean spacing of upward zero crossings of y in [t0, t1], by linear interpolation.
std::optional<double> measured_period(const std::vector<double>& t, const std::vector<double>& y,
                                      double t0, double t1) {
  std::vector<double> cross;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i - 1] < t0 || t[i] > t1) continue;
    if (y[i - 1] < 0.0 && y[i] >= 0.0) {
      cross.push_back(t[i - 1] + (t[i] - t[i - 1]) * (-y[i - 1]) / (y[i] - y[i - 1]));
    }
  }
  if (cross.size() < 2) return std::nullopt;
  return (cross.back() - cross.front()) / static_cast<double>(cross.size() - 1);
}

RunResult run_fig2(const ScenarioConfig& cfg) {
  CommonBathSystem sys{*cfg.k_a, *cfg.k_b, *cfg.j, make_bath(cfg)};
  const TwoQubitState s0 = states::make_named_state(*cfg.state, cfg.state_params);
  RunResult r;
  r.series = tabulate({"t", "PA_z", "Pi_xx", "Pi_zz", "Pi_xy", "C"}, times_of(cfg), [&](double t) {
    const TwoQubitState s = evolve_symmetric(sys, s0, t);
    return std::vector<double>{s.p_a(2), s.pi(0, 0), s.pi(2, 2), s.pi(0, 1), concurrence(s)};
  });
  add_bath_meta(r.series, sys.bath);
  const auto t = r.series.column("t");
  const auto pz = r.series.column("PA_z");
  const auto c = r.series.column("C");
  const double w0 = *cfg.window_start;
  const double w1 = *cfg.window_end;
  double env = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= w0 && t[i] <= w1) env = std::max(env, std::abs(pz[i]));
  r.summary.emplace_back("pz_envelope", format_number(env));
  r.checks.push_back({"pz_bounded_by_one_third", env <= 1.0 / 3.0 + 0.02, format_number(env)});
  if (sys.j != 0.0) {
    const auto period = measured_period(t, pz, w0, w1);
    const double expected = 2.0 * std::numbers::pi / std::abs(sys.j);
    r.summary.emplace_back("measured_period", period ? format_number(*period) : "none");
    r.summary.emplace_back("expected_period", format_number(expected));
    r.summary.emplace_back("level_spacing_period",
                           format_number(2.0 * std::numbers::pi / std::abs(sys.j - 0.5 * (sys.k_a + sys.k_b))));
    r.checks.push_back({"period_2pi_over_j", period && std::abs(*period - expected) <= 0.01 * expected,
                        period ? format_number(*period) : "no crossings"});
  }
  const double cmax = *std::max_element(c.begin(), c.end());
  r.summary.emplace_back("max_concurrence", format_number(cmax));
  r.checks.push_back({"bath_induced_entanglement", cmax > 0.0, format_number(cmax)});
  return r;
}

RunResult run_fig3(const ScenarioConfig& cfg) {
  CommonBathSystem sys{*cfg.k_a, *cfg.k_b, *cfg.j, make_bath(cfg)};
  const TwoQubitState s0 = states::make_named_state(*cfg.state, cfg.state_params);
  RunResult r;
  r.series = tabulate({"t", "D", "D_A", "D_B"}, times_of(cfg), [&](double t) {
    const TwoQubitState s = evolve_symmetric(sys, s0, t);
    return std::vector<double>{decoherence_measure(s), single_qubit_decoherence(s.p_a),
                               single_qubit_decoherence(s.p_b)};
  });
  add_bath_meta(r.series, sys.bath);
  return r;
}

RunResult run_fig4(const ScenarioConfig& cfg) {
  CommonBathSystem sys{*cfg.k_a, *cfg.k_b, *cfg.j, make_bath(cfg)};
  const TwoQubitState s0 = states::make_named_state(*cfg.state, cfg.state_params);
  RunResult r;
  r.series = tabulate({"t", "Pi_xx", "Pi_yy", "Pi_zz", "C", "D"}, times_of(cfg), [&](double t) {
    const TwoQubitState s = evolve_symmetric(sys, s0, t);
    return std::vector<double>{s.pi(0, 0), s.pi(1, 1), s.pi(2, 2), concurrence(s),
                               decoherence_measure(s)};
  });
  add_bath_meta(r.series, sys.bath);
  return r;
}

RunResult run_fig5(const ScenarioConfig& cfg) {
  const BathDistribution bath = make_bath(cfg);
  std::vector<std::string> cols{"t"};
  std::vector<std::pair<double, CommonBathSystem>> combos;
  for (double rv : cfg.r_values)
    for (double jv : cfg.j_values) {
      combos.emplace_back(rv, CommonBathSystem{*cfg.k_a, *cfg.k_b, jv, bath});
      cols.push_back("D_r=" + format_number(rv) + "_J=" + format_number(jv));
    }
  RunResult r;
  r.series = tabulate(cols, times_of(cfg), [&](double t) {
    std::vector<double> row;
    for (const auto& [rv, sys] : combos)
      row.push_back(decoherence_measure(density_to_state(bell_class_coefficients(sys, rv, t).density())));
    return row;
  });
  add_bath_meta(r.series, bath);
  // Late-time mean D for each column, used for the qualitative J split.
  auto late_mean = [&](std::size_t col) {
    const auto v = r.series.column(cols[col]);
    double m = 0.0;
    std::size_t n = 0;
    for (std::size_t i = v.size() / 2; i < v.size(); ++i, ++n) m += v[i];
    return m / static_cast<double>(n);
  };
  for (std::size_t c = 0; c < combos.size(); ++c)
    r.summary.emplace_back("late_mean_" + cols[c + 1], format_number(late_mean(c + 1)));
  return r;
}

RunResult run_fig6(const ScenarioConfig& cfg) {
  const auto deltas = linspace(cfg.delta_min, cfg.delta_max, cfg.delta_points);
  RunResult r;
  r.series = tabulate({"delta", "separable", "gamma_plus1", "gamma_minus1", "optimal", "gamma_opt"},
                      deltas, [&](double d) {
                        const double g = gamma_opt(d);
                        return std::vector<double>{tau_inv_sq_pure({0.0, 0.0, 0.0}, d),
                                                   tau_inv_sq_pure({1.0, 0.0, 0.0}, d),
                                                   tau_inv_sq_pure({-1.0, 0.0, 0.0}, d),
                                                   tau_inv_sq_pure({g, 0.0, 0.0}, d), g};
                      });
  r.series.set_meta("units", "scale = <I(I+1)>(K_A^2+K_B^2)/3 = 1");
  bool optimal_lowest = true;
  double crossover = std::numeric_limits<double>::quiet_NaN();
  for (const auto& row : r.series.rows()) {
    optimal_lowest = optimal_lowest && row[4] <= std::min({row[1], row[2], row[3]}) + 1e-12;
    if (std::isnan(crossover) && row[1] >= row[2]) crossover = row[0];
  }
  r.summary.emplace_back("separable_vs_singlet_crossover", format_number(crossover));
  r.checks.push_back({"optimal_lowest", optimal_lowest, "optimal <= named curves at every delta"});
  const double step = (cfg.delta_max - cfg.delta_min) / std::max(1, cfg.delta_points - 1);
  r.checks.push_back({"crossover_one_third", std::abs(crossover - 1.0 / 3.0) <= step,
                      format_number(crossover)});
  return r;
}

struct ScenarioEntry {
  ScenarioInfo info;
  RunResult (*runner)(const ScenarioConfig&);
};

const std::vector<ScenarioEntry>& registry() {
  static const std::vector<ScenarioEntry> r{
      {{"separate", "two qubits, separate baths (J = 0): D, C and g-coefficients"}, run_separate},
      {{"common-symmetric", "common bath with K_A = K_B, closed-form polarization map"}, run_common},
      {{"common-asymmetric", "common bath, any K_A, K_B, sector-exact evolution"}, run_common},
      {{"optimize", "scan of the short-time decoherence rate over pure states vs closed form"}, run_optimize},
      {{"oracle-compare", "analytic evolution vs brute-force full Hilbert space"}, run_oracle_compare},
      {{"fig1", "separate baths: purity loss vs initial concurrence"}, run_fig1},
      {{"fig2", "common bath, unentangled input: P^z_A, Pi, C"}, run_fig2},
      {{"fig3", "common bath: two-qubit vs single-qubit decoherence"}, run_fig3},
      {{"fig4", "common bath, T0 input: tensor polarizations, C, D"}, run_fig4},
      {{"fig5", "asymmetric couplings: D(t) for r-states at several J"}, run_fig5},
      {{"fig6", "short-time rate vs delta for named and optimal states"}, run_fig6},
  };
  return r;
}

template <typename T>
void set_default(std::optional<T>& field, T value, const char* name, std::vector<std::string>& log) {
  if (!field) {
    field = value;
    log.emplace_back(name);
  }
}

}  // namespace

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig cfg;
  std::string raw;
  int line = 0;
  std::map<std::string, int> seen;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string val = trim(text.substr(eq + 1));
    if (seen.count(key)) {
      throw ConfigError("line " + std::to_string(line) + ": field '" + key +
                        "' repeated (first on line " + std::to_string(seen[key]) + ")");
    }
    seen[key] = line;
    if (key == "scenario") cfg.scenario = val;
    else if (key == "k_a") cfg.k_a = parse_double(val, key, line);
    else if (key == "k_b") cfg.k_b = parse_double(val, key, line);
    else if (key == "j") cfg.j = parse_double(val, key, line);
    else if (key == "bath") cfg.bath = val;
    else if (key == "bath_n") cfg.bath_n = parse_int(val, key, line);
    else if (key == "state") cfg.state = val;
    else if (key == "state_params") cfg.state_params = parse_list(val, key, line);
    else if (key == "t_max") cfg.t_max = parse_double(val, key, line);
    else if (key == "samples") cfg.samples = parse_int(val, key, line);
    else if (key == "output") cfg.output = val;
    else if (key == "j_values") cfg.j_values = parse_list(val, key, line);
    else if (key == "r_values") cfg.r_values = parse_list(val, key, line);
    else if (key == "delta_min") cfg.delta_min = parse_double(val, key, line);
    else if (key == "delta_max") cfg.delta_max = parse_double(val, key, line);
    else if (key == "delta_points") cfg.delta_points = parse_int(val, key, line);
    else if (key == "grid_points") cfg.grid_points = parse_int(val, key, line);
    else if (key == "oracle_mode") cfg.oracle_mode = val;
    else if (key == "tolerance") cfg.tolerance = parse_double(val, key, line);
    else if (key == "window_start") cfg.window_start = parse_double(val, key, line);
    else if (key == "window_end") cfg.window_end = parse_double(val, key, line);
    else if (key == "prune") cfg.prune = parse_double(val, key, line);
    else throw ConfigError("line " + std::to_string(line) + ": unknown field '" + key + "'");
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(f);
}

const std::vector<ScenarioInfo>& list_scenarios() {
  static const std::vector<ScenarioInfo> infos = [] {
    std::vector<ScenarioInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

std::vector<std::string> apply_defaults(ScenarioConfig& cfg) {
  std::vector<std::string> log;
  const std::string& s = cfg.scenario;
  if (s == "fig1") {
    set_default(cfg.k_a, 1.0, "k_a", log);
    set_default(cfg.k_b, 1.0, "k_b", log);
    set_default(cfg.bath, std::string("gaussian-sec3a"), "bath", log);
    set_default(cfg.bath_n, 100, "bath_n", log);
    set_default(cfg.t_max, 1.0, "t_max", log);
    set_default(cfg.samples, 501, "samples", log);
    if (cfg.r_values.empty()) {
      cfg.r_values = {0.0, 1.0 / 3.0, 0.5, 1.0};
      log.emplace_back("r_values");
    }
  } else if (s == "fig2" || s == "fig3" || s == "fig4") {
    set_default(cfg.k_a, 1.0, "k_a", log);
    set_default(cfg.k_b, *cfg.k_a, "k_b", log);
    set_default(cfg.j, s == "fig2" ? 200.0 : 1.0, "j", log);
    set_default(cfg.bath, std::string("gaussian-sec3a"), "bath", log);
    set_default(cfg.bath_n, 100, "bath_n", log);
    set_default(cfg.state, std::string(s == "fig4" ? "triplet0" : "up_down"), "state", log);
    set_default(cfg.t_max, s == "fig2" ? 6.0 : 1.0, "t_max", log);
    set_default(cfg.samples, s == "fig2" ? 6001 : 501, "samples", log);
    if (s == "fig2") {
      set_default(cfg.window_start, 1.0, "window_start", log);
      set_default(cfg.window_end, 5.0, "window_end", log);
    }
  } else if (s == "fig5") {
    set_default(cfg.k_a, 1.5, "k_a", log);
    set_default(cfg.k_b, 0.5, "k_b", log);
    set_default(cfg.bath, std::string("gaussian-sec3a"), "bath", log);
    set_default(cfg.bath_n, 100, "bath_n", log);
    set_default(cfg.t_max, 2.0, "t_max", log);
    set_default(cfg.samples, 2001, "samples", log);
    if (cfg.j_values.empty()) {
      cfg.j_values = {0.0, 10.0, 100.0};
      log.emplace_back("j_values");
    }
    if (cfg.r_values.empty()) {
      cfg.r_values = {0.5, -0.5};
      log.emplace_back("r_values");
    }
  } else if (s == "oracle-compare") {
    set_default(cfg.bath, std::string("exact"), "bath", log);
    if (cfg.oracle_mode == "separate") set_default(cfg.j, 0.0, "j", log);
  } else if (s == "separate") {
    set_default(cfg.j, 0.0, "j", log);
  }
  return log;
}

ValidationReport validate(const ScenarioConfig& cfg) {
  ValidationReport rep;
  auto& err = rep.errors;
  const std::string& s = cfg.scenario;
  if (s.empty()) {
    err.emplace_back("missing field 'scenario'");
    return rep;
  }
  const bool known = std::any_of(registry().begin(), registry().end(),
                                 [&](const ScenarioEntry& e) { return e.info.name == s; });
  if (!known) {
    err.push_back("unknown scenario '" + s + "'");
    return rep;
  }
  const bool dynamics = s != "optimize" && s != "fig6";
  auto require = [&](bool present, const char* field) {
    if (!present) err.push_back(std::string("missing field '") + field + "' for scenario '" + s + "'");
  };

  if (dynamics) {
    require(cfg.k_a.has_value(), "k_a");
    require(cfg.k_b.has_value(), "k_b");
    require(cfg.bath_n.has_value(), "bath_n");
    require(cfg.t_max.has_value(), "t_max");
    require(cfg.samples.has_value(), "samples");
    if (s != "fig1" && s != "fig5") require(cfg.state.has_value(), "state");
    if (is_common(s) || s == "fig2" || s == "fig3" || s == "fig4" ||
        (s == "oracle-compare" && cfg.oracle_mode == "common")) {
      require(cfg.j.has_value(), "j");
    }
    if (cfg.t_max && !(*cfg.t_max > 0.0)) err.emplace_back("field 't_max' must be positive");
    if (cfg.samples && *cfg.samples < 2) err.emplace_back("field 'samples' must be at least 2");
    if (cfg.bath) {
      const auto& b = *cfg.bath;
      if (b != "exact" && b != "gaussian-intro" && b != "gaussian-sec3a") {
        err.push_back("field 'bath' must be exact, gaussian-intro or gaussian-sec3a, got '" + b + "'");
      } else if (cfg.bath_n) {
        const int n = *cfg.bath_n;
        if (b == "exact" && (n < 1 || n > 64)) err.emplace_back("field 'bath_n' must lie in [1, 64] for the exact bath");
        if (b != "exact" && n < 2) err.emplace_back("field 'bath_n' must be at least 2 for a Gaussian bath");
      }
    }
    if (cfg.prune < 0.0 || cfg.prune >= 1.0) err.emplace_back("field 'prune' must lie in [0, 1)");
  }
  if ((s == "separate" || s == "fig1") && cfg.j && *cfg.j != 0.0) {
    err.emplace_back("field 'j' must be 0 for separate baths (the model has no exchange term)");
  }
  if ((s == "common-symmetric" || s == "fig2" || s == "fig3" || s == "fig4") && cfg.k_a && cfg.k_b &&
      *cfg.k_a != *cfg.k_b) {
    err.push_back("scenario '" + s + "' requires k_a = k_b; use common-asymmetric");
  }
  if (s == "oracle-compare") {
    if (cfg.oracle_mode != "common" && cfg.oracle_mode != "separate") {
      err.emplace_back("field 'oracle_mode' must be common or separate");
    }
    if (cfg.bath && *cfg.bath != "exact") err.emplace_back("oracle-compare needs bath = exact");
    if (cfg.bath_n) {
      const int spins = cfg.oracle_mode == "separate" ? 2 * *cfg.bath_n : *cfg.bath_n;
      if (spins > oracle::kMaxBathSpins) {
        err.push_back("oracle-compare with " + std::to_string(spins) +
                      " bath spins exceeds the dimension cap of " +
                      std::to_string(oracle::kMaxBathSpins));
      }
    }
    if (cfg.oracle_mode == "separate" && cfg.j && *cfg.j != 0.0) {
      err.emplace_back("field 'j' must be 0 for oracle_mode = separate");
    }
  }
  if (s == "fig5" && (cfg.j_values.empty() || cfg.r_values.empty())) {
    err.emplace_back("fig5 needs non-empty 'j_values' and 'r_values'");
  }
  if (s == "fig2" && cfg.window_start && cfg.window_end && !(*cfg.window_start < *cfg.window_end)) {
    err.emplace_back("field 'window_start' must be below 'window_end'");
  }
  if (s == "optimize" || s == "fig6") {
    if (cfg.delta_min < -1.0 || cfg.delta_max > 1.0 || !(cfg.delta_min < cfg.delta_max)) {
      err.emplace_back("delta range must satisfy -1 <= delta_min < delta_max <= 1");
    }
    if (cfg.delta_points < 2) err.emplace_back("field 'delta_points' must be at least 2");
    if (cfg.grid_points < 3) err.emplace_back("field 'grid_points' must be at least 3");
  }
  TwoQubitState s0;
  bool have_state = false;
  if (cfg.state) {
    try {
      s0 = states::make_named_state(*cfg.state, cfg.state_params);
      have_state = true;
    } catch (const InvalidInput& e) {
      err.push_back(std::string("field 'state': ") + e.what());
    }
  }
  if (!rep.ok() || !dynamics) return rep;

  // Derived quantities.
  try {
    const BathDistribution bath = make_bath(cfg);
    const double m = moment(bath, MomentKind::IIplus1);
    rep.derived.emplace_back("bath_sectors", std::to_string(bath.size()));
    rep.derived.emplace_back("moment_I_Iplus1", format_number(m));
    rep.derived.emplace_back("moment_I_sq", format_number(moment(bath, MomentKind::ISq)));
    const double ka = *cfg.k_a;
    const double kb = *cfg.k_b;
    if (ka != 0.0 || kb != 0.0) rep.derived.emplace_back("delta", format_number(delta_from_couplings(ka, kb)));
    if (have_state && std::abs(decoherence_measure(s0)) < 1e-10) {
      const CommonBathSystem sys{ka, kb, cfg.j.value_or(0.0), bath};
      const double inv = short_time_tau_inv_sq_common(s0, sys);
      rep.derived.emplace_back("tau_inv_sq_short_time", format_number(inv));
      rep.derived.emplace_back("tau_d", inv > 0.0 ? format_number(1.0 / std::sqrt(inv)) : "inf");
    }
    if (cfg.j && *cfg.j != 0.0 && ka != kb) {
      const CommonBathSystem sys{ka, kb, *cfg.j, bath};
      rep.derived.emplace_back("large_j_ratio", format_number(large_j_ratio(sys)));
    }
  } catch (const InvalidInput& e) {
    err.push_back(e.what());
  }
  return rep;
}

bool RunResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

RunResult run(ScenarioConfig cfg) {
  const auto defaulted = apply_defaults(cfg);
  const ValidationReport rep = validate(cfg);
  if (!rep.ok()) {
    std::string msg;
    for (std::size_t i = 0; i < rep.errors.size(); ++i) msg += (i ? "; " : "") + rep.errors[i];
    throw ConfigError(msg);
  }
  const auto it = std::find_if(registry().begin(), registry().end(),
                               [&](const ScenarioEntry& e) { return e.info.name == cfg.scenario; });
  RunResult r = it->runner(cfg);
  echo_config(r.series, cfg, defaulted);
  if (is_fig(cfg.scenario)) r.series.set_meta("time_unit", "1/Kbar with Kbar = (k_a + k_b)/2");
  for (const auto& [k, v] : rep.derived) r.series.set_meta(k, v);
  for (const auto& c : r.checks)
    r.series.set_meta("check_" + c.name, std::string(c.passed ? "pass" : "FAIL") + " (" + c.detail + ")");
  return r;
}

void write_report(std::ostream& os, const ValidationReport& r) {
  os << (r.ok() ? "config OK" : "config INVALID") << '\n';
  for (const auto& e : r.errors) os << "  error: " << e << '\n';
  for (const auto& [k, v] : r.derived) os << "  " << k << " = " << v << '\n';
}

void write_summary(std::ostream& os, const RunResult& r) {
  for (const auto& [k, v] : r.summary) os << k << " = " << v << '\n';
  for (const auto& c : r.checks)
    os << "check " << c.name << ": " << (c.passed ? "pass" : "FAIL") << " (" << c.detail << ")\n";
}

}  // namespace spinbath
