#pragma once

#include <optional>
#include <vector>

#include "spinbath/bath.hpp"
#include "spinbath/polarization.hpp"
#include "spinbath/timeseries.hpp"

namespace spinbath {

/// H = K_A S_A.I_A + K_B S_B.I_B, each qubit with its own unpolarized bath.
struct SeparateBathSystem {
  double k_a = 1.0;
  double k_b = 1.0;
  BathDistribution bath_a;
  BathDistribution bath_b;
};

/// Single-qubit sector unitary U = p + q S.I, up to a global phase.
struct PQ {
  Complex p{1.0, 0.0};
  Complex q{0.0, 0.0};
};

PQ pq_single(double k, HalfSpin spin, double t);

struct GCoefficients {
  double g1 = 1.0;
  double g1_tilde = 1.0;
  double g2 = 1.0;
};

/// Polarization survival factor of one qubit in a bath sector,
/// 1 - I(I+1)|q|^2/3.
double g_sector(double k, HalfSpin spin, double t);

/// Bath-averaged survival of one qubit's vector polarization.
double g_single(double k, const BathDistribution& bath, double t);

GCoefficients g_coefficients(const SeparateBathSystem& sys, double t);

/// P_A -> g1 P_A, P_B -> g1~ P_B, Pi -> g2 Pi.
TwoQubitState evolve(const SeparateBathSystem& sys, const TwoQubitState& s0, double t);

/// Columns t, D, C, g1, g1_tilde, g2. Pure inputs with |P_A| = |P_B| use the
/// closed form D = [3 - (g1^2 + g1~^2) P^2 - g2^2 (3 - 2P^2)]/4; other inputs
/// go through evolve and are flagged in the `d_path` metadata entry.
TimeSeries decoherence_series(const SeparateBathSystem& sys, const TwoQubitState& s0,
                              const std::vector<double>& times);

/// 1/tau_D^2 = K^2 <I(I+1)> (3 - P0^2) / 3. Requires K_A = K_B and equal bath
/// moments.
double short_time_tau_d(const SeparateBathSystem& sys, double p0);

/// 1/tau_C^2 = K^2 <I(I+1)> (3 - 2 P0^2) / (3 (1 - P0^2)). Throws Divergence at
/// P0 = 1.
double short_time_tau_c(const SeparateBathSystem& sys, double p0);

/// First time g2 falls to 1/3 for a maximally entangled input, located on
/// `samples` points of [0, horizon] and refined by bisection.
std::optional<double> sudden_death_time(const SeparateBathSystem& sys,
                                        const TwoQubitState& s0, double horizon,
                                        int samples = 2000);

}  // namespace spinbath
