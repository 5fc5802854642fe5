#pragma once

#include "plsmode/config.hpp"

namespace plsmode {

// Noise-limited outage probability; independent of the transmission mode.
// Closed alternating sum for K <= 30, quadrature of the reduced laws above.
double outage_noise_limited(double rate, const SystemConfig& cfg);

// Noise-limited interception probability, overflow-safe for any rho.
double interception_noise_limited(const SystemConfig& cfg);

// Interference-limited outage as a function of the SUM rate (the exponent
// carries (M-1)/M * R_sum). Requires M >= 2.
double outage_interference_limited(double sum_rate, const SystemConfig& cfg);

// Interference-limited interception probability, 1/(K+1) for any channel.
double interception_interference_limited(int n_users);

// Large-user-count outage with the legitimate SINR pinned at rho ln(K N_t).
// Returns 1 for rates past the legitimate capacity constant.
double outage_large_k(double rate, const SystemConfig& cfg);

// Large-user-count interception probability (mode N_t).
double interception_large_k(const SystemConfig& cfg);

// The capacity each regime formula implies at cfg.outage_target.
double capacity_noise_limited(const SystemConfig& cfg);            // per beam
double sum_capacity_interference_limited(const SystemConfig& cfg); // sum rate, M >= 2
double capacity_large_k(const SystemConfig& cfg);                  // per beam

// Shortcut mode choice per extreme regime: full multiplexing at the noise
// limit and for many users, single-user at the interference limit. The
// general regime has no shortcut and must go through modeselect.
int asymptotic_mode(Regime regime, const SystemConfig& cfg);

// CLI convenience heuristics; the general path stays authoritative.
Regime detect_regime(const SystemConfig& cfg);

namespace detail {

// (1 - (1-x)^{K+1}) / ((K+1) x), the shared survival kernel of the
// noise- and interference-limited closed forms, stable down to x -> 0.
double survival_ratio(double x, long k_users);

}  // namespace detail

}  // namespace plsmode
