#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "plsmode/config.hpp"

namespace plsmode {

// grid_scan walks R upward in delta_r steps and keeps the first grid point
// where G(R) >= eps (so it overshoots by up to delta_r); bisection solves
// G(R) = eps exactly.
enum class SelectStrategy { grid_scan, bisection };

enum class Scheme { AMS, FTM1, FTM2 };

struct ModeDecision {
    std::vector<double> per_mode_sum_capacity;  // index m-1; NaN where skipped/failed
    std::vector<std::string> per_mode_error;    // nonempty where a mode failed
    int chosen = 1;                             // M*
    Scheme scheme = Scheme::AMS;
    double near_tie_margin =
        std::numeric_limits<double>::quiet_NaN();  // chosen minus runner-up capacity
    int runner_up = 0;                             // 0 when there is no competitor
};

// Adaptive mode selection: compute the sum secrecy outage capacity for every
// mode in [1, N_t], then pick the argmax (ties break toward smaller M).
// Per-mode failures are recorded without aborting the other modes.
ModeDecision ams_select(const SystemConfig& base, SelectStrategy strategy,
                        double delta_r = 0.01);

// Fixed baselines: FTM1 pins M = 1, FTM2 pins M = N_t.
ModeDecision fixed_mode(const SystemConfig& base, Scheme which,
                        SelectStrategy strategy = SelectStrategy::bisection,
                        double delta_r = 0.01);

struct ComparisonRow {
    double snr;  // linear
    Scheme scheme;
    ModeDecision decision;
};

// Evaluates the requested schemes over a grid of linear SNRs.
std::vector<ComparisonRow> compare_schemes(const SystemConfig& base,
                                           std::span<const double> snr_grid,
                                           std::span<const Scheme> schemes,
                                           SelectStrategy strategy,
                                           double delta_r = 0.01);

const char* scheme_name(Scheme s);

// Per-beam capacity for one fixed mode under the given strategy (the scan
// variant reproduces Algorithm-style increments).
double mode_capacity(const SystemConfig& cfg, SelectStrategy strategy, double delta_r);

}  // namespace plsmode
