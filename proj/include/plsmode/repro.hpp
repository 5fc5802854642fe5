#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plsmode/config.hpp"
#include "plsmode/modeselect.hpp"

namespace plsmode {

// Default scenario shared by every bundled experiment preset.
SystemConfig preset_config();

// TSNR grid -10..10 dB in 2 dB steps.
std::vector<double> preset_tsnr_grid();

struct ModeTableCell {
    double tsnr_db;
    int m_star;
    double sum_capacity;
    double near_tie_margin;
    int runner_up;
    std::string error;  // nonempty when the cell failed
};

struct ModeTableRow {
    std::string label;  // scheme name, "eps=...", or "K=..."
    std::vector<ModeTableCell> cells;
};

struct ModeTable {
    std::string target;
    std::vector<ModeTableRow> rows;
    bool any_failure = false;
};

// Mode-vs-TSNR tables: schemes (AMS/FTM1/FTM2), outage targets
// {0.10, 0.05, 0.01}, and user counts {50, 20, 5}.
ModeTable reproduce_table1(double delta_r = 0.01);
ModeTable reproduce_table2(double delta_r = 0.01);
ModeTable reproduce_table3(double delta_r = 0.01);

struct CurvePoint {
    std::string series;
    double tsnr_db;
    int m_star;
    double sum_capacity;
    std::string error;
};

struct Curve {
    std::string target;
    std::vector<CurvePoint> points;
    bool any_failure = false;
};

// Sum-capacity-vs-TSNR curves: scheme comparison, outage-target sweep,
// user-count sweep.
Curve reproduce_fig2();
Curve reproduce_fig3();
Curve reproduce_fig4();

struct TheorySimPoint {
    double tsnr_db;
    double alpha2;
    int m_star;
    double theory_rate;          // per-beam G^{-1}(eps)
    double theory_sum_capacity;  // M* x theory_rate
    double sim_sum_capacity;     // M* x empirical eps-quantile of C_sec
    double empirical_outage;     // fraction of pairs with C_sec < theory_rate
    double outage_std_err;
    long trials;
    std::string error;
};

struct TheorySimCurve {
    std::string target;
    std::vector<TheorySimPoint> points;
    long trials = 0;
    std::uint64_t seed = 0;
    bool any_failure = false;
};

// Theory-vs-simulation comparison over path losses alpha^2 in {1e-4, 1e-2}.
// A custom TSNR grid may be supplied (defaults to the preset grid).
TheorySimCurve reproduce_fig5(long trials, std::uint64_t seed, int n_workers = 0,
                              const std::vector<double>& tsnr_grid = {});

}  // namespace plsmode
