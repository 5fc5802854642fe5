#include "plsmode/repro.hpp"

#include <cmath>
#include <cstdio>

#include "plsmode/montecarlo.hpp"
#include "plsmode/secrecy.hpp"

namespace plsmode {
namespace {

std::string format_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

ModeTableCell evaluate_cell(const SystemConfig& base, double tsnr_db, Scheme scheme,
                            double delta_r) {
    SystemConfig cfg = base;
    cfg.snr = rho_from_tsnr_db(tsnr_db);
    ModeTableCell cell{tsnr_db, 0, 0.0, std::numeric_limits<double>::quiet_NaN(), 0, ""};
    try {
        const ModeDecision d =
            scheme == Scheme::AMS
                ? ams_select(cfg, SelectStrategy::grid_scan, delta_r)
                : fixed_mode(cfg, scheme, SelectStrategy::grid_scan, delta_r);
        cell.m_star = d.chosen;
        cell.sum_capacity = d.per_mode_sum_capacity[d.chosen - 1];
        cell.near_tie_margin = d.near_tie_margin;
        cell.runner_up = d.runner_up;
    } catch (const std::exception& e) {
        cell.error = e.what();
    }
    return cell;
}

ModeTableRow evaluate_row(const SystemConfig& base, const std::string& label,
                          Scheme scheme, double delta_r) {
    ModeTableRow row{label, {}};
    for (double tsnr : preset_tsnr_grid())
        row.cells.push_back(evaluate_cell(base, tsnr, scheme, delta_r));
    return row;
}

void flag_failures(ModeTable& table) {
    for (const auto& row : table.rows)
        for (const auto& cell : row.cells)
            if (!cell.error.empty()) table.any_failure = true;
}

CurvePoint curve_point(const SystemConfig& base, const std::string& series,
                       double tsnr_db, Scheme scheme) {
    SystemConfig cfg = base;
    cfg.snr = rho_from_tsnr_db(tsnr_db);
    CurvePoint p{series, tsnr_db, 0, 0.0, ""};
    try {
        const ModeDecision d = scheme == Scheme::AMS
                                   ? ams_select(cfg, SelectStrategy::bisection)
                                   : fixed_mode(cfg, scheme, SelectStrategy::bisection);
        p.m_star = d.chosen;
        p.sum_capacity = d.per_mode_sum_capacity[d.chosen - 1];
    } catch (const std::exception& e) {
        p.error = e.what();
    }
    return p;
}

std::vector<double> fine_tsnr_grid() {
    std::vector<double> grid;
    for (int db = -10; db <= 10; ++db) grid.push_back(db);
    return grid;
}

}  // namespace

SystemConfig preset_config() {
    SystemConfig cfg;
    cfg.n_antennas = 4;
    cfg.n_users = 10;
    cfg.mode = 1;
    cfg.snr = 1.0;
    cfg.eav_path_gain = 0.01;
    cfg.outage_target = 0.05;
    return cfg;
}

std::vector<double> preset_tsnr_grid() {
    std::vector<double> grid;
    for (int db = -10; db <= 10; db += 2) grid.push_back(db);
    return grid;
}

ModeTable reproduce_table1(double delta_r) {
    const SystemConfig base = preset_config();
    ModeTable table{"table1", {}, false};
    table.rows.push_back(evaluate_row(base, "AMS", Scheme::AMS, delta_r));
    table.rows.push_back(evaluate_row(base, "FTM1", Scheme::FTM1, delta_r));
    table.rows.push_back(evaluate_row(base, "FTM2", Scheme::FTM2, delta_r));
    flag_failures(table);
    return table;
}

ModeTable reproduce_table2(double delta_r) {
    ModeTable table{"table2", {}, false};
    for (double eps : {0.10, 0.05, 0.01}) {
        SystemConfig base = preset_config();
        base.outage_target = eps;
        table.rows.push_back(
            evaluate_row(base, "eps=" + format_label(eps), Scheme::AMS, delta_r));
    }
    flag_failures(table);
    return table;
}

ModeTable reproduce_table3(double delta_r) {
    ModeTable table{"table3", {}, false};
    for (int k : {50, 20, 5}) {
        SystemConfig base = preset_config();
        base.n_users = k;
        table.rows.push_back(
            evaluate_row(base, "K=" + std::to_string(k), Scheme::AMS, delta_r));
    }
    flag_failures(table);
    return table;
}

Curve reproduce_fig2() {
    const SystemConfig base = preset_config();
    Curve curve{"fig2", {}, false};
    for (Scheme s : {Scheme::AMS, Scheme::FTM1, Scheme::FTM2})
        for (double tsnr : fine_tsnr_grid())
            curve.points.push_back(curve_point(base, scheme_name(s), tsnr, s));
    for (const auto& p : curve.points)
        if (!p.error.empty()) curve.any_failure = true;
    return curve;
}

Curve reproduce_fig3() {
    Curve curve{"fig3", {}, false};
    for (double eps : {0.10, 0.05, 0.01}) {
        SystemConfig base = preset_config();
        base.outage_target = eps;
        for (double tsnr : fine_tsnr_grid())
            curve.points.push_back(
                curve_point(base, "eps=" + format_label(eps), tsnr, Scheme::AMS));
    }
    for (const auto& p : curve.points)
        if (!p.error.empty()) curve.any_failure = true;
    return curve;
}

Curve reproduce_fig4() {
    Curve curve{"fig4", {}, false};
    for (int k : {50, 20, 5}) {
        SystemConfig base = preset_config();
        base.n_users = k;
        for (double tsnr : fine_tsnr_grid())
            curve.points.push_back(
                curve_point(base, "K=" + std::to_string(k), tsnr, Scheme::AMS));
    }
    for (const auto& p : curve.points)
        if (!p.error.empty()) curve.any_failure = true;
    return curve;
}

TheorySimCurve reproduce_fig5(long trials, std::uint64_t seed, int n_workers,
                              const std::vector<double>& tsnr_grid) {
    const std::vector<double> grid =
        tsnr_grid.empty() ? preset_tsnr_grid() : tsnr_grid;
    TheorySimCurve curve{"fig5", {}, trials, seed, false};
    std::uint64_t point_index = 0;
    for (double alpha2 : {1e-4, 1e-2}) {
        for (double tsnr : grid) {
            SystemConfig cfg = preset_config();
            cfg.eav_path_gain = alpha2;
            cfg.snr = rho_from_tsnr_db(tsnr);
            TheorySimPoint p{tsnr, alpha2, 0, 0.0, 0.0, 0.0, 0.0, 0.0, trials, ""};
            try {
                const ModeDecision d = ams_select(cfg, SelectStrategy::bisection);
                cfg.mode = d.chosen;
                p.m_star = d.chosen;
                p.theory_rate = secrecy_outage_capacity(cfg).rate;
                p.theory_sum_capacity = d.chosen * p.theory_rate;

                RunSpec spec;
                spec.n_trials = trials;
                spec.rate_grid = {p.theory_rate};
                spec.seed = derive_stream_key(seed, point_index);
                spec.n_workers = n_workers;
                spec.collect_secrecy_samples = true;
                const TrialStats stats = run_trials(cfg, spec);
                p.empirical_outage = stats.empirical_outage[0];
                p.outage_std_err = stats.outage_std_err[0];
                p.sim_sum_capacity =
                    d.chosen * stats.secrecy_quantile(cfg.outage_target);
            } catch (const std::exception& e) {
                p.error = e.what();
                curve.any_failure = true;
            }
            curve.points.push_back(p);
            ++point_index;
        }
    }
    return curve;
}

}  // namespace plsmode
