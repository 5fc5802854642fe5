#include "plsmode/modeselect.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "plsmode/secrecy.hpp"

namespace plsmode {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double scan_capacity(const SystemConfig& cfg, double delta_r) {
    if (!(delta_r > 0.0))
        throw std::invalid_argument("grid_scan requires delta_r > 0");
    const long max_steps = static_cast<long>(std::ceil(64.0 / delta_r));
    for (long i = 0; i <= max_steps; ++i) {
        const double r = static_cast<double>(i) * delta_r;
        if (outage_probability_auto(r, cfg).value >= cfg.outage_target) return r;
    }
    throw std::runtime_error("rate scan exceeded the 64 b/s/Hz cap");
}

void finalize_choice(ModeDecision& d) {
    int best = -1;
    for (std::size_t i = 0; i < d.per_mode_sum_capacity.size(); ++i) {
        const double v = d.per_mode_sum_capacity[i];
        if (std::isnan(v)) continue;
        if (best < 0 || v > d.per_mode_sum_capacity[best]) best = static_cast<int>(i);
    }
    if (best < 0) throw std::runtime_error("every mode failed to evaluate");
    d.chosen = best + 1;

    int runner = -1;
    for (std::size_t i = 0; i < d.per_mode_sum_capacity.size(); ++i) {
        const double v = d.per_mode_sum_capacity[i];
        if (std::isnan(v) || static_cast<int>(i) == best) continue;
        if (runner < 0 || v > d.per_mode_sum_capacity[runner]) runner = static_cast<int>(i);
    }
    if (runner >= 0) {
        d.runner_up = runner + 1;
        d.near_tie_margin =
            d.per_mode_sum_capacity[best] - d.per_mode_sum_capacity[runner];
    }
}

}  // namespace

double mode_capacity(const SystemConfig& cfg, SelectStrategy strategy, double delta_r) {
    cfg.validate();
    if (strategy == SelectStrategy::grid_scan) return scan_capacity(cfg, delta_r);
    return secrecy_outage_capacity(cfg).rate;
}

ModeDecision ams_select(const SystemConfig& base, SelectStrategy strategy,
                        double delta_r) {
    if (strategy == SelectStrategy::grid_scan && !(delta_r > 0.0))
        throw std::invalid_argument("grid_scan requires delta_r > 0");
    SystemConfig cfg = base;
    cfg.mode = 1;
    cfg.validate();

    ModeDecision d;
    d.scheme = Scheme::AMS;
    d.per_mode_sum_capacity.assign(base.n_antennas, kNaN);
    d.per_mode_error.assign(base.n_antennas, "");
    for (int m = 1; m <= base.n_antennas; ++m) {
        cfg.mode = m;
        try {
            d.per_mode_sum_capacity[m - 1] = m * mode_capacity(cfg, strategy, delta_r);
        } catch (const std::exception& e) {
            d.per_mode_error[m - 1] = e.what();
        }
    }
    finalize_choice(d);
    return d;
}

ModeDecision fixed_mode(const SystemConfig& base, Scheme which,
                        SelectStrategy strategy, double delta_r) {
    if (which == Scheme::AMS)
        throw std::invalid_argument("fixed_mode covers FTM1/FTM2; use ams_select");
    SystemConfig cfg = base;
    cfg.mode = which == Scheme::FTM1 ? 1 : base.n_antennas;
    cfg.validate();

    ModeDecision d;
    d.scheme = which;
    d.per_mode_sum_capacity.assign(base.n_antennas, kNaN);
    d.per_mode_error.assign(base.n_antennas, "");
    d.per_mode_sum_capacity[cfg.mode - 1] =
        cfg.mode * mode_capacity(cfg, strategy, delta_r);
    d.chosen = cfg.mode;
    return d;
}

std::vector<ComparisonRow> compare_schemes(const SystemConfig& base,
                                           std::span<const double> snr_grid,
                                           std::span<const Scheme> schemes,
                                           SelectStrategy strategy, double delta_r) {
    std::vector<ComparisonRow> rows;
    rows.reserve(snr_grid.size() * schemes.size());
    for (double snr : snr_grid) {
        SystemConfig cfg = base;
        cfg.snr = snr;
        for (Scheme s : schemes) {
            ComparisonRow row;
            row.snr = snr;
            row.scheme = s;
            row.decision = s == Scheme::AMS ? ams_select(cfg, strategy, delta_r)
                                            : fixed_mode(cfg, s, strategy, delta_r);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::AMS: return "AMS";
        case Scheme::FTM1: return "FTM1";
        case Scheme::FTM2: return "FTM2";
    }
    return "?";
}

}  // namespace plsmode
