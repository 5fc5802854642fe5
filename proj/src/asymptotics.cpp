#include "plsmode/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "plsmode/errors.hpp"
#include "plsmode/quadrature.hpp"

namespace plsmode {
namespace {

constexpr int kClosedFormMaxUsers = 30;

void check_rate(double rate) {
    if (!(rate >= 0.0) || !std::isfinite(rate))
        throw std::domain_error("rate must be a finite value >= 0");
}

// Generic increasing-function inversion on [0, cap].
template <typename F>
double invert_increasing(F&& f, double target, double cap) {
    if (f(0.0) >= target) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (hi < cap && f(hi) < target) {
        lo = hi;
        hi = std::min(cap, hi * 2.0);
    }
    if (f(hi) < target) return cap;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

double legit_capacity_constant(const SystemConfig& cfg) {
    return std::log2(1.0 + cfg.snr * std::log(static_cast<double>(cfg.n_users) *
                                              cfg.n_antennas));
}

}  // namespace

namespace detail {

double survival_ratio(double x, long k_users) {
    if (x <= 0.0) return 1.0;                       // limit as x -> 0
    if (x >= 1.0) return 1.0 / (k_users + 1.0);     // (1-x)^{K+1} = 0
    return -std::expm1((k_users + 1.0) * std::log1p(-x)) / ((k_users + 1.0) * x);
}

}  // namespace detail

double outage_noise_limited(double rate, const SystemConfig& cfg) {
    cfg.validate();
    check_rate(rate);
    const long double rho = cfg.snr;
    const long double inv_a2 = 1.0L / cfg.eav_path_gain;
    const long double t2r = std::exp2(static_cast<long double>(rate));

    if (cfg.n_users <= kClosedFormMaxUsers) {
        long double sum = 1.0L;
        long double abs_sum = 1.0L;
        std::uint64_t binom = 1;
        for (int n = 1; n <= cfg.n_users; ++n) {
            binom = binom * static_cast<std::uint64_t>(cfg.n_users - n + 1) /
                    static_cast<std::uint64_t>(n);
            const long double term = static_cast<long double>(binom) *
                                     std::exp(-n * (t2r + inv_a2) / rho) /
                                     (n * t2r + 1.0L);
            if (n % 2 == 1)
                sum -= term;
            else
                sum += term;
            abs_sum += term;
        }
        if (abs_sum / std::max(std::abs(sum), 1e-300L) > 1e12L)
            throw numerical_instability_error(
                "noise-limited alternating sum cancellation ratio above 1e12");
        return std::clamp(static_cast<double>(sum), 0.0, 1.0);
    }

    // Quadrature of the reduced laws for large K.
    const double scale = cfg.eav_snr();
    const double t2 = std::exp2(rate);
    auto integrand = [&](double u) {
        const double e = std::exp(-u);
        if (e == 0.0) return 0.0;
        const double x = (1.0 + scale * u) * t2 - 1.0;
        const double f = -std::expm1(-x / cfg.snr);
        const double fk = f > 0.0 ? std::exp(cfg.n_users * std::log(f)) : 0.0;
        return fk * e;
    };
    auto mapped = [&](double t) {
        if (t >= 1.0) return 0.0;
        const double om = 1.0 - t;
        const double v = integrand(t / om) / (om * om);
        return std::isfinite(v) ? v : 0.0;
    };
    const auto res = integrate_adaptive(mapped, 0.0, 1.0, 1e-11, 4000);
    if (!res.converged && res.est_abs_error > 1e-10)
        throw convergence_error("noise-limited quadrature did not converge",
                                res.est_abs_error);
    return std::clamp(res.value, 0.0, 1.0);
}

double interception_noise_limited(const SystemConfig& cfg) {
    cfg.validate();
    const double c = (1.0 + 1.0 / cfg.eav_path_gain) / cfg.snr;
    // exp(-c) underflows for c > ~745; the ratio then sits at its x -> 0
    // limit of 1 to double precision.
    const double x = std::exp(-c);
    return detail::survival_ratio(x, cfg.n_users);
}

double outage_interference_limited(double sum_rate, const SystemConfig& cfg) {
    cfg.validate();
    check_rate(sum_rate);
    if (cfg.mode < 2)
        throw std::invalid_argument(
            "interference-limited outage is degenerate for M = 1");
    const double z =
        std::exp2(-(cfg.mode - 1.0) / cfg.mode * sum_rate);
    return detail::survival_ratio(z, cfg.n_users);
}

double interception_interference_limited(int n_users) {
    if (n_users < 1) throw std::invalid_argument("n_users must be >= 1");
    return 1.0 / (n_users + 1.0);
}

double outage_large_k(double rate, const SystemConfig& cfg) {
    cfg.validate();
    check_rate(rate);
    const double cap = legit_capacity_constant(cfg);
    if (rate >= cap) return 1.0;
    const double t = std::exp2(cap - rate);  // 2^{cap - R} >= 1
    return std::exp(-(t - 1.0) / cfg.eav_snr()) / std::pow(t, cfg.mode - 1);
}

double interception_large_k(const SystemConfig& cfg) {
    cfg.validate();
    const double cap = legit_capacity_constant(cfg);
    const double lam = cfg.snr * std::log(static_cast<double>(cfg.n_users) *
                                          cfg.n_antennas);  // 2^cap - 1
    return std::exp2(-(cfg.n_antennas - 1.0) * cap) *
           std::exp(-lam / cfg.eav_snr());
}

double capacity_noise_limited(const SystemConfig& cfg) {
    cfg.validate();
    return invert_increasing(
        [&](double r) { return outage_noise_limited(r, cfg); },
        cfg.outage_target, 64.0);
}

double sum_capacity_interference_limited(const SystemConfig& cfg) {
    cfg.validate();
    if (cfg.mode < 2)
        throw std::invalid_argument(
            "interference-limited capacity is unbounded for M = 1");
    return invert_increasing(
        [&](double r) { return outage_interference_limited(r, cfg); },
        cfg.outage_target, 512.0);
}

double capacity_large_k(const SystemConfig& cfg) {
    cfg.validate();
    return invert_increasing(
        [&](double r) { return outage_large_k(r, cfg); },
        cfg.outage_target, legit_capacity_constant(cfg));
}

int asymptotic_mode(Regime regime, const SystemConfig& cfg) {
    cfg.validate();
    switch (regime) {
        case Regime::noise_limited:
        case Regime::large_k:
            return cfg.n_antennas;
        case Regime::interference_limited:
            return 1;
        case Regime::general:
            break;
    }
    throw std::invalid_argument(
        "the general regime has no shortcut mode; run the full selection");
}

Regime detect_regime(const SystemConfig& cfg) {
    cfg.validate();
    if (cfg.snr * cfg.mode < 0.01) return Regime::noise_limited;
    if (cfg.mode >= 2 && cfg.snr > 100.0 * (cfg.mode - 1))
        return Regime::interference_limited;
    if (cfg.n_users >= 1000) return Regime::large_k;
    return Regime::general;
}

}  // namespace plsmode
