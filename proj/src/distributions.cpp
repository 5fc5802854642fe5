#include "plsmode/distributions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace plsmode {
namespace {

void check_nonnegative(double v, const char* what) {
    if (!(v >= 0.0))
        throw std::domain_error(std::string(what) + " must be >= 0");
}

// exp(-x/snr) / (1+x)^{M-1}, the survival factor shared by both laws.
double survival_factor(double x, double snr, int mode) {
    return std::exp(-x / snr) / std::pow(1.0 + x, mode - 1);
}

}  // namespace

double cdf_single_user_sinr(double x, const SystemConfig& cfg) {
    cfg.validate();
    check_nonnegative(x, "sinr");
    return 1.0 - survival_factor(x, cfg.snr, cfg.mode);
}

double cdf_scheduled_sinr(double x, const SystemConfig& cfg) {
    cfg.validate();
    check_nonnegative(x, "sinr");
    const double u = survival_factor(x, cfg.snr, cfg.mode);
    const double f = 1.0 - u;
    if (f <= 0.0) return 0.0;
    // K log F in log-domain except right next to F = 1, where log1p(-u)
    // keeps full precision anyway.
    if (f < 0.999) return std::exp(cfg.n_users * std::log(f));
    return std::exp(cfg.n_users * std::log1p(-u));
}

double pdf_eavesdropper_sinr(double y, const SystemConfig& cfg) {
    cfg.validate();
    check_nonnegative(y, "sinr");
    const double a2rho = cfg.eav_snr();
    const double e = std::exp(-y / a2rho);
    const int m = cfg.mode;
    return (m - 1) * e / std::pow(1.0 + y, m) +
           e / (a2rho * std::pow(1.0 + y, m - 1));
}

double cdf_eavesdropper_sinr(double y, const SystemConfig& cfg) {
    cfg.validate();
    check_nonnegative(y, "sinr");
    return 1.0 - survival_factor(y, cfg.eav_snr(), cfg.mode);
}

double regime_reductions(double x_or_y, const SystemConfig& cfg, Regime regime,
                         ReducedQuantity which) {
    cfg.validate();
    check_nonnegative(x_or_y, "sinr");
    const int m = cfg.mode;

    if (regime == Regime::noise_limited) {
        if (which == ReducedQuantity::legit_cdf) {
            const double f = -std::expm1(-x_or_y / cfg.snr);
            return std::pow(f, cfg.n_users);
        }
        const double a2rho = cfg.eav_snr();
        return std::exp(-x_or_y / a2rho) / a2rho;
    }

    if (regime == Regime::interference_limited) {
        if (which == ReducedQuantity::legit_cdf) {
            const double f = 1.0 - std::pow(1.0 + x_or_y, -(m - 1));
            return std::pow(f, cfg.n_users);
        }
        if (m == 1)
            throw std::invalid_argument(
                "interference-limited eavesdropper density degenerates for M = 1");
        return (m - 1) * std::pow(1.0 + x_or_y, -m);
    }

    throw std::invalid_argument("regime_reductions covers the noise- and "
                                "interference-limited regimes only");
}

}  // namespace plsmode
