#include "plsmode/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "plsmode/distributions.hpp"
#include "plsmode/errors.hpp"
#include "plsmode/quadrature.hpp"
#include "plsmode/specfun.hpp"

namespace plsmode {
namespace {

constexpr int kClosedFormMaxUsers = 30;
constexpr long double kLn2 = 0.69314718055994530941723212145817657L;

void check_rate(double rate) {
    if (!(rate >= 0.0) || !std::isfinite(rate))
        throw std::domain_error("rate must be a finite value >= 0");
}

}  // namespace

ClosedFormTerms closed_form_terms(double rate, const SystemConfig& cfg, int n) {
    cfg.validate();
    check_rate(rate);
    if (n < 1 || n > cfg.n_users)
        throw std::invalid_argument("term index n must lie in [1, K]");
    const long double t2r = std::exp2(static_cast<long double>(rate));
    const long double rho = cfg.snr;
    const long double a = std::exp(-n * (t2r - 1.0L) / rho -
                                   n * (cfg.mode - 1) * static_cast<long double>(rate) * kLn2);
    const long double mu = (n * t2r + 1.0L / cfg.eav_path_gain) / rho;
    return {static_cast<double>(a), static_cast<double>(mu),
            static_cast<unsigned>(n * (cfg.mode - 1) + cfg.mode),
            static_cast<unsigned>((n + 1) * (cfg.mode - 1))};
}

namespace detail {

RawOutage outage_closed_form_raw(double rate, const SystemConfig& cfg) {
    cfg.validate();
    check_rate(rate);
    if (cfg.n_users > 66)
        throw numerical_instability_error(
            "closed-form outage sum unusable for K > 66; use the quadrature path");

    const int k_users = cfg.n_users;
    const int mode = cfg.mode;
    const long double rho = cfg.snr;
    const long double inv_a2 = 1.0L / cfg.eav_path_gain;
    const long double a2rho = static_cast<long double>(cfg.eav_path_gain) * rho;
    const long double t2r = std::exp2(static_cast<long double>(rate));

    long double sum = 1.0L;
    long double abs_sum = 1.0L;
    std::uint64_t binom = 1;  // C(K, n), exact for K <= 66
    for (int n = 1; n <= k_users; ++n) {
        binom = binom * static_cast<std::uint64_t>(k_users - n + 1) /
                static_cast<std::uint64_t>(n);
        const long double a =
            std::exp(-n * (t2r - 1.0L) / rho - n * (mode - 1) * rate * kLn2);
        if (a == 0.0L) continue;
        const long double mu = (n * t2r + inv_a2) / rho;
        const unsigned nu = static_cast<unsigned>(n * (mode - 1) + mode);
        const unsigned ups = static_cast<unsigned>((n + 1) * (mode - 1));
        const long double inner =
            (mode - 1) * w_ld(mu, nu) + w_ld(mu, ups) / a2rho;
        const long double term = static_cast<long double>(binom) * a * inner;
        if (n % 2 == 1)
            sum -= term;
        else
            sum += term;
        abs_sum += term;
    }

    const long double eps_ld = std::numeric_limits<long double>::epsilon();
    const double cancellation = static_cast<double>(
        abs_sum / std::max(std::abs(sum), static_cast<long double>(1e-300)));
    return {static_cast<double>(sum),
            static_cast<double>(abs_sum * eps_ld * 32.0L),
            cancellation,
            std::isfinite(static_cast<double>(sum)) && cancellation <= 1e12};
}

}  // namespace detail

double outage_probability(double rate, const SystemConfig& cfg) {
    if (cfg.n_users > kClosedFormMaxUsers)
        throw numerical_instability_error(
            "closed-form outage sum disabled for K > 30; use the quadrature path");
    const auto raw = detail::outage_closed_form_raw(rate, cfg);
    if (!raw.stable)
        throw numerical_instability_error(
            "alternating outage sum cancellation ratio above 1e12; "
            "use the quadrature path");
    const double tol = std::max(1e-9, 10.0 * raw.est_abs_error);
    if (raw.value < -tol || raw.value > 1.0 + tol)
        throw numerical_instability_error(
            "closed-form outage left [0,1] beyond its error estimate");
    return std::clamp(raw.value, 0.0, 1.0);
}

double outage_probability_quadrature(double rate, const SystemConfig& cfg,
                                     double abs_tol) {
    cfg.validate();
    check_rate(rate);
    const double scale = cfg.eav_snr();  // decay length of the eavesdropper law
    const double t2r = std::exp2(rate);
    const int mode = cfg.mode;

    // In u = y/scale the eavesdropper weight is
    //   f(u) = e^{-u} [ (M-1) scale (1+scale u)^{-M} + (1+scale u)^{-(M-1)} ]
    // which already absorbs the scale Jacobian, so no 1/(a2 rho) blowup.
    auto integrand = [&](double u) {
        const double e = std::exp(-u);
        if (e == 0.0) return 0.0;
        const double base = 1.0 + scale * u;
        const double weight =
            e * ((mode - 1) * scale * std::pow(base, -mode) +
                 std::pow(base, -(mode - 1)));
        const double x = (1.0 + scale * u) * t2r - 1.0;
        return cdf_scheduled_sinr(x, cfg) * weight;
    };
    auto mapped = [&](double t) {
        if (t >= 1.0) return 0.0;
        const double om = 1.0 - t;
        const double v = integrand(t / om) / (om * om);
        return std::isfinite(v) ? v : 0.0;
    };
    const auto res = integrate_adaptive(mapped, 0.0, 1.0, abs_tol, 4000);
    if (!res.converged && res.est_abs_error > 10.0 * abs_tol)
        throw convergence_error("outage quadrature did not reach the requested tolerance",
                                res.est_abs_error);
    return std::clamp(res.value, 0.0, 1.0);
}

OutageValue outage_probability_auto(double rate, const SystemConfig& cfg) {
    if (cfg.n_users <= kClosedFormMaxUsers) {
        try {
            return {outage_probability(rate, cfg), OutageMethod::closed_form};
        } catch (const numerical_instability_error&) {
            // fall through to quadrature
        }
    }
    return {outage_probability_quadrature(rate, cfg), OutageMethod::quadrature};
}

OutageSolveResult secrecy_outage_capacity(const SystemConfig& cfg) {
    cfg.validate();
    const double eps = cfg.outage_target;

    OutageValue g0 = outage_probability_auto(0.0, cfg);
    if (g0.value >= eps) return {0.0, g0.value, g0.method, 0};

    // G is monotone increasing in R: double the bracket, then bisect.
    double lo = 0.0;
    double hi = 1.0;
    int iterations = 0;
    OutageValue ghi = outage_probability_auto(hi, cfg);
    ++iterations;
    while (ghi.value < eps) {
        lo = hi;
        hi *= 2.0;
        if (hi > 64.0)
            throw std::runtime_error(
                "secrecy capacity exceeds the 64 b/s/Hz bracket cap");
        ghi = outage_probability_auto(hi, cfg);
        ++iterations;
    }

    double mid = hi;
    OutageValue gmid = ghi;
    for (int i = 0; i < 200; ++i) {
        mid = 0.5 * (lo + hi);
        gmid = outage_probability_auto(mid, cfg);
        ++iterations;
        if (std::abs(gmid.value - eps) <= 1e-10) break;
        if (gmid.value < eps)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
    }
    if (std::abs(gmid.value - eps) > 1e-9)
        throw std::runtime_error("capacity bisection failed to meet |G(R) - eps| <= 1e-9");
    return {mid, gmid.value, gmid.method, iterations};
}

double sum_secrecy_outage_capacity(const SystemConfig& cfg) {
    return cfg.mode * secrecy_outage_capacity(cfg).rate;
}

double interception_probability(const SystemConfig& cfg) {
    cfg.validate();
    return outage_probability_auto(0.0, cfg).value;
}

}  // namespace plsmode
