#include "plsmode/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "plsmode/errors.hpp"
#include "plsmode/quadrature.hpp"

namespace plsmode {
namespace {

constexpr long double kEulerGamma = 0.57721566490153286060651209008240243L;

template <typename Real>
constexpr Real eps_of = std::numeric_limits<Real>::epsilon();

// e^x E_n(x) by the Lentz continued fraction,
//
//                    1    1*n   2*(n+1)
//   e^x E_n(x) =  ----- ----- ---------  ...
//                 x+n -  x+n+2 -  x+n+4 -
//
// full relative precision for x >~ 1, any n >= 1.
template <typename Real>
Real expn_scaled_cf(Real x, unsigned n) {
    const Real tiny = std::numeric_limits<Real>::min() * Real(1e4);
    Real b = x + Real(n);
    Real c = Real(1) / tiny;
    Real d = Real(1) / b;
    Real h = d;
    for (int i = 1; i <= 1000; ++i) {
        const Real a = Real(-i) * Real(i + static_cast<int>(n) - 1);
        b += Real(2);
        d = Real(1) / (a * d + b);
        c = b + a / c;
        const Real del = c * d;
        h *= del;
        if (std::abs(del - Real(1)) <= Real(4) * eps_of<Real>) return h;
    }
    throw convergence_error("continued fraction for e^x E_n(x) stalled",
                            static_cast<double>(eps_of<Real>));
}

// E_1(x) by power series, 0 < x <= 1:
//   E_1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k * k!)
template <typename Real>
Real e1_series(Real x) {
    Real power = Real(1);  // (-x)^k / k!
    Real sum = Real(0);
    for (int k = 1; k <= 80; ++k) {
        power *= -x / Real(k);
        const Real term = -power / Real(k);
        sum += term;
        if (std::abs(term) < eps_of<Real> * std::abs(sum)) break;
    }
    return -Real(kEulerGamma) - std::log(x) + sum;
}

// e^x E_1(x) = W(x, 1), all x > 0.
template <typename Real>
Real w1(Real x) {
    if (x <= Real(1)) return std::exp(x) * e1_series(x);
    return expn_scaled_cf(x, 1u);
}

template <typename Real>
struct SumEval {
    Real value;
    Real abs_sum;   // sum of |terms|, cancellation tracker
};

// The Gamma-sum closed form for N >= 2:
//   W(x,N) = [ sum_{k=1}^{N-1} Gamma(k) (-x)^{N-1-k} + (-x)^{N-1} e^x E_1(x) ] / Gamma(N)
// evaluated with the term ratio t_{k-1} = t_k * (-x)/(k-1) so Gamma(N) never
// materializes.
template <typename Real>
SumEval<Real> w_gamma_sum(Real x, unsigned n) {
    Real t = Real(1) / Real(n - 1);  // k = N-1 term over Gamma(N)
    Real sum = t;
    Real abs_sum = t;
    for (unsigned k = n - 1; k >= 2; --k) {
        t *= -x / Real(k - 1);
        sum += t;
        abs_sum += std::abs(t);
    }
    const Real ei_term = t * (-x) * w1(x);
    sum += ei_term;
    abs_sum += std::abs(ei_term);
    return {sum, abs_sum};
}

// Upward recurrence W(x,k) = (1 - x W(x,k-1))/(k-1) from W(x,1), with a
// running first-order error bound. Stable while x stays below ~N.
template <typename Real>
SumEval<Real> w_recurrence_up(Real x, unsigned n) {
    Real w = w1(x);
    Real err = Real(4) * eps_of<Real> * w;
    for (unsigned k = 2; k <= n; ++k) {
        const Real prev = w;
        w = (Real(1) - x * prev) / Real(k - 1);
        err = (x * err + eps_of<Real> * (Real(1) + x * std::abs(prev))) / Real(k - 1);
    }
    return {w, err};  // abs_sum slot reused for the error bound
}

double w_quadrature_value(double x, unsigned n, double abs_tol, double* achieved) {
    // y = t/(1-t):  integrand e^{-x t/(1-t)} (1-t)^{n-2} on [0,1).
    auto integrand = [x, n](double t) {
        if (t >= 1.0) return 0.0;
        const double om = 1.0 - t;
        const double e = std::exp(-x * t / om);
        if (e == 0.0) return 0.0;
        return e * std::pow(om, static_cast<double>(n) - 2.0);
    };
    // For large x all mass sits at t ~ 1/x, below the first panel's nodes;
    // seed splits there.
    std::vector<double> splits;
    if (x > 50.0) {
        for (double c : {0.5, 5.0, 50.0, 500.0}) {
            const double y = c / x;
            splits.push_back(y / (1.0 + y));
        }
    }
    auto res = integrate_adaptive(integrand, 0.0, 1.0, abs_tol, 4000, splits);
    if (achieved) *achieved = res.est_abs_error;
    if (!res.converged && res.est_abs_error > 10.0 * abs_tol)
        throw convergence_error("W quadrature did not reach the requested tolerance",
                                res.est_abs_error);
    return res.value;
}

}  // namespace

namespace detail {

long double e1_scaled_ld(long double x) { return w1<long double>(x); }

long double w_ld(long double x, unsigned n) {
    if (n == 0) return 1.0L / x;
    if (n == 1) return w1<long double>(x);
    if (x > 1.0L) return expn_scaled_cf<long double>(x, n);
    return w_recurrence_up<long double>(x, n).value;
}

}  // namespace detail

double exp_integral_ei(double x) {
    if (x == 0.0) throw std::domain_error("Ei(x) has a logarithmic singularity at x = 0");
    if (!std::isfinite(x)) throw std::invalid_argument("Ei(x) requires finite x");
    if (x > 709.7) throw std::overflow_error("Ei(x) overflows double for x > ~709");

    if (x < 0.0) {
        // Ei(-t) = -E_1(t)
        const long double t = -static_cast<long double>(x);
        if (t <= 1.0L) return static_cast<double>(-e1_series<long double>(t));
        return static_cast<double>(-std::exp(-t) * expn_scaled_cf<long double>(t, 1u));
    }

    if (x <= 44.0) {
        // All-positive series: Ei(x) = gamma + ln x + sum_{k>=1} x^k/(k k!)
        const long double lx = x;
        long double power = 1.0L;
        long double sum = 0.0L;
        for (int k = 1; k <= 400; ++k) {
            power *= lx / k;
            const long double term = power / k;
            sum += term;
            if (term < eps_of<long double> * sum) break;
        }
        return static_cast<double>(kEulerGamma + std::log(lx) + sum);
    }

    // Asymptotic series Ei(x) ~ e^x/x * sum_k k!/x^k, truncated at the
    // smallest term; the remainder is below it.
    const long double lx = x;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < 200; ++k) {
        const long double next = term * k / lx;
        if (next >= term) break;
        term = next;
        sum += term;
        if (term < eps_of<long double> * sum) break;
    }
    return static_cast<double>(std::exp(lx) / lx * sum);
}

WEval w_function(double x, unsigned n) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::invalid_argument("W(x, N) requires x > 0");

    if (n == 0)
        return {1.0 / x, WMethod::closed_form, eps_of<double> / x};
    if (n == 1) {
        const long double v = w1<long double>(static_cast<long double>(x));
        return {static_cast<double>(v), WMethod::closed_form,
                2.0 * eps_of<double> * static_cast<double>(v)};
    }

    // Gamma-sum closed form first, accepted while its cancellation estimate is
    // below 1e-8 relative.
    const auto cf = w_gamma_sum<long double>(static_cast<long double>(x), n);
    if (std::isfinite(static_cast<double>(cf.value)) && cf.value > 0.0L) {
        const long double est = eps_of<long double> * cf.abs_sum * 8.0L;
        if (est <= 1e-8L * cf.value)
            return {static_cast<double>(cf.value), WMethod::closed_form,
                    static_cast<double>(est) + eps_of<double> * static_cast<double>(cf.value)};
    }

    // Stable recurrence direction: upward from W(x,1) for small x, the
    // contracted downward recurrence (continued fraction) otherwise.
    if (x > 1.0) {
        const long double v = expn_scaled_cf<long double>(static_cast<long double>(x), n);
        return {static_cast<double>(v), WMethod::recurrence,
                2.0 * eps_of<double> * static_cast<double>(v)};
    }
    const auto rec = w_recurrence_up<long double>(static_cast<long double>(x), n);
    if (rec.value > 0.0L && rec.abs_sum <= 1e-8L * rec.value)
        return {static_cast<double>(rec.value), WMethod::recurrence,
                static_cast<double>(rec.abs_sum) +
                    eps_of<double> * static_cast<double>(rec.value)};

    double achieved = 0.0;
    const double v = w_quadrature_value(x, n, 1e-12, &achieved);
    return {v, WMethod::quadrature, achieved};
}

WEval w_function_quadrature(double x, unsigned n, double abs_tol) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::invalid_argument("W(x, N) requires x > 0");
    double achieved = 0.0;
    const double v = w_quadrature_value(x, n, abs_tol, &achieved);
    return {v, WMethod::quadrature, achieved};
}

}  // namespace plsmode
