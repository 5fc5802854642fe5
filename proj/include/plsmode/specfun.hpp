#pragma once

namespace plsmode {

enum class WMethod { closed_form, recurrence, quadrature };

// One evaluation of W(x, N) = integral_0^inf e^{-x y} (1 + y)^{-N} dy.
struct WEval {
    double value;
    WMethod method;
    double est_abs_error;
};

// Exponential integral Ei(x) = PV integral_{-inf}^{x} e^t / t dt.
// Throws std::domain_error at x = 0 and std::overflow_error past the
// double exponent range (x > ~709).
double exp_integral_ei(double x);

// W(x, N) for x > 0, N >= 0. Picks the Gamma-sum closed form when its
// cancellation estimate is acceptable, otherwise the stable recurrence
// direction, with adaptive quadrature as the final fallback; the method
// field records which path produced the value.
WEval w_function(double x, unsigned n);

// Independent evaluation of the same integral by adaptive Gauss-Kronrod
// quadrature after the substitution y = t/(1-t). Oracle for w_function.
WEval w_function_quadrature(double x, unsigned n, double abs_tol = 1e-10);

namespace detail {

// Long-double core used by the alternating outage sums, full relative
// precision across the whole (x, N) range.
long double w_ld(long double x, unsigned n);

// e^x E_1(x) for x > 0 (equals W(x, 1)).
long double e1_scaled_ld(long double x);

}  // namespace detail

}  // namespace plsmode
