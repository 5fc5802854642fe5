#pragma once

#include "plsmode/config.hpp"

namespace plsmode {

enum class OutageMethod { closed_form, quadrature };

// Result of inverting the outage curve G(R) = epsilon.
struct OutageSolveResult {
    double rate = 0.0;            // R, bits/s/Hz per beam
    double achieved_outage = 0.0; // G(rate)
    OutageMethod method = OutageMethod::closed_form;
    int iterations = 0;
};

// The per-n ingredients of the alternating closed-form outage sum.
struct ClosedFormTerms {
    double a;       // exp(-n(2^R-1)/rho) / 2^{n(M-1)R}, in (0, 1]
    double mu;      // (n 2^R + 1/alpha^2)/rho
    unsigned nu;    // n(M-1) + M
    unsigned ups;   // (n+1)(M-1)
};
ClosedFormTerms closed_form_terms(double rate, const SystemConfig& cfg, int n);

// Closed-form outage probability G(R) from the alternating binomial sum.
// Throws numerical_instability_error when the cancellation tracker trips
// (|terms| to |sum| ratio above 1e12, or K > 30); callers should then use
// the quadrature path.
double outage_probability(double rate, const SystemConfig& cfg);

// G(R) by adaptive quadrature of the defining integral
//   G(R) = integral_0^inf F_lambda((1+y) 2^R - 1) f_eta(y) dy .
// Oracle for the closed form and the primary path for K > 30.
double outage_probability_quadrature(double rate, const SystemConfig& cfg,
                                     double abs_tol = 1e-11);

struct OutageValue {
    double value;
    OutageMethod method;
};

// Closed form when K <= 30 and stable, quadrature otherwise.
OutageValue outage_probability_auto(double rate, const SystemConfig& cfg);

// Secrecy outage capacity: the unique R >= 0 with G(R) = epsilon, by
// bracketing + bisection; R = 0 when G(0) already exceeds epsilon.
OutageSolveResult secrecy_outage_capacity(const SystemConfig& cfg);

// M * G^{-1}(epsilon).
double sum_secrecy_outage_capacity(const SystemConfig& cfg);

// P(C_sec < 0) = G(0).
double interception_probability(const SystemConfig& cfg);

namespace detail {

// Raw closed-form evaluation with its cancellation diagnostics; never
// throws for instability (still validates cfg and K <= 66 so the exact
// binomials fit in 64 bits).
struct RawOutage {
    double value;            // unclamped sum
    double est_abs_error;    // eps_ld * sum of |terms|
    double cancellation;     // sum|terms| / max(|sum|, tiny)
    bool stable;             // cancellation <= 1e12
};
RawOutage outage_closed_form_raw(double rate, const SystemConfig& cfg);

}  // namespace detail

}  // namespace plsmode
