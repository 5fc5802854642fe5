#pragma once

#include "plsmode/config.hpp"

namespace plsmode {

// Which reduced quantity regime_reductions evaluates.
enum class ReducedQuantity { legit_cdf, eav_pdf };

// CDF of one unscheduled user's SINR on one beam:
//   F_xi(x) = 1 - exp(-x/rho) / (1+x)^{M-1}
double cdf_single_user_sinr(double x, const SystemConfig& cfg);

// CDF of the scheduled (max over K users) SINR: F_xi(x)^K.
double cdf_scheduled_sinr(double x, const SystemConfig& cfg);

// PDF of the eavesdropper SINR, effective SNR alpha^2 * rho:
//   f(y) = (M-1) e^{-y/a2rho}/(1+y)^M + e^{-y/a2rho} / (a2rho (1+y)^{M-1})
double pdf_eavesdropper_sinr(double y, const SystemConfig& cfg);

// CDF implied by the same law: 1 - exp(-y/a2rho) / (1+y)^{M-1}.
double cdf_eavesdropper_sinr(double y, const SystemConfig& cfg);

// Noise-limited / interference-limited reductions of the two laws.
double regime_reductions(double x_or_y, const SystemConfig& cfg, Regime regime,
                         ReducedQuantity which);

}  // namespace plsmode
