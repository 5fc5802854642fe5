#pragma once

#include <cmath>
#include <stdexcept>

namespace plsmode {

// Upper bound on the user count so that F^K underflow handling stays sane.
inline constexpr int kMaxUsers = 1'000'000;

// All scalar parameters of one downlink scenario. SNR and path gain are
// linear power ratios; dB conversion happens at the CLI boundary only.
struct SystemConfig {
    int n_antennas = 4;            // N_t, transmit antennas at the base station
    int n_users = 10;              // K, single-antenna users competing per slot
    int mode = 1;                  // M, simultaneously scheduled users (active beams)
    double snr = 1.0;              // rho = P / sigma^2 per beam
    double eav_path_gain = 0.01;   // alpha^2, eavesdropper path loss relative to users
    double outage_target = 0.05;   // epsilon, secrecy outage requirement

    // Effective eavesdropper SNR alpha^2 * rho.
    double eav_snr() const { return eav_path_gain * snr; }

    void validate() const {
        if (n_antennas < 1)
            throw std::invalid_argument("n_antennas must be >= 1");
        if (n_users < 1 || n_users > kMaxUsers)
            throw std::invalid_argument("n_users must be in [1, 1e6]");
        if (mode < 1 || mode > n_antennas)
            throw std::invalid_argument("mode must satisfy 1 <= M <= n_antennas");
        if (!(snr > 0.0) || !std::isfinite(snr))
            throw std::invalid_argument("snr must be a positive finite linear ratio");
        if (!(eav_path_gain > 0.0) || !std::isfinite(eav_path_gain))
            throw std::invalid_argument("eav_path_gain must be a positive finite linear ratio");
        if (!(outage_target > 0.0) || !(outage_target < 1.0))
            throw std::invalid_argument("outage_target must lie in (0, 1)");
    }
};

enum class Regime { general, noise_limited, interference_limited, large_k };

// CLI-boundary helpers; library interfaces are all linear.
inline double rho_from_tsnr_db(double tsnr_db) { return std::pow(10.0, tsnr_db / 10.0); }
inline double tsnr_db_from_rho(double rho) { return 10.0 * std::log10(rho); }

}  // namespace plsmode
