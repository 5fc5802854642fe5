#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "plsmode/config.hpp"
#include "plsmode/rng.hpp"

namespace plsmode {

// One draw of the K x N_t legitimate channel matrix and the eavesdropper
// small-scale fading vector (unit-variance circularly symmetric entries;
// the path loss alpha enters through the effective SNR at use site).
struct ChannelRealization {
    int n_users = 0;
    int n_antennas = 0;
    std::vector<std::complex<double>> legit;  // row-major K x N_t
    std::vector<std::complex<double>> eav;    // length N_t

    std::span<const std::complex<double>> user(int k) const {
        return {legit.data() + static_cast<std::size_t>(k) * n_antennas,
                static_cast<std::size_t>(n_antennas)};
    }
};

// M orthonormal transmit directions for one slot (columns of a
// Haar-distributed unitary).
struct BeamSet {
    int n_antennas = 0;
    int mode = 0;
    std::vector<std::complex<double>> vectors;  // beam-major M x N_t

    std::span<const std::complex<double>> beam(int m) const {
        return {vectors.data() + static_cast<std::size_t>(m) * n_antennas,
                static_cast<std::size_t>(n_antennas)};
    }
};

// Default mirrors the analysis: all K users compete on every beam, a lucky
// user may win several beams. Strict assigns greedily in descending SINR
// with each user used at most once.
enum class SchedulingModel { faithful, strict_assign };

struct BeamOutcome {
    int selected_user = -1;
    double lambda = 0.0;        // scheduled-user SINR on this beam
    double eta = 0.0;           // eavesdropper SINR on this beam
    double secrecy_rate = 0.0;  // (log2(1+lambda) - log2(1+eta))^+
};

struct ScheduleOutcome {
    std::vector<BeamOutcome> beams;
    int starved_beams = 0;          // beams with no eligible reporter
    int duplicate_assignments = 0;  // extra beams won by an already-scheduled user

    double sum_secrecy() const {
        double s = 0.0;
        for (const auto& b : beams) s += b.secrecy_rate;
        return s;
    }
};

ChannelRealization draw_channels(const SystemConfig& cfg, Xoshiro256pp& rng);

BeamSet draw_beams(int n_antennas, int mode, Xoshiro256pp& rng);

// SINR of channel vector h on beam m: |h.w_m|^2 / (sum_{i!=m} |h.w_i|^2 + 1/snr).
double compute_sinr(std::span<const std::complex<double>> h, const BeamSet& beams,
                    int m, double snr);

ScheduleOutcome schedule(const SystemConfig& cfg, const ChannelRealization& channels,
                         const BeamSet& beams,
                         SchedulingModel model = SchedulingModel::faithful);

struct RunSpec {
    long n_trials = 0;
    std::vector<double> rate_grid;  // empirical outage evaluated at these rates
    std::uint64_t seed = 0;
    SchedulingModel model = SchedulingModel::faithful;
    int n_workers = 0;              // 0 = hardware concurrency
    bool collect_secrecy_samples = false;
};

struct TrialStats {
    long trials = 0;
    long pair_count = 0;  // (slot, beam) pairs
    std::vector<double> rate_grid;
    std::vector<double> empirical_outage;    // per rate, P(C_sec < R)
    std::vector<double> outage_std_err;      // binomial standard errors
    double empirical_interception = 0.0;     // P(lambda < eta)
    double interception_std_err = 0.0;
    double mean_sum_secrecy = 0.0;           // mean over slots of sum_m C_sec,m
    double sum_secrecy_std_err = 0.0;
    long starved_beams = 0;
    long duplicate_assignments = 0;
    std::vector<double> secrecy_samples;     // sorted, only when collected

    // Empirical q-quantile of the per-beam secrecy rate (requires samples).
    double secrecy_quantile(double q) const;

    bool operator==(const TrialStats&) const = default;
};

// Runs n_trials independent slots. Trials are distributed over workers with
// per-trial substreams keyed by (seed, trial index); results are reduced in
// trial order, so any worker count produces bitwise-identical stats.
TrialStats run_trials(const SystemConfig& cfg, const RunSpec& spec);

}  // namespace plsmode
