#include "plsmode/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

namespace plsmode {
namespace {

std::complex<double> dot(std::span<const std::complex<double>> a,
                         std::span<const std::complex<double>> b) {
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::complex<double> dot_conj(std::span<const std::complex<double>> a,
                              std::span<const std::complex<double>> b) {
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double secrecy_rate(double lambda, double eta) {
    const double r = std::log2((1.0 + lambda) / (1.0 + eta));
    return r > 0.0 ? r : 0.0;
}

// K x M table of per-user, per-beam SINRs.
std::vector<double> sinr_table(const SystemConfig& cfg,
                               const ChannelRealization& ch, const BeamSet& beams) {
    std::vector<double> table(static_cast<std::size_t>(cfg.n_users) * cfg.mode);
    std::vector<double> gains(cfg.mode);
    for (int k = 0; k < cfg.n_users; ++k) {
        const auto h = ch.user(k);
        for (int m = 0; m < cfg.mode; ++m)
            gains[m] = std::norm(dot(h, beams.beam(m)));
        for (int m = 0; m < cfg.mode; ++m) {
            double interference = 0.0;
            for (int i = 0; i < cfg.mode; ++i)
                if (i != m) interference += gains[i];
            table[static_cast<std::size_t>(k) * cfg.mode + m] =
                gains[m] / (interference + 1.0 / cfg.snr);
        }
    }
    return table;
}

}  // namespace

ChannelRealization draw_channels(const SystemConfig& cfg, Xoshiro256pp& rng) {
    cfg.validate();
    ChannelRealization ch;
    ch.n_users = cfg.n_users;
    ch.n_antennas = cfg.n_antennas;
    ch.legit.resize(static_cast<std::size_t>(cfg.n_users) * cfg.n_antennas);
    ch.eav.resize(cfg.n_antennas);
    for (auto& z : ch.legit) z = rng.complex_normal();
    for (auto& z : ch.eav) z = rng.complex_normal();
    return ch;
}

BeamSet draw_beams(int n_antennas, int mode, Xoshiro256pp& rng) {
    if (n_antennas < 1 || mode < 1 || mode > n_antennas)
        throw std::invalid_argument("draw_beams requires 1 <= M <= N_t");
    BeamSet set;
    set.n_antennas = n_antennas;
    set.mode = mode;

    // Modified Gram-Schmidt on an N_t x M Ginibre block. Normalizing by the
    // real positive column norm fixes the QR phase ambiguity, which is what
    // makes the frame Haar-distributed.
    for (int attempt = 0; attempt < 16; ++attempt) {
        set.vectors.assign(static_cast<std::size_t>(mode) * n_antennas, {});
        for (auto& z : set.vectors) z = rng.complex_normal();
        bool ok = true;
        for (int m = 0; m < mode && ok; ++m) {
            auto* col = set.vectors.data() + static_cast<std::size_t>(m) * n_antennas;
            for (int pass = 0; pass < 2; ++pass) {
                for (int j = 0; j < m; ++j) {
                    const auto proj =
                        dot_conj(set.beam(j), {col, static_cast<std::size_t>(n_antennas)});
                    const auto* prev =
                        set.vectors.data() + static_cast<std::size_t>(j) * n_antennas;
                    for (int i = 0; i < n_antennas; ++i) col[i] -= proj * prev[i];
                }
            }
            double norm2 = 0.0;
            for (int i = 0; i < n_antennas; ++i) norm2 += std::norm(col[i]);
            if (norm2 < 1e-24) {
                ok = false;  // numerically rank deficient, redraw
                break;
            }
            const double inv = 1.0 / std::sqrt(norm2);
            for (int i = 0; i < n_antennas; ++i) col[i] *= inv;
        }
        if (ok) return set;
    }
    throw std::runtime_error("draw_beams failed to produce a full-rank frame");
}

double compute_sinr(std::span<const std::complex<double>> h, const BeamSet& beams,
                    int m, double snr) {
    if (m < 0 || m >= beams.mode)
        throw std::invalid_argument("beam index out of range");
    double signal = 0.0, interference = 0.0;
    for (int i = 0; i < beams.mode; ++i) {
        const double g = std::norm(dot(h, beams.beam(i)));
        if (i == m)
            signal = g;
        else
            interference += g;
    }
    return signal / (interference + 1.0 / snr);
}

ScheduleOutcome schedule(const SystemConfig& cfg, const ChannelRealization& channels,
                         const BeamSet& beams, SchedulingModel model) {
    cfg.validate();
    if (channels.n_users != cfg.n_users || channels.n_antennas != cfg.n_antennas ||
        beams.n_antennas != cfg.n_antennas || beams.mode != cfg.mode)
        throw std::invalid_argument("channel/beam dimensions do not match the config");

    const int m_beams = cfg.mode;
    const auto table = sinr_table(cfg, channels, beams);
    auto sinr_at = [&](int k, int m) {
        return table[static_cast<std::size_t>(k) * m_beams + m];
    };

    ScheduleOutcome out;
    out.beams.resize(m_beams);

    if (model == SchedulingModel::faithful) {
        // Every user competes on every beam; duplicates possible.
        for (int m = 0; m < m_beams; ++m) {
            int best = 0;
            for (int k = 1; k < cfg.n_users; ++k)
                if (sinr_at(k, m) > sinr_at(best, m)) best = k;
            out.beams[m].selected_user = best;
            out.beams[m].lambda = sinr_at(best, m);
        }
        std::vector<int> seen;
        for (const auto& b : out.beams) {
            if (std::find(seen.begin(), seen.end(), b.selected_user) != seen.end())
                ++out.duplicate_assignments;
            else
                seen.push_back(b.selected_user);
        }
    } else {
        // Greedy one-to-one matching in descending SINR.
        struct Entry {
            double sinr;
            int user, beam;
        };
        std::vector<Entry> entries;
        entries.reserve(static_cast<std::size_t>(cfg.n_users) * m_beams);
        for (int k = 0; k < cfg.n_users; ++k)
            for (int m = 0; m < m_beams; ++m)
                entries.push_back({sinr_at(k, m), k, m});
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            if (a.sinr != b.sinr) return a.sinr > b.sinr;
            if (a.user != b.user) return a.user < b.user;
            return a.beam < b.beam;
        });
        std::vector<bool> user_used(cfg.n_users, false), beam_used(m_beams, false);
        for (const auto& e : entries) {
            if (user_used[e.user] || beam_used[e.beam]) continue;
            user_used[e.user] = true;
            beam_used[e.beam] = true;
            out.beams[e.beam].selected_user = e.user;
            out.beams[e.beam].lambda = e.sinr;
        }
        // K < M leaves beams empty: count the starvation and fall back to
        // the best SINR on that beam across all users.
        for (int m = 0; m < m_beams; ++m) {
            if (beam_used[m]) continue;
            ++out.starved_beams;
            int best = 0;
            for (int k = 1; k < cfg.n_users; ++k)
                if (sinr_at(k, m) > sinr_at(best, m)) best = k;
            out.beams[m].selected_user = best;
            out.beams[m].lambda = sinr_at(best, m);
            ++out.duplicate_assignments;
        }
    }

    const double eav_snr = cfg.eav_snr();
    for (int m = 0; m < m_beams; ++m) {
        out.beams[m].eta = compute_sinr(channels.eav, beams, m, eav_snr);
        out.beams[m].secrecy_rate = secrecy_rate(out.beams[m].lambda, out.beams[m].eta);
    }
    return out;
}

double TrialStats::secrecy_quantile(double q) const {
    if (secrecy_samples.empty())
        throw std::logic_error("secrecy samples were not collected for this run");
    if (!(q > 0.0) || !(q < 1.0))
        throw std::invalid_argument("quantile must lie in (0, 1)");
    const auto n = secrecy_samples.size();
    auto idx = static_cast<std::size_t>(q * static_cast<double>(n));
    if (idx >= n) idx = n - 1;
    return secrecy_samples[idx];
}

TrialStats run_trials(const SystemConfig& cfg, const RunSpec& spec) {
    cfg.validate();
    if (spec.n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");

    const int m_beams = cfg.mode;
    const long n = spec.n_trials;
    const auto n_rates = spec.rate_grid.size();

    int workers = spec.n_workers > 0
                      ? spec.n_workers
                      : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (static_cast<long>(workers) > n) workers = static_cast<int>(n);

    struct WorkerAccum {
        std::vector<long> outage_counts;
        long interception = 0;
        long starved = 0;
        long duplicates = 0;
    };
    std::vector<WorkerAccum> accums(workers);
    std::vector<double> per_trial_sum(n);
    std::vector<double> samples;
    if (spec.collect_secrecy_samples)
        samples.resize(static_cast<std::size_t>(n) * m_beams);

    auto worker_fn = [&](int w, long begin, long end) {
        auto& acc = accums[w];
        acc.outage_counts.assign(n_rates, 0);
        for (long trial = begin; trial < end; ++trial) {
            Xoshiro256pp rng(derive_stream_key(spec.seed, static_cast<std::uint64_t>(trial)));
            const auto channels = draw_channels(cfg, rng);
            const auto beams = draw_beams(cfg.n_antennas, cfg.mode, rng);
            const auto outcome = schedule(cfg, channels, beams, spec.model);
            acc.starved += outcome.starved_beams;
            acc.duplicates += outcome.duplicate_assignments;
            double slot_sum = 0.0;
            for (int m = 0; m < m_beams; ++m) {
                const auto& b = outcome.beams[m];
                slot_sum += b.secrecy_rate;
                if (b.lambda < b.eta) ++acc.interception;
                for (std::size_t r = 0; r < n_rates; ++r)
                    if (b.secrecy_rate < spec.rate_grid[r]) ++acc.outage_counts[r];
                if (spec.collect_secrecy_samples)
                    samples[static_cast<std::size_t>(trial) * m_beams + m] =
                        b.secrecy_rate;
            }
            per_trial_sum[trial] = slot_sum;
        }
    };

    if (workers == 1) {
        worker_fn(0, 0, n);
    } else {
        std::vector<std::thread> threads;
        const long chunk = (n + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const long begin = w * chunk;
            const long end = std::min(n, begin + chunk);
            if (begin >= end) {
                accums[w].outage_counts.assign(n_rates, 0);
                continue;
            }
            threads.emplace_back(worker_fn, w, begin, end);
        }
        for (auto& t : threads) t.join();
    }

    TrialStats stats;
    stats.trials = n;
    stats.pair_count = n * m_beams;
    stats.rate_grid = spec.rate_grid;
    stats.empirical_outage.assign(n_rates, 0.0);
    stats.outage_std_err.assign(n_rates, 0.0);

    std::vector<long> outage_totals(n_rates, 0);
    long interception = 0;
    for (const auto& acc : accums) {
        for (std::size_t r = 0; r < n_rates; ++r) outage_totals[r] += acc.outage_counts[r];
        interception += acc.interception;
        stats.starved_beams += acc.starved;
        stats.duplicate_assignments += acc.duplicates;
    }
    const double pairs = static_cast<double>(stats.pair_count);
    for (std::size_t r = 0; r < n_rates; ++r) {
        const double p = static_cast<double>(outage_totals[r]) / pairs;
        stats.empirical_outage[r] = p;
        stats.outage_std_err[r] = std::sqrt(p * (1.0 - p) / pairs);
    }
    const double pi = static_cast<double>(interception) / pairs;
    stats.empirical_interception = pi;
    stats.interception_std_err = std::sqrt(pi * (1.0 - pi) / pairs);

    // Serial reductions in trial order keep the float results independent of
    // the worker count.
    double mean = 0.0;
    for (long t = 0; t < n; ++t) mean += per_trial_sum[t];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (long t = 0; t < n; ++t) {
        const double d = per_trial_sum[t] - mean;
        var += d * d;
    }
    var = n > 1 ? var / static_cast<double>(n - 1) : 0.0;
    stats.mean_sum_secrecy = mean;
    stats.sum_secrecy_std_err = std::sqrt(var / static_cast<double>(n));

    if (spec.collect_secrecy_samples) {
        std::sort(samples.begin(), samples.end());
        stats.secrecy_samples = std::move(samples);
    }
    return stats;
}

}  // namespace plsmode
