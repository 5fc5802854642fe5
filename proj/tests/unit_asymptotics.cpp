#include <doctest.h>

#include <cmath>

#include "plsmode/asymptotics.hpp"
#include "plsmode/errors.hpp"
#include "plsmode/secrecy.hpp"

using namespace plsmode;

namespace {

SystemConfig make(int nt, int k, int m, double snr, double a2, double eps = 0.05) {
    return SystemConfig{nt, k, m, snr, a2, eps};
}

}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("noise-limited outage ignores the mode") {
    for (double r : {0.0, 0.3, 1.5}) {
        const double ref = outage_noise_limited(r, make(4, 10, 1, 0.8, 0.5));
        for (int m = 2; m <= 4; ++m) {
            // bitwise identical: M never enters the formula
            CHECK(outage_noise_limited(r, make(4, 10, m, 0.8, 0.5)) == ref);
        }
    }
}

TEST_CASE("noise-limited closed form at R = 0 equals the interception formula") {
    for (int k : {1, 5, 10, 30}) {
        for (double a2 : {0.5, 1.0}) {
            for (double snr : {0.5, 2.0}) {
                const SystemConfig cfg = make(4, k, 2, snr, a2);
                CHECK(std::abs(outage_noise_limited(0.0, cfg) -
                               interception_noise_limited(cfg)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("noise-limited interception limits") {
    // K -> infinity drives the interception probability to zero
    CHECK(interception_noise_limited(make(4, 100000, 1, 1.0, 1.0)) < 1e-4);
    // K = 0 limit of the survival kernel is exactly 1
    CHECK(detail::survival_ratio(std::exp(-2.0), 0) == doctest::Approx(1.0));
    // overflow guard: huge exponent argument degrades gracefully to the limit
    CHECK(interception_noise_limited(make(4, 10, 1, 1e-6, 1e-4)) ==
          doctest::Approx(1.0));
}

TEST_CASE("noise-limited capacity matches the general solver at tiny SNR") {
    for (int m : {1, 3}) {
        SystemConfig cfg = make(4, 10, m, 1e-4, 0.01);
        const double general = secrecy_outage_capacity(cfg).rate;
        const double reduced = capacity_noise_limited(cfg);
        CHECK(std::abs(general - reduced) <= 1e-3);
    }
}

TEST_CASE("interference-limited outage") {
    // R_sum = 0 evaluates to 1/(K+1)
    CHECK(outage_interference_limited(0.0, make(4, 10, 2, 1e6, 0.01)) ==
          doctest::Approx(1.0 / 11.0).epsilon(1e-12));
    CHECK_THROWS_AS(outage_interference_limited(1.0, make(4, 10, 1, 1e6, 0.01)),
                    std::invalid_argument);

    // matches the general G at huge SNR (per-beam rate = R_sum / M)
    const SystemConfig cfg = make(4, 5, 2, 1e8, 0.01);
    for (double rsum : {0.5, 1.0, 2.0}) {
        const double general = outage_probability_quadrature(rsum / 2.0, cfg);
        CHECK(std::abs(outage_interference_limited(rsum, cfg) - general) <= 1e-3);
    }

    // strictly increasing in the sum rate and in (M-1)/M
    double prev = 0.0;
    for (double rsum : {0.1, 0.5, 1.0, 2.0, 4.0}) {
        const double v = outage_interference_limited(rsum, cfg);
        CHECK(v > prev);
        prev = v;
    }
    double prev_m = 0.0;
    for (int m = 2; m <= 4; ++m) {
        const double v = outage_interference_limited(2.0, make(4, 5, m, 1e8, 0.01));
        CHECK(v > prev_m);
        prev_m = v;
    }
}

TEST_CASE("interference-limited interception is 1/(K+1)") {
    CHECK(interception_interference_limited(1) == doctest::Approx(0.5));
    CHECK(interception_interference_limited(10) ==
          doctest::Approx(1.0 / 11.0).epsilon(1e-15));
    CHECK_THROWS_AS(interception_interference_limited(0), std::invalid_argument);
}

TEST_CASE("implied interference-limited sum capacity decreases with the mode") {
    // solvable only above the 1/(K+1) floor
    double prev = 1e9;
    for (int m = 2; m <= 6; ++m) {
        SystemConfig cfg = make(8, 10, m, 1e8, 0.01, 0.2);
        const double rsum = sum_capacity_interference_limited(cfg);
        CHECK(rsum > 0.0);
        CHECK(rsum < prev);
        prev = rsum;
    }
    // below the floor the capacity collapses to zero
    CHECK(sum_capacity_interference_limited(make(4, 10, 2, 1e8, 0.01, 0.05)) == 0.0);
}

TEST_CASE("large-K outage") {
    const SystemConfig cfg = make(4, 10000, 4, 1.0, 0.01);
    const double cap = std::log2(1.0 + cfg.snr * std::log(10000.0 * 4.0));
    CHECK(outage_large_k(cap, cfg) == doctest::Approx(1.0));
    CHECK(outage_large_k(cap + 1.0, cfg) == doctest::Approx(1.0));

    double prev = 0.0;
    for (double r = 0.0; r < cap; r += cap / 7.0) {
        const double v = outage_large_k(r, cfg);
        CHECK(v >= prev);
        prev = v;
    }
    double prev_m = 1.0;
    for (int m = 1; m <= 4; ++m) {
        const double v = outage_large_k(1.0, make(4, 10000, m, 1.0, 0.01));
        CHECK(v <= prev_m);
        prev_m = v;
    }

    // regime consistency against the general quadrature path (logarithmic
    // convergence, loose tolerance)
    const double general = outage_probability_quadrature(1.0, cfg);
    CHECK(std::abs(outage_large_k(1.0, cfg) - general) <= 5e-2);
}

TEST_CASE("large-K interception") {
    const SystemConfig cfg = make(4, 10000, 4, 1.0, 0.01);
    CHECK(std::abs(interception_large_k(cfg) -
                   outage_large_k(0.0, cfg)) <= 1e-12);

    // decreasing in K and N_t, increasing in alpha^2 (alpha^2 large enough
    // that the values stay representable)
    CHECK(interception_large_k(make(4, 100000, 4, 1.0, 0.5)) <
          interception_large_k(make(4, 10000, 4, 1.0, 0.5)));
    CHECK(interception_large_k(make(8, 10000, 8, 1.0, 0.5)) <
          interception_large_k(make(4, 10000, 4, 1.0, 0.5)));
    CHECK(interception_large_k(make(4, 10000, 4, 1.0, 0.5)) >
          interception_large_k(make(4, 10000, 4, 1.0, 0.25)));

    // N_t = 1 leaves only the exponential factor
    const SystemConfig nt1 = make(1, 5000, 1, 1.0, 0.5);
    CHECK(interception_large_k(nt1) ==
          doctest::Approx(std::exp(-std::log(5000.0) / 0.5)).epsilon(1e-12));
}

TEST_CASE("regime mode shortcuts") {
    CHECK(asymptotic_mode(Regime::noise_limited, make(4, 10, 1, 1.0, 0.01)) == 4);
    CHECK(asymptotic_mode(Regime::interference_limited, make(4, 10, 1, 1.0, 0.01)) == 1);
    CHECK(asymptotic_mode(Regime::large_k, make(8, 10, 1, 1.0, 0.01)) == 8);
    CHECK_THROWS_AS(asymptotic_mode(Regime::general, make(4, 10, 1, 1.0, 0.01)),
                    std::invalid_argument);
}

TEST_CASE("regime heuristics") {
    CHECK(detect_regime(make(4, 10, 2, 1e-3, 0.01)) == Regime::noise_limited);
    CHECK(detect_regime(make(4, 10, 2, 1e3, 0.01)) == Regime::interference_limited);
    CHECK(detect_regime(make(4, 5000, 1, 1.0, 0.01)) == Regime::large_k);
    CHECK(detect_regime(make(4, 10, 2, 1.0, 0.01)) == Regime::general);
}

TEST_CASE("noise-limited quadrature fallback beyond K = 30") {
    const SystemConfig big = make(4, 200, 3, 1.0, 0.5);
    const double v = outage_noise_limited(0.8, big);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    // K > 30 integrates the reduced laws; the result must still be monotone
    CHECK(outage_noise_limited(1.2, big) > v);
}

}  // TEST_SUITE
