#include <doctest.h>

#include <cmath>

#include "plsmode/errors.hpp"
#include "plsmode/rng.hpp"
#include "plsmode/secrecy.hpp"

using namespace plsmode;

namespace {

SystemConfig defaults() {
    return SystemConfig{4, 10, 4, 1.0, 0.01, 0.05};
}

}  // namespace

TEST_SUITE("secrecy") {

TEST_CASE("closed-form term ingredients") {
    const SystemConfig cfg{4, 10, 3, 2.0, 0.01, 0.05};
    for (int n = 1; n <= cfg.n_users; ++n) {
        const auto t = closed_form_terms(0.7, cfg, n);
        CHECK(t.a > 0.0);
        CHECK(t.a <= 1.0);
        CHECK(t.mu > 0.0);
        CHECK(t.nu == static_cast<unsigned>(n * (cfg.mode - 1) + cfg.mode));
        CHECK(t.ups == static_cast<unsigned>((n + 1) * (cfg.mode - 1)));
    }
    CHECK(closed_form_terms(0.0, cfg, 2).a == doctest::Approx(1.0));
}

TEST_CASE("outage is certain at huge rate") {
    CHECK(outage_probability(50.0, defaults()) > 1.0 - 1e-6);
}

TEST_CASE("R = 0 equals the interception probability, same code path") {
    for (double snr : {0.25, 1.0, 8.0}) {
        SystemConfig cfg = defaults();
        cfg.snr = snr;
        cfg.mode = 2;
        CHECK(interception_probability(cfg) ==
              doctest::Approx(outage_probability_quadrature(0.0, cfg)).epsilon(1e-8));
    }
}

TEST_CASE("closed form matches quadrature at a reference point") {
    const SystemConfig cfg{2, 3, 2, 1.0, 0.01, 0.05};
    const double closed = outage_probability(0.5, cfg);
    const double quad = outage_probability_quadrature(0.5, cfg, 1e-12);
    CHECK(std::abs(closed - quad) <= 1e-8);
}

TEST_CASE("frozen golden value at defaults, R = 0.1") {
    // frozen from this module's quadrature at 1e-12 tolerance
    const double golden = 4.3904977652546545e-06;
    const SystemConfig cfg = defaults();
    CHECK(outage_probability_quadrature(0.1, cfg, 1e-12) ==
          doctest::Approx(golden).epsilon(1e-6));
    CHECK(std::abs(outage_probability(0.1, cfg) - golden) < 1e-9);
}

TEST_CASE("symmetric channels make interception one half") {
    const SystemConfig cfg{1, 1, 1, 3.7, 1.0, 0.05};
    CHECK(outage_probability_quadrature(0.0, cfg) ==
          doctest::Approx(0.5).epsilon(1e-9));
    CHECK(interception_probability(cfg) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("interception approaches 1/(K+1) in the interference-limited limit") {
    for (int k : {1, 10, 50}) {
        SystemConfig cfg{4, k, 2, 1e8, 0.01, 0.05};
        CHECK(std::abs(interception_probability(cfg) - 1.0 / (k + 1)) <= 1e-3);
    }
}

TEST_CASE("capacity solver boundary continuity") {
    // a configuration with a non-degenerate slope at R = 0, so that a 1e-6
    // bump in the target moves the capacity by well under 0.01 bits
    SystemConfig cfg{4, 10, 2, 1.0, 0.5, 0.05};
    const double g0 = interception_probability(cfg);
    REQUIRE(g0 < 0.9);
    cfg.outage_target = g0 + 1e-6;
    const auto r = secrecy_outage_capacity(cfg);
    CHECK(r.rate < 0.01);
    CHECK(r.rate > 0.0);

    // epsilon at or below G(0) pins the capacity at zero
    cfg.outage_target = g0 * 0.5;
    const auto zero = secrecy_outage_capacity(cfg);
    CHECK(zero.rate == 0.0);
    CHECK(zero.achieved_outage == doctest::Approx(g0).epsilon(1e-9));
    CHECK(zero.iterations == 0);
}

TEST_CASE("round trip G(G^{-1}(eps)) = eps over random configs") {
    Xoshiro256pp rng(20240817u);
    for (int i = 0; i < 20; ++i) {
        SystemConfig cfg;
        cfg.n_antennas = 4;
        cfg.n_users = 1 + static_cast<int>(rng.next() % 25);
        cfg.mode = 1 + static_cast<int>(rng.next() % 4);
        cfg.snr = std::pow(10.0, -1.0 + 2.0 * rng.uniform01());
        cfg.eav_path_gain = std::pow(10.0, -3.0 + 3.0 * rng.uniform01());
        cfg.outage_target = 0.01 + 0.2 * rng.uniform01();
        const auto r = secrecy_outage_capacity(cfg);
        if (r.rate == 0.0) continue;  // target below the interception floor
        const double g = outage_probability_quadrature(r.rate, cfg);
        CHECK(std::abs(g - cfg.outage_target) <= 1e-8);
    }
}

TEST_CASE("sum capacity is M times the per-beam capacity") {
    SystemConfig cfg = defaults();
    cfg.mode = 3;
    CHECK(sum_secrecy_outage_capacity(cfg) ==
          doctest::Approx(3.0 * secrecy_outage_capacity(cfg).rate).epsilon(1e-15));
    cfg.mode = 1;
    CHECK(sum_secrecy_outage_capacity(cfg) ==
          doctest::Approx(secrecy_outage_capacity(cfg).rate).epsilon(1e-15));
}

TEST_CASE("G is monotone in rate, eavesdropper gain, and user count") {
    SystemConfig cfg = defaults();
    cfg.mode = 2;

    double prev = outage_probability_auto(0.0, cfg).value;
    for (double r = 0.2; r <= 3.0; r += 0.2) {
        const double cur = outage_probability_auto(r, cfg).value;
        CHECK(cur > prev);
        prev = cur;
    }

    double prev_a = 0.0;
    for (double a2 : {1e-4, 1e-3, 1e-2, 0.1, 1.0}) {
        SystemConfig c = cfg;
        c.eav_path_gain = a2;
        const double g = outage_probability_auto(0.5, c).value;
        CHECK(g >= prev_a);
        prev_a = g;
    }

    double prev_k = 1.0;
    for (int k : {1, 2, 5, 10, 20}) {
        SystemConfig c = cfg;
        c.n_users = k;
        const double g = outage_probability_auto(0.5, c).value;
        CHECK(g <= prev_k);
        prev_k = g;
    }
}

TEST_CASE("instability paths throw as contracted") {
    SystemConfig cfg = defaults();
    cfg.n_users = 31;
    CHECK_THROWS_AS(outage_probability(0.5, cfg), numerical_instability_error);

    // tiny-G corner trips the cancellation ratio flag
    SystemConfig corner{4, 30, 1, 0.1, 1e-4, 0.05};
    CHECK_THROWS_AS(outage_probability(0.0, corner), numerical_instability_error);
    // the auto path falls back to quadrature instead
    CHECK(outage_probability_auto(0.0, corner).method == OutageMethod::quadrature);

    // raw diagnostics stay available and honest for the same corner
    const auto raw = detail::outage_closed_form_raw(0.0, corner);
    CHECK_FALSE(raw.stable);
    CHECK(std::abs(raw.value - outage_probability_quadrature(0.0, corner)) <=
          std::max(1e-7, 4.0 * raw.est_abs_error));
}

TEST_CASE("auto path uses quadrature beyond K = 30") {
    SystemConfig cfg = defaults();
    cfg.n_users = 50;
    const auto v = outage_probability_auto(0.5, cfg);
    CHECK(v.method == OutageMethod::quadrature);
    CHECK(v.value >= 0.0);
    CHECK(v.value <= 1.0);
    CHECK_NOTHROW(secrecy_outage_capacity(cfg));
}

}  // TEST_SUITE
