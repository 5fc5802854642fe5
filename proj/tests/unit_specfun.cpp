#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "plsmode/errors.hpp"
#include "plsmode/specfun.hpp"

using namespace plsmode;

TEST_SUITE("specfun") {

TEST_CASE("Ei frozen values") {
    // oracle first: the frozen constants must come out of the oracle
    CHECK(static_cast<double>(oracle::ei(-1.0L)) ==
          doctest::Approx(-0.21938393439552029).epsilon(1e-14));
    CHECK(exp_integral_ei(-1.0) == doctest::Approx(-0.21938393439552029).epsilon(1e-13));
    CHECK(-std::exp(1.0) * exp_integral_ei(-1.0) ==
          doctest::Approx(0.5963473623231940).epsilon(1e-13));
    CHECK(exp_integral_ei(-1e-8) < -17.0);  // logarithmic divergence at 0-
}

TEST_CASE("Ei matches the oracle across the working range") {
    for (double x : {1e-6, 1e-4, 0.01, 0.3, 0.3725, 1.0, 2.0, 7.5, 20.0, 44.0, 44.5,
                     80.0, 100.0, 300.0, 700.0}) {
        const double ref_pos = static_cast<double>(oracle::ei(x));
        CHECK(std::abs(exp_integral_ei(x) - ref_pos) <=
              1e-12 * std::max(1.0, std::abs(ref_pos)));
        const double ref_neg = static_cast<double>(oracle::ei(-x));
        CHECK(std::abs(exp_integral_ei(-x) - ref_neg) <=
              1e-12 * std::max(1.0, std::abs(ref_neg)));
    }
}

TEST_CASE("Ei domain, overflow and finiteness errors") {
    CHECK_THROWS_AS(exp_integral_ei(0.0), std::domain_error);
    CHECK_THROWS_AS(exp_integral_ei(750.0), std::overflow_error);
    CHECK_THROWS_AS(exp_integral_ei(std::nan("")), std::invalid_argument);
    CHECK(std::isfinite(exp_integral_ei(709.0)));
}

TEST_CASE("W closed-form cases") {
    const WEval w0 = w_function(2.0, 0);
    CHECK(w0.value == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(w0.method == WMethod::closed_form);

    const WEval w1 = w_function(1.0, 1);
    CHECK(w1.value == doctest::Approx(0.5963473623231940).epsilon(1e-13));
    CHECK(w1.method == WMethod::closed_form);

    const WEval w2 = w_function(1.0, 2);
    CHECK(w2.value == doctest::Approx(0.4036526376768060).epsilon(1e-13));

    CHECK_THROWS_AS(w_function(0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(w_function(-2.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(w_function_quadrature(-1.0, 2), std::invalid_argument);
}

TEST_CASE("W quadrature oracle cases") {
    CHECK(w_function_quadrature(2.0, 0).value == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(std::abs(w_function_quadrature(1.0, 1).value - w_function(1.0, 1).value) <
          1e-9);
    CHECK(std::abs(w_function_quadrature(0.001, 10).value -
                   w_function(0.001, 10).value) < 1e-8);
}

TEST_CASE("W positivity and monotonicity in N") {
    for (double x : {1e-3, 0.1, 1.0, 10.0, 1e3}) {
        double prev = w_function(x, 0).value;
        CHECK(prev > 0.0);
        for (unsigned n = 1; n <= 12; ++n) {
            const double cur = w_function(x, n).value;
            CHECK(cur > 0.0);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("W recurrence identity (N-1)W(x,N) + x W(x,N-1) = 1") {
    for (double x : {1e-3, 1e-2, 0.1, 0.7, 1.5, 5.0, 30.0, 2e2, 1e3}) {
        for (unsigned n = 2; n <= 40; n += 3) {
            const double lhs = (n - 1) * w_function(x, n).value +
                               x * w_function(x, n - 1).value;
            CHECK(std::abs(lhs - 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("W closed/recurrence paths agree with quadrature to 1e-8 relative") {
    for (double x : {1e-3, 1e-2, 0.1, 1.0, 10.0, 1e2, 1e3}) {
        for (unsigned n : {2u, 5u, 12u, 25u, 40u}) {
            const double fast = w_function(x, n).value;
            const double slow = w_function_quadrature(x, n).value;
            CHECK(std::abs(fast - slow) <= 1e-8 * std::abs(fast) + 1e-13);
        }
    }
}

TEST_CASE("W against the independent Simpson oracle") {
    for (double x : {0.05, 0.8, 3.0, 40.0}) {
        for (unsigned n : {0u, 1u, 2u, 7u, 19u}) {
            const double ref = static_cast<double>(oracle::w_integral(x, n));
            CHECK(w_function(x, n).value == doctest::Approx(ref).epsilon(1e-9));
        }
    }
}

TEST_CASE("W limit x*W -> 1") {
    for (unsigned n : {0u, 1u, 4u, 9u}) {
        const double v = 1e6 * w_function(1e6, n).value;
        CHECK(std::abs(v - 1.0) <= 1e-3);
    }
}

TEST_CASE("WEval error estimates are nonnegative and honest") {
    for (double x : {0.2, 3.0, 200.0}) {
        for (unsigned n : {1u, 6u, 24u}) {
            const WEval w = w_function(x, n);
            CHECK(w.est_abs_error >= 0.0);
            const double ref = w_function_quadrature(x, n, 1e-12).value;
            CHECK(std::abs(w.value - ref) <=
                  std::max(w.est_abs_error * 4.0, 1e-11 * std::abs(ref) + 1e-13));
        }
    }
}

}  // TEST_SUITE
