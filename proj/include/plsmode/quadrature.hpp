#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace plsmode {

struct QuadratureResult {
    double value = 0.0;
    double est_abs_error = 0.0;
    bool converged = false;
    int panels = 0;
};

namespace detail {

// 15-point Kronrod nodes (positive half) with the embedded 7-point Gauss rule.
// Odd indices are the Gauss points.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelEstimate {
    double value;
    double error;
};

// One G7/K15 panel with the QUADPACK-style error heuristic.
template <typename F>
PanelEstimate gauss_kronrod_15(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double result_k = kKronrodWeights[7] * fc;
    double result_g = kGaussWeights[3] * fc;
    double resabs = std::abs(result_k);

    double values[7][2];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        values[i][0] = f(center - dx);
        values[i][1] = f(center + dx);
        const double sum = values[i][0] + values[i][1];
        result_k += kKronrodWeights[i] * sum;
        if (i % 2 == 1) result_g += kGaussWeights[i / 2] * sum;
        resabs += kKronrodWeights[i] * (std::abs(values[i][0]) + std::abs(values[i][1]));
    }

    const double mean = 0.5 * result_k;
    double resasc = kKronrodWeights[7] * std::abs(fc - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kKronrodWeights[i] *
                  (std::abs(values[i][0] - mean) + std::abs(values[i][1] - mean));

    const double value = result_k * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);

    double err = std::abs((result_k - result_g) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(err, 50.0 * eps * resabs);
    return {value, err};
}

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& other) const { return error < other.error; }
};

}  // namespace detail

// Globally adaptive integration of f over [a, b]: repeatedly bisects the
// interval with the largest error estimate. Optional breakpoints seed the
// initial subdivision (needed when the integrand mass is far narrower than
// the first panel's node spacing).
template <typename F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                    int max_panels = 2000,
                                    std::span<const double> breakpoints = {}) {
    std::vector<double> knots;
    knots.push_back(a);
    for (double t : breakpoints)
        if (t > a && t < b) knots.push_back(t);
    knots.push_back(b);
    std::sort(knots.begin(), knots.end());

    std::priority_queue<detail::Interval> queue;
    double total = 0.0, total_err = 0.0;
    int panels = 0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        auto est = detail::gauss_kronrod_15(f, knots[i], knots[i + 1]);
        queue.push({knots[i], knots[i + 1], est.value, est.error});
        total += est.value;
        total_err += est.error;
        ++panels;
    }

    while (total_err > abs_tol && panels < max_panels) {
        detail::Interval worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval no longer splittable at double precision.
            queue.push(worst);
            break;
        }
        auto left = detail::gauss_kronrod_15(f, worst.a, mid);
        auto right = detail::gauss_kronrod_15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push({worst.a, mid, left.value, left.error});
        queue.push({mid, worst.b, right.value, right.error});
        ++panels;
    }

    return {total, total_err, total_err <= abs_tol, panels};
}

// Integration of f over [0, inf) through y = scale * t / (1 - t). The scale
// should match the integrand's decay length so the mapped mass is O(1) wide.
template <typename F>
QuadratureResult integrate_half_line(F&& f, double scale, double abs_tol,
                                     int max_panels = 2000,
                                     std::span<const double> breakpoints = {}) {
    auto mapped = [&f, scale](double t) {
        if (t >= 1.0) return 0.0;
        const double om = 1.0 - t;
        const double y = scale * t / om;
        const double v = f(y) * scale / (om * om);
        return std::isfinite(v) ? v : 0.0;
    };
    return integrate_adaptive(mapped, 0.0, 1.0, abs_tol, max_panels, breakpoints);
}

}  // namespace plsmode
