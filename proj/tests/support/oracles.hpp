// Test-only oracles, deliberately independent of the library's quadrature
// path: double-exponential (tanh-sinh / exp-sinh) rules and a plain bisection
// root finder. Used to cross-check IntegralResult values and frozen constants.
//
// SPDX-License-Identifier: Apache-2.0

#ifndef CARLEMAN_TESTS_ORACLES_HPP
#define CARLEMAN_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>

namespace oracle {

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
};

namespace detail {

inline constexpr double kPiHalf = 1.5707963267948966;

template <class Node>
double level_sum(Node&& node, double step, double t_cap) {
    // node(t) must return w(t) * f(x(t)); non-finite tail terms are treated as 0
    double sum = 0.0;
    for (const double dir : {1.0, -1.0}) {
        int dead = 0;
        for (int k = (dir > 0 ? 0 : 1);; ++k) {
            const double t = dir * step * k;
            if (std::abs(t) > t_cap) break;
            double term = node(t);
            if (!std::isfinite(term)) term = 0.0;
            sum += term;
            if (std::abs(term) <= 1e-320 + 1e-18 * std::abs(sum)) {
                if (++dead >= 4) break;
            } else {
                dead = 0;
            }
        }
    }
    return sum * step;
}

}  // namespace detail

/// Tanh-sinh quadrature over [a, b].
template <class F>
Result tanh_sinh(F&& f, double a, double b, int max_level = 10, double target_rel = 1e-13) {
    const double center = 0.5 * (a + b), halflen = 0.5 * (b - a);
    const auto node = [&](double t) {
        const double s = detail::kPiHalf * std::sinh(t);
        const double x = center + halflen * std::tanh(s);
        if (x <= a || x >= b) return 0.0;
        const double ch = std::cosh(s);
        const double w = halflen * detail::kPiHalf * std::cosh(t) / (ch * ch);
        return w * f(x);
    };
    double prev = detail::level_sum(node, 0.5, 6.5);
    Result r{prev, std::abs(prev)};
    for (int level = 1; level <= max_level; ++level) {
        const double cur = detail::level_sum(node, 0.5 / (1 << level), 6.5);
        r.value = cur;
        r.error_estimate = std::abs(cur - prev);
        if (r.error_estimate <= target_rel * std::abs(cur) + 1e-300) break;
        prev = cur;
    }
    return r;
}

/// Exp-sinh quadrature over [0, inf) for decaying integrands.
template <class F>
Result exp_sinh(F&& f, int max_level = 10, double target_rel = 1e-13) {
    const auto node = [&](double t) {
        const double s = detail::kPiHalf * std::sinh(t);
        if (s > 700.0) return 0.0;  // x would overflow; integrand must be dead there
        const double x = std::exp(s);
        const double w = x * detail::kPiHalf * std::cosh(t);
        return w * f(x);
    };
    double prev = detail::level_sum(node, 0.5, 6.7);
    Result r{prev, std::abs(prev)};
    for (int level = 1; level <= max_level; ++level) {
        const double cur = detail::level_sum(node, 0.5 / (1 << level), 6.7);
        r.value = cur;
        r.error_estimate = std::abs(cur - prev);
        if (r.error_estimate <= target_rel * std::abs(cur) + 1e-300) break;
        prev = cur;
    }
    return r;
}

/// Plain bisection for an increasing sign change of g on [lo, hi].
inline double bisect(const std::function<double(double)>& g, double lo, double hi,
                     double tol = 1e-12) {
    double glo = g(lo);
    if (glo >= 0.0) return lo;
    while (hi - lo > tol * std::max(1.0, std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracle

#endif  // CARLEMAN_TESTS_ORACLES_HPP
