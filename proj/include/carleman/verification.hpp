// This file is part of carleman, a numerical toolkit for harmonic
// continuation in band domains.
// SPDX-License-Identifier: Apache-2.0

#ifndef CARLEMAN_VERIFICATION_HPP
#define CARLEMAN_VERIFICATION_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "carleman/core.hpp"
#include "carleman/kernel.hpp"
#include "carleman/quadrature.hpp"

namespace carleman {

// Verification suites: each turns one step of the kernel's derivation into a
// measurable pass/fail check with the thresholds pinned in code. Shared by the
// `verify` CLI command and the acceptance suite.

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::vector<std::pair<std::string, double>> metrics;
    std::string detail;
};

namespace detail {

/// Deterministic uniform double in [0, 1); independent of libstdc++'s
/// distribution internals.
inline double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * u01(rng);
}

}  // namespace detail

/// Two-form equivalence: the direct complex integrand equals the two-term
/// decomposition to 1e-10 relative over pseudo-random admissible tuples with
/// rho=1, a in {1,3}, rho1 in {0.3,0.5}.
inline SuiteResult run_equivalence_suite(int tuples = 1000, std::uint64_t seed = 20260810) {
    SuiteResult res;
    res.name = "integrand_equivalence";
    const double a_set[2] = {1.0, 3.0};
    const double rho1_set[2] = {0.3, 0.5};
    std::mt19937_64 rng(seed);
    double max_dev = 0.0;
    for (int i = 0; i < tuples; ++i) {
        const KernelParams params =
            KernelParams::make(1.0, a_set[i % 2], rho1_set[(i / 2) % 2]);
        const double h = params.h;
        const Point2 y{detail::uniform(rng, -3.0, 3.0), detail::uniform(rng, 0.04 * h, 0.96 * h)};
        Point2 x{0.0, detail::uniform(rng, 0.04 * h, 0.96 * h)};
        // log-uniform signed offset keeps small-eta neighborhoods represented
        const double mag = std::pow(10.0, detail::uniform(rng, -7.0, 0.7));
        x.y1 = y.y1 - (detail::u01(rng) < 0.5 ? mag : -mag);
        const double u = std::pow(10.0, detail::uniform(rng, -7.0, 0.8));
        const double direct = phi_integrand_direct(u, y, x, params);
        const double decomposed = phi_integrand_decomposed(u, y, x, params);
        const double dev = std::abs(direct - decomposed) /
                           std::max({std::abs(direct), std::abs(decomposed), 1e-300});
        max_dev = std::max(max_dev, dev);
    }
    res.metrics.emplace_back("max_rel_dev", max_dev);
    res.metrics.emplace_back("tolerance", 1e-10);
    res.pass = max_dev <= 1e-10;
    return res;
}

/// Closed form of the inner integral against the semi-infinite engine over
/// random (r, r1) pairs, relative 1e-8.
inline SuiteResult run_inner_integral_suite(int pairs = 100, std::uint64_t seed = 20260811) {
    SuiteResult res;
    res.name = "inner_integral_closed_form";
    std::mt19937_64 rng(seed);
    QuadratureConfig quad;
    quad.abs_tol = 1e-14;
    quad.rel_tol = 1e-11;
    double max_dev = 0.0;
    for (int i = 0; i < pairs; ++i) {
        const double r = detail::uniform(rng, 0.05, 3.0);
        const double r1 = r + detail::uniform(rng, 0.01, 5.0);
        const double r2 = r * r, r1sq = r1 * r1;
        const double exact = reference_inner_integral(r2, r1sq);
        const IntegralResult q = integrate_semi_infinite(
            [&](double u) { return u / ((u * u + r2) * (u * u + r1sq)); }, quad);
        max_dev = std::max(max_dev, std::abs(q.value - exact) / std::abs(exact));
    }
    res.metrics.emplace_back("max_rel_dev", max_dev);
    res.metrics.emplace_back("tolerance", 1e-8);
    res.pass = max_dev <= 1e-8;
    return res;
}

namespace detail {

/// sup over a grid of |Phi| * exp(a cos(rho1(y2-h/2)) cosh(rho1 alpha)) /
/// (1 + log(1 + 15h^2/r^2)), computed in log space.
inline double fit_decay_constant(const KernelParams& params, double alpha_max, int n_alpha,
                                 int n_pairs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    QuadratureConfig quad;
    quad.abs_tol = 1e-280;  // pure relative mode; far-field values are tiny
    quad.rel_tol = 1e-8;
    quad.max_subdivisions = 400;
    const double h = params.h;
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(n_pairs);
    while (static_cast<int>(pairs.size()) < n_pairs) {
        const double y2 = uniform(rng, 0.03 * h, 0.97 * h);
        const double x2 = uniform(rng, 0.03 * h, 0.97 * h);
        if (std::abs(y2 - x2) < 1e-3 * h) continue;  // keep r bounded away from 0 at alpha = 0
        pairs.emplace_back(y2, x2);
    }
    double best = -std::numeric_limits<double>::infinity();
    for (int ia = 0; ia < n_alpha; ++ia) {
        const double alpha = alpha_max * ia / (n_alpha - 1);
        for (const auto& [y2, x2] : pairs) {
            const Point2 y{alpha, y2}, x{0.0, x2};
            const IntegralResult phi = eval_phi(y, x, params, quad);
            if (phi.value == 0.0) continue;
            const double cos_y = std::cos(params.rho1 * (y2 - h / 2.0));
            const double r2 = alpha * alpha + (y2 - x2) * (y2 - x2);
            const double log_ratio = std::log(std::abs(phi.value)) +
                                     params.a * cos_y * std::cosh(params.rho1 * alpha) -
                                     std::log1p(std::log1p(15.0 * h * h / r2));
            best = std::max(best, log_ratio);
        }
    }
    return std::exp(best);
}

}  // namespace detail

/// Decay-envelope certification: the fitted constant C0* is finite and stable
/// under extending the alpha range from [0,5] to [0,10] (change < 1%).
inline SuiteResult run_c0_fit_suite() {
    SuiteResult res;
    res.name = "decay_envelope_fit";
    const KernelParams params = KernelParams::make(1.0, 3.0, 0.5);
    const std::uint64_t seed = 20260812;
    // the extended alpha grid keeps the base spacing (5/49) so it is an exact
    // superset: the fitted sup can only grow under the extension
    const double c0_base = detail::fit_decay_constant(params, 5.0, 50, 50, seed);
    const double c0_ext = detail::fit_decay_constant(params, 10.0, 99, 50, seed);
    const double change = std::abs(c0_ext - c0_base) / c0_base;
    res.metrics.emplace_back("C0_alpha5", c0_base);
    res.metrics.emplace_back("C0_alpha10", c0_ext);
    res.metrics.emplace_back("rel_change", change);
    res.metrics.emplace_back("tolerance", 0.01);
    res.pass = std::isfinite(c0_base) && std::isfinite(c0_ext) && change < 0.01;
    return res;
}

/// Log-singularity extraction: Phi + log(r)/(2pi) is Cauchy in r, successive
/// differences shrinking by at least 5x across radii 1e-2, 1e-3, 1e-4.
inline SuiteResult run_singularity_suite() {
    SuiteResult res;
    res.name = "singularity_extraction";
    const KernelParams params = KernelParams::make(1.0, 3.0, 0.5);
    const Point2 x{0.0, params.h / 2.0};
    QuadratureConfig quad;
    quad.abs_tol = 1e-13;
    quad.rel_tol = 1e-11;
    quad.max_subdivisions = 600;
    const double radii[3] = {1e-2, 1e-3, 1e-4};
    const double angles[4] = {0.0, 0.55, 1.9, 3.6};
    double worst_shrink = std::numeric_limits<double>::infinity();
    double limit_value = 0.0;
    for (const double theta : angles) {
        double s[3];
        for (int i = 0; i < 3; ++i) {
            const Point2 y{x.y1 + radii[i] * std::cos(theta), x.y2 + radii[i] * std::sin(theta)};
            s[i] = eval_phi(y, x, params, quad).value + std::log(radii[i]) / (2.0 * pi);
        }
        const double d1 = std::abs(s[1] - s[0]);
        const double d2 = std::abs(s[2] - s[1]);
        worst_shrink = std::min(worst_shrink, d2 > 0.0 ? d1 / d2 : 1e30);
        limit_value = s[2];
    }
    res.metrics.emplace_back("min_shrink_factor", worst_shrink);
    res.metrics.emplace_back("required_shrink", 5.0);
    res.metrics.emplace_back("limit_value", limit_value);
    res.pass = worst_shrink >= 5.0;
    return res;
}

/// Harmonicity: the 5-point Laplacian of Phi in y decays at order >= 1.8 as
/// the stencil width halves 1e-2 -> 2.5e-3, at 20 points with dist(y,x) > 0.5.
inline SuiteResult run_harmonicity_suite() {
    SuiteResult res;
    res.name = "harmonicity";
    const KernelParams params = KernelParams::make(1.0, 3.0, 0.5);
    const Point2 x{0.0, params.h / 2.0};
    QuadratureConfig quad;
    quad.abs_tol = 1e-14;
    quad.rel_tol = 1e-12;
    quad.max_subdivisions = 800;
    std::mt19937_64 rng(20260813);
    const double h = params.h;
    const double widths[3] = {1e-2, 5e-3, 2.5e-3};
    double min_order = std::numeric_limits<double>::infinity();
    int accepted = 0;
    while (accepted < 20) {
        const Point2 y{detail::uniform(rng, -2.5, 2.5), detail::uniform(rng, 0.15 * h, 0.85 * h)};
        if (distance(y, x) <= 0.5) continue;
        ++accepted;
        double lap[3];
        for (int i = 0; i < 3; ++i) {
            const double d = widths[i];
            const auto phi = [&](double dy1, double dy2) {
                return eval_phi({y.y1 + dy1, y.y2 + dy2}, x, params, quad).value;
            };
            lap[i] = (phi(d, 0) + phi(-d, 0) + phi(0, d) + phi(0, -d) - 4.0 * phi(0, 0)) / (d * d);
        }
        // least-squares slope of log|lap| against log(width); tiny residuals
        // (below the quadrature noise floor) count as converged
        const double floor = 4.0 * quad.abs_tol / (widths[2] * widths[2]) * 10.0;
        if (std::abs(lap[0]) < floor && std::abs(lap[2]) < floor) continue;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < 3; ++i) {
            const double lx = std::log(widths[i]);
            const double ly = std::log(std::max(std::abs(lap[i]), 1e-300));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double order = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
        min_order = std::min(min_order, order);
    }
    res.metrics.emplace_back("min_order", min_order);
    res.metrics.emplace_back("required_order", 1.8);
    res.pass = min_order >= 1.8;
    return res;
}

/// Analytic gradient against central differences of eval_phi at random
/// admissible pairs, vector-norm relative deviation <= 1e-6.
inline SuiteResult run_gradient_suite(int pairs = 100, std::uint64_t seed = 20260814) {
    SuiteResult res;
    res.name = "gradient_consistency";
    const KernelParams params = KernelParams::make(1.0, 3.0, 0.5);
    QuadratureConfig grad_quad;
    grad_quad.abs_tol = 1e-13;
    grad_quad.rel_tol = 1e-11;
    grad_quad.max_subdivisions = 600;
    QuadratureConfig fd_quad;
    fd_quad.abs_tol = 1e-15;
    fd_quad.rel_tol = 1e-13;
    fd_quad.max_subdivisions = 800;
    std::mt19937_64 rng(seed);
    const double h = params.h;
    double max_dev = 0.0;
    int accepted = 0;
    while (accepted < pairs) {
        const Point2 y{detail::uniform(rng, -2.5, 2.5), detail::uniform(rng, 0.12 * h, 0.88 * h)};
        const Point2 x{detail::uniform(rng, -1.0, 1.0), detail::uniform(rng, 0.12 * h, 0.88 * h)};
        if (distance(y, x) < 0.35) continue;
        ++accepted;
        const GradPhiResult g = eval_grad_phi_y(y, x, params, grad_quad);
        const double step = 1e-5;
        const auto phi = [&](Point2 p) { return eval_phi(p, x, params, fd_quad).value; };
        const double fd1 =
            (phi({y.y1 + step, y.y2}) - phi({y.y1 - step, y.y2})) / (2.0 * step);
        const double fd2 =
            (phi({y.y1, y.y2 + step}) - phi({y.y1, y.y2 - step})) / (2.0 * step);
        const double dev = std::hypot(fd1 - g.d_y1, fd2 - g.d_y2) /
                           std::max(std::hypot(g.d_y1, g.d_y2), 1e-12);
        max_dev = std::max(max_dev, dev);
    }
    res.metrics.emplace_back("max_rel_dev", max_dev);
    res.metrics.emplace_back("tolerance", 1e-6);
    res.pass = max_dev <= 1e-6;
    return res;
}

/// The five derivation suites run by the `verify` command.
inline std::vector<SuiteResult> run_verification_suites() {
    return {run_equivalence_suite(), run_inner_integral_suite(), run_c0_fit_suite(),
            run_harmonicity_suite(), run_singularity_suite()};
}

}  // namespace carleman

#endif  // CARLEMAN_VERIFICATION_HPP
