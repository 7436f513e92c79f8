// This file is part of carleman, a numerical toolkit for harmonic
// continuation in band domains.
// SPDX-License-Identifier: Apache-2.0

#ifndef CARLEMAN_QUADRATURE_HPP
#define CARLEMAN_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "carleman/core.hpp"

namespace carleman {

/// How the semi-infinite engine decides where the integration range ends.
enum class SemiInfinitePolicy {
    fixed,        ///< integrate [0, u_max] adaptively; caller asserts decay beyond
    decay_driven  ///< dyadic segments [2^k, 2^(k+1)] until one falls below tol/4
};

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 200;
    SemiInfinitePolicy policy = SemiInfinitePolicy::decay_driven;
    double u_max = 40.0;  // only used by SemiInfinitePolicy::fixed

    void validate() const {
        if (!(abs_tol > 0.0)) throw config_error("quadrature.abs_tol", "must be positive");
        if (!(rel_tol > 0.0)) throw config_error("quadrature.rel_tol", "must be positive");
        if (max_subdivisions <= 0)
            throw config_error("quadrature.max_subdivisions", "must be positive");
        if (policy == SemiInfinitePolicy::fixed && !(u_max > 0.0))
            throw config_error("quadrature.u_max", "must be positive for the fixed policy");
    }

    /// Same budget, tolerances multiplied by `factor` (floored near machine precision).
    QuadratureConfig scaled(double factor) const {
        QuadratureConfig q = *this;
        q.abs_tol = std::max(abs_tol * factor, 1e-300);
        q.rel_tol = std::max(rel_tol * factor, 4e-16);
        return q;
    }
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

namespace detail {

// 15-point Kronrod rule with embedded 7-point Gauss rule (nodes and weights
// as tabulated in QUADPACK's dqk15).
inline constexpr double kGk15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kGk15KronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kGk15GaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double lo = 0.0, hi = 0.0;
    double value = 0.0, err = 0.0;
};

template <class F>
Panel gk15(F&& f, double lo, double hi, long& evaluations) {
    const double center = 0.5 * (lo + hi);
    const double halflen = 0.5 * (hi - lo);
    const double fc = f(center);
    double result_gauss = kGk15GaussW[3] * fc;
    double result_kronrod = kGk15KronrodW[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = halflen * kGk15Nodes[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        result_kronrod += kGk15KronrodW[j] * (f1 + f2);
        if (j % 2 == 1) result_gauss += kGk15GaussW[j / 2] * (f1 + f2);
    }
    evaluations += 15;
    Panel p;
    p.lo = lo;
    p.hi = hi;
    p.value = result_kronrod * halflen;
    p.err = std::abs((result_kronrod - result_gauss) * halflen);
    return p;
}

}  // namespace detail

/// Adaptive Gauss-Kronrod quadrature over the union of [breakpoints[i], breakpoints[i+1]].
/// Worst-error-first bisection with a deterministic tie-break; nested-rule error
/// estimates. `converged` implies error_estimate <= max(abs_tol, rel_tol*|value|).
template <class F>
IntegralResult integrate_adaptive(F&& f, const std::vector<double>& breakpoints,
                                  const QuadratureConfig& quad) {
    IntegralResult out;
    if (breakpoints.size() < 2) {
        out.converged = true;
        return out;
    }
    std::vector<detail::Panel> panels;
    panels.reserve(static_cast<std::size_t>(quad.max_subdivisions) + breakpoints.size());
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i + 1] > breakpoints[i])
            panels.push_back(detail::gk15(f, breakpoints[i], breakpoints[i + 1], out.evaluations));
    }
    if (panels.empty()) {
        out.converged = true;
        return out;
    }

    int splits = 0;
    for (;;) {
        double total = 0.0, err = 0.0;
        for (const auto& p : panels) {
            total += p.value;
            err += p.err;
        }
        const double tol = std::max(quad.abs_tol, quad.rel_tol * std::abs(total));
        if (err <= tol) {
            out.value = total;
            out.error_estimate = err;
            out.converged = true;
            return out;
        }
        if (splits >= quad.max_subdivisions) {
            out.value = total;
            out.error_estimate = err;
            out.converged = false;
            return out;
        }
        // worst panel; ties broken toward the leftmost for determinism
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i) {
            if (panels[i].err > panels[worst].err ||
                (panels[i].err == panels[worst].err && panels[i].lo < panels[worst].lo))
                worst = i;
        }
        const detail::Panel old = panels[worst];
        const double mid = 0.5 * (old.lo + old.hi);
        if (!(mid > old.lo && mid < old.hi)) {
            // interval no longer splittable in double precision
            double total2 = 0.0, err2 = 0.0;
            for (const auto& p : panels) {
                total2 += p.value;
                err2 += p.err;
            }
            out.value = total2;
            out.error_estimate = err2;
            out.converged = false;
            return out;
        }
        panels[worst] = detail::gk15(f, old.lo, mid, out.evaluations);
        panels.push_back(detail::gk15(f, mid, old.hi, out.evaluations));
        ++splits;
    }
}

template <class F>
IntegralResult integrate_adaptive(F&& f, double lo, double hi, const QuadratureConfig& quad) {
    return integrate_adaptive(f, std::vector<double>{lo, hi}, quad);
}

/// Integrate f over [0, inf) for integrands that eventually decay.
///
/// Decay-driven policy: the axis is covered by [0,1] and dyadic segments
/// [2^k, 2^(k+1)], each handled by the adaptive finite engine after an affine
/// map; segmentation stops once a segment contributes less than a quarter of
/// the current tolerance, and that segment's magnitude is added to the error
/// estimate as a tail allowance.
template <class F>
IntegralResult integrate_semi_infinite(F&& f, const QuadratureConfig& quad) {
    if (quad.policy == SemiInfinitePolicy::fixed)
        return integrate_adaptive(f, 0.0, quad.u_max, quad);

    constexpr int kMaxSegments = 64;
    const QuadratureConfig seg_quad = quad.scaled(1.0 / 64.0);

    IntegralResult out;
    bool segments_ok = true;
    bool tail_reached = false;
    double lo = 0.0, hi = 1.0;
    for (int k = 0; k < kMaxSegments; ++k) {
        const IntegralResult seg = integrate_adaptive(f, lo, hi, seg_quad);
        out.value += seg.value;
        out.error_estimate += seg.error_estimate;
        out.evaluations += seg.evaluations;
        segments_ok = segments_ok && seg.converged;
        const double tol = std::max(quad.abs_tol, quad.rel_tol * std::abs(out.value));
        if (std::abs(seg.value) < 0.25 * tol) {
            out.error_estimate += std::abs(seg.value);  // tail allowance
            tail_reached = true;
            break;
        }
        lo = hi;
        hi *= 2.0;
    }
    out.converged = segments_ok && tail_reached &&
                    out.error_estimate <= std::max(quad.abs_tol, quad.rel_tol * std::abs(out.value));
    return out;
}

/// Closed form of the inner integral int_0^inf u du / ((u^2+r2)(u^2+r1sq))
/// = log(r1sq/r2) / (2 (r1sq - r2)), for 0 < r2 < r1sq. Both arguments are the
/// squared radii. Continuous limit 1/(2 r2) as r1sq -> r2.
inline double reference_inner_integral(double r2, double r1sq) {
    if (!(r2 > 0.0) || !std::isfinite(r2) || !std::isfinite(r1sq))
        throw std::domain_error("reference_inner_integral: r2 must be positive and finite");
    if (!(r1sq > r2))
        throw std::domain_error("reference_inner_integral: requires r1sq > r2");
    const double s = (r1sq - r2) / r2;
    if (s < 1e-12) return (1.0 - 0.5 * s) / (2.0 * r2);
    return std::log1p(s) / (2.0 * r2 * s);
}

/// Half-length Y of the boundary segment that must be kept so that the
/// truncated tail, bounded by kernel decay exp(-a1 cosh(rho1 t)) against data
/// growth exp(c(|t| + |x1| + h)) with the logarithmic prefactor, stays below
/// tol. Solves a1 cosh(rho1 T) >= c T + c(|x1|+h) + log(1/tol) + log(100) for
/// the smallest T and returns Y = |x1| + T.
inline double truncation_radius(const KernelParams& params, double c, double x1, double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw std::domain_error("truncation_radius: tol must be positive");
    if (!(c >= 0.0) || !std::isfinite(c))
        throw std::domain_error("truncation_radius: c must be nonnegative");
    if (!(params.a1 > 0.0))
        throw std::logic_error("truncation_radius: params.a1 must be positive");

    const double margin = std::log(100.0);
    const double rhs = std::log(1.0 / tol) + c * (std::abs(x1) + params.h) + margin;
    const auto gap = [&](double t) { return params.a1 * std::cosh(params.rho1 * t) - c * t - rhs; };

    if (gap(0.0) >= 0.0) return std::abs(x1);
    double hi = 1.0;
    while (gap(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e6) throw std::logic_error("truncation_radius: no bracket found");
    }
    double lo = 0.0;
    // gap < 0 exactly on [0, root), so plain bisection is valid
    while (hi - lo > 1e-10 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) < 0.0 ? lo : hi) = mid;
    }
    return std::abs(x1) + hi;
}

}  // namespace carleman

#endif  // CARLEMAN_QUADRATURE_HPP
