// This file is part of carleman, a numerical toolkit for harmonic
// continuation in band domains.
// SPDX-License-Identifier: Apache-2.0

#ifndef CARLEMAN_KERNEL_HPP
#define CARLEMAN_KERNEL_HPP

#include <cmath>
#include <complex>
#include <limits>

#include "carleman/core.hpp"
#include "carleman/quadrature.hpp"

namespace carleman {

// The band kernel Phi(y, x) is defined for y in the band (quarter-width
// excursions beyond [0, h] are accepted while the decay envelope converges)
// and evaluation points x with x2 in the window (-2h, 2h):
//
//   Phi(y, x) = -(1 / (2 pi K(x2))) * int_0^inf Im[ K(y2 + i eta) / (y2 - x2 + i eta) ] * (u/eta) du,
//
// with eta^2 = u^2 + (y1 - x1)^2 and the complex density
//
//   K(w) = exp(-a * cos(rho1 (w - h/2))) / (w + 3h - x2).
//
// Phi behaves like -(1/2pi) log|y - x| near the diagonal and decays like
// exp(-a cos(rho1 (y2 - h/2)) cosh(rho1 |y1 - x1|)) along the band axis, which
// is what lets boundary integrals against exponentially growing data converge.
// The x2 window beyond the open band supports exterior-point evaluation; the
// density's pole at w = x2 - 3h stays at distance >= 3h/4 from the
// integration ray throughout the window.

/// Per-pair geometric intermediates: alpha2 = (y1-x1)^2, beta = y2-x2,
/// beta1 = beta + 3h, r2 = alpha2 + beta^2, r1sq = alpha2 + beta1^2.
struct KernelGeometry {
    double alpha_signed = 0.0;  ///< y1 - x1 (signed)
    double alpha2 = 0.0;
    double beta = 0.0;
    double beta1 = 0.0;
    double r2 = 0.0;
    double r1sq = 0.0;
    double cos_y = 0.0;  ///< cos(rho1 (y2 - h/2))
    double sin_y = 0.0;  ///< sin(rho1 (y2 - h/2))

    static KernelGeometry make(Point2 y, Point2 x, const KernelParams& params) {
        KernelGeometry g;
        g.alpha_signed = y.y1 - x.y1;
        g.alpha2 = g.alpha_signed * g.alpha_signed;
        g.beta = y.y2 - x.y2;
        g.beta1 = g.beta + 3.0 * params.h;
        g.r2 = g.alpha2 + g.beta * g.beta;
        g.r1sq = g.alpha2 + g.beta1 * g.beta1;
        g.cos_y = std::cos(params.rho1 * (y.y2 - params.h / 2.0));
        g.sin_y = std::sin(params.rho1 * (y.y2 - params.h / 2.0));
        return g;
    }
};

namespace detail {

inline constexpr double kEtaSwitchFactor = 1e-6;   // eta below this * h: use decomposed form
inline constexpr double kPoleTolFactor = 1e-9;     // |w + 3h - x2| below this * h: pole error
inline constexpr double kSingularTolFactor = 1e-13;  // r below this * h: treat y = x as singular

inline void check_kernel_point(Point2 y, double x2, const KernelParams& params) {
    if (!std::isfinite(y.y1) || !std::isfinite(y.y2) || !std::isfinite(x2))
        throw std::domain_error("kernel: non-finite input");
    // quarter-width excursions beyond the closed band are accepted as long as
    // the decay envelope still converges, i.e. cos(rho1 (y2 - h/2)) > 0
    if (!(y.y2 >= -0.25 * params.h && y.y2 <= 1.25 * params.h))
        throw std::domain_error("kernel: y2 outside the band window [-h/4, 5h/4]");
    if (!(std::cos(params.rho1 * (y.y2 - params.h / 2.0)) > 1e-6))
        throw std::domain_error(
            "kernel: u-integral diverges where cos(rho1 (y2 - h/2)) <= 0");
    if (!(x2 > -2.0 * params.h && x2 < 2.0 * params.h))
        throw std::domain_error("kernel: x2 outside the evaluation window (-2h, 2h)");
}

inline void check_not_singular(const KernelGeometry& g, const KernelParams& params) {
    const double tol = kSingularTolFactor * params.h;
    if (g.r2 < tol * tol) throw singularity_error("kernel: evaluation at y = x is singular");
}

/// K(x2) evaluated on the real axis without the open-band restriction; used as
/// the normalization 1/(2 pi K(x2)) of Phi.
inline double anchor_value(double x2, const KernelParams& params) {
    return std::exp(-params.a * std::cos(params.rho1 * (x2 - params.h / 2.0))) /
           (3.0 * params.h);
}

}  // namespace detail

/// Complex kernel density K(w) = (w + 3h - x2)^(-1) exp(-a cos(rho1 (w - h/2))).
/// For w = y2 + i eta the exponent splits into
/// -a [cos(rho1(y2 - h/2)) cosh(rho1 eta) - i sin(rho1(y2 - h/2)) sinh(rho1 eta)].
inline Complex eval_K(Complex omega, double x2, const KernelParams& params) {
    if (!std::isfinite(omega.real()) || !std::isfinite(omega.imag()) || !std::isfinite(x2))
        throw std::domain_error("eval_K: non-finite input");
    const Complex den = omega + Complex(3.0 * params.h - x2, 0.0);
    if (std::abs(den) < detail::kPoleTolFactor * params.h)
        throw std::domain_error("eval_K: omega too close to the pole at x2 - 3h");
    return std::exp(-params.a * std::cos(params.rho1 * (omega - Complex(params.h / 2.0, 0.0)))) /
           den;
}

/// K at the real anchor omega = x2: (3h)^(-1) exp(-a cos(rho1 (x2 - h/2))).
/// Requires x2 in the open band, where cos(rho1 (x2 - h/2)) > 0 and hence
/// 1/K(x2) <= 3h e^a.
inline double eval_K_at_anchor(double x2, const KernelParams& params) {
    if (!std::isfinite(x2) || !(x2 > 0.0 && x2 < params.h))
        throw std::domain_error("eval_K_at_anchor: x2 must lie in the open band (0, h)");
    return detail::anchor_value(x2, params);
}

namespace detail {

/// Everything fixed along the u-axis for one (y, x) pair.
struct PairContext {
    KernelGeometry g;
    KernelParams params;
    double x2 = 0.0;
    double y2 = 0.0;

    static PairContext make(Point2 y, Point2 x, const KernelParams& params) {
        check_kernel_point(y, x.y2, params);
        PairContext c;
        c.g = KernelGeometry::make(y, x, params);
        check_not_singular(c.g, params);
        c.params = params;
        c.x2 = x.y2;
        c.y2 = y.y2;
        return c;
    }

    /// Two-term decomposition of Im[K/(y2-x2+i eta)] * u/eta; regular at eta -> 0.
    ///
    ///   u * E(eta) * [ (beta beta1 - eta^2) * sin(psi)/eta - (beta + beta1) * cos(psi) ]
    ///     / ((u^2 + r^2)(u^2 + r1^2)),
    ///
    /// with E = exp(-a cos_y cosh(rho1 eta)), psi = a sin_y sinh(rho1 eta), and
    /// sin(psi)/eta = a sin_y rho1 sinhc(rho1 eta) sinc(psi).
    double integrand_decomposed(double u) const {
        if (u == 0.0) return 0.0;
        const double eta2 = u * u + g.alpha2;
        const double eta = std::sqrt(eta2);
        const double re = params.rho1 * eta;
        // the envelope underflows double-exponentially while the bracket is
        // only polynomially large; cut before cosh/sinh overflow breeds NaNs
        if (params.a * g.cos_y * std::cosh(std::min(re, 710.0)) > 745.0) return 0.0;
        const double ch = std::cosh(re);
        const double sh = std::sinh(re);
        const double envelope = std::exp(-params.a * g.cos_y * ch);
        const double psi = params.a * g.sin_y * sh;
        const double sin_psi_over_eta =
            params.a * g.sin_y * params.rho1 * sinhc(re) * sinc(psi);
        const double bracket =
            (g.beta * g.beta1 - eta2) * sin_psi_over_eta - (g.beta + g.beta1) * std::cos(psi);
        return u * envelope * bracket / ((u * u + g.r2) * (u * u + g.r1sq));
    }

    /// Direct complex-arithmetic form Im[K(y2+i eta)/(y2-x2+i eta)] * u/eta.
    /// Delegates to the decomposed form below the small-eta switch, where the
    /// u/eta factor turns into 0/0.
    double integrand_direct(double u) const {
        if (u == 0.0) return 0.0;
        const double eta = std::sqrt(u * u + g.alpha2);
        if (eta < kEtaSwitchFactor * params.h) return integrand_decomposed(u);
        const Complex omega(y2, eta);
        const Complex kval = eval_K(omega, x2, params);
        return std::imag(kval / Complex(g.beta, eta)) * (u / eta);
    }

    // Gradient integrands. With F(w) = K(w)/(w - x2) and w = y2 + i eta:
    //   d/dy2 Im F = Im F'(w),   d/deta Im F = Re F'(w),
    // so the y1 derivative picks up d eta/d y1 = alpha_signed/eta and the
    // derivative of the explicit u/eta factor:
    //   dG/dy1 = (alpha_signed u / eta^2) (Re F' - Im F / eta)
    //   dG/dy2 = Im F' * u/eta.
    struct FPair {
        Complex F;
        Complex Fp;
    };

    FPair density_ratio(double eta) const {
        const Complex omega(y2, eta);
        const Complex dpole = omega - Complex(x2, 0.0);
        const Complex kval = eval_K(omega, x2, params);
        const Complex f = kval / dpole;
        const Complex kprime =
            kval * (params.a * params.rho1 *
                        std::sin(params.rho1 * (omega - Complex(params.h / 2.0, 0.0))) -
                    1.0 / (omega + Complex(3.0 * params.h - x2, 0.0)));
        const Complex fprime = kprime / dpole - kval / (dpole * dpole);
        return {f, fprime};
    }

    bool envelope_underflows(double eta) const {
        const double re = params.rho1 * eta;
        return params.a * g.cos_y * std::cosh(std::min(re, 710.0)) > 745.0;
    }

    double grad_integrand_y1(double u) const {
        if (u == 0.0 || g.alpha_signed == 0.0) return 0.0;
        const double eta2 = u * u + g.alpha2;
        const double eta = std::sqrt(eta2);
        // limit value is O(eta^2) here; returning 0 keeps the quadrature exact
        // to well below its tolerance
        if (eta < kEtaSwitchFactor * params.h) return 0.0;
        if (envelope_underflows(eta)) return 0.0;
        const FPair fp = density_ratio(eta);
        return (g.alpha_signed * u / eta2) * (std::real(fp.Fp) - std::imag(fp.F) / eta);
    }

    double grad_integrand_y2(double u) const {
        if (u == 0.0) return 0.0;
        const double eta = std::sqrt(u * u + g.alpha2);
        if (envelope_underflows(eta)) return 0.0;
        const FPair fp = density_ratio(eta);
        return std::imag(fp.Fp) * (u / eta);
    }

    /// Scale factor -(1 / (2 pi K(x2))).
    double phi_prefactor() const { return -1.0 / (2.0 * pi * anchor_value(x2, params)); }
};

}  // namespace detail

/// Integrand of Phi at axis position u, evaluated by direct complex arithmetic
/// (with the small-eta delegation described in integrand_direct).
inline double phi_integrand_direct(double u, Point2 y, Point2 x, const KernelParams& params) {
    if (!(u >= 0.0) || !std::isfinite(u))
        throw std::domain_error("phi_integrand_direct: u must be nonnegative");
    return detail::PairContext::make(y, x, params).integrand_direct(u);
}

/// Integrand of Phi in the algebraically equivalent two-term form, regular at
/// eta -> 0 (the first term's sine factor is O(eta), the second carries an
/// explicit eta that cancels).
inline double phi_integrand_decomposed(double u, Point2 y, Point2 x, const KernelParams& params) {
    if (!(u >= 0.0) || !std::isfinite(u))
        throw std::domain_error("phi_integrand_decomposed: u must be nonnegative");
    return detail::PairContext::make(y, x, params).integrand_decomposed(u);
}

/// Phi(y, x) with the quadrature's error estimate.
inline IntegralResult eval_phi(Point2 y, Point2 x, const KernelParams& params,
                               const QuadratureConfig& quad) {
    const auto ctx = detail::PairContext::make(y, x, params);
    IntegralResult r =
        integrate_semi_infinite([&ctx](double u) { return ctx.integrand_direct(u); }, quad);
    const double factor = ctx.phi_prefactor();
    r.value *= factor;
    r.error_estimate *= std::abs(factor);
    return r;
}

/// Decay envelope C0 * exp(-a cos(rho1(y2 - h/2)) cosh(rho1 alpha)) *
/// (1 + log(1 + 15 h^2 / r^2)); infinite at y = x.
inline double phi_upper_bound(Point2 y, Point2 x, const KernelParams& params, double C0) {
    const KernelGeometry g = KernelGeometry::make(y, x, params);
    if (g.r2 == 0.0) return std::numeric_limits<double>::infinity();
    const double alpha = std::abs(g.alpha_signed);
    return C0 * std::exp(-params.a * g.cos_y * std::cosh(params.rho1 * alpha)) *
           (1.0 + std::log1p(15.0 * params.h * params.h / g.r2));
}

struct GradPhiResult {
    double d_y1 = 0.0;
    double d_y2 = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

/// Gradient of Phi with respect to y, computed by differentiating the
/// integrand analytically under the integral sign (not by differencing
/// eval_phi, which would amplify quadrature noise).
inline GradPhiResult eval_grad_phi_y(Point2 y, Point2 x, const KernelParams& params,
                                     const QuadratureConfig& quad) {
    const auto ctx = detail::PairContext::make(y, x, params);
    const IntegralResult r1 =
        integrate_semi_infinite([&ctx](double u) { return ctx.grad_integrand_y1(u); }, quad);
    const IntegralResult r2 =
        integrate_semi_infinite([&ctx](double u) { return ctx.grad_integrand_y2(u); }, quad);
    const double factor = ctx.phi_prefactor();
    GradPhiResult g;
    g.d_y1 = factor * r1.value;
    g.d_y2 = factor * r2.value;
    g.error_estimate = std::abs(factor) * (r1.error_estimate + r2.error_estimate);
    g.evaluations = r1.evaluations + r2.evaluations;
    g.converged = r1.converged && r2.converged;
    return g;
}

}  // namespace carleman

#endif  // CARLEMAN_KERNEL_HPP
