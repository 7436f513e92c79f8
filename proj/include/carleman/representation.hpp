// This file is part of carleman, a numerical toolkit for harmonic
// continuation in band domains.
// SPDX-License-Identifier: Apache-2.0

#ifndef CARLEMAN_REPRESENTATION_HPP
#define CARLEMAN_REPRESENTATION_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "carleman/analytic.hpp"
#include "carleman/core.hpp"
#include "carleman/domain.hpp"
#include "carleman/kernel.hpp"
#include "carleman/quadrature.hpp"

namespace carleman {

// Boundary-integral reconstruction. With zero Dirichlet data the identity
// reads (per-curve integrals I_j = -int_{gamma_j} Phi dU/dn ds):
//
//     U(x) = -(I_1 + I_2) = sum_j int_{gamma_j} Phi(y, x) dU/dn(y) ds(y),
//
// an orientation locked numerically by the Green-identity checks: the kernel's
// singular part is -(1/2pi) log|y-x|, so the boundary functional above
// reproduces U(x) at interior points and 0 at exterior ones.

/// Neumann data along one curve plus its declared exponential growth rate.
struct CauchyTrace {
    CurveKind curve = CurveKind::lower;
    std::function<double(double)> data;  ///< dU/dn as a function of y1
    double growth_rate_c = 0.0;
    double coverage_lo = -std::numeric_limits<double>::infinity();
    double coverage_hi = std::numeric_limits<double>::infinity();
    std::string descriptor;

    static CauchyTrace zero(CurveKind kind) {
        CauchyTrace t;
        t.curve = kind;
        t.data = [](double) { return 0.0; };
        t.growth_rate_c = 0.0;
        t.descriptor = "zero";
        return t;
    }

    /// Synthetic data scale * exp(c |y1|).
    static CauchyTrace exp_abs(CurveKind kind, double c, double scale = 1.0) {
        if (!(c >= 0.0)) throw config_error("trace.c", "growth rate must be nonnegative");
        CauchyTrace t;
        t.curve = kind;
        t.data = [c, scale](double y1) { return scale * std::exp(c * std::abs(y1)); };
        t.growth_rate_c = c;
        t.descriptor = "exp_abs:c=" + std::to_string(c) + ",scale=" + std::to_string(scale);
        return t;
    }

    /// Neumann trace of an exact harmonic function on the given curve. The
    /// domain is captured by value so the trace owns everything it needs.
    static CauchyTrace from_harmonic(CurveKind kind, const HarmonicFn& fn,
                                     const BandDomain& domain, std::string descriptor = {}) {
        CauchyTrace t;
        t.curve = kind;
        t.data = [fn, domain, kind](double y1) { return neumann_trace(fn, domain, kind, y1); };
        t.coverage_lo = domain.curve(kind).coverage_lo;
        t.coverage_hi = domain.curve(kind).coverage_hi;
        t.growth_rate_c = growth_rate(fn);
        t.descriptor = std::move(descriptor);
        return t;
    }

    /// Tabulated samples (y1 strictly increasing), monotone cubic interpolation.
    static CauchyTrace from_table(CurveKind kind, std::vector<double> y1s,
                                  std::vector<double> values, double growth_rate_c,
                                  std::string descriptor = {}) {
        auto interp =
            std::make_shared<detail::PchipInterpolant>(std::move(y1s), std::move(values));
        CauchyTrace t;
        t.curve = kind;
        t.coverage_lo = interp->lo();
        t.coverage_hi = interp->hi();
        t.data = [interp](double y1) { return interp->value(y1); };
        t.growth_rate_c = growth_rate_c;
        t.descriptor = descriptor.empty() ? std::string("table") : std::move(descriptor);
        return t;
    }
};

struct ReconstructionReport {
    Point2 x;
    double value = 0.0;        ///< reconstructed U(x) = -(I1 + I2)
    double I1 = 0.0;           ///< -int_{gamma_1} Phi dU/dn ds
    double I2 = 0.0;           ///< -int_{gamma_2} Phi dU/dn ds
    double truncation_Y = 0.0;
    double quad_error = 0.0;
    PointClass classification = PointClass::inside;
    bool growth_certified = true;  ///< declared growth rates < rho/2
    long evaluations = 0;
};

namespace detail {

inline std::vector<double> boundary_breakpoints(double x1, double Y) {
    std::vector<double> pts = {-Y, x1 - 4.0, x1 - 1.0, x1 - 0.25, x1 + 0.25, x1 + 1.0, x1 + 4.0, Y};
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    for (double p : pts) {
        const double clipped = std::clamp(p, -Y, Y);
        if (out.empty() || clipped > out.back() + 1e-9) out.push_back(clipped);
    }
    if (out.size() < 2) out = {-Y, Y};
    return out;
}

/// Outcome of one curve integral int_{-Y}^{Y} w(t) dt with inner-quadrature
/// error tracked alongside the outer panel estimate.
struct CurveIntegral {
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
    bool converged = true;
};

/// Weighted boundary integral of `weight(t) * Phi((t, f(t)), x)` (or the normal
/// derivative variant in green_identity_value below).
template <class Integrand>
CurveIntegral integrate_curve(Integrand&& integrand, double x1, double Y,
                              const QuadratureConfig& quad) {
    double inner_err_sum = 0.0;
    long inner_count = 0;
    bool inner_ok = true;
    long inner_evals = 0;
    auto f = [&](double t) {
        auto [v, err, evals, conv] = integrand(t);
        inner_err_sum += err;
        ++inner_count;
        inner_ok = inner_ok && conv;
        inner_evals += evals;
        return v;
    };
    const IntegralResult outer = integrate_adaptive(f, boundary_breakpoints(x1, Y), quad);
    CurveIntegral out;
    out.value = outer.value;
    const double mean_inner = inner_count > 0 ? inner_err_sum / inner_count : 0.0;
    out.error = outer.error_estimate + 2.0 * Y * mean_inner;
    out.evaluations = outer.evaluations + inner_evals;
    out.converged = outer.converged && inner_ok;
    return out;
}

inline void check_trace_coverage(const CauchyTrace& trace, double Y) {
    if (trace.coverage_lo > -Y || trace.coverage_hi < Y)
        throw config_error("trace", "tabulated data covers [" + std::to_string(trace.coverage_lo) +
                                        ", " + std::to_string(trace.coverage_hi) +
                                        "] but the truncation radius requires [-Y, Y] with Y=" +
                                        std::to_string(Y));
}

inline void check_curve_coverage(const BandDomain& domain, double Y) {
    for (const BoundaryCurve* c : {&domain.gamma1, &domain.gamma2})
        if (c->coverage_lo > -Y || c->coverage_hi < Y)
            throw config_error("domain", "tabulated curve covers [" + std::to_string(c->coverage_lo) +
                                             ", " + std::to_string(c->coverage_hi) +
                                             "] but the truncation radius requires Y=" +
                                             std::to_string(Y));
}

}  // namespace detail

/// Reconstruct U(x) from Neumann data on both curves. Requires x strictly
/// inside D; traces with growth rate >= rho/2 are accepted best-effort with
/// growth_certified = false (the kernel's double-exponential decay still
/// dominates any exponential data growth).
inline ReconstructionReport reconstruct(Point2 x, const BandDomain& domain,
                                        const CauchyTrace& trace1, const CauchyTrace& trace2,
                                        const KernelParams& params, const QuadratureConfig& quad,
                                        double near_tol = 1e-6) {
    if (trace1.curve != CurveKind::lower || trace2.curve != CurveKind::upper)
        throw config_error("trace", "reconstruct expects (lower, upper) traces in that order");
    const PointClass cls = classify_point(domain, x, near_tol);
    if (cls != PointClass::inside)
        throw std::domain_error(std::string("reconstruct: x is ") + to_string(cls) +
                                "; the representation holds for interior points only "
                                "(use green_identity_value for exterior checks)");

    const double c = std::max(trace1.growth_rate_c, trace2.growth_rate_c);
    const double trunc_tol = quad.abs_tol;
    const double Y = truncation_radius(params, c, x.y1, trunc_tol);
    detail::check_trace_coverage(trace1, Y);
    detail::check_trace_coverage(trace2, Y);
    detail::check_curve_coverage(domain, Y);

    const QuadratureConfig inner = quad.scaled(1e-2);
    ReconstructionReport rep;
    rep.x = x;
    rep.classification = cls;
    rep.growth_certified = c < params.rho / 2.0;
    rep.truncation_Y = Y;

    double curve_sum = 0.0;
    double* slots[2] = {&rep.I1, &rep.I2};
    const CauchyTrace* traces[2] = {&trace1, &trace2};
    for (int j = 0; j < 2; ++j) {
        const CurveKind kind = j == 0 ? CurveKind::lower : CurveKind::upper;
        auto integrand = [&, kind](double t) {
            const Point2 y = boundary_point(domain, kind, t);
            const IntegralResult phi = eval_phi(y, x, params, inner);
            const double w = traces[j]->data(t) * arc_element(domain, kind, t);
            return std::tuple{phi.value * w, phi.error_estimate * std::abs(w), phi.evaluations,
                              phi.converged};
        };
        const detail::CurveIntegral ci = detail::integrate_curve(integrand, x.y1, Y, quad);
        *slots[j] = -ci.value;  // I_j = -int_{gamma_j} Phi dU/dn ds
        curve_sum += ci.value;
        rep.quad_error += ci.error;
        rep.evaluations += ci.evaluations;
    }
    rep.value = curve_sum;  // = -(I1 + I2)
    return rep;
}

struct GreenIdentityResult {
    double value = 0.0;
    double error_estimate = 0.0;
    PointClass classification = PointClass::inside;
    bool within_tolerance = true;
    long evaluations = 0;
};

/// Full two-term boundary identity for an exact harmonic function fn:
/// sum_j int_{gamma_j} (Phi dU/dn - U dPhi/dn) ds, which evaluates to U(x) for
/// x inside D and to 0 for x outside D u dD. Near-boundary points are computed
/// with a tightened budget and flagged when the error estimate stays above
/// tolerance.
inline GreenIdentityResult green_identity_value(Point2 x, const BandDomain& domain,
                                                const HarmonicFn& fn, const KernelParams& params,
                                                const QuadratureConfig& quad,
                                                double near_tol = 1e-6) {
    GreenIdentityResult out;
    out.classification = classify_point(domain, x, near_tol);
    QuadratureConfig outer = quad;
    if (out.classification == PointClass::near_boundary) {
        outer = quad.scaled(0.1);
        outer.max_subdivisions = quad.max_subdivisions * 4;
    }
    const double c = growth_rate(fn);
    const double Y = truncation_radius(params, c, x.y1, outer.abs_tol);
    detail::check_curve_coverage(domain, Y);
    const QuadratureConfig inner = outer.scaled(1e-2);

    for (const CurveKind kind : {CurveKind::lower, CurveKind::upper}) {
        auto integrand = [&, kind](double t) {
            const Point2 y = boundary_point(domain, kind, t);
            const Vec2 n = exterior_normal(domain, kind, t);
            const double arc = arc_element(domain, kind, t);
            const double u_val = eval_U(fn, y);
            const double dudn = dot(eval_grad_U(fn, y), n);
            const IntegralResult phi = eval_phi(y, x, params, inner);
            const GradPhiResult grad = eval_grad_phi_y(y, x, params, inner);
            const double dphidn = grad.d_y1 * n.v1 + grad.d_y2 * n.v2;
            const double v = (phi.value * dudn - u_val * dphidn) * arc;
            const double err =
                (phi.error_estimate * std::abs(dudn) + grad.error_estimate * std::abs(u_val)) * arc;
            return std::tuple{v, err, phi.evaluations + grad.evaluations,
                              phi.converged && grad.converged};
        };
        const detail::CurveIntegral ci = detail::integrate_curve(integrand, x.y1, Y, outer);
        out.value += ci.value;
        out.error_estimate += ci.error;
        out.evaluations += ci.evaluations;
        out.within_tolerance = out.within_tolerance && ci.converged;
    }
    out.within_tolerance =
        out.within_tolerance &&
        out.error_estimate <= std::max(outer.abs_tol * 10.0, outer.rel_tol * std::abs(out.value));
    return out;
}

struct GrowthSample {
    double x1 = 0.0;
    double abs_I = 0.0;
};

struct GrowthCertificate {
    CurveKind curve = CurveKind::lower;
    std::vector<GrowthSample> samples;
    double c_hat = 0.0;       ///< least-squares slope of log|I_j| against x1
    double fitted_scale = 0.0;  ///< exp(intercept)
    double declared_c = 0.0;
    double fit_tolerance = 0.05;
    bool pass = false;  ///< c_hat <= declared_c + fit_tolerance
};

/// Transfer of the data's growth rate to the single-curve integrals
/// I_j(x) = -int_{gamma_j} Phi(y, (x1, h/2)) g(y1) ds: fits the smallest
/// c_hat with |I_j| <= C exp(c_hat x1) over the sample abscissae.
inline GrowthCertificate growth_certificate(const CauchyTrace& trace, const BandDomain& domain,
                                            const KernelParams& params,
                                            const QuadratureConfig& quad,
                                            const std::vector<double>& x1_samples) {
    if (x1_samples.size() < 4)
        throw config_error("growth_certificate.x1_samples", "need at least 4 sample abscissae");
    GrowthCertificate cert;
    cert.curve = trace.curve;
    cert.declared_c = trace.growth_rate_c;
    const QuadratureConfig inner = quad.scaled(1e-2);

    for (const double x1 : x1_samples) {
        const Point2 x{x1, params.h / 2.0};
        const double Y = truncation_radius(params, trace.growth_rate_c, x1, quad.abs_tol);
        detail::check_trace_coverage(trace, Y);
        auto integrand = [&](double t) {
            const Point2 y = boundary_point(domain, trace.curve, t);
            const IntegralResult phi = eval_phi(y, x, params, inner);
            const double w = trace.data(t) * arc_element(domain, trace.curve, t);
            return std::tuple{phi.value * w, phi.error_estimate * std::abs(w), phi.evaluations,
                              phi.converged};
        };
        const detail::CurveIntegral ci = detail::integrate_curve(integrand, x1, Y, quad);
        cert.samples.push_back({x1, std::abs(ci.value)});
    }

    // least-squares fit of log|I| = log C + c_hat * x1; all-zero data fits
    // c_hat = 0 by convention
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& s : cert.samples) {
        if (s.abs_I < 1e-290) continue;
        const double ly = std::log(s.abs_I);
        sx += s.x1;
        sy += ly;
        sxx += s.x1 * s.x1;
        sxy += s.x1 * ly;
        ++n;
    }
    if (n >= 2 && sxx * n - sx * sx > 0.0) {
        cert.c_hat = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        cert.fitted_scale = std::exp((sy - cert.c_hat * sx) / n);
    } else {
        cert.c_hat = 0.0;
        cert.fitted_scale = 0.0;
    }
    cert.pass = cert.c_hat <= cert.declared_c + cert.fit_tolerance;
    return cert;
}

struct DecayRatio {
    double radius = 0.0;
    double ratio = 0.0;  ///< max |U| on the radius class / exp(pi R / (2h))
    int count = 0;
};

/// Phragmen-Lindelof decay signature: groups the supplied (x, U) samples by
/// |x| and reports max|U| / exp(pi R / (2h)) per radius, sorted by radius.
inline std::vector<DecayRatio> decay_ratio_report(
    const std::vector<std::pair<Point2, double>>& values, const KernelParams& params) {
    std::vector<std::pair<double, double>> by_radius;
    by_radius.reserve(values.size());
    for (const auto& [x, u] : values)
        by_radius.emplace_back(std::hypot(x.y1, x.y2), std::abs(u));
    std::sort(by_radius.begin(), by_radius.end());
    std::vector<DecayRatio> out;
    for (const auto& [r, au] : by_radius) {
        if (!out.empty() && std::abs(r - out.back().radius) <= 1e-9 * std::max(1.0, r)) {
            out.back().ratio = std::max(out.back().ratio, au);
            ++out.back().count;
        } else {
            out.push_back({r, au, 1});
        }
    }
    for (auto& d : out) d.ratio /= std::exp(pi * d.radius / (2.0 * params.h));
    return out;
}

}  // namespace carleman

#endif  // CARLEMAN_REPRESENTATION_HPP
