// This file is part of carleman, a numerical toolkit for harmonic
// continuation in band domains.
// SPDX-License-Identifier: Apache-2.0

#ifndef CARLEMAN_ANALYTIC_HPP
#define CARLEMAN_ANALYTIC_HPP

#include <cmath>
#include <complex>
#include <string>
#include <variant>

#include "carleman/core.hpp"
#include "carleman/domain.hpp"

namespace carleman {

// Exact harmonic functions with closed-form gradients, used as ground truth
// for the representation engine.

/// U(y) = sin(n rho y2) (A e^{n rho y1} + B e^{-n rho y1}); harmonic, vanishes
/// identically on y2 = 0 and y2 = h = pi/rho.
struct StripMode {
    int n = 1;
    double coef_a = 1.0;
    double coef_b = 0.0;
    double rho = 1.0;
};

enum class EntireFamily { re_exp, im_exp, re_poly, im_poly };

/// Re/Im of exp(lambda z) or z^k with z = y1 + i y2. Harmonic but not
/// boundary-vanishing; exercises the full two-term boundary identity.
struct EntireHarmonic {
    EntireFamily family = EntireFamily::re_exp;
    double lambda = 1.0;  // exp families
    int k = 1;            // poly families
};

using HarmonicFn = std::variant<StripMode, EntireHarmonic>;

inline double eval_U(const HarmonicFn& fn, Point2 y) {
    if (const auto* m = std::get_if<StripMode>(&fn)) {
        const double k = m->n * m->rho;
        return std::sin(k * y.y2) * (m->coef_a * std::exp(k * y.y1) + m->coef_b * std::exp(-k * y.y1));
    }
    const auto& e = std::get<EntireHarmonic>(fn);
    const Complex z(y.y1, y.y2);
    switch (e.family) {
        case EntireFamily::re_exp: return std::real(std::exp(e.lambda * z));
        case EntireFamily::im_exp: return std::imag(std::exp(e.lambda * z));
        case EntireFamily::re_poly: return std::real(std::pow(z, e.k));
        default: return std::imag(std::pow(z, e.k));
    }
}

inline Vec2 eval_grad_U(const HarmonicFn& fn, Point2 y) {
    if (const auto* m = std::get_if<StripMode>(&fn)) {
        const double k = m->n * m->rho;
        const double ep = m->coef_a * std::exp(k * y.y1);
        const double em = m->coef_b * std::exp(-k * y.y1);
        return {k * std::sin(k * y.y2) * (ep - em), k * std::cos(k * y.y2) * (ep + em)};
    }
    // for analytic f, grad(Re f) = (Re f', -Im f') and grad(Im f) = (Im f', Re f')
    const auto& e = std::get<EntireHarmonic>(fn);
    const Complex z(y.y1, y.y2);
    Complex fp;
    bool real_part = true;
    switch (e.family) {
        case EntireFamily::re_exp: fp = e.lambda * std::exp(e.lambda * z); break;
        case EntireFamily::im_exp:
            fp = e.lambda * std::exp(e.lambda * z);
            real_part = false;
            break;
        case EntireFamily::re_poly:
            fp = e.k == 0 ? Complex(0.0) : Complex(e.k) * std::pow(z, e.k - 1);
            break;
        default:
            fp = e.k == 0 ? Complex(0.0) : Complex(e.k) * std::pow(z, e.k - 1);
            real_part = false;
            break;
    }
    if (real_part) return {std::real(fp), -std::imag(fp)};
    return {std::imag(fp), std::real(fp)};
}

/// grad U at the boundary point dotted with the exterior normal. Signs come
/// from composing the exact gradient with the normal, never hand-derived per
/// mode.
inline double neumann_trace(const HarmonicFn& fn, const BandDomain& domain, CurveKind kind,
                            double y1) {
    const Point2 p = boundary_point(domain, kind, y1);
    return dot(eval_grad_U(fn, p), exterior_normal(domain, kind, y1));
}

/// Exponential growth rate c with |U| + |grad U| <= M exp(c |y1|) along the
/// band; used to pick truncation radii for boundary integrals.
inline double growth_rate(const HarmonicFn& fn) {
    if (const auto* m = std::get_if<StripMode>(&fn)) {
        double c = 0.0;
        if (m->coef_a != 0.0 || m->coef_b != 0.0) c = std::abs(m->n * m->rho);
        return c;
    }
    const auto& e = std::get<EntireHarmonic>(fn);
    if (e.family == EntireFamily::re_exp || e.family == EntireFamily::im_exp)
        return std::abs(e.lambda);
    return 0.0;  // polynomial growth; absorbed by the truncation margin
}

}  // namespace carleman

#endif  // CARLEMAN_ANALYTIC_HPP
