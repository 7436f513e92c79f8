// This file is part of carleman, a numerical toolkit for harmonic
// continuation in band domains.
// SPDX-License-Identifier: Apache-2.0

#ifndef CARLEMAN_DOMAIN_HPP
#define CARLEMAN_DOMAIN_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "carleman/core.hpp"

namespace carleman {

enum class CurveKind { lower, upper };

inline const char* to_string(CurveKind k) { return k == CurveKind::lower ? "lower" : "upper"; }

namespace detail {

/// Monotone cubic Hermite interpolant (Fritsch-Carlson slopes). C1, local,
/// overshoot-free; the derivative is the interpolant's own derivative.
class PchipInterpolant {
  public:
    PchipInterpolant(std::vector<double> xs, std::vector<double> ys)
        : x_(std::move(xs)), y_(std::move(ys)) {
        const std::size_t n = x_.size();
        if (n < 2 || y_.size() != n)
            throw config_error("curve.table", "needs at least two (y1, f) samples");
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (!(x_[i + 1] > x_[i]))
                throw config_error("curve.table", "y1 samples must be strictly increasing");
        d_.resize(n);
        std::vector<double> delta(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
        if (n == 2) {
            d_[0] = d_[1] = delta[0];
        } else {
            for (std::size_t i = 1; i + 1 < n; ++i) {
                if (delta[i - 1] * delta[i] <= 0.0) {
                    d_[i] = 0.0;
                } else {
                    const double w1 = 2.0 * (x_[i + 1] - x_[i]) + (x_[i] - x_[i - 1]);
                    const double w2 = (x_[i + 1] - x_[i]) + 2.0 * (x_[i] - x_[i - 1]);
                    d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
                }
            }
            d_[0] = edge_slope(x_[1] - x_[0], x_[2] - x_[1], delta[0], delta[1]);
            d_[n - 1] = edge_slope(x_[n - 1] - x_[n - 2], x_[n - 2] - x_[n - 3], delta[n - 2],
                                   delta[n - 3]);
        }
    }

    double lo() const { return x_.front(); }
    double hi() const { return x_.back(); }

    double value(double x) const { return eval(x).first; }
    double derivative(double x) const { return eval(x).second; }

  private:
    static double edge_slope(double h0, double h1, double del0, double del1) {
        double d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
        if (d * del0 <= 0.0)
            d = 0.0;
        else if (del0 * del1 < 0.0 && std::abs(d) > 3.0 * std::abs(del0))
            d = 3.0 * del0;
        return d;
    }

    std::pair<double, double> eval(double x) const {
        // clamp-constant extrapolation beyond the table
        if (x <= x_.front()) return {y_.front(), 0.0};
        if (x >= x_.back()) return {y_.back(), 0.0};
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
        const double hstep = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / hstep;
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
        const double v = h00 * y_[i] + h10 * hstep * d_[i] + h01 * y_[i + 1] + h11 * hstep * d_[i + 1];
        const double dh00 = 6 * t2 - 6 * t, dh10 = 3 * t2 - 4 * t + 1;
        const double dh01 = -6 * t2 + 6 * t, dh11 = 3 * t2 - 2 * t;
        const double dv =
            (dh00 * y_[i] + dh01 * y_[i + 1]) / hstep + dh10 * d_[i] + dh11 * d_[i + 1];
        return {v, dv};
    }

    std::vector<double> x_, y_, d_;
};

}  // namespace detail

/// One boundary curve y2 = f(y1), supplied with its derivative and the bounds
/// sup|f|, sup|f'| required of admissible domains. `coverage_*` is finite for
/// tabulated curves (clamp-constant extrapolation beyond it).
struct BoundaryCurve {
    CurveKind kind = CurveKind::lower;
    std::function<double(double)> f;
    std::function<double(double)> f_prime;
    double sup_abs_f = 0.0;
    double sup_abs_f_prime = 0.0;
    double coverage_lo = -std::numeric_limits<double>::infinity();
    double coverage_hi = std::numeric_limits<double>::infinity();
    std::string descriptor;
};

inline BoundaryCurve make_flat_curve(CurveKind kind, double level) {
    BoundaryCurve c;
    c.kind = kind;
    c.f = [level](double) { return level; };
    c.f_prime = [](double) { return 0.0; };
    c.sup_abs_f = std::abs(level);
    c.sup_abs_f_prime = 0.0;
    c.descriptor = "flat:" + std::to_string(level);
    return c;
}

/// f(t) = c0 + c1 sin(c2 t + c3)
inline BoundaryCurve make_sine_curve(CurveKind kind, double c0, double c1, double c2, double c3) {
    BoundaryCurve c;
    c.kind = kind;
    c.f = [=](double t) { return c0 + c1 * std::sin(c2 * t + c3); };
    c.f_prime = [=](double t) { return c1 * c2 * std::cos(c2 * t + c3); };
    c.sup_abs_f = std::abs(c0) + std::abs(c1);
    c.sup_abs_f_prime = std::abs(c1 * c2);
    c.descriptor = "sine:" + std::to_string(c0) + "," + std::to_string(c1) + "," +
                   std::to_string(c2) + "," + std::to_string(c3);
    return c;
}

/// Localized bump f(t) = base + amp * exp(-((t - center)/width)^2)
inline BoundaryCurve make_bump_curve(CurveKind kind, double base, double amp, double center,
                                     double width) {
    if (!(width > 0.0)) throw config_error("curve.bump", "width must be positive");
    BoundaryCurve c;
    c.kind = kind;
    c.f = [=](double t) {
        const double s = (t - center) / width;
        return base + amp * std::exp(-s * s);
    };
    c.f_prime = [=](double t) {
        const double s = (t - center) / width;
        return amp * (-2.0 * s / width) * std::exp(-s * s);
    };
    c.sup_abs_f = std::abs(base) + std::abs(amp);
    c.sup_abs_f_prime = std::abs(amp) * std::sqrt(2.0 / std::exp(1.0)) / width;
    c.descriptor = "bump:" + std::to_string(base) + "," + std::to_string(amp) + "," +
                   std::to_string(center) + "," + std::to_string(width);
    return c;
}

inline BoundaryCurve make_table_curve(CurveKind kind, std::vector<double> y1s,
                                      std::vector<double> fs, std::string descriptor = {}) {
    auto interp = std::make_shared<detail::PchipInterpolant>(std::move(y1s), std::move(fs));
    BoundaryCurve c;
    c.kind = kind;
    c.coverage_lo = interp->lo();
    c.coverage_hi = interp->hi();
    c.f = [interp](double t) { return interp->value(t); };
    c.f_prime = [interp](double t) { return interp->derivative(t); };
    double mf = 0.0, mfp = 0.0;
    const int n = 1024;
    for (int i = 0; i <= n; ++i) {
        const double t = c.coverage_lo + (c.coverage_hi - c.coverage_lo) * i / n;
        mf = std::max(mf, std::abs(c.f(t)));
        mfp = std::max(mfp, std::abs(c.f_prime(t)));
    }
    c.sup_abs_f = mf;
    c.sup_abs_f_prime = mfp;
    c.descriptor = descriptor.empty() ? std::string("table") : descriptor;
    return c;
}

/// Band domain D = { y : f1(y1) < y2 < f2(y1) } inside the strip 0 <= y2 <= h.
struct BandDomain {
    BoundaryCurve gamma1;  ///< lower curve
    BoundaryCurve gamma2;  ///< upper curve
    double h = pi;

    static BandDomain make(BoundaryCurve lower, BoundaryCurve upper, double h) {
        if (!(h > 0.0)) throw config_error("domain.h", "band width must be positive");
        lower.kind = CurveKind::lower;
        upper.kind = CurveKind::upper;
        const double lo = std::max(std::max(lower.coverage_lo, upper.coverage_lo), -50.0);
        const double hi = std::min(std::min(lower.coverage_hi, upper.coverage_hi), 50.0);
        // curves are expected to stay essentially inside [0, h]; quarter-width
        // excursions are tolerated (the kernel enforces its own convergence
        // window at evaluation time)
        const int n = 400;
        for (int i = 0; i <= n; ++i) {
            const double t = lo + (hi - lo) * i / n;
            const double f1 = lower.f(t), f2 = upper.f(t);
            if (!(f1 >= -0.25 * h && f1 <= 1.25 * h))
                throw config_error("domain.lower", "curve leaves the band near y1=" +
                                                       std::to_string(t));
            if (!(f2 >= -0.25 * h && f2 <= 1.25 * h))
                throw config_error("domain.upper", "curve leaves the band near y1=" +
                                                       std::to_string(t));
            if (!(f1 < f2))
                throw config_error("domain", "lower curve must stay below the upper curve; "
                                             "violated near y1=" + std::to_string(t));
        }
        BandDomain d;
        d.gamma1 = std::move(lower);
        d.gamma2 = std::move(upper);
        d.h = h;
        return d;
    }

    const BoundaryCurve& curve(CurveKind k) const {
        return k == CurveKind::lower ? gamma1 : gamma2;
    }
};

inline Point2 boundary_point(const BandDomain& domain, CurveKind kind, double y1) {
    return {y1, domain.curve(kind).f(y1)};
}

/// Unit normal pointing out of D: downward on the lower curve, upward on the
/// upper one.
inline Vec2 exterior_normal(const BandDomain& domain, CurveKind kind, double y1) {
    const double fp = domain.curve(kind).f_prime(y1);
    const double scale = 1.0 / std::sqrt(1.0 + fp * fp);
    if (kind == CurveKind::lower) return {fp * scale, -scale};
    return {-fp * scale, scale};
}

/// ds/dy1 = sqrt(1 + f'(y1)^2) >= 1.
inline double arc_element(const BandDomain& domain, CurveKind kind, double y1) {
    const double fp = domain.curve(kind).f_prime(y1);
    return std::sqrt(1.0 + fp * fp);
}

enum class PointClass { inside, outside, near_boundary };

inline const char* to_string(PointClass c) {
    switch (c) {
        case PointClass::inside: return "inside";
        case PointClass::outside: return "outside";
        default: return "near_boundary";
    }
}

/// Vertical-distance classification: the distance to each curve is estimated
/// as |x2 - f(x1)| / sqrt(1 + sup|f'|^2), which is what the quadrature
/// refinement triggers need (exact projection intentionally omitted).
inline PointClass classify_point(const BandDomain& domain, Point2 x, double near_tol) {
    if (!(near_tol > 0.0)) throw std::domain_error("classify_point: near_tol must be positive");
    const double d1 = x.y2 - domain.gamma1.f(x.y1);
    const double d2 = domain.gamma2.f(x.y1) - x.y2;
    const double s1 = std::sqrt(1.0 + domain.gamma1.sup_abs_f_prime * domain.gamma1.sup_abs_f_prime);
    const double s2 = std::sqrt(1.0 + domain.gamma2.sup_abs_f_prime * domain.gamma2.sup_abs_f_prime);
    if (std::min(std::abs(d1) / s1, std::abs(d2) / s2) <= near_tol)
        return PointClass::near_boundary;
    return (d1 > 0.0 && d2 > 0.0) ? PointClass::inside : PointClass::outside;
}

}  // namespace carleman

#endif  // CARLEMAN_DOMAIN_HPP
