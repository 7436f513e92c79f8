// This file is part of carleman, a numerical toolkit for harmonic
// continuation in band domains.
// SPDX-License-Identifier: Apache-2.0

#ifndef CARLEMAN_CORE_HPP
#define CARLEMAN_CORE_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace carleman {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// A point y = (y1, y2) in the plane; y2 is the cross-band coordinate.
struct Point2 {
    double y1 = 0.0;
    double y2 = 0.0;
};

struct Vec2 {
    double v1 = 0.0;
    double v2 = 0.0;
};

inline double dot(Vec2 a, Vec2 b) { return a.v1 * b.v1 + a.v2 * b.v2; }
inline double norm(Vec2 a) { return std::hypot(a.v1, a.v2); }
inline double distance(Point2 a, Point2 b) { return std::hypot(a.y1 - b.y1, a.y2 - b.y2); }

/// sin(x)/x, stable through x = 0.
inline double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

/// sinh(x)/x, stable through x = 0.
inline double sinhc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0);
    }
    return std::sinh(x) / x;
}

/// Raised when an evaluation point violates a singularity precondition (y = x).
class singularity_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Raised when a configuration file or parameter set violates an invariant.
/// Carries the offending field path for diagnostics.
class config_error : public std::runtime_error {
  public:
    config_error(std::string field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message),
          field_(std::move(field)) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

/// Parameters of the band kernel. The band occupies 0 <= y2 <= h with
/// h = pi/rho; `a` sets the depth of the double-exponential decay envelope,
/// `rho1` its frequency along the band axis, and a1 = a*cos(rho1*h/2) is the
/// effective axial decay amplitude.
struct KernelParams {
    double rho = 1.0;
    double h = pi;
    double a = 3.0;
    double rho1 = 0.5;
    double a1 = 0.0;

    static KernelParams make(double rho, double a, double rho1) {
        if (!(rho > 0.0) || !std::isfinite(rho))
            throw config_error("kernel.rho", "must be a positive finite number");
        if (!(a > 0.0) || !std::isfinite(a))
            throw config_error("kernel.a", "must be a positive finite number");
        if (!(rho1 > 0.0) || !(rho1 < rho))
            throw config_error("kernel.rho1", "must satisfy 0 < rho1 < rho");
        KernelParams p;
        p.rho = rho;
        p.h = pi / rho;
        p.a = a;
        p.rho1 = rho1;
        p.a1 = a * std::cos(rho1 * p.h / 2.0);  // rho1*h/2 < pi/2, so a1 > 0
        return p;
    }
};

}  // namespace carleman

#endif  // CARLEMAN_CORE_HPP
