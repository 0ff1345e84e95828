#pragma once

#include <cmath>
#include <concepts>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace fmoe {

/// Raised when two points are joined by more than one minimizing geodesic
/// (for instance antipodal points of the sphere).
class NoUniqueGeodesic : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an input violates a documented precondition that is not a
/// plain argument error, e.g. the support-radius condition of a κ>0 median.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Curvature upper bound κ of a space, with the model-space diameter
/// D_κ = π/√κ recorded when κ > 0.
class CurvatureBound {
public:
    static CurvatureBound of(double kappa) {
        if (!std::isfinite(kappa)) {
            throw std::invalid_argument("curvature bound must be finite");
        }
        CurvatureBound c;
        c.kappa_ = kappa;
        if (kappa > 0) {
            c.diameter_ = std::numbers::pi / std::sqrt(kappa);
        }
        return c;
    }

    double kappa() const { return kappa_; }
    std::optional<double> diameter_bound() const { return diameter_; }
    bool positive() const { return kappa_ > 0; }

private:
    double kappa_ = 0;
    std::optional<double> diameter_;
};

/// A uniquely geodesic metric space with a known curvature upper bound.
template <class S>
concept GeodesicSpace = requires(const S& s, const typename S::Point& x, double t) {
    typename S::Point;
    { s.curvature() } -> std::convertible_to<CurvatureBound>;
    { s.distance(x, x) } -> std::convertible_to<double>;
    { s.interpolate(x, x, t) } -> std::convertible_to<typename S::Point>;
};

template <GeodesicSpace S>
using PointOf = typename S::Point;

inline void check_fraction(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument("geodesic fraction t=" + std::to_string(t) + " is outside [0, 1]");
    }
}

template <GeodesicSpace S>
double distance(const S& space, const PointOf<S>& x, const PointOf<S>& y) {
    return space.distance(x, y);
}

/// Point at arc-length fraction t from x on the geodesic to y.
template <GeodesicSpace S>
PointOf<S> interpolate(const S& space, const PointOf<S>& x, const PointOf<S>& y, double t) {
    check_fraction(t);
    return space.interpolate(x, y, t);
}

/// True iff every point lies in the open ball of radius D_κ/2 about center.
template <GeodesicSpace S>
bool validate_support_radius(const S& space, std::span<const PointOf<S>> points, const PointOf<S>& center) {
    const auto curvature = CurvatureBound(space.curvature());
    if (!curvature.positive()) {
        throw std::invalid_argument("support-radius condition only applies to spaces with kappa > 0");
    }
    const double radius = *curvature.diameter_bound() / 2.0;
    for (const auto& p : points) {
        if (!(space.distance(p, center) < radius)) {
            return false;
        }
    }
    return true;
}

}  // namespace fmoe
