#pragma once

#include <complex>

#include "fmoe/geometry.hpp"

namespace fmoe::spaces {

struct DiskPoint {
    double x = 0;
    double y = 0;

    double squared_norm() const { return x * x + y * y; }
    friend bool operator==(const DiskPoint&, const DiskPoint&) = default;
};

/// Poincaré disk model of the hyperbolic plane with curvature −1.
///
/// The distance is arccosh(1 + 2‖a−b‖²/((1−‖a‖²)(1−‖b‖²))), evaluated
/// through the equivalent 2·asinh(‖a−b‖/√((1−‖a‖²)(1−‖b‖²))), which keeps
/// precision for nearby points. Along a radius it equals 2·artanh(r).
class PoincareDisk {
public:
    using Point = DiskPoint;

    CurvatureBound curvature() const { return CurvatureBound::of(-1.0); }

    double distance(const DiskPoint& a, const DiskPoint& b) const;

    /// Geodesic interpolation: move a to the origin with the disk isometry
    /// z ↦ (z − a)/(1 − āz), scale radially in hyperbolic arc length, map back.
    DiskPoint interpolate(const DiskPoint& a, const DiskPoint& b, double t) const;

    static void check(const DiskPoint& p);
};

}  // namespace fmoe::spaces
