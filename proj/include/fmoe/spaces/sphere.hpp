#pragma once

#include <Eigen/Dense>

#include "fmoe/geometry.hpp"

namespace fmoe::spaces {

struct SpherePoint {
    Eigen::Vector3d v = Eigen::Vector3d::UnitZ();
};

/// The unit sphere S² with the great-circle metric (κ = 1, D_κ = π).
class Sphere {
public:
    using Point = SpherePoint;

    CurvatureBound curvature() const { return CurvatureBound::of(1.0); }

    /// Normalizes v; throws if v is zero or not finite.
    static SpherePoint from_vector(const Eigen::Vector3d& v);
    static SpherePoint from_angles(double colatitude, double longitude);

    double distance(const SpherePoint& a, const SpherePoint& b) const;

    /// Great-circle slerp. Antipodal endpoints throw NoUniqueGeodesic.
    SpherePoint interpolate(const SpherePoint& a, const SpherePoint& b, double t) const;

    /// Riemannian log map at `base`: the tangent vector of length d(base, p)
    /// pointing along the geodesic to p. Throws NoUniqueGeodesic at the antipode.
    Eigen::Vector3d log(const SpherePoint& base, const SpherePoint& p) const;
    SpherePoint exp(const SpherePoint& base, const Eigen::Vector3d& tangent) const;

    static void check(const SpherePoint& p);
};

}  // namespace fmoe::spaces
