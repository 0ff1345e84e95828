#include "fmoe/spaces/sphere.hpp"

#include <cmath>
#include <numbers>

#include "fmoe/tolerances.hpp"

namespace fmoe::spaces {

void Sphere::check(const SpherePoint& p) {
    if (!p.v.allFinite() || std::abs(p.v.norm() - 1.0) > tolerances.unit_norm) {
        throw std::invalid_argument("sphere point must be a unit vector");
    }
}

SpherePoint Sphere::from_vector(const Eigen::Vector3d& v) {
    const double n = v.norm();
    if (!std::isfinite(n) || n == 0.0) {
        throw std::invalid_argument("cannot normalize a zero or non-finite vector onto the sphere");
    }
    return SpherePoint{v / n};
}

SpherePoint Sphere::from_angles(double colatitude, double longitude) {
    return from_vector({std::sin(colatitude) * std::cos(longitude), std::sin(colatitude) * std::sin(longitude),
                        std::cos(colatitude)});
}

double Sphere::distance(const SpherePoint& a, const SpherePoint& b) const {
    check(a);
    check(b);
    return std::atan2(a.v.cross(b.v).norm(), a.v.dot(b.v));
}

Eigen::Vector3d Sphere::log(const SpherePoint& base, const SpherePoint& p) const {
    const double theta = distance(base, p);
    if (theta > std::numbers::pi - tolerances.antipodal_margin) {
        throw NoUniqueGeodesic("antipodal sphere points have no unique geodesic");
    }
    const Eigen::Vector3d perp = p.v - base.v.dot(p.v) * base.v;
    const double s = perp.norm();
    if (s == 0.0) return Eigen::Vector3d::Zero();
    return perp * (theta / s);
}

SpherePoint Sphere::exp(const SpherePoint& base, const Eigen::Vector3d& tangent) const {
    check(base);
    const double len = tangent.norm();
    if (len == 0.0) return base;
    return from_vector(std::cos(len) * base.v + std::sin(len) * (tangent / len));
}

SpherePoint Sphere::interpolate(const SpherePoint& a, const SpherePoint& b, double t) const {
    check_fraction(t);
    const Eigen::Vector3d direction = log(a, b);
    if (t == 0.0) return a;
    if (t == 1.0) return b;
    return exp(a, t * direction);
}

}  // namespace fmoe::spaces
