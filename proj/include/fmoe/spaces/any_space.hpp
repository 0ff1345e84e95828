#pragma once

#include <string>
#include <variant>

#include "fmoe/spaces/euclidean.hpp"
#include "fmoe/spaces/poincare.hpp"
#include "fmoe/spaces/spd.hpp"
#include "fmoe/spaces/sphere.hpp"
#include "fmoe/spaces/spider.hpp"

namespace fmoe::spaces {

/// A point of any concrete space. The alternative index is the point's kind.
using SpacePoint = std::variant<Eigen::VectorXd, SpiderPoint, DiskPoint, SpherePoint, SpdMatrix>;

std::string kind_name(const SpacePoint& p);

/// Runtime-selected concrete space. Operations reject points whose kind does
/// not belong to the held space with std::invalid_argument.
class AnySpace {
public:
    using Point = SpacePoint;
    using Variant = std::variant<Euclidean, Spider, PoincareDisk, Sphere, SpdAffineInvariant, SpdBuresWasserstein>;

    template <class S>
        requires std::constructible_from<Variant, S>
    AnySpace(S space) : space_(std::move(space)) {}

    const Variant& variant() const { return space_; }
    std::string name() const;

    CurvatureBound curvature() const;
    double distance(const SpacePoint& x, const SpacePoint& y) const;
    SpacePoint interpolate(const SpacePoint& x, const SpacePoint& y, double t) const;

private:
    Variant space_;
};

}  // namespace fmoe::spaces
