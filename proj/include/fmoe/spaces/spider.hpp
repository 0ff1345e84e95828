#pragma once

#include "fmoe/geometry.hpp"

namespace fmoe::spaces {

/// A point of the spider: distance `radius` from the center along leg `leg`
/// (1-based). All radius-0 points are the center node.
struct SpiderPoint {
    int leg = 1;
    double radius = 0;

    bool is_center() const { return radius == 0.0; }
    friend bool operator==(const SpiderPoint&, const SpiderPoint&) = default;
};

/// The d-leg spider: d copies of [0, ∞) glued at their origins. It is a
/// metric tree, hence CAT(κ) for every κ; we report κ = 0.
class Spider {
public:
    using Point = SpiderPoint;

    explicit Spider(int legs);

    int legs() const { return legs_; }
    CurvatureBound curvature() const { return CurvatureBound::of(0.0); }

    /// Validates a point and maps the center to leg 1.
    SpiderPoint make_point(int leg, double radius) const;

    double distance(const SpiderPoint& a, const SpiderPoint& b) const;
    SpiderPoint interpolate(const SpiderPoint& a, const SpiderPoint& b, double t) const;

private:
    void check(const SpiderPoint& p) const;

    int legs_;
};

}  // namespace fmoe::spaces
