#include "fmoe/spaces/spider.hpp"

#include <cmath>
#include <string>

namespace fmoe::spaces {

Spider::Spider(int legs) : legs_(legs) {
    if (legs < 1) {
        throw std::invalid_argument("spider needs at least one leg");
    }
}

void Spider::check(const SpiderPoint& p) const {
    if (p.leg < 1 || p.leg > legs_) {
        throw std::invalid_argument("spider leg " + std::to_string(p.leg) + " outside 1.." + std::to_string(legs_));
    }
    if (!(p.radius >= 0.0) || !std::isfinite(p.radius)) {
        throw std::invalid_argument("spider radius must be finite and nonnegative");
    }
}

SpiderPoint Spider::make_point(int leg, double radius) const {
    SpiderPoint p{leg, radius};
    check(p);
    if (p.radius == 0.0) p.leg = 1;
    return p;
}

double Spider::distance(const SpiderPoint& a, const SpiderPoint& b) const {
    check(a);
    check(b);
    if (a.leg == b.leg || a.is_center() || b.is_center()) {
        return std::abs(a.radius - b.radius);
    }
    return a.radius + b.radius;
}

SpiderPoint Spider::interpolate(const SpiderPoint& a, const SpiderPoint& b, double t) const {
    check_fraction(t);
    check(a);
    check(b);
    if (t == 0.0) return a;
    if (t == 1.0) return b;

    if (a.leg == b.leg || a.is_center() || b.is_center()) {
        // Both on one closed leg: linear in the radius.
        const int leg = a.is_center() ? b.leg : a.leg;
        const double r = a.radius + t * (b.radius - a.radius);
        return make_point(leg, r);
    }

    // The geodesic runs down a's leg to the center, then up b's leg.
    const double travelled = t * (a.radius + b.radius);
    if (travelled <= a.radius) {
        return make_point(a.leg, a.radius - travelled);
    }
    return make_point(b.leg, travelled - a.radius);
}

}  // namespace fmoe::spaces
