#include "fmoe/spaces/any_space.hpp"

#include <array>

namespace fmoe::spaces {

namespace {

template <class S>
const typename S::Point& expect_point(const SpacePoint& p, const S&, const char* space) {
    const auto* typed = std::get_if<typename S::Point>(&p);
    if (typed == nullptr) {
        throw std::invalid_argument("a " + kind_name(p) + " point cannot be used in the " + space + " space");
    }
    return *typed;
}

template <class S>
const char* name_of(const S&) {
    if constexpr (std::is_same_v<S, Euclidean>) return "euclidean";
    else if constexpr (std::is_same_v<S, Spider>) return "spider";
    else if constexpr (std::is_same_v<S, PoincareDisk>) return "poincare";
    else if constexpr (std::is_same_v<S, Sphere>) return "sphere";
    else if constexpr (std::is_same_v<S, SpdAffineInvariant>) return "spd-ai";
    else return "spd-bw";
}

}  // namespace

std::string kind_name(const SpacePoint& p) {
    static constexpr std::array<const char*, 5> names{"vector", "spider", "disk", "sphere", "spd"};
    return names.at(p.index());
}

std::string AnySpace::name() const {
    return std::visit([](const auto& s) { return std::string(name_of(s)); }, space_);
}

CurvatureBound AnySpace::curvature() const {
    return std::visit([](const auto& s) { return s.curvature(); }, space_);
}

double AnySpace::distance(const SpacePoint& x, const SpacePoint& y) const {
    return std::visit(
        [&](const auto& s) { return s.distance(expect_point(x, s, name_of(s)), expect_point(y, s, name_of(s))); },
        space_);
}

SpacePoint AnySpace::interpolate(const SpacePoint& x, const SpacePoint& y, double t) const {
    return std::visit(
        [&](const auto& s) -> SpacePoint {
            return s.interpolate(expect_point(x, s, name_of(s)), expect_point(y, s, name_of(s)), t);
        },
        space_);
}

}  // namespace fmoe::spaces
