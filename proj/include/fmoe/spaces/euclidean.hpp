#pragma once

#include <Eigen/Dense>

#include "fmoe/geometry.hpp"

namespace fmoe::spaces {

/// ℝ^d with the Euclidean metric (κ = 0).
class Euclidean {
public:
    using Point = Eigen::VectorXd;

    explicit Euclidean(Eigen::Index dim);

    Eigen::Index dimension() const { return dim_; }
    CurvatureBound curvature() const { return CurvatureBound::of(0.0); }

    double distance(const Point& x, const Point& y) const;
    Point interpolate(const Point& x, const Point& y, double t) const;

private:
    void check(const Point& x) const;

    Eigen::Index dim_;
};

}  // namespace fmoe::spaces
