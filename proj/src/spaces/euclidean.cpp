#include "fmoe/spaces/euclidean.hpp"

#include <string>

namespace fmoe::spaces {

Euclidean::Euclidean(Eigen::Index dim) : dim_(dim) {
    if (dim < 1) {
        throw std::invalid_argument("Euclidean dimension must be positive");
    }
}

void Euclidean::check(const Point& x) const {
    if (x.size() != dim_) {
        throw std::invalid_argument("point of dimension " + std::to_string(x.size()) + " in R^" + std::to_string(dim_));
    }
}

double Euclidean::distance(const Point& x, const Point& y) const {
    check(x);
    check(y);
    return (x - y).norm();
}

Euclidean::Point Euclidean::interpolate(const Point& x, const Point& y, double t) const {
    check_fraction(t);
    check(x);
    check(y);
    if (t == 0.0) return x;
    if (t == 1.0) return y;
    return x + t * (y - x);
}

}  // namespace fmoe::spaces
