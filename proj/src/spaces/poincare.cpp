#include "fmoe/spaces/poincare.hpp"

#include <cmath>
#include <complex>

namespace fmoe::spaces {

namespace {

using Complex = std::complex<double>;

Complex to_complex(const DiskPoint& p) { return {p.x, p.y}; }

// Disk isometry sending a to the origin.
Complex to_origin(Complex z, Complex a) { return (z - a) / (1.0 - std::conj(a) * z); }

// Inverse of to_origin.
Complex from_origin(Complex z, Complex a) { return (z + a) / (1.0 + std::conj(a) * z); }

}  // namespace

void PoincareDisk::check(const DiskPoint& p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !(p.squared_norm() < 1.0)) {
        throw std::invalid_argument("Poincare disk point must lie strictly inside the unit disk");
    }
}

double PoincareDisk::distance(const DiskPoint& a, const DiskPoint& b) const {
    check(a);
    check(b);
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double chord = std::hypot(dx, dy);
    const double denom = std::sqrt((1.0 - a.squared_norm()) * (1.0 - b.squared_norm()));
    return 2.0 * std::asinh(chord / denom);
}

DiskPoint PoincareDisk::interpolate(const DiskPoint& a, const DiskPoint& b, double t) const {
    check_fraction(t);
    check(a);
    check(b);
    if (t == 0.0) return a;
    if (t == 1.0) return b;

    const Complex za = to_complex(a);
    const Complex w = to_origin(to_complex(b), za);
    const double rho = std::abs(w);
    if (rho == 0.0) return a;

    // Radial geodesics through the origin: hyperbolic length 2·artanh(r).
    const double r = std::tanh(t * std::atanh(rho));
    const Complex z = from_origin(w * (r / rho), za);
    DiskPoint out{z.real(), z.imag()};
    check(out);
    return out;
}

}  // namespace fmoe::spaces
