#include "hept/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hept {

namespace {
constexpr double kPi = std::numbers::pi;
}

double heptagon_circumradius() {
    const double c = (1.0 / std::tan(kPi / 7.0)) * (1.0 / std::tan(kPi / 3.0));
    return std::acosh(c);
}

double heptagon_inradius() {
    const double c = std::cos(kPi / 3.0) / std::sin(kPi / 7.0);
    return std::acosh(c);
}

double hyperbolic_distance(Complex a, Complex b) {
    const double num = std::abs(a - b);
    const double den = std::abs(1.0 - std::conj(b) * a);
    return 2.0 * std::atanh(num / den);
}

Complex translate_to_origin(Complex p, Complex z) {
    return (z - p) / (1.0 - std::conj(p) * z);
}

GeodesicReflection::GeodesicReflection(Complex u, Complex v) {
    const double cross = u.real() * v.imag() - u.imag() * v.real();
    const double scale = std::abs(u) * std::abs(v);
    if (std::abs(cross) <= 1e-12 * std::max(scale, 1e-30)) {
        // u, v and the origin are collinear: the geodesic is a diameter.
        is_line_ = true;
        Complex d = (std::abs(v - u) > std::abs(u)) ? (v - u) : u;
        axis_ = d / std::abs(d);
        return;
    }
    is_line_ = false;
    // Circle through u and v orthogonal to the unit circle:
    //   2 c.u = |u|^2 + 1,  2 c.v = |v|^2 + 1,  r^2 = |c|^2 - 1.
    const double au = std::norm(u) + 1.0;
    const double av = std::norm(v) + 1.0;
    const double det = 4.0 * cross;
    const double cx = (au * 2.0 * v.imag() - av * 2.0 * u.imag()) / det;
    const double cy = (av * 2.0 * u.real() - au * 2.0 * v.real()) / det;
    center_ = {cx, cy};
    radius2_ = std::norm(center_) - 1.0;
    if (radius2_ <= 0.0)
        throw std::invalid_argument("geodesic reflection: degenerate circle");
}

Complex GeodesicReflection::apply(Complex z) const {
    if (is_line_)
        return axis_ * axis_ * std::conj(z);
    return center_ + radius2_ / std::conj(z - center_);
}

}  // namespace hept
