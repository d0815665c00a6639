#pragma once

#include <complex>

namespace hept {

using Complex = std::complex<double>;

struct DiscPoint {
    double x = 0.0;
    double y = 0.0;
};

inline Complex to_complex(const DiscPoint& p) { return {p.x, p.y}; }
inline DiscPoint to_disc_point(const Complex& z) { return {z.real(), z.imag()}; }

// Metric data of the regular heptagon with interior angle 2*pi/3, from the
// right triangle with acute angles pi/7 (at the cell center) and pi/3 (at a
// vertex).  All distances are hyperbolic.
double heptagon_circumradius();  // center to vertex, cosh R = cot(pi/7)*cot(pi/3)
double heptagon_inradius();      // center to edge midpoint, cosh r = cos(pi/3)/sin(pi/7)

// Distance in the Poincare disc model.
double hyperbolic_distance(Complex a, Complex b);

// Image of z under the Mobius translation that moves p to the origin.
Complex translate_to_origin(Complex p, Complex z);

// Hyperbolic reflection across the geodesic through u and v (u != v, both
// inside the disc).  Realized as inversion in the circle through u and v
// orthogonal to the unit circle, or as a Euclidean reflection when the
// geodesic is a diameter.
class GeodesicReflection {
public:
    GeodesicReflection(Complex u, Complex v);
    Complex apply(Complex z) const;

private:
    bool is_line_;
    Complex axis_;    // unit direction of the diameter (line case)
    Complex center_;  // inversion circle center (circle case)
    double radius2_ = 0.0;
};

}  // namespace hept
