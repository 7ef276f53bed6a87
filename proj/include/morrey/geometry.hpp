#ifndef MORREY_GEOMETRY_HPP
#define MORREY_GEOMETRY_HPP

namespace morrey
{

class RadialProfile;

// Largest dimension for which Gamma(d/2 + 1) is representable.
inline constexpr int max_dimension = 170;

struct DimensionConstants {
    int d;
    // |B(0,1)|
    double volume;
    // surface area of S^{d-1}; always d * volume
    double sphere_area;
};

DimensionConstants dimension_constants(int d);

double unit_ball_volume(int d);

// |B(a, r)| = v_d r^d.
double ball_volume(int d, double r);

// Regularized incomplete beta function I_x(a, b), continued-fraction
// evaluation with the usual symmetry reduction.
double regularized_incomplete_beta(double a, double b, double x);

// Fraction of the surface measure of S^{d-1} lying within the geodesic angle
// arccos(cos_theta) of a fixed pole. In d = 1 the sphere is {-1, +1} and the
// result is one of 0, 1/2, 1.
double cap_fraction(int d, double cos_theta);

// Fraction of the sphere {|y| = s} contained in B(x, r) for |x| = t.
double shell_in_ball_fraction(int d, double t, double r, double s);

// Integral of |f|^p over B(x, r) with |x| = t. Exact interval arithmetic in
// d = 1; otherwise the fully covered shells s <= r - t are integrated in closed
// form and the partially covered shells by adaptive quadrature with
// breakpoints at every profile knot. Returns +inf when |f|^p is not
// integrable inside the ball.
double offcenter_mass(int d, double t, double r, const RadialProfile &profile, double p, double rel_tol = 1e-8);

} // namespace morrey

#endif
