#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <morrey/errors.hpp>
#include <morrey/geometry.hpp>
#include <morrey/radial.hpp>

namespace morrey
{

namespace
{

void check_dimension(int d)
{
    if (d < 1 || d > max_dimension) {
        throw invalid_argument("dimension must be in [1, " + std::to_string(max_dimension) + "], got "
                               + std::to_string(d));
    }
}

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double a, double b, double x)
{
    constexpr int max_iter = 500;
    constexpr double eps = 1e-15;
    constexpr double tiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1;
    const double qam = a - 1;
    double c = 1;
    double dd = 1 - qab * x / qap;
    if (std::abs(dd) < tiny) {
        dd = tiny;
    }
    dd = 1 / dd;
    double h = dd;
    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        dd = 1 + aa * dd;
        if (std::abs(dd) < tiny) {
            dd = tiny;
        }
        c = 1 + aa / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        dd = 1 / dd;
        h *= dd * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        dd = 1 + aa * dd;
        if (std::abs(dd) < tiny) {
            dd = tiny;
        }
        c = 1 + aa / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        dd = 1 / dd;
        const double del = dd * c;
        h *= del;
        if (std::abs(del - 1) < eps) {
            return h;
        }
    }
    throw numerical_error("incomplete beta continued fraction did not converge");
}

boost::math::quadrature::tanh_sinh<double> &quadrature_engine()
{
    thread_local boost::math::quadrature::tanh_sinh<double> engine;
    return engine;
}

// Cap fraction from 1 - cos and 1 + cos of the cap angle.
double cap_fraction_split(int d, double one_minus, double one_plus)
{
    if (one_minus == 0) {
        return 0;
    }
    if (one_plus == 0) {
        return 1;
    }
    if (d == 1) {
        return 0.5;
    }
    const double sin2 = std::min(1.0, one_minus * one_plus);
    const double half_cap = 0.5 * regularized_incomplete_beta(0.5 * (d - 1), 0.5, sin2);
    return one_minus <= 1 ? half_cap : 1 - half_cap;
}

// Partially covered shells |r - t| < s < r + t for one segment (d >= 2).
double partial_shell_mass(int d, double t, double r, const PowerSegment &seg, double p, double rel_tol)
{
    const double lo = std::max(seg.lo, std::abs(r - t));
    const double hi = std::min(seg.hi, r + t);
    if (!(hi > lo) || seg.coeff == 0) {
        return 0;
    }
    const double power = d - 1 - p * seg.exponent;
    if (lo == 0 && power <= -1) {
        return infinity;
    }
    const double omega = dimension_constants(d).sphere_area;
    const double scale = omega * std::pow(seg.coeff, p);

    // The window [lo, hi] sits inside [a, b], the radii where the sphere of
    // radius s crosses the ball. Integrating over w in [-1, 1] with Boost's
    // endpoint complement keeps s - a and b - s exact even for windows far
    // narrower than s, where the plain cosine and the quadrature error
    // estimate both lose all precision.
    const double a = std::abs(r - t);
    const double b = r + t;
    const double width = hi - lo;
    const double gap_lo = lo - a;
    const double gap_hi = b - hi;
    const bool inside = r < t;
    auto integrand = [&](double w, double wc) {
        const double from_lo = w < 0 ? -wc : 2 - wc;
        const double from_hi = w < 0 ? 2 + wc : wc;
        const double dist_lo = 0.5 * width * from_lo;
        const double dist_hi = 0.5 * width * from_hi;
        const double s = from_lo <= from_hi ? lo + dist_lo : hi - dist_hi;
        const double s_minus_a = gap_lo + dist_lo;
        const double b_minus_s = gap_hi + dist_hi;
        const double denom = 2 * t * s;
        const double one_minus = (inside ? b_minus_s * s_minus_a : b_minus_s * (s + a)) / denom;
        const double one_plus = (inside ? (s + a) * (s + b) : s_minus_a * (s + b)) / denom;
        return std::pow(s, power) * cap_fraction_split(d, one_minus, one_plus);
    };
    double error = 0;
    double l1 = 0;
    const double value = 0.5 * width * quadrature_engine().integrate(integrand, -1.0, 1.0, rel_tol, &error, &l1);
    error *= 0.5 * width;
    l1 *= 0.5 * width;
    if (!std::isfinite(value) || error > 1e3 * rel_tol * std::max(l1, 1e-300)) {
        throw quadrature_error("off-center quadrature did not converge on [" + std::to_string(lo) + ", "
                               + std::to_string(hi) + "]");
    }
    return scale * value;
}

} // namespace

double unit_ball_volume(int d)
{
    check_dimension(d);
    const double half = 0.5 * d;
    return std::pow(std::numbers::pi, half) / std::tgamma(half + 1);
}

DimensionConstants dimension_constants(int d)
{
    const double v = unit_ball_volume(d);
    return {d, v, d * v};
}

double ball_volume(int d, double r)
{
    return unit_ball_volume(d) * std::pow(r, d);
}

double regularized_incomplete_beta(double a, double b, double x)
{
    if (!(a > 0) || !(b > 0)) {
        throw invalid_argument("incomplete beta requires a, b > 0");
    }
    if (!(x >= 0 && x <= 1)) {
        throw invalid_argument("incomplete beta requires x in [0, 1]");
    }
    if (x == 0 || x == 1) {
        return x;
    }
    const double log_front
        = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1) / (a + b + 2)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1 - front * beta_continued_fraction(b, a, 1 - x) / b;
}

double cap_fraction(int d, double cos_theta)
{
    check_dimension(d);
    constexpr double slack = 1e-12;
    if (!(cos_theta >= -1 - slack && cos_theta <= 1 + slack)) {
        throw invalid_argument("cos_theta outside [-1, 1]: " + std::to_string(cos_theta));
    }
    const double c = std::clamp(cos_theta, -1.0, 1.0);
    return cap_fraction_split(d, 1 - c, 1 + c);
}

double shell_in_ball_fraction(int d, double t, double r, double s)
{
    check_dimension(d);
    if (!std::isfinite(t) || !std::isfinite(r) || !std::isfinite(s) || t < 0 || !(r > 0) || !(s > 0)) {
        throw invalid_argument("shell_in_ball_fraction requires finite t >= 0, r > 0, s > 0");
    }
    if (s >= r + t) {
        return 0;
    }
    if (s <= r - t) {
        return 1;
    }
    // 1 - cos and 1 + cos in factored form: the plain cosine rounds to 1 for
    // balls much smaller than their distance from the origin.
    const double one_minus = (r - s + t) * (r + s - t) / (2 * t * s);
    const double one_plus = (s + t - r) * (s + t + r) / (2 * t * s);
    return cap_fraction_split(d, std::clamp(one_minus, 0.0, 2.0), std::clamp(one_plus, 0.0, 2.0));
}

double offcenter_mass(int d, double t, double r, const RadialProfile &profile, double p, double rel_tol)
{
    check_dimension(d);
    if (!(t >= 0) || !(r > 0) || !std::isfinite(t) || !std::isfinite(r)) {
        throw invalid_argument("offcenter_mass requires finite t >= 0 and r > 0");
    }
    if (d == 1) {
        // (t - r, t + r) seen from the positive half-line, plus the reflected
        // part that crosses the origin; shell masses count both signs.
        const double right = shell_mass(1, profile, p, std::max(0.0, t - r), t + r);
        const double left = r > t ? shell_mass(1, profile, p, 0, r - t) : 0.0;
        return 0.5 * (right + left);
    }

    double total = r > t ? shell_mass(d, profile, p, 0, r - t) : 0.0;
    if (std::isinf(total) || t == 0) {
        return total;
    }
    const auto segments = profile.segments();
    const double lo = std::abs(r - t);
    const double hi = r + t;
    auto first = std::upper_bound(segments.begin(), segments.end(), lo,
                                  [](double s, const PowerSegment &seg) { return s < seg.hi; });
    for (auto it = first; it != segments.end() && it->lo < hi; ++it) {
        total += partial_shell_mass(d, t, r, *it, p, rel_tol);
        if (std::isinf(total)) {
            return total;
        }
    }
    return total;
}

} // namespace morrey
