#ifndef MORREY_RADIAL_HPP
#define MORREY_RADIAL_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace morrey
{

inline constexpr double infinity = std::numeric_limits<double>::infinity();

// Upper bound on the number of segments in a single profile.
inline constexpr std::size_t max_segments = 10'000'000;

// |d - p*beta| below this threshold selects the logarithmic antiderivative.
inline constexpr double log_case_threshold = 1e-12;

// coeff * s^(-exponent) on [lo, hi).
struct PowerSegment {
    double lo = 0;
    double hi = infinity;
    double coeff = 1;
    double exponent = 0;

    [[nodiscard]] double value_at(double s) const;
    [[nodiscard]] bool is_step() const
    {
        return exponent == 0;
    }
};

struct RadiusInterval {
    double lo;
    double hi;
};

// Finite union of disjoint radius intervals [lo, hi), sorted by lo.
class AnnularSet
{
public:
    AnnularSet() = default;
    explicit AnnularSet(std::vector<RadiusInterval> intervals);

    [[nodiscard]] std::span<const RadiusInterval> intervals() const
    {
        return m_intervals;
    }
    [[nodiscard]] bool empty() const
    {
        return m_intervals.empty();
    }
    [[nodiscard]] bool contains(double s) const;
    // v_d * sum(hi^d - lo^d); +inf for unbounded sets.
    [[nodiscard]] double measure(int d) const;

private:
    std::vector<RadiusInterval> m_intervals;
};

// Nonnegative radial function on R^d stored as ordered power segments; zero
// off the union of the segments.
//
// A profile may carry a faithful radius R: it then stands for an infinite
// construction that was truncated, and only balls inside B(0, R) see the
// same function as the untruncated one. Norm routines restrict their
// searches to that region.
class RadialProfile
{
public:
    RadialProfile() = default;
    explicit RadialProfile(std::vector<PowerSegment> segments, double faithful_radius = infinity);

    [[nodiscard]] std::span<const PowerSegment> segments() const
    {
        return m_segments;
    }
    [[nodiscard]] std::size_t size() const
    {
        return m_segments.size();
    }
    [[nodiscard]] double faithful_radius() const
    {
        return m_faithful_radius;
    }
    [[nodiscard]] bool truncated() const
    {
        return m_faithful_radius < infinity;
    }

    // No segment with a positive coefficient.
    [[nodiscard]] bool is_zero() const;
    // Piecewise constant.
    [[nodiscard]] bool is_step() const;
    // Takes values in {0, c} for a single c > 0.
    [[nodiscard]] bool is_indicator() const;
    // sup of the function, +inf when unbounded.
    [[nodiscard]] double sup_value() const;

    // Sorted finite positive segment endpoints, duplicates removed.
    [[nodiscard]] std::vector<double> knots() const;

    // Index of the segment covering s, or -1.
    [[nodiscard]] std::ptrdiff_t find_segment(double s) const;

private:
    std::vector<PowerSegment> m_segments;
    double m_faithful_radius = infinity;
};

double evaluate(const RadialProfile &profile, double s);

// Segment-wise (coeff^p, p * exponent).
RadialProfile power_map(const RadialProfile &profile, double p);

// s -> f(s / lambda).
RadialProfile dilate(const RadialProfile &profile, double lambda);

// Indicator (times value) of an annular set.
RadialProfile indicator(const AnnularSet &set, double value = 1, double faithful_radius = infinity);

// {s : f(s) > gamma}. With inclusive = true the set {f >= gamma} is returned
// instead; the two differ only on the flat parts of step segments.
AnnularSet superlevel_set(const RadialProfile &profile, double gamma, bool inclusive = false);

// omega_{d-1} * int_a^b coeff^p s^(d-1-p*exponent) ds, with [a, b] clipped to
// the segment. +inf is a value: it signals a non-integrable core or tail.
double segment_mass(int d, const PowerSegment &segment, double a, double b, double p);

// Integral of |f|^p over the shell a <= |y| < b.
double shell_mass(int d, const RadialProfile &profile, double p, double a, double b);

// Integral of |f|^p over B(0, r).
double centered_mass(int d, const RadialProfile &profile, double p, double r);

// Prefix table of full-segment masses so that centered masses cost a binary
// search instead of a linear pass.
class CumulativeMass
{
public:
    CumulativeMass(int d, const RadialProfile &profile, double p);

    [[nodiscard]] double operator()(double r) const;
    // Mass of the whole profile (possibly +inf).
    [[nodiscard]] double total() const;

private:
    int m_d;
    double m_p;
    RadialProfile m_profile;
    // m_prefix[i] is the mass of segments [0, i).
    std::vector<double> m_prefix;
};

} // namespace morrey

#endif
