#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>
#include <utility>

#include <morrey/errors.hpp>
#include <morrey/geometry.hpp>
#include <morrey/radial.hpp>

namespace morrey
{

namespace
{

std::string describe(const PowerSegment &seg)
{
    return "[" + std::to_string(seg.lo) + ", " + std::to_string(seg.hi) + ") coeff " + std::to_string(seg.coeff)
           + " exponent " + std::to_string(seg.exponent);
}

} // namespace

double PowerSegment::value_at(double s) const
{
    if (exponent == 0) {
        return coeff;
    }
    return coeff * std::pow(s, -exponent);
}

AnnularSet::AnnularSet(std::vector<RadiusInterval> intervals) : m_intervals(std::move(intervals))
{
    for (std::size_t i = 0; i < m_intervals.size(); ++i) {
        const auto &iv = m_intervals[i];
        if (!(iv.lo >= 0) || !(iv.hi > iv.lo) || std::isinf(iv.lo)) {
            throw invalid_argument("annular interval must satisfy 0 <= lo < hi");
        }
        if (i > 0 && m_intervals[i - 1].hi > iv.lo) {
            throw invalid_argument("annular intervals must be sorted and disjoint");
        }
    }
}

bool AnnularSet::contains(double s) const
{
    auto it = std::upper_bound(m_intervals.begin(), m_intervals.end(), s,
                               [](double x, const RadiusInterval &iv) { return x < iv.lo; });
    if (it == m_intervals.begin()) {
        return false;
    }
    return s < std::prev(it)->hi;
}

double AnnularSet::measure(int d) const
{
    double sum = 0;
    for (const auto &iv : m_intervals) {
        if (std::isinf(iv.hi)) {
            return infinity;
        }
        sum += std::pow(iv.hi, d) - std::pow(iv.lo, d);
    }
    return unit_ball_volume(d) * sum;
}

RadialProfile::RadialProfile(std::vector<PowerSegment> segments, double faithful_radius)
    : m_segments(std::move(segments)), m_faithful_radius(faithful_radius)
{
    if (m_segments.size() > max_segments) {
        throw resource_guard_error("profile has " + std::to_string(m_segments.size()) + " segments, limit is "
                                   + std::to_string(max_segments));
    }
    if (!(faithful_radius > 0)) {
        throw invalid_argument("faithful radius must be positive");
    }
    for (std::size_t i = 0; i < m_segments.size(); ++i) {
        const auto &seg = m_segments[i];
        if (!(seg.lo >= 0) || std::isinf(seg.lo) || !(seg.hi > seg.lo)) {
            throw invalid_argument("segment needs 0 <= lo < hi: " + describe(seg));
        }
        if (!(seg.coeff >= 0) || !std::isfinite(seg.coeff) || !std::isfinite(seg.exponent)) {
            throw invalid_argument("segment needs a finite coeff >= 0 and a finite exponent: " + describe(seg));
        }
        if (i > 0 && m_segments[i - 1].hi > seg.lo) {
            throw invalid_argument("segments must be sorted and non-overlapping at " + describe(seg));
        }
    }
}

bool RadialProfile::is_zero() const
{
    return std::ranges::all_of(m_segments, [](const PowerSegment &s) { return s.coeff == 0; });
}

bool RadialProfile::is_step() const
{
    return std::ranges::all_of(m_segments, [](const PowerSegment &s) { return s.coeff == 0 || s.exponent == 0; });
}

bool RadialProfile::is_indicator() const
{
    double level = 0;
    for (const auto &s : m_segments) {
        if (s.coeff == 0) {
            continue;
        }
        if (s.exponent != 0 || (level != 0 && s.coeff != level)) {
            return false;
        }
        level = s.coeff;
    }
    return level > 0;
}

double RadialProfile::sup_value() const
{
    double best = 0;
    for (const auto &s : m_segments) {
        if (s.coeff == 0) {
            continue;
        }
        double v = s.coeff;
        if (s.exponent > 0) {
            v = s.lo == 0 ? infinity : s.value_at(s.lo);
        } else if (s.exponent < 0) {
            v = std::isinf(s.hi) ? infinity : s.value_at(s.hi);
        }
        best = std::max(best, v);
    }
    return best;
}

std::vector<double> RadialProfile::knots() const
{
    std::vector<double> out;
    out.reserve(2 * m_segments.size());
    for (const auto &s : m_segments) {
        if (s.lo > 0) {
            out.push_back(s.lo);
        }
        if (std::isfinite(s.hi)) {
            out.push_back(s.hi);
        }
    }
    std::ranges::sort(out);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::ptrdiff_t RadialProfile::find_segment(double s) const
{
    auto it = std::upper_bound(m_segments.begin(), m_segments.end(), s,
                               [](double x, const PowerSegment &seg) { return x < seg.lo; });
    if (it == m_segments.begin()) {
        return -1;
    }
    --it;
    if (s < it->hi) {
        return it - m_segments.begin();
    }
    return -1;
}

double evaluate(const RadialProfile &profile, double s)
{
    if (!(s > 0)) {
        throw invalid_argument("evaluate requires s > 0");
    }
    const auto idx = profile.find_segment(s);
    return idx < 0 ? 0.0 : profile.segments()[static_cast<std::size_t>(idx)].value_at(s);
}

RadialProfile power_map(const RadialProfile &profile, double p)
{
    if (!(p >= 1) || !std::isfinite(p)) {
        throw invalid_argument("power_map requires p >= 1");
    }
    std::vector<PowerSegment> out(profile.segments().begin(), profile.segments().end());
    for (auto &s : out) {
        s.coeff = std::pow(s.coeff, p);
        s.exponent *= p;
    }
    return RadialProfile(std::move(out), profile.faithful_radius());
}

RadialProfile dilate(const RadialProfile &profile, double lambda)
{
    if (!(lambda > 0) || !std::isfinite(lambda)) {
        throw invalid_argument("dilation factor must be positive and finite");
    }
    std::vector<PowerSegment> out(profile.segments().begin(), profile.segments().end());
    for (auto &s : out) {
        s.lo *= lambda;
        s.hi *= lambda;
        if (s.exponent != 0) {
            s.coeff *= std::pow(lambda, s.exponent);
        }
    }
    return RadialProfile(std::move(out), profile.faithful_radius() * lambda);
}

RadialProfile indicator(const AnnularSet &set, double value, double faithful_radius)
{
    if (!(value >= 0) || !std::isfinite(value)) {
        throw invalid_argument("indicator value must be finite and nonnegative");
    }
    std::vector<PowerSegment> segs;
    segs.reserve(set.intervals().size());
    for (const auto &iv : set.intervals()) {
        segs.push_back({iv.lo, iv.hi, value, 0});
    }
    return RadialProfile(std::move(segs), faithful_radius);
}

AnnularSet superlevel_set(const RadialProfile &profile, double gamma, bool inclusive)
{
    if (!(gamma > 0)) {
        throw invalid_argument("superlevel_set requires gamma > 0");
    }
    std::vector<RadiusInterval> out;
    auto push = [&](double lo, double hi) {
        if (!(hi > lo)) {
            return;
        }
        if (!out.empty() && out.back().hi >= lo) {
            out.back().hi = std::max(out.back().hi, hi);
        } else {
            out.push_back({lo, hi});
        }
    };
    for (const auto &s : profile.segments()) {
        if (s.coeff == 0) {
            continue;
        }
        if (s.exponent == 0) {
            if (s.coeff > gamma || (inclusive && s.coeff == gamma)) {
                push(s.lo, s.hi);
            }
            continue;
        }
        // c s^-beta = gamma at s = (c / gamma)^(1 / beta).
        const double crossing = std::exp(std::log(s.coeff / gamma) / s.exponent);
        if (s.exponent > 0) {
            push(s.lo, std::min(s.hi, crossing));
        } else {
            push(std::max(s.lo, crossing), s.hi);
        }
    }
    return AnnularSet(std::move(out));
}

double segment_mass(int d, const PowerSegment &segment, double a, double b, double p)
{
    if (!(a >= 0) || !(b >= a)) {
        throw invalid_argument("segment_mass requires 0 <= a <= b");
    }
    const double lo = std::max(a, segment.lo);
    const double hi = std::min(b, segment.hi);
    if (!(hi > lo) || segment.coeff == 0) {
        return 0;
    }
    const double omega = dimension_constants(d).sphere_area;
    const double scale = omega * std::pow(segment.coeff, p);
    const double e = d - p * segment.exponent;

    if (std::abs(e) < log_case_threshold) {
        if (lo == 0 || std::isinf(hi)) {
            return infinity;
        }
        return scale * std::log(hi / lo);
    }
    if (lo == 0) {
        if (e < 0 || std::isinf(hi)) {
            return infinity;
        }
        return scale * std::pow(hi, e) / e;
    }
    if (std::isinf(hi)) {
        if (e > 0) {
            return infinity;
        }
        return scale * std::pow(lo, e) / -e;
    }
    // lo^e (exp(e log(hi/lo)) - 1) / e, free of cancellation for small e.
    return scale * std::pow(lo, e) * std::expm1(e * std::log(hi / lo)) / e;
}

double shell_mass(int d, const RadialProfile &profile, double p, double a, double b)
{
    if (!(a >= 0) || !(b >= a)) {
        throw invalid_argument("shell_mass requires 0 <= a <= b");
    }
    const auto segs = profile.segments();
    auto it = std::upper_bound(segs.begin(), segs.end(), a, [](double s, const PowerSegment &seg) { return s < seg.hi; });
    double total = 0;
    for (; it != segs.end() && it->lo < b; ++it) {
        total += segment_mass(d, *it, a, b, p);
        if (std::isinf(total)) {
            return total;
        }
    }
    return total;
}

double centered_mass(int d, const RadialProfile &profile, double p, double r)
{
    if (!(r > 0)) {
        throw invalid_argument("centered_mass requires r > 0");
    }
    return shell_mass(d, profile, p, 0, r);
}

CumulativeMass::CumulativeMass(int d, const RadialProfile &profile, double p) : m_d(d), m_p(p), m_profile(profile)
{
    const auto segs = m_profile.segments();
    m_prefix.resize(segs.size() + 1, 0.0);
    for (std::size_t i = 0; i < segs.size(); ++i) {
        m_prefix[i + 1] = m_prefix[i] + segment_mass(d, segs[i], segs[i].lo, segs[i].hi, p);
    }
}

double CumulativeMass::operator()(double r) const
{
    if (!(r > 0)) {
        return 0;
    }
    const auto segs = m_profile.segments();
    auto it = std::upper_bound(segs.begin(), segs.end(), r, [](double x, const PowerSegment &seg) { return x < seg.lo; });
    if (it == segs.begin()) {
        return 0;
    }
    const auto idx = static_cast<std::size_t>(std::prev(it) - segs.begin());
    if (std::isinf(m_prefix[idx])) {
        return infinity;
    }
    return m_prefix[idx] + segment_mass(m_d, segs[idx], segs[idx].lo, std::min(r, segs[idx].hi), m_p);
}

double CumulativeMass::total() const
{
    return m_prefix.back();
}

} // namespace morrey
