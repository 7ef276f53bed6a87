#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>
#include <utility>

#include <morrey/constructions.hpp>
#include <morrey/errors.hpp>

namespace morrey
{

Theorem13Spec make_theorem13_spec(int d, double p1, double p2, double q, int K)
{
    if (d < 1) {
        throw invalid_argument("dimension must be positive");
    }
    if (!(p1 >= 1) || !(p1 < p2) || !(p2 < q) || !std::isfinite(q)) {
        throw invalid_argument("counterexample needs 1 <= p1 < p2 < q < inf");
    }
    if (K < 1) {
        throw invalid_argument("counterexample needs K >= 1 annuli");
    }
    if (static_cast<std::size_t>(K) + 1 > max_segments) {
        throw resource_guard_error("K = " + std::to_string(K) + " exceeds the segment budget");
    }
    Theorem13Spec spec{d, p1, p2, q, d * (p1 + p2) / (2 * q), K, {}};
    spec.matched_radii = matched_radii(d, spec.beta, K);
    return spec;
}

RadialProfile power_function(int d, double q)
{
    if (d < 1 || !(q >= 1)) {
        throw invalid_argument("power_function needs d >= 1 and q >= 1");
    }
    return RadialProfile({{0, infinity, 1, d / q}});
}

RadialProfile bounding_profile_g(int d, double beta)
{
    if (!(beta > 0) || !(beta < d)) {
        throw invalid_argument("bounding profile needs 0 < beta < d");
    }
    return RadialProfile({{0, 1, 1, 0}, {1, infinity, 1, beta}});
}

std::vector<double> matched_radius_offsets(int d, double beta, int K)
{
    if (!(beta > 0) || !(beta < d)) {
        throw invalid_argument("matched radii need 0 < beta < d");
    }
    // v_d (r^d - k^d) = omega_{d-1} ((k+1)^e - k^e) / e with e = d - beta and
    // omega_{d-1} = d v_d; solved for r - k without cancellation.
    using real = long double;
    const real e = static_cast<real>(d) - beta;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max(K, 0)));
    for (int k = 1; k <= K; ++k) {
        const real kk = k;
        const real growth = std::pow(kk, e) * std::expm1(e * std::log1p(1 / kk));
        const real rel = d * growth / (e * std::pow(kk, static_cast<real>(d)));
        out.push_back(static_cast<double>(kk * std::expm1(std::log1p(rel) / d)));
    }
    return out;
}

std::vector<double> matched_radii(int d, double beta, int K)
{
    auto out = matched_radius_offsets(d, beta, K);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += static_cast<double>(i + 1);
    }
    return out;
}

RadialProfile theorem13_function(const Theorem13Spec &spec)
{
    std::vector<PowerSegment> segs;
    segs.reserve(spec.matched_radii.size() + 1);
    segs.push_back({0, 1, 1, 0});
    for (std::size_t k = 0; k < spec.matched_radii.size(); ++k) {
        segs.push_back({static_cast<double>(k + 1), spec.matched_radii[k], 1, 0});
    }
    return RadialProfile(std::move(segs), 0.5 * spec.K);
}

RadialProfile section4_function(int d, double q, double epsilon, int K)
{
    if (d < 1 || !(q >= 1) || K < 1) {
        throw invalid_argument("section4_function needs d >= 1, q >= 1, K >= 1");
    }
    if (static_cast<std::size_t>(K) + 1 > max_segments) {
        throw resource_guard_error("K = " + std::to_string(K) + " exceeds the segment budget");
    }
    if (!(epsilon > 0) || !(epsilon < d / q)) {
        std::cerr << "warning: epsilon = " << epsilon << " lies outside (0, d/q) = (0, " << d / q << ")\n";
    }
    std::vector<PowerSegment> segs;
    segs.reserve(static_cast<std::size_t>(K) + 1);
    segs.push_back({0, 1, 1, 0});
    for (int j = 1; j <= K; ++j) {
        const double lo = j;
        segs.push_back({lo, lo + std::pow(lo, -epsilon), 1, 0});
    }
    return RadialProfile(std::move(segs));
}

RadialProfile maximal_probe_family(int N)
{
    if (N < 1) {
        throw invalid_argument("probe family needs N >= 1");
    }
    if (static_cast<std::size_t>(N) > max_segments) {
        throw resource_guard_error("N = " + std::to_string(N) + " exceeds the segment budget");
    }
    std::vector<PowerSegment> segs;
    segs.reserve(static_cast<std::size_t>(N));
    for (int j = 1; j <= N; ++j) {
        const double lo = static_cast<double>(j) * j;
        segs.push_back({lo, lo + 1, 1, 0});
    }
    return RadialProfile(std::move(segs));
}

RadialProfile ball_indicator(double R, double value)
{
    if (!(R > 0) || std::isinf(R)) {
        throw invalid_argument("ball radius must be positive and finite");
    }
    return RadialProfile({{0, R, value, 0}});
}

} // namespace morrey
