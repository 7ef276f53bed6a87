#ifndef MORREY_TESTS_SUPPORT_HPP
#define MORREY_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <morrey/radial.hpp>

namespace morrey::test
{

inline double rel_err(double a, double b)
{
    if (a == b) {
        return 0;
    }
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

// Uniform point in the ball B(0, 1) of R^d.
inline std::vector<double> uniform_in_ball(std::mt19937_64 &rng, int d)
{
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unit(0, 1);
    std::vector<double> x(static_cast<std::size_t>(d));
    double norm = 0;
    for (auto &v : x) {
        v = gauss(rng);
        norm += v * v;
    }
    norm = std::sqrt(norm);
    const double radius = std::pow(unit(rng), 1.0 / d);
    for (auto &v : x) {
        v *= radius / norm;
    }
    return x;
}

// Uniform point on the unit sphere of R^d.
inline std::vector<double> uniform_on_sphere(std::mt19937_64 &rng, int d)
{
    std::normal_distribution<double> gauss;
    std::vector<double> x(static_cast<std::size_t>(d));
    double norm = 0;
    for (auto &v : x) {
        v = gauss(rng);
        norm += v * v;
    }
    norm = std::sqrt(norm);
    for (auto &v : x) {
        v /= norm;
    }
    return x;
}

// Step profile with n random cells inside [lo, hi], gaps allowed.
inline RadialProfile random_steps(std::mt19937_64 &rng, int n, double lo, double hi)
{
    std::uniform_real_distribution<double> pos(lo, hi);
    std::uniform_real_distribution<double> val(0.1, 3);
    std::vector<double> cuts;
    for (int i = 0; i < 2 * n; ++i) {
        cuts.push_back(pos(rng));
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<PowerSegment> segs;
    for (std::size_t i = 0; i + 1 < cuts.size(); i += 2) {
        segs.push_back({cuts[i], cuts[i + 1], val(rng), 0});
    }
    return RadialProfile(std::move(segs));
}

} // namespace morrey::test

#endif
