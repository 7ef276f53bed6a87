#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

#include "support.hpp"
#include <morrey/constructions.hpp>
#include <morrey/errors.hpp>
#include <morrey/geometry.hpp>
#include <morrey/radial.hpp>

using namespace morrey;
using morrey::test::rel_err;

namespace
{

RadialProfile annular_witness_d1()
{
    return theorem13_function(make_theorem13_spec(1, 1, 1.5, 2, 16));
}

// Random profile whose pieces all have finite mass on every bounded shell.
RadialProfile random_integrable(std::mt19937_64 &rng, int d)
{
    std::uniform_real_distribution<double> unit(0, 1);
    std::vector<PowerSegment> segs;
    double lo = unit(rng) < 0.5 ? 0.0 : 0.05 + unit(rng);
    const int n = 1 + static_cast<int>(4 * unit(rng));
    for (int i = 0; i < n; ++i) {
        const double hi = lo + 0.1 + 3 * unit(rng);
        const double exponent = lo == 0 ? -1 + (1 + 0.4 * d) * unit(rng) : -2 + 4 * unit(rng);
        segs.push_back({lo, hi, 0.2 + 3 * unit(rng), exponent});
        lo = hi + (unit(rng) < 0.5 ? 0.0 : unit(rng));
    }
    return RadialProfile(std::move(segs));
}

} // namespace

TEST_CASE("profile validation")
{
    CHECK_THROWS_AS(RadialProfile({{1, 1, 1, 0}}), invalid_argument);
    CHECK_THROWS_AS(RadialProfile({{-1, 1, 1, 0}}), invalid_argument);
    CHECK_THROWS_AS(RadialProfile({{0, 1, -1, 0}}), invalid_argument);
    CHECK_THROWS_AS(RadialProfile({{0, 2, 1, 0}, {1, 3, 1, 0}}), invalid_argument);
    CHECK_THROWS_AS(RadialProfile({{2, 3, 1, 0}, {0, 1, 1, 0}}), invalid_argument);
    CHECK_THROWS_AS(RadialProfile({{0, 1, 1, 0}}, 0), invalid_argument);
    CHECK_NOTHROW(RadialProfile({{0, 1, 1, 0}, {1, infinity, 2, 0.5}}));
    CHECK_NOTHROW(RadialProfile(std::vector<PowerSegment>{}));
    CHECK_THROWS_AS(make_theorem13_spec(1, 1, 1.5, 2, 20'000'000), resource_guard_error);
}

TEST_CASE("evaluate examples")
{
    const auto power = power_function(1, 2);
    CHECK(evaluate(power, 4) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(evaluate(annular_witness_d1(), 0.5) == 1);
    CHECK(evaluate(annular_witness_d1(), 1.95) == 0);
    CHECK(evaluate(RadialProfile({{1, 2, 1, 0}}), 3) == 0);
    CHECK_THROWS_AS(evaluate(power, 0), invalid_argument);
}

TEST_CASE("power map examples")
{
    const auto power = power_function(1, 2);
    const auto same = power_map(power, 1);
    CHECK(same.segments()[0].exponent == 0.5);
    CHECK(same.segments()[0].coeff == 1);
    const auto squared = power_map(power, 2);
    CHECK(squared.segments()[0].exponent == 1);
    const auto chi = power_map(annular_witness_d1(), 3.7);
    CHECK(chi.is_indicator());
    CHECK(chi.knots() == annular_witness_d1().knots());
    CHECK_THROWS_AS(power_map(power, 0.5), invalid_argument);
}

TEST_CASE("superlevel set examples")
{
    const auto f = annular_witness_d1();
    const auto level = superlevel_set(f, 0.5);
    double support = 0;
    for (const auto &s : f.segments()) {
        support += s.hi - s.lo;
    }
    CHECK(level.measure(1) == doctest::Approx(2 * support).epsilon(1e-14));
    CHECK(superlevel_set(f, 1).empty());
    CHECK(superlevel_set(f, 7).empty());

    const auto power_level = superlevel_set(power_function(1, 2), 2);
    REQUIRE(power_level.intervals().size() == 1);
    CHECK(power_level.intervals()[0].lo == 0);
    CHECK(power_level.intervals()[0].hi == doctest::Approx(0.25).epsilon(1e-15));
    // Dense sampling oracle.
    for (int i = 1; i < 1000; ++i) {
        const double s = i * 1e-3;
        CHECK(power_level.contains(s) == (evaluate(power_function(1, 2), s) > 2));
    }
    CHECK_THROWS_AS(superlevel_set(f, 0), invalid_argument);
}

TEST_CASE("superlevel measure is nonincreasing in the level")
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_integrable(rng, 2);
        double previous = infinity;
        for (double g = 0.01; g < 50; g *= 1.3) {
            const double m = superlevel_set(f, g).measure(2);
            CHECK(m <= previous * (1 + 1e-14));
            previous = m;
        }
    }
}

TEST_CASE("segment mass examples")
{
    const PowerSegment one{0, infinity, 1, 0};
    CHECK(segment_mass(1, one, 0, 3, 1) == doctest::Approx(6).epsilon(1e-15));
    const PowerSegment half{0, infinity, 1, 0.5};
    CHECK(segment_mass(1, half, 0, 9, 1) == doctest::Approx(12).epsilon(1e-14));
    CHECK(std::isinf(segment_mass(1, half, 0, 1, 2)));
    // Log case: d = p beta.
    CHECK(segment_mass(1, half, 1, std::exp(1.0), 2) == doctest::Approx(2).epsilon(1e-14));
    CHECK(std::isinf(segment_mass(1, half, 1, infinity, 2)));
    CHECK(segment_mass(2, {0, infinity, 1, 3}, 1, infinity, 1) == doctest::Approx(2 * std::acos(-1.0)).epsilon(1e-14));
    CHECK(segment_mass(1, {0, 1, 0, 5}, 0, 1, 1) == 0);
    CHECK_THROWS_AS(segment_mass(1, one, 2, 1, 1), invalid_argument);
}

TEST_CASE("segment mass is additive over random splits")
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unit(0, 1);
    for (int i = 0; i < 300; ++i) {
        const int d = 1 + static_cast<int>(3 * unit(rng));
        const PowerSegment seg{0, infinity, 0.1 + 3 * unit(rng), -2 + 4 * unit(rng)};
        const double p = 1 + 2 * unit(rng);
        const double a = 0.1 + 5 * unit(rng);
        const double b = a + 5 * unit(rng);
        const double c = b + 5 * unit(rng);
        const double whole = segment_mass(d, seg, a, c, p);
        CHECK(rel_err(segment_mass(d, seg, a, b, p) + segment_mass(d, seg, b, c, p), whole) < 1e-12);
    }
}

TEST_CASE("closed-form masses agree with Gauss-Kronrod quadrature")
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> unit(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + static_cast<int>(3 * unit(rng));
        const auto f = random_integrable(rng, d);
        const double p = 1 + unit(rng);
        const double r = 0.2 + 8 * unit(rng);
        // Integrate piecewise so the quadrature never straddles a knot; the
        // substitution s = u^2 tames integrable cores at the origin.
        const double omega = dimension_constants(d).sphere_area;
        double quad = 0;
        bool core_finite = true;
        for (const auto &s : f.segments()) {
            const double lo = std::min(s.lo, r);
            const double hi = std::min(s.hi, r);
            if (!(hi > lo)) {
                continue;
            }
            if (lo == 0 && d - p * s.exponent <= 0) {
                core_finite = false;
                break;
            }
            auto g = [&](double u) {
                const double x = u * u;
                return 2 * u * omega * std::pow(x, d - 1) * std::pow(s.value_at(x), p);
            };
            quad += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, std::sqrt(lo), std::sqrt(hi), 20,
                                                                                 1e-13);
        }
        const double closed = centered_mass(d, f, p, r);
        if (!core_finite) {
            CHECK(std::isinf(closed));
            continue;
        }
        CHECK(rel_err(closed, quad) < 1e-8);
    }
}

TEST_CASE("centered mass examples")
{
    for (int d = 1; d <= 3; ++d) {
        const auto f = theorem13_function(make_theorem13_spec(d, 1, 1.5, 2, 4));
        CHECK(centered_mass(d, f, 1, 1) == doctest::Approx(unit_ball_volume(d)).epsilon(1e-14));
        CHECK(centered_mass(d, f, 1, 0.3) == doctest::Approx(ball_volume(d, 0.3)).epsilon(1e-14));
    }
    const auto spec = make_theorem13_spec(1, 1, 1.5, 2, 1);
    const double r1 = spec.matched_radii[0];
    CHECK(centered_mass(1, theorem13_function(spec), 1, r1) == doctest::Approx(2 * (1 + (r1 - 1))).epsilon(1e-14));
    // Rounded reference value.
    CHECK(std::abs(centered_mass(1, theorem13_function(spec), 1, r1) - 3.583146) < 1e-5);
    CHECK_THROWS_AS(centered_mass(1, theorem13_function(spec), 1, 0), invalid_argument);
}

TEST_CASE("centered mass is nondecreasing and continuous at knots")
{
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 1 + trial % 3;
        const auto f = random_integrable(rng, d);
        double previous = 0;
        for (double r = 0.01; r < 20; r *= 1.05) {
            const double m = centered_mass(d, f, 1.5, r);
            CHECK(m >= previous * (1 - 1e-15));
            previous = m;
        }
        for (const double k : f.knots()) {
            const double left = centered_mass(d, f, 1.5, std::nextafter(k, 0.0));
            const double right = centered_mass(d, f, 1.5, std::nextafter(k, infinity));
            if (std::isfinite(left)) {
                CHECK(std::abs(left - right) <= 1e-12 * (1 + right));
            }
        }
    }
}

TEST_CASE("power map then unit exponent equals the direct p-mass")
{
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> unit(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 1 + trial % 3;
        const auto f = random_integrable(rng, d);
        const double p = 1 + 2 * unit(rng);
        const double r = 0.1 + 10 * unit(rng);
        const double direct = centered_mass(d, f, p, r);
        const double mapped = centered_mass(d, power_map(f, p), 1, r);
        if (std::isinf(direct)) {
            CHECK(std::isinf(mapped));
        } else {
            CHECK(rel_err(mapped, direct) < 1e-14);
        }
    }
}

TEST_CASE("cumulative mass table matches the direct sum")
{
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 1 + trial % 3;
        const auto f = random_integrable(rng, d);
        const CumulativeMass table(d, f, 1.3);
        for (double r = 0.02; r < 30; r *= 1.17) {
            const double direct = centered_mass(d, f, 1.3, r);
            if (std::isinf(direct)) {
                CHECK(std::isinf(table(r)));
            } else {
                CHECK(rel_err(table(r), direct) < 1e-12);
            }
        }
    }
}

TEST_CASE("dilation rescales radii, coefficients and the faithful radius")
{
    const RadialProfile f({{0, 1, 2, 0.5}, {2, 3, 1, 0}}, 10);
    const auto g = dilate(f, 3);
    CHECK(g.faithful_radius() == 30);
    for (double s = 0.1; s < 12; s += 0.37) {
        CHECK(evaluate(g, 3 * s) == doctest::Approx(evaluate(f, s)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(dilate(f, 0), invalid_argument);
}

TEST_CASE("indicator of an annular set")
{
    const AnnularSet set({{0, 1}, {2, 3}});
    const auto chi = indicator(set, 2.5);
    CHECK(chi.is_step());
    CHECK(evaluate(chi, 2.5) == 2.5);
    CHECK(evaluate(chi, 1.5) == 0);
    CHECK(set.measure(1) == doctest::Approx(4).epsilon(1e-15));
    CHECK_THROWS_AS(AnnularSet({{1, 2}, {1.5, 3}}), invalid_argument);
}
