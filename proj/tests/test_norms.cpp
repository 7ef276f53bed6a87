#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "support.hpp"
#include <morrey/constructions.hpp>
#include <morrey/errors.hpp>
#include <morrey/geometry.hpp>
#include <morrey/norms.hpp>
#include <morrey/radial.hpp>

using namespace morrey;
using morrey::test::rel_err;

namespace
{

// Nonincreasing profile: decreasing powers glued with downward jumps.
RadialProfile random_nonincreasing(std::mt19937_64 &rng, int d, double q)
{
    std::uniform_real_distribution<double> unit(0, 1);
    std::vector<PowerSegment> segs;
    double lo = 0;
    double top = 1 + 3 * unit(rng);
    const int n = 1 + static_cast<int>(3 * unit(rng));
    for (int i = 0; i < n; ++i) {
        const double hi = lo + 0.2 + 2 * unit(rng);
        // Exponent below d/q keeps the local norm bounded near the origin.
        const double exponent = lo == 0 ? (d / q) * 0.9 * unit(rng) : 2 * unit(rng);
        PowerSegment seg{lo, hi, 1, exponent};
        seg.coeff = lo == 0 ? top : top * std::pow(lo, exponent);
        segs.push_back(seg);
        top = 0.8 * seg.value_at(hi);
        lo = hi;
    }
    return RadialProfile(std::move(segs));
}

double brute_force_interval_norm(double q, const RadialProfile &f)
{
    // Two-sided support points of the even extension.
    std::vector<double> points;
    for (const double k : f.knots()) {
        points.push_back(k);
        points.push_back(-k);
    }
    double best = 0;
    auto mass = [&](double a, double b) {
        double m = 0;
        for (const auto &s : f.segments()) {
            for (const int sign : {1, -1}) {
                const double lo = sign > 0 ? s.lo : -s.hi;
                const double hi = sign > 0 ? s.hi : -s.lo;
                const double overlap = std::min(hi, b) - std::max(lo, a);
                if (overlap > 0) {
                    m += s.coeff * overlap;
                }
            }
        }
        return m;
    };
    for (const double a : points) {
        for (const double b : points) {
            if (b > a) {
                best = std::max(best, std::pow(b - a, 1 / q - 1) * mass(a, b));
            }
        }
    }
    return best;
}

} // namespace

TEST_CASE("space parameters are validated")
{
    CHECK_NOTHROW(SpaceParams(1, 1, 2));
    CHECK_NOTHROW(SpaceParams(3, 2, 2));
    CHECK_THROWS_AS(SpaceParams(0, 1, 2), invalid_argument);
    CHECK_THROWS_AS(SpaceParams(1, 0.5, 2), invalid_argument);
    CHECK_THROWS_AS(SpaceParams(1, 3, 2), invalid_argument);
    CHECK_THROWS_AS(SpaceParams(1, 1, infinity), invalid_argument);
    CHECK_THROWS_AS(SpaceParams(1, std::nan(""), 2), invalid_argument);
}

TEST_CASE("local norm examples")
{
    CHECK(local_norm({2, 1, 3}, ball_indicator(1), 1) == doctest::Approx(std::cbrt(std::numbers::pi)).epsilon(1e-14));
    const auto power = power_function(1, 2);
    for (const double r : {1e-6, 0.01, 1.0, 37.0, 1e6}) {
        CHECK(local_norm({1, 1, 2}, power, r) == doctest::Approx(2 * std::numbers::sqrt2).epsilon(1e-13));
        CHECK(std::isinf(local_norm({1, 2, 2}, power, r)));
    }
    CHECK_THROWS_AS(local_norm({1, 1, 2}, power, 0), invalid_argument);
}

TEST_CASE("local norm evaluator agrees with the direct formula")
{
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        const int d = 1 + trial % 3;
        const SpaceParams params(d, 1.5, 3);
        const auto f = random_nonincreasing(rng, d, 3);
        const LocalNormEvaluator eval(params, f);
        for (double r = 0.01; r < 50; r *= 1.4) {
            CHECK(rel_err(eval(r), local_norm(params, f, r)) < 1e-12);
        }
    }
}

TEST_CASE("centered norm of a ball indicator is |B(0,R)|^(1/q) at r = R")
{
    for (int d = 1; d <= 3; ++d) {
        for (const double R : {0.5, 1.0, 7.0}) {
            const SpaceParams params(d, 1, 2.5);
            const auto v = centered_norm(params, ball_indicator(R));
            REQUIRE(v.is_finite());
            CHECK(v.value == doctest::Approx(std::pow(ball_volume(d, R), 1 / 2.5)).epsilon(1e-12));
            CHECK(v.witness.radius == doctest::Approx(R).epsilon(1e-9));
        }
    }
}

TEST_CASE("centered norm of the power function attains the exact constant")
{
    for (int d = 1; d <= 3; ++d) {
        for (const auto &[p, q] : std::vector<std::pair<double, double>>{{1, 2}, {1.5, 3}, {2, 5}}) {
            const auto dc = dimension_constants(d);
            const double expected =
                std::pow(dc.volume, 1 / q) * std::pow(q * dc.sphere_area / (d * (q - p) * dc.volume), 1 / p);
            const auto v = centered_norm({d, p, q}, power_function(d, q));
            REQUIRE(v.is_finite());
            CHECK(rel_err(v.value, expected) < 1e-8);
            CHECK(rel_err(local_norm({d, p, q}, power_function(d, q), v.witness.radius), v.value) < 1e-12);
        }
    }
}

TEST_CASE("the annular profile leaves M^p2_q with positive growth")
{
    const auto f = theorem13_function(make_theorem13_spec(1, 1, 1.5, 2, 4096));
    const auto v = centered_norm({1, 1.5, 2}, f);
    CHECK_FALSE(v.is_finite());
    CHECK(v.regime == Divergence::large_radius);
    CHECK(v.growth > 0.01);
    const auto bounded = centered_norm({1, 1, 2}, f);
    CHECK(bounded.is_finite());
}

TEST_CASE("centered norm divergence regimes")
{
    const auto core = centered_norm({1, 2, 2}, power_function(1, 2));
    CHECK_FALSE(core.is_finite());
    CHECK(core.regime == Divergence::nonintegrable_core);
    const auto small = centered_norm({1, 1, 2}, RadialProfile({{0, 1, 1, 0.9}}));
    CHECK_FALSE(small.is_finite());
    CHECK(small.regime == Divergence::small_radius);
    const auto large = centered_norm({1, 1, 2}, RadialProfile({{0, infinity, 1, 0}}));
    CHECK_FALSE(large.is_finite());
    CHECK(large.regime == Divergence::large_radius);
    CHECK(large.growth == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("zero profile has zero norm")
{
    const auto v = centered_norm({2, 1, 2}, RadialProfile(std::vector<PowerSegment>{}));
    REQUIRE(v.is_finite());
    CHECK(v.value == 0);
    CHECK(v.witness.radius == 1);
    CHECK(weak_norm({2, 1, 2}, RadialProfile(std::vector<PowerSegment>{})).value == 0);
}

TEST_CASE("weak norm examples")
{
    const auto w = weak_norm({1, 2, 2}, power_function(1, 2));
    REQUIRE(w.is_finite());
    CHECK(w.value == doctest::Approx(std::numbers::sqrt2).epsilon(1e-8));
    // Dense level oracle: gamma * |{|x|^-1/2 > gamma}|^(1/2).
    for (double g = 0.01; g < 100; g *= 1.1) {
        CHECK(g * std::sqrt(2 / (g * g)) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
    }
    const auto f = theorem13_function(make_theorem13_spec(1, 1, 1.5, 2, 64));
    const SpaceParams params(1, 1, 2);
    CHECK(rel_err(weak_norm(params, f).value, centered_norm(params, f).value) < 1e-10);
}

TEST_CASE("weak norm never exceeds the strong norm")
{
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 1 + trial % 3;
        const SpaceParams params(d, 1 + trial % 2 * 0.5, 3);
        const auto f = random_nonincreasing(rng, d, 3);
        const auto strong = centered_norm(params, f);
        const auto weak = weak_norm(params, f);
        REQUIRE(strong.is_finite());
        REQUIRE(weak.is_finite());
        CHECK(weak.value <= strong.value * (1 + 1e-9));
    }
}

TEST_CASE("power identities for strong and weak norms")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0, 1);
    // p / lam >= 1 keeps the mapped space valid.
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 1 + trial % 3;
        const double lam = 1 + unit(rng);
        const double p = lam * (1 + unit(rng));
        const double q = p + lam * (0.5 + unit(rng));
        const auto f = random_nonincreasing(rng, d, q);
        const auto strong = centered_norm({d, p, q}, f);
        const auto strong_mapped = centered_norm({d, p / lam, q / lam}, power_map(f, lam));
        REQUIRE(strong.is_finite());
        CHECK(rel_err(std::pow(strong.value, lam), strong_mapped.value) < 1e-9);
        const auto weak = weak_norm({d, p, q}, f);
        const auto weak_mapped = weak_norm({d, p / lam, q / lam}, power_map(f, lam));
        CHECK(rel_err(std::pow(weak.value, lam), weak_mapped.value) < 1e-6);
    }
}

TEST_CASE("dilation scales the norm by lambda^(d/q)")
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 15; ++trial) {
        const int d = 1 + trial % 3;
        const SpaceParams params(d, 1, 2.5);
        const auto f = random_nonincreasing(rng, d, 2.5);
        const double lam = 0.3 + trial * 0.4;
        const auto v = centered_norm(params, f);
        const auto w = centered_norm(params, dilate(f, lam));
        CHECK(rel_err(w.value, std::pow(lam, d / 2.5) * v.value) < 1e-9);
    }
}

TEST_CASE("local norm is nondecreasing in p")
{
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 15; ++trial) {
        const int d = 1 + trial % 3;
        const auto f = random_nonincreasing(rng, d, 4);
        for (double r = 0.05; r < 20; r *= 1.7) {
            double previous = 0;
            for (const double p : {1.0, 1.5, 2.0, 3.0, 4.0}) {
                const double v = local_norm({d, p, 4}, f, r);
                CHECK(v >= previous * (1 - 1e-12));
                previous = v;
            }
        }
    }
}

TEST_CASE("off-center audit flags only the thin far annulus")
{
    const auto power = offcenter_audit({1, 1, 2}, power_function(1, 2));
    CHECK_FALSE(power.flag);
    CHECK(power.samples >= 1000);
    const auto power2 = offcenter_audit({2, 1, 2}, power_function(2, 2));
    CHECK_FALSE(power2.flag);
    const auto witness = offcenter_audit({1, 1, 2}, theorem13_function(make_theorem13_spec(1, 1, 1.5, 2, 8192)));
    CHECK_FALSE(witness.flag);
    const auto thin = offcenter_audit({1, 1, 2}, RadialProfile({{1000, 1000.01, 1, 0}}));
    CHECK(thin.flag);
    CHECK(thin.max_local > thin.centered_value * (1 + audit_slack));
}

TEST_CASE("exact interval norm examples")
{
    const SpaceParams params(1, 1, 2);
    const auto unit = exact_norm_1d(params, ball_indicator(1));
    CHECK(unit.value == doctest::Approx(std::numbers::sqrt2).epsilon(1e-14));
    CHECK(unit.witness.center == doctest::Approx(0).epsilon(1e-14));
    CHECK(unit.witness.radius == doctest::Approx(1).epsilon(1e-14));
    // A single side of the annulus {1 <= |x| <= 2} gives 1 * 1^(-1/2) = 1, the
    // same as the two-sided centered value 2 * 4^(-1/2).
    const auto annulus = exact_norm_1d(params, RadialProfile({{1, 2, 1, 0}}));
    CHECK(annulus.value == doctest::Approx(1).epsilon(1e-14));
    CHECK(exact_norm_1d(params, RadialProfile(std::vector<PowerSegment>{})).value == 0);
    CHECK_THROWS_AS(exact_norm_1d({2, 1, 2}, ball_indicator(1)), invalid_argument);
    CHECK_THROWS_AS(exact_norm_1d(params, power_function(1, 2)), invalid_argument);
}

TEST_CASE("exact interval norm matches brute force and dominates the centered norm")
{
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 40; ++trial) {
        const double q = 1.5 + trial % 3;
        const SpaceParams params(1, 1, q);
        const auto f = morrey::test::random_steps(rng, 1 + trial % 6, 0.1, 20);
        const auto exact = exact_norm_1d(params, f);
        CHECK(rel_err(exact.value, brute_force_interval_norm(q, f)) < 1e-12);
        CHECK(exact.value >= centered_norm(params, f).value * (1 - 1e-12));
        // The witness reproduces the value.
        const double a = exact.witness.center - exact.witness.radius;
        const double b = exact.witness.center + exact.witness.radius;
        double m = 0;
        for (const auto &s : f.segments()) {
            m += s.coeff * std::max(0.0, std::min(s.hi, b) - std::max(s.lo, a));
            m += s.coeff * std::max(0.0, std::min(-s.lo, b) - std::max(-s.hi, a));
        }
        CHECK(rel_err(std::pow(b - a, 1 / q - 1) * m, exact.value) < 1e-12);
    }
}

TEST_CASE("growth fit")
{
    const auto fit = growth_exponent_fit({1, 1, 2}, power_function(1, 2), 1, 1e4, 32);
    CHECK(std::abs(fit.slope) < 1e-6);
    CHECK(fit.max_residual < 1e-6);
    CHECK_THROWS_AS(growth_exponent_fit({1, 1, 2}, RadialProfile({{5, 6, 1, 0}}), 1, 4, 8), numerical_error);
    CHECK_THROWS_AS(growth_exponent_fit({1, 1, 2}, power_function(1, 2), 4, 1, 8), invalid_argument);

    const std::vector<double> x{0, 1, 2, 3};
    const std::vector<double> y{1, 3, 5, 7};
    const auto line = fit_line(x, y);
    CHECK(line.slope == doctest::Approx(2).epsilon(1e-14));
    CHECK(line.intercept == doctest::Approx(1).epsilon(1e-14));
}
