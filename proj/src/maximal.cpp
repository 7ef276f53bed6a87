#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "detail/line_steps.hpp"
#include <morrey/constructions.hpp>
#include <morrey/errors.hpp>
#include <morrey/geometry.hpp>
#include <morrey/maximal.hpp>

namespace morrey
{

namespace
{

// Exact Mf(t) for a d = 1 step profile: the average over (t - rho, t + rho)
// is monotone between endpoint events, and a radius below the nearest event
// reproduces the local value.
double maximal_value_step_1d(const RadialProfile &profile, double t)
{
    const auto line = detail::mirror_steps(profile, 1, infinity);
    double best = line.blurred_max_average(t, 0);
    auto it = std::lower_bound(line.x.begin(), line.x.end(), t);
    double gap = infinity;
    if (it != line.x.end()) {
        gap = std::min(gap, *it - t > 0 ? *it - t : infinity);
        if (*it == t && std::next(it) != line.x.end()) {
            gap = std::min(gap, *std::next(it) - t);
        }
    }
    if (it != line.x.begin()) {
        gap = std::min(gap, t - *std::prev(it));
    }
    if (std::isfinite(gap)) {
        const double rho = 0.5 * gap;
        best = std::max(best, (line.antiderivative(t + rho) - line.antiderivative(t - rho)) / (2 * rho));
    }
    return best;
}

} // namespace

double maximal_value(int d, const RadialProfile &profile, double t, MaximalMode mode, const MaximalOptions &opts)
{
    if (!(t >= 0) || std::isinf(t)) {
        throw invalid_argument("maximal_value requires a finite t >= 0");
    }
    if (profile.is_zero()) {
        return 0;
    }
    const bool unbounded_support = std::isinf(profile.segments().back().hi) && profile.segments().back().coeff > 0;
    if (d == 1 && profile.is_step() && !unbounded_support) {
        return maximal_value_step_1d(profile, t);
    }

    // A growing unbounded tail makes every large-ball average diverge; a
    // singular core does the same for small balls about the origin.
    const auto &tail = profile.segments().back();
    if (std::isinf(tail.hi) && tail.coeff > 0 && tail.exponent < 0) {
        return infinity;
    }
    const auto &core = profile.segments().front();
    if (t == 0 && core.lo == 0 && core.coeff > 0 && core.exponent > 0) {
        return infinity;
    }

    const auto dc = dimension_constants(d);
    const auto knots = profile.knots();
    std::vector<double> radii;
    radii.reserve(2 * knots.size() + static_cast<std::size_t>(opts.log_grid));
    for (const double k : knots) {
        if (k != t) {
            radii.push_back(std::abs(t - k));
        }
        radii.push_back(t + k);
    }
    const double scale = t > 0 ? t : (knots.empty() ? 1.0 : knots.front());
    const double lo = std::log(scale * 1e-7);
    const double hi = std::log(scale * 1e5);
    for (int i = 0; i < opts.log_grid; ++i) {
        radii.push_back(std::exp(lo + (hi - lo) * i / (opts.log_grid - 1)));
    }
    std::ranges::sort(radii);
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

    auto average = [&](double rho) {
        const double mass
            = t == 0 ? centered_mass(d, profile, 1, rho) : offcenter_mass(d, t, rho, profile, 1, opts.rel_tol);
        return mass / (dc.volume * std::pow(rho, d));
    };

    std::size_t arg = 0;
    double best = -1;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double v = average(radii[i]);
        if (std::isinf(v)) {
            return infinity;
        }
        if (v > best) {
            best = v;
            arg = i;
        }
    }
    if (mode == MaximalMode::search && radii.size() > 1) {
        double a = std::log(radii[arg == 0 ? 0 : arg - 1]);
        double b = std::log(radii[std::min(arg + 1, radii.size() - 1)]);
        constexpr double inv_phi = 0.6180339887498949;
        double x1 = b - inv_phi * (b - a);
        double x2 = a + inv_phi * (b - a);
        double f1 = average(std::exp(x1));
        double f2 = average(std::exp(x2));
        while (b - a > opts.golden_rel_width) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = average(std::exp(x2));
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = average(std::exp(x1));
            }
        }
        best = std::max({best, f1, f2});
    }
    return best;
}

MaximalEnvelope maximal_envelope(int d, const RadialProfile &profile, std::span<const double> radii,
                                 bool with_search, const MaximalOptions &opts)
{
    MaximalEnvelope env;
    env.radii.assign(radii.begin(), radii.end());
    std::ranges::sort(env.radii);
    for (const double t : env.radii) {
        env.lower.push_back(maximal_value(d, profile, t, MaximalMode::certified, opts));
        if (with_search) {
            env.upper.push_back(maximal_value(d, profile, t, MaximalMode::search, opts));
        }
    }
    return env;
}

double cell_lower_bound_1d(const RadialProfile &profile, double a, double b)
{
    if (!profile.is_step()) {
        throw invalid_argument("cell_lower_bound_1d requires a step profile");
    }
    if (!(a >= 0) || !(b > a)) {
        throw invalid_argument("cell_lower_bound_1d requires 0 <= a < b");
    }
    const auto line = detail::mirror_steps(profile, 1, infinity);
    return line.blurred_max_average(0.5 * (a + b), b - a);
}

RadialProfile certified_minorant_1d(const RadialProfile &profile, MinorantGrid grid)
{
    if (!profile.is_step()) {
        throw invalid_argument("certified_minorant_1d requires a step profile");
    }
    if (profile.is_zero()) {
        return profile;
    }
    const auto &last = profile.segments().back();
    if (std::isinf(last.hi) && last.coeff > 0) {
        throw invalid_argument("certified_minorant_1d requires bounded support");
    }
    const auto line = detail::mirror_steps(profile, 1, infinity);

    // Support pieces (merged) with their values, in radius order.
    struct Piece {
        double lo, hi, value;
    };
    std::vector<Piece> pieces;
    for (const auto &s : profile.segments()) {
        if (s.coeff == 0) {
            continue;
        }
        pieces.push_back({s.lo, s.hi, s.coeff});
    }

    std::vector<PowerSegment> cells;
    auto add_gap = [&](double a, double b, bool symmetric_about_origin) {
        // Cut points measured from the gap edges, ratio 4 towards each edge.
        std::vector<double> cuts{a, b};
        if (grid == MinorantGrid::fine) {
            const double len = symmetric_about_origin ? 2 * b : b - a;
            const double min_offset = std::min(0.25, len / 8);
            for (double o = len / 2; o >= min_offset; o /= 4) {
                if (!symmetric_about_origin) {
                    cuts.push_back(a + o);
                }
                cuts.push_back(b - o);
            }
        }
        std::ranges::sort(cuts);
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        std::erase_if(cuts, [&](double c) { return c < a || c > b; });
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double u = cuts[i];
            const double v = cuts[i + 1];
            if (v > u) {
                cells.push_back({u, v, line.blurred_max_average(0.5 * (u + v), v - u), 0});
            }
        }
    };

    double cursor = 0;
    double last_gap = 0;
    for (const auto &piece : pieces) {
        if (piece.lo > cursor) {
            add_gap(cursor, piece.lo, cursor == 0);
            last_gap = piece.lo - cursor;
        }
        // Mf >= f at every interior point of a step.
        const double lift = line.blurred_max_average(0.5 * (piece.lo + piece.hi), piece.hi - piece.lo);
        cells.push_back({piece.lo, piece.hi, std::max(piece.value, lift), 0});
        cursor = piece.hi;
    }
    add_gap(cursor, cursor + (last_gap > 0 ? last_gap : cursor), false);

    // Drop zero cells so the profile stays compact.
    std::erase_if(cells, [](const PowerSegment &s) { return s.coeff == 0; });
    return RadialProfile(std::move(cells));
}

MaximalProbeResult maximal_morrey_lower_bound(double q, int N, MinorantGrid grid)
{
    if (!(q > 1)) {
        throw invalid_argument("maximal probe needs q > 1");
    }
    const SpaceParams params(1, 1, q);
    const auto f = maximal_probe_family(N);
    const auto minorant = certified_minorant_1d(f, grid);

    MaximalProbeResult out;
    out.N = N;
    out.q = q;
    out.norm_f = exact_norm_1d(params, f).value;
    out.lower_bound_norm_Mf = exact_norm_1d(params, minorant).value;
    out.ratio = out.lower_bound_norm_Mf / out.norm_f;
    out.minorant_cells = minorant.size();
    return out;
}

} // namespace morrey
