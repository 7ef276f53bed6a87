#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "detail/line_steps.hpp"
#include <morrey/errors.hpp>
#include <morrey/geometry.hpp>
#include <morrey/norms.hpp>

namespace morrey
{

namespace
{

constexpr double exponent_tol = 1e-12;
// Candidates must beat the incumbent by this relative margin; ties go to the
// smaller radius.
constexpr double tie_margin = 1e-12;

std::vector<double> log_grid(double lo, double hi, int n)
{
    std::vector<double> out(static_cast<std::size_t>(n));
    const double a = std::log(lo);
    const double step = (std::log(hi) - a) / (n - 1);
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = std::exp(a + i * step);
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

// Golden-section maximization of f over [a, b].
template <typename F>
std::pair<double, double> golden_maximize(F &&f, double a, double b, double width)
{
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > width) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

const PowerSegment *first_positive(const RadialProfile &profile)
{
    for (const auto &s : profile.segments()) {
        if (s.coeff > 0) {
            return &s;
        }
    }
    return nullptr;
}

const PowerSegment *last_positive(const RadialProfile &profile)
{
    const auto segs = profile.segments();
    for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
        if (it->coeff > 0) {
            return &*it;
        }
    }
    return nullptr;
}

struct Incumbent {
    double value = -1;
    Witness witness;

    void offer(double v, double r)
    {
        if (value < 0 || v > value * (1 + tie_margin)) {
            value = v;
            witness = Witness{};
            witness.radius = r;
        }
    }
};

// Local norm of a pure power tail c s^-beta in the limit where it is constant.
double power_limit_value(const SpaceParams &params, double coeff, double e)
{
    const auto dc = dimension_constants(params.d());
    const double p = params.p();
    return std::exp((1 / params.q() - 1 / p) * std::log(dc.volume)
                    + (std::log(dc.sphere_area) + p * std::log(coeff) - std::log(e)) / p);
}

} // namespace

SpaceParams::SpaceParams(int d, double p, double q) : m_d(d), m_p(p), m_q(q)
{
    if (d < 1 || d > max_dimension) {
        throw invalid_argument("dimension must be in [1, " + std::to_string(max_dimension) + "]");
    }
    if (!(p >= 1) || !(q >= p) || !std::isfinite(q)) {
        throw invalid_argument("space parameters need 1 <= p <= q < inf, got p = " + std::to_string(p)
                               + ", q = " + std::to_string(q));
    }
}

std::string_view to_string(VerdictKind kind)
{
    return kind == VerdictKind::finite ? "finite" : "infinite";
}

std::string_view to_string(Divergence regime)
{
    switch (regime) {
        case Divergence::none:
            return "none";
        case Divergence::small_radius:
            return "r->0";
        case Divergence::large_radius:
            return "r->inf";
        case Divergence::nonintegrable_core:
            return "nonintegrable-core";
        case Divergence::level_limit:
            return "level-limit";
    }
    return "unknown";
}

NormVerdict NormVerdict::finite(double value, Witness witness)
{
    NormVerdict v;
    v.kind = VerdictKind::finite;
    v.value = value;
    v.witness = witness;
    return v;
}

NormVerdict NormVerdict::infinite(Divergence regime, double growth, bool log_growth)
{
    NormVerdict v;
    v.kind = VerdictKind::infinite;
    v.value = infinity;
    v.regime = regime;
    v.growth = growth;
    v.log_growth = log_growth;
    return v;
}

double local_norm(const SpaceParams &params, const RadialProfile &profile, double r)
{
    if (!(r > 0) || std::isinf(r)) {
        throw invalid_argument("local_norm requires a finite r > 0");
    }
    const double mass = centered_mass(params.d(), profile, params.p(), r);
    if (std::isinf(mass)) {
        return infinity;
    }
    if (mass <= 0) {
        return 0;
    }
    const double log_ball = std::log(unit_ball_volume(params.d())) + params.d() * std::log(r);
    return std::exp((1 / params.q() - 1 / params.p()) * log_ball + std::log(mass) / params.p());
}

LocalNormEvaluator::LocalNormEvaluator(const SpaceParams &params, const RadialProfile &profile)
    : m_params(params), m_mass(params.d(), profile, params.p()), m_log_volume(std::log(unit_ball_volume(params.d())))
{
}

double LocalNormEvaluator::operator()(double r) const
{
    const double mass = m_mass(r);
    if (std::isinf(mass)) {
        return infinity;
    }
    if (mass <= 0) {
        return 0;
    }
    const double log_ball = m_log_volume + m_params.d() * std::log(r);
    return std::exp((1 / m_params.q() - 1 / m_params.p()) * log_ball + std::log(mass) / m_params.p());
}

NormVerdict centered_norm(const SpaceParams &params, const RadialProfile &profile, const SearchOptions &opts)
{
    if (profile.is_zero()) {
        Witness w;
        w.radius = 1;
        return NormVerdict::finite(0, w);
    }
    const int d = params.d();
    const double p = params.p();
    const double q = params.q();
    const double faithful = profile.faithful_radius();

    // r -> 0: a segment at the origin behaves like C r^(d/q - beta).
    const auto *core = first_positive(profile);
    if (core->lo == 0) {
        const double e0 = d - p * core->exponent;
        const double g0 = d / q - core->exponent;
        if (e0 <= exponent_tol) {
            return NormVerdict::infinite(Divergence::nonintegrable_core, g0, std::abs(e0) <= exponent_tol);
        }
        if (g0 < -exponent_tol) {
            return NormVerdict::infinite(Divergence::small_radius, g0);
        }
    }

    LocalNormEvaluator eval(params, profile);
    std::optional<double> limit_at_infinity;
    bool search_unbounded_tail = false;

    if (profile.truncated()) {
        // Only balls inside the faithful region see the intended function, so
        // growth towards infinity is read off a fit near the faithful radius.
        try {
            const auto fit = growth_exponent_fit(params, profile, faithful / opts.tail_window, faithful,
                                                 opts.tail_samples);
            if (fit.slope > opts.growth_threshold) {
                return NormVerdict::infinite(Divergence::large_radius, fit.slope);
            }
        } catch (const numerical_error &) {
            // Zero local norm somewhere in the window: no growth to report.
        }
    } else {
        const auto *tail = last_positive(profile);
        if (std::isinf(tail->hi)) {
            const double e = d - p * tail->exponent;
            const double g = d / q - tail->exponent;
            const bool p_equals_q = std::abs(d / q - d / p) <= exponent_tol;
            if (e > exponent_tol) {
                if (g > exponent_tol) {
                    return NormVerdict::infinite(Divergence::large_radius, g);
                }
                if (g >= -exponent_tol) {
                    limit_at_infinity = power_limit_value(params, tail->coeff, e);
                }
                search_unbounded_tail = !tail->is_step();
            } else if (e >= -exponent_tol) {
                if (p_equals_q) {
                    return NormVerdict::infinite(Divergence::large_radius, 0, true);
                }
                search_unbounded_tail = true;
            } else {
                if (p_equals_q) {
                    limit_at_infinity = std::pow(eval.mass(infinity), 1 / p);
                }
                search_unbounded_tail = true;
            }
        }
    }

    std::vector<double> knots = profile.knots();
    if (profile.truncated()) {
        std::erase_if(knots, [&](double k) { return k >= faithful; });
        knots.push_back(faithful);
    }

    Incumbent best;
    if (knots.empty()) {
        // A single pure power on (0, inf): the local norm is r^g with g = 0 here.
        best.offer(eval(1.0), 1.0);
    }

    auto search_interval = [&](double a, double b) {
        const auto grid = log_grid(a, b, opts.grid_points);
        std::size_t arg = 0;
        double arg_value = -1;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double v = eval(grid[i]);
            if (v > arg_value * (1 + tie_margin) || arg_value < 0) {
                arg = i;
                arg_value = v;
            }
        }
        const double lo = std::log(grid[arg == 0 ? 0 : arg - 1]);
        const double hi = std::log(grid[std::min(arg + 1, grid.size() - 1)]);
        const auto [x, v]
            = golden_maximize([&](double u) { return eval(std::exp(u)); }, lo, hi, opts.golden_rel_width);
        if (v > arg_value) {
            best.offer(v, std::exp(x));
        } else {
            best.offer(arg_value, grid[arg]);
        }
    };

    for (std::size_t i = 0; i < knots.size(); ++i) {
        best.offer(eval(knots[i]), knots[i]);
        if (i + 1 < knots.size()) {
            // Inside a step segment (or a gap) the mass is linear in r^d and
            // every stationary point of the local norm is a minimum, so the
            // knots already carry the supremum.
            const double mid = std::sqrt(knots[i] * knots[i + 1]);
            const auto idx = profile.find_segment(mid);
            if (idx >= 0 && !profile.segments()[static_cast<std::size_t>(idx)].is_step()) {
                search_interval(knots[i], knots[i + 1]);
            }
        }
    }
    if (search_unbounded_tail && !knots.empty()) {
        search_interval(knots.back(), knots.back() * 1e8);
    }
    if (limit_at_infinity) {
        best.offer(*limit_at_infinity, infinity);
    }
    return NormVerdict::finite(best.value, best.witness);
}

NormVerdict weak_norm(const SpaceParams &params, const RadialProfile &profile, const SearchOptions &opts)
{
    if (profile.is_zero()) {
        Witness w;
        w.radius = 1;
        return NormVerdict::finite(0, w);
    }
    const int d = params.d();
    const double q = params.q();
    const double faithful = profile.faithful_radius();

    for (const auto &s : profile.segments()) {
        if (s.coeff > 0 && std::isinf(s.hi) && s.exponent <= 0) {
            // Every low superlevel set has infinite measure.
            return NormVerdict::infinite(Divergence::large_radius, d / q);
        }
    }

    if (profile.is_indicator()) {
        auto v = centered_norm(params, profile, opts);
        if (v.is_finite()) {
            v.witness.level = first_positive(profile)->coeff;
        }
        return v;
    }

    // gamma * ||chi_{f >= gamma}||; the superlevel set is taken closed so that
    // step values give the limit from below.
    std::optional<NormVerdict> divergent;
    auto level_value = [&](double gamma, Witness *w) -> double {
        const auto set = superlevel_set(profile, gamma, true);
        const auto inner = centered_norm(params, indicator(set, 1, faithful), opts);
        if (!inner.is_finite()) {
            if (!divergent) {
                divergent = inner;
            }
            return infinity;
        }
        if (w != nullptr) {
            *w = inner.witness;
            w->level = gamma;
        }
        return gamma * inner.value;
    };

    const auto dc = dimension_constants(d);
    std::optional<std::pair<double, double>> limit; // (value, level)

    // gamma -> inf near a singular core and gamma -> 0 along a decaying tail:
    // the superlevel set is essentially B(0, (c/gamma)^(1/beta)), giving
    // v^(1/q) c^(d/(q beta)) gamma^(1 - d/(q beta)).
    const auto *core = first_positive(profile);
    if (core->lo == 0 && core->exponent > 0) {
        const double lambda = 1 - d / (q * core->exponent);
        if (lambda > exponent_tol) {
            return NormVerdict::infinite(Divergence::level_limit, lambda);
        }
        if (lambda >= -exponent_tol) {
            limit = {std::pow(dc.volume, 1 / q) * std::pow(core->coeff, d / (q * core->exponent)), infinity};
        }
    }
    const auto *tail = last_positive(profile);
    if (std::isinf(tail->hi) && tail->exponent > 0) {
        const double lambda = 1 - d / (q * tail->exponent);
        if (lambda < -exponent_tol) {
            return NormVerdict::infinite(Divergence::level_limit, -lambda);
        }
        if (lambda <= exponent_tol) {
            const double v = std::pow(dc.volume, 1 / q) * std::pow(tail->coeff, d / (q * tail->exponent));
            if (!limit || v > limit->first) {
                limit = {v, 0.0};
            }
        }
    }

    double best = -1;
    Witness best_witness;
    // Bracket for refinement: the segment and its log-radius neighborhood.
    const PowerSegment *best_segment = nullptr;
    double bracket_lo = 0;
    double bracket_hi = 0;

    for (const auto &s : profile.segments()) {
        if (s.coeff == 0) {
            continue;
        }
        if (s.is_step()) {
            Witness w;
            const double v = level_value(s.coeff, &w);
            if (divergent) {
                return *divergent;
            }
            if (v > best) {
                best = v;
                best_witness = w;
                best_segment = nullptr;
            }
            continue;
        }
        double a = s.lo;
        double b = s.hi;
        if (a == 0 && std::isinf(b)) {
            a = 1e-3;
            b = 1e3;
        } else if (a == 0) {
            a = b * 1e-6;
        } else if (std::isinf(b)) {
            b = a * 1e6;
        }
        const auto radii = log_grid(a, b, opts.level_samples + 2);
        for (std::size_t i = 0; i < radii.size(); ++i) {
            Witness w;
            const double v = level_value(s.value_at(radii[i]), &w);
            if (divergent) {
                return *divergent;
            }
            if (v > best) {
                best = v;
                best_witness = w;
                best_segment = &s;
                bracket_lo = radii[i == 0 ? 0 : i - 1];
                bracket_hi = radii[std::min(i + 1, radii.size() - 1)];
            }
        }
    }

    if (best_segment != nullptr && bracket_hi > bracket_lo) {
        const auto *seg = best_segment;
        const auto [u, v] = golden_maximize(
            [&](double x) { return level_value(seg->value_at(std::exp(x)), nullptr); }, std::log(bracket_lo),
            std::log(bracket_hi), opts.golden_rel_width);
        if (divergent) {
            return *divergent;
        }
        if (v > best) {
            Witness w;
            best = level_value(seg->value_at(std::exp(u)), &w);
            best_witness = w;
        }
    }
    if (limit && limit->first > best * (1 + tie_margin)) {
        best = limit->first;
        best_witness = Witness{};
        best_witness.radius = limit->second == 0 ? infinity : 0.0;
        best_witness.level = limit->second;
    }
    return NormVerdict::finite(best, best_witness);
}

AuditResult offcenter_audit(const SpaceParams &params, const RadialProfile &profile, int n_centers, int n_radii,
                            std::uint64_t seed)
{
    if (n_centers < 1 || n_radii < 1) {
        throw invalid_argument("offcenter_audit needs at least one center and one radius");
    }
    const int d = params.d();
    const double p = params.p();
    const double q = params.q();
    const double faithful = profile.faithful_radius();

    AuditResult result;
    const auto centered = centered_norm(params, profile);
    result.centered_value = centered.value;

    auto knots = profile.knots();
    std::erase_if(knots, [&](double k) { return k > faithful; });
    double t_lo = 1e-2;
    double t_hi = 1e2;
    double r_lo = 1e-2;
    double r_hi = 1e2;
    if (!knots.empty()) {
        double min_gap = knots.front();
        for (std::size_t i = 1; i < knots.size(); ++i) {
            min_gap = std::min(min_gap, knots[i] - knots[i - 1]);
        }
        t_lo = knots.front() / 2;
        t_hi = std::max(knots.back(), t_lo * 2);
        r_lo = min_gap / 4;
        r_hi = 2 * t_hi;
    }
    if (profile.truncated()) {
        t_hi = std::min(t_hi, faithful / 2);
        t_lo = std::min(t_lo, t_hi / 2);
        r_hi = std::min(r_hi, faithful / 2);
        r_lo = std::min(r_lo, r_hi / 2);
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto log_uniform = [&](double lo, double hi) { return lo * std::exp(unit(rng) * std::log(hi / lo)); };
    const double log_volume = std::log(unit_ball_volume(d));

    for (int i = 0; i < n_centers; ++i) {
        const double t = log_uniform(t_lo, t_hi);
        for (int j = 0; j < n_radii; ++j) {
            double r = log_uniform(r_lo, r_hi);
            if (t + r > faithful) {
                r = faithful - t;
            }
            const double mass = offcenter_mass(d, t, r, profile, p);
            ++result.samples;
            double value = 0;
            if (std::isinf(mass)) {
                value = infinity;
            } else if (mass > 0) {
                value = std::exp((1 / q - 1 / p) * (log_volume + d * std::log(r)) + std::log(mass) / p);
            }
            if (value > result.max_local) {
                result.max_local = value;
                result.center = t;
                result.radius = r;
            }
        }
    }
    result.flag = centered.is_finite() && result.max_local > centered.value * (1 + audit_slack);
    return result;
}

NormVerdict exact_norm_1d(const SpaceParams &params, const RadialProfile &profile)
{
    if (params.d() != 1) {
        throw invalid_argument("exact_norm_1d requires d = 1");
    }
    if (!profile.is_step()) {
        throw invalid_argument("exact_norm_1d requires a step profile");
    }
    if (profile.is_zero()) {
        Witness w;
        w.radius = 1;
        return NormVerdict::finite(0, w);
    }
    const double p = params.p();
    const double q = params.q();
    const double faithful = profile.faithful_radius();
    if (!profile.truncated() && std::isinf(last_positive(profile)->hi)) {
        return NormVerdict::infinite(Divergence::large_radius, 1 / q);
    }

    const auto line = detail::mirror_steps(profile, p, faithful);
    const auto &x = line.x;
    const auto &pre = line.prefix;
    const std::size_t n = x.size();
    // Maximize mass / length^alpha over intervals with breakpoint endpoints;
    // inside a cell the mass is linear in each endpoint and any stationary
    // point of this ratio is a minimum.
    const double alpha = 1 - p / q;
    const double wmax = *std::max_element(line.cell.begin(), line.cell.end());

    auto ratio = [&](std::size_t i, std::size_t j) {
        const double mass = pre[j] - pre[i];
        return alpha == 0 ? mass : mass / std::pow(x[j] - x[i], alpha);
    };

    double best = 0;
    std::size_t bi = 0;
    std::size_t bj = n - 1;
    auto offer = [&](std::size_t i, std::size_t j) {
        const double v = ratio(i, j);
        if (v > best) {
            best = v;
            bi = i;
            bj = j;
        }
    };
    for (std::size_t i = 0; i + 1 < n; ++i) {
        offer(i, i + 1);
        if (n - 1 - i > i) {
            offer(i, n - 1 - i);
        }
    }

    struct Node {
        std::size_t i0, i1, j0, j1;
    };
    auto bound_of = [&](const Node &nd) {
        const double mass = pre[nd.j1] - pre[nd.i0];
        double bound = wmax * std::pow(x[nd.j1] - x[nd.i0], 1 - alpha);
        if (nd.j0 > nd.i1) {
            const double len = x[nd.j0] - x[nd.i1];
            bound = std::min(bound, alpha == 0 ? mass : mass / std::pow(len, alpha));
        }
        return bound;
    };

    constexpr std::size_t leaf_pairs = 256;
    std::vector<Node> stack{{0, n - 1, 0, n - 1}};
    while (!stack.empty()) {
        const Node nd = stack.back();
        stack.pop_back();
        if (nd.j1 <= nd.i0 || bound_of(nd) <= best) {
            continue;
        }
        const std::size_t ni = nd.i1 - nd.i0 + 1;
        const std::size_t nj = nd.j1 - nd.j0 + 1;
        if (ni * nj <= leaf_pairs) {
            for (std::size_t i = nd.i0; i <= nd.i1; ++i) {
                for (std::size_t j = std::max(nd.j0, i + 1); j <= nd.j1; ++j) {
                    offer(i, j);
                }
            }
            continue;
        }
        Node a = nd;
        Node b = nd;
        if (ni >= nj) {
            const std::size_t mid = nd.i0 + (ni - 1) / 2;
            a.i1 = mid;
            b.i0 = mid + 1;
        } else {
            const std::size_t mid = nd.j0 + (nj - 1) / 2;
            a.j1 = mid;
            b.j0 = mid + 1;
        }
        // Explore the more promising half first.
        if (bound_of(a) >= bound_of(b)) {
            stack.push_back(b);
            stack.push_back(a);
        } else {
            stack.push_back(a);
            stack.push_back(b);
        }
    }

    Witness w;
    w.center = 0.5 * (x[bi] + x[bj]);
    w.radius = 0.5 * (x[bj] - x[bi]);
    return NormVerdict::finite(std::pow(best, 1 / p), w);
}

GrowthFit fit_line(std::span<const double> x, std::span<const double> y)
{
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) {
        throw invalid_argument("fit_line needs at least two paired samples");
    }
    double mx = 0;
    double my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0;
    double sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0)) {
        throw numerical_error("fit_line: degenerate abscissae");
    }
    GrowthFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < n; ++i) {
        fit.max_residual = std::max(fit.max_residual, std::abs(y[i] - fit.intercept - fit.slope * x[i]));
    }
    return fit;
}

GrowthFit growth_exponent_fit(const SpaceParams &params, const RadialProfile &profile, double r_lo, double r_hi,
                              int n_samples)
{
    if (!(r_lo > 0) || !(r_hi > r_lo) || std::isinf(r_hi)) {
        throw invalid_argument("growth_exponent_fit requires 0 < r_lo < r_hi < inf");
    }
    if (n_samples < 2) {
        throw invalid_argument("growth_exponent_fit requires at least two samples");
    }
    LocalNormEvaluator eval(params, profile);
    const auto radii = log_grid(r_lo, r_hi, n_samples);
    std::vector<double> lx;
    std::vector<double> ly;
    lx.reserve(radii.size());
    ly.reserve(radii.size());
    for (const double r : radii) {
        const double v = eval(r);
        if (std::isinf(v) || !(v > 0)) {
            throw numerical_error("growth_exponent_fit: local norm is " + std::to_string(v) + " at r = "
                                  + std::to_string(r));
        }
        lx.push_back(std::log(r));
        ly.push_back(std::log(v));
    }
    return fit_line(lx, ly);
}

} // namespace morrey
