#ifndef MORREY_MAXIMAL_HPP
#define MORREY_MAXIMAL_HPP

#include <span>
#include <vector>

#include <morrey/norms.hpp>
#include <morrey/radial.hpp>

namespace morrey
{

enum class MaximalMode {
    // Best average over the candidate radii; every value is a genuine average
    // and hence a lower bound for Mf.
    certified,
    // Certified candidates followed by golden refinement in log-radius.
    search
};

struct MaximalOptions {
    // Log-spaced radii added to the knot-distance candidates.
    int log_grid = 48;
    double golden_rel_width = 1e-9;
    double rel_tol = 1e-8;
};

// Centered Hardy-Littlewood maximal function Mf at |x| = t.
double maximal_value(int d, const RadialProfile &profile, double t, MaximalMode mode = MaximalMode::certified,
                     const MaximalOptions &opts = {});

struct MaximalEnvelope {
    std::vector<double> radii;
    // Certified lower bounds: Mf(radii[i]) >= lower[i].
    std::vector<double> lower;
    // Refined estimates (search mode), advisory.
    std::vector<double> upper;
};

MaximalEnvelope maximal_envelope(int d, const RadialProfile &profile, std::span<const double> radii,
                                 bool with_search = false, const MaximalOptions &opts = {});

// d = 1 step profiles: a value m with Mf(x) >= m for every x in [a, b].
// Balls centered in the cell of radius rho + (b - a)/2 contain the ball of
// radius rho about the cell midpoint.
double cell_lower_bound_1d(const RadialProfile &profile, double a, double b);

enum class MinorantGrid {
    // Gap midpoints plus points log-spaced (ratio 4) towards both gap edges.
    fine,
    // One cell per gap.
    coarse
};

// Piecewise-constant minorant of Mf for a d = 1 step profile: equal to the
// profile on its support and to cell_lower_bound_1d on the cells of each gap.
// The region past the last segment is covered up to one more gap length.
RadialProfile certified_minorant_1d(const RadialProfile &profile, MinorantGrid grid = MinorantGrid::fine);

struct MaximalProbeResult {
    int N = 0;
    double q = 0;
    double norm_f = 0;
    double lower_bound_norm_Mf = 0;
    double ratio = 0;
    std::size_t minorant_cells = 0;
};

// Exact M^1_q norm of the probe f_N against the exact norm of a certified
// minorant of M f_N (d = 1).
MaximalProbeResult maximal_morrey_lower_bound(double q, int N, MinorantGrid grid = MinorantGrid::fine);

} // namespace morrey

#endif
