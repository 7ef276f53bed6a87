#ifndef MORREY_NORMS_HPP
#define MORREY_NORMS_HPP

#include <cstdint>
#include <limits>
#include <string_view>

#include <morrey/radial.hpp>

namespace morrey
{

// (d, p, q) with 1 <= p <= q < inf, identifying M^p_q(R^d) or wM^p_q(R^d).
class SpaceParams
{
public:
    SpaceParams(int d, double p, double q);

    [[nodiscard]] int d() const
    {
        return m_d;
    }
    [[nodiscard]] double p() const
    {
        return m_p;
    }
    [[nodiscard]] double q() const
    {
        return m_q;
    }

private:
    int m_d;
    double m_p;
    double m_q;
};

enum class VerdictKind { finite, infinite };

enum class Divergence {
    none,
    small_radius,       // r -> 0
    large_radius,       // r -> inf
    nonintegrable_core, // |f|^p not integrable at the origin
    level_limit         // gamma -> 0 or gamma -> inf in the weak quasi-norm
};

std::string_view to_string(VerdictKind kind);
std::string_view to_string(Divergence regime);

struct Witness {
    // Ball radius attaining (or approaching) the supremum; +inf marks a limit.
    double radius = std::numeric_limits<double>::quiet_NaN();
    // Distance of the ball center from the origin.
    double center = 0;
    // Level gamma for weak quasi-norms.
    double level = std::numeric_limits<double>::quiet_NaN();
};

struct NormVerdict {
    VerdictKind kind = VerdictKind::finite;
    double value = 0;
    Witness witness;
    Divergence regime = Divergence::none;
    // Growth exponent of the diverging quantity in its diverging variable.
    double growth = std::numeric_limits<double>::quiet_NaN();
    // Divergence is logarithmic (growth is then the accompanying power, 0).
    bool log_growth = false;

    static NormVerdict finite(double value, Witness witness);
    static NormVerdict infinite(Divergence regime, double growth, bool log_growth = false);

    [[nodiscard]] bool is_finite() const
    {
        return kind == VerdictKind::finite;
    }
};

struct SearchOptions {
    // Log-spaced bracketing samples per inter-knot interval.
    int grid_points = 64;
    // Golden-section stopping width, relative (log-radius units).
    double golden_rel_width = 1e-10;
    // Truncated profiles: the growth fit runs over [R / tail_window, R].
    double tail_window = 64;
    int tail_samples = 64;
    // Fitted tail slope above which a truncated profile is reported divergent.
    double growth_threshold = 0.01;
    // Interior level samples per power segment in the weak quasi-norm.
    int level_samples = 32;
};

// |B(0,r)|^(1/q - 1/p) (int_{B(0,r)} |f|^p)^(1/p), in closed form.
double local_norm(const SpaceParams &params, const RadialProfile &profile, double r);

// Same quantity with a prefix table; used by the searches.
class LocalNormEvaluator
{
public:
    LocalNormEvaluator(const SpaceParams &params, const RadialProfile &profile);

    [[nodiscard]] double operator()(double r) const;
    [[nodiscard]] double mass(double r) const
    {
        return m_mass(r);
    }

private:
    SpaceParams m_params;
    CumulativeMass m_mass;
    double m_log_volume;
};

// sup over centered balls of the local norm, with tail classification.
NormVerdict centered_norm(const SpaceParams &params, const RadialProfile &profile, const SearchOptions &opts = {});

// sup over gamma of gamma * ||chi_{|f| > gamma}||, the inner norm computed by
// centered_norm.
NormVerdict weak_norm(const SpaceParams &params, const RadialProfile &profile, const SearchOptions &opts = {});

struct AuditResult {
    // Largest sampled off-center local norm and where it occurred.
    double max_local = 0;
    double center = 0;
    double radius = 0;
    double centered_value = 0;
    std::size_t samples = 0;
    // Set when some off-center ball beats the centered supremum by more than
    // the relative slack.
    bool flag = false;
};

inline constexpr double audit_slack = 1e-3;

// Samples balls B(x, r) with |x| log-uniform over the knot range and r
// log-uniform, and compares against the centered supremum.
AuditResult offcenter_audit(const SpaceParams &params, const RadialProfile &profile, int n_centers = 32,
                            int n_radii = 32, std::uint64_t seed = 0);

// True supremum over all intervals for a d = 1 step profile. The witness is
// the optimal interval (center, half-length).
NormVerdict exact_norm_1d(const SpaceParams &params, const RadialProfile &profile);

struct GrowthFit {
    double slope = 0;
    double intercept = 0;
    double max_residual = 0;
};

// Least-squares line through (log r, log local_norm) at log-spaced radii.
GrowthFit growth_exponent_fit(const SpaceParams &params, const RadialProfile &profile, double r_lo, double r_hi,
                              int n_samples);

// Plain least-squares line; also used by the experiment harness.
GrowthFit fit_line(std::span<const double> x, std::span<const double> y);

} // namespace morrey

#endif
