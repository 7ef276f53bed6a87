#ifndef MORREY_DETAIL_LINE_STEPS_HPP
#define MORREY_DETAIL_LINE_STEPS_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include <morrey/radial.hpp>

namespace morrey::detail
{

// Even step function on the real line: sorted breakpoints, the value of
// |f|^p on each open cell (x[i], x[i+1]), and the running integral.
struct LineSteps {
    std::vector<double> x;
    std::vector<double> cell;
    std::vector<double> prefix;

    // Integral of the cell values over (-inf, y].
    [[nodiscard]] double antiderivative(double y) const
    {
        if (y <= x.front()) {
            return 0;
        }
        if (y >= x.back()) {
            return prefix.back();
        }
        const auto j = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), y) - x.begin()) - 1;
        return prefix[j] + cell[j] * (y - x[j]);
    }

    // max over rho > 0 of mass(c - rho, c + rho) / (2 rho + blur). Between
    // consecutive endpoint events the ratio is monotone in rho, so scanning
    // the events is exact.
    [[nodiscard]] double blurred_max_average(double c, double blur) const
    {
        const std::size_t n = x.size();
        std::size_t jr = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), c) - x.begin());
        std::ptrdiff_t il = (std::lower_bound(x.begin(), x.end(), c) - x.begin()) - 1;
        const double total = prefix.back();
        double best = 0;
        while (jr < n || il >= 0) {
            const double rho_r = jr < n ? x[jr] - c : INFINITY;
            const double rho_l = il >= 0 ? c - x[static_cast<std::size_t>(il)] : INFINITY;
            const double rho = std::min(rho_r, rho_l);
            if (total / (2 * rho + blur) <= best) {
                break;
            }
            double upper = 0;
            if (jr >= n) {
                upper = total;
            } else if (rho_r <= rho_l) {
                upper = prefix[jr];
            } else {
                upper = prefix[jr - 1] + cell[jr - 1] * (c + rho - x[jr - 1]);
            }
            double lower = 0;
            if (il >= 0) {
                const auto i = static_cast<std::size_t>(il);
                lower = rho_l <= rho_r ? prefix[i] : prefix[i] + cell[i] * (c - rho - x[i]);
            }
            best = std::max(best, (upper - lower) / (2 * rho + blur));
            if (rho_r <= rho_l) {
                ++jr;
            }
            if (rho_l <= rho_r) {
                --il;
            }
        }
        return best;
    }
};

// Mirror a step profile about the origin; segments are clipped to [0, limit].
inline LineSteps mirror_steps(const RadialProfile &profile, double p, double limit)
{
    std::vector<double> y{0.0};
    std::vector<double> w;
    for (const auto &s : profile.segments()) {
        const double lo = std::min(s.lo, limit);
        const double hi = std::min(s.hi, limit);
        if (!(hi > lo) || std::isinf(hi)) {
            continue;
        }
        if (lo > y.back()) {
            w.push_back(0);
            y.push_back(lo);
        }
        w.push_back(s.coeff == 0 ? 0.0 : std::pow(s.coeff, p));
        y.push_back(hi);
    }
    LineSteps line;
    const std::size_t m = y.size();
    line.x.reserve(2 * m - 1);
    for (std::size_t i = m; i-- > 1;) {
        line.x.push_back(-y[i]);
    }
    line.x.insert(line.x.end(), y.begin(), y.end());
    line.cell.assign(w.rbegin(), w.rend());
    line.cell.insert(line.cell.end(), w.begin(), w.end());
    line.prefix.assign(line.x.size(), 0.0);
    for (std::size_t i = 0; i + 1 < line.x.size(); ++i) {
        line.prefix[i + 1] = line.prefix[i] + line.cell[i] * (line.x[i + 1] - line.x[i]);
    }
    return line;
}

} // namespace morrey::detail

#endif
