#ifndef MORREY_CONSTRUCTIONS_HPP
#define MORREY_CONSTRUCTIONS_HPP

#include <vector>

#include <morrey/radial.hpp>

namespace morrey
{

// Parameters of the indicator-annulus counterexample separating M^{p2}_q from
// M^{p1}_q.
struct Theorem13Spec {
    int d;
    double p1;
    double p2;
    double q;
    // d (p1 + p2) / (2 q); lies strictly between d p1 / q and d p2 / q.
    double beta;
    // Number of annuli kept from the infinite construction.
    int K;
    // r_1 .. r_K, r_k in (k, k + 1).
    std::vector<double> matched_radii;
};

// Validates 1 <= p1 < p2 < q and K >= 1, and fills beta and the radii.
Theorem13Spec make_theorem13_spec(int d, double p1, double p2, double q, int K);

// |x|^(-d/q) on (0, inf).
RadialProfile power_function(int d, double q);

// 1 on [0, 1), s^-beta on [1, inf).
RadialProfile bounding_profile_g(int d, double beta);

// Radii r_k with int_{k <= |x| < k+1} g = |B(0, r_k) \ B(0, k)|, k = 1..K.
std::vector<double> matched_radii(int d, double beta, int K);

// r_k - k for k = 1..K, accurate even where r_k - k is far below ulp(r_k) / eps.
std::vector<double> matched_radius_offsets(int d, double beta, int K);

// chi_{[0,1)} + sum_{k <= K} chi_{[k, r_k)}; faithful on B(0, K/2).
RadialProfile theorem13_function(const Theorem13Spec &spec);

// chi_{[0,1)} + sum_{j <= K} chi_{[j, j + j^-epsilon]}. Warns on stderr when
// epsilon lies outside (0, d/q).
RadialProfile section4_function(int d, double q, double epsilon, int K);

// Unit bumps [j^2, j^2 + 1], j = 1..N, on the line.
RadialProfile maximal_probe_family(int N);

// chi_{B(0, R)} scaled by value.
RadialProfile ball_indicator(double R, double value = 1);

} // namespace morrey

#endif
