#pragma once

#include <cstdint>
#include <vector>

#include "morselab/cayley.hpp"
#include "morselab/morse.hpp"

namespace morselab {

// Symmetric matrix of Gromov products with a fixed base, stored exactly as
// doubled values (products are half-integers).
struct ProductMatrix {
    std::vector<int32_t> points;
    int32_t base = 0;
    std::vector<int> twice; // row-major, twice[i*n+j] = 2*(p_i . p_j)_base

    int n() const { return static_cast<int>(points.size()); }
    int at2(int i, int j) const { return twice[static_cast<size_t>(i) * points.size() + j]; }
    double at(int i, int j) const { return 0.5 * at2(i, j); }
};

ProductMatrix gromov_products(const BallGraph& ball, const std::vector<int32_t>& points, int32_t base);

// Minimal delta >= 0 with (x.y) >= min((x.z),(z.y)) - delta over all ordered
// triples from the matrix, returned as an exact half-integer.
Rational four_point_delta(const ProductMatrix& pm);

// Largest epsilon with exp(2*delta*epsilon) - 1 <= sqrt(2) - 1; the delta = 0
// sentinel returns default_at_zero.
double epsilon_max(double delta, double default_at_zero = 1.0);

struct BoundaryProxy {
    std::vector<int32_t> points;
    ProductMatrix products;
    double epsilon = 0;
    std::vector<double> rho; // exp(-eps * product), row-major

    int n() const { return static_cast<int>(points.size()); }
    double rho_at(int i, int j) const { return rho[static_cast<size_t>(i) * points.size() + j]; }
};

// Stratum members on sphere(r) with ambient products and rho values.
BoundaryProxy make_proxy(const BallGraph& ball, const StratumReport& stratum, int r, double epsilon);

// Chain infimum metric: all-pairs shortest path in the rho-weighted complete
// graph (Floyd-Warshall; diagonal forced to 0).
std::vector<double> chain_visual_metric(const BoundaryProxy& proxy);

struct SandwichCheck {
    bool holds = true;
    double eps_prime = 0;
    double worst_lower = 0; // most negative d - (1-2eps')rho, 0 when none
    double worst_upper = 0; // most positive d - rho, 0 when none
};
SandwichCheck check_visual_sandwich(const BoundaryProxy& proxy, const std::vector<double>& chain,
                                    double delta, double tol = 1e-9);

struct ProductComparisonReport {
    bool nested = true;
    bool equal_on_common = true;
    int common_points = 0;
    int documented_bound2 = 0; // 2 * 32 * bound'(3,0)
};
ProductComparisonReport product_comparison(const BallGraph& ball, const StratumReport& inner,
                                           const StratumReport& outer,
                                           const std::vector<std::pair<int32_t, int32_t>>& pairs);

struct QsFit {
    double exponent = 1;    // documented modulus exponent
    double coefficient = 1; // minimal c with out <= c * in^exponent over samples
    std::size_t samples = 0;
    std::vector<std::pair<double, double>> sample_list; // capped for reporting
};
QsFit quasi_symmetry_samples(const std::vector<double>& dA, const std::vector<double>& dB, int n,
                             double exponent, std::size_t sample_list_cap = 1000);

struct CoverCertificate {
    double scale = 0;
    std::vector<std::vector<int>> cover; // point indices per member
    int multiplicity = 0;
    double lebesgue = 0;
    double delta_achieved = 0; // lebesgue / scale
};

// Greedy net-based covers per scale; returns max(multiplicity - 1) and the
// certificates. An upper-bound heuristic at finite scale.
std::pair<int, std::vector<CoverCertificate>> capacity_dim_estimate(const std::vector<double>& metric,
                                                                    int n,
                                                                    const std::vector<double>& scales);

// Greedy uniformly bounded cover (blocks of diameter ~10*R_scale); returns the
// max number of blocks met by any R_scale-ball, minus 1.
int cover_multiplicity_at_scale(const std::vector<double>& metric, int n, double R_scale);

} // namespace morselab
