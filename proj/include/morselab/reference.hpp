#pragma once

#include "morselab/boundary.hpp"
#include "morselab/cayley.hpp"

namespace morselab::reference {

// Serial reference implementations of the parallel kernels, kept for tests
// and the benchmark target. Deliberately simple code paths: plain queue BFS,
// straight loops, Dijkstra instead of Floyd-Warshall.

BallGraph build_ball(const GroupSpec& spec, int radius, std::int64_t vertex_cap = 5'000'000);

ProductMatrix gromov_products(const BallGraph& ball, const std::vector<int32_t>& points, int32_t base);

Rational four_point_delta(const ProductMatrix& pm);

// Chain metric via Dijkstra from every source over the rho-weighted complete
// graph (independent route from the Floyd-Warshall in the main path).
std::vector<double> chain_visual_metric(const BoundaryProxy& proxy);

} // namespace morselab::reference
