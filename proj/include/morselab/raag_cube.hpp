#pragma once

#include <cstdint>
#include <vector>

#include "morselab/cayley.hpp"
#include "morselab/morse.hpp"

namespace morselab {

// Walls of a RAAG ball: equivalence classes of edges under the square
// relation. Edges are keyed as vertex * n_gens + gen for the positive
// direction (each undirected edge counted once, at its positive endpoint).
struct Wall {
    int32_t id = -1;
    int type = 0;                    // generator index
    std::vector<int64_t> dual_edges; // edge keys
    bool interior = true;            // no dual edge touches the outer sphere
};

struct WallSet {
    std::vector<Wall> walls;
    // wall id per edge key slot (-1 where no edge); indexed vertex*n+gen
    std::vector<int32_t> edge_wall;
    int n_gens = 0;

    int32_t wall_of_edge(int32_t v, int gen) const {
        return edge_wall[static_cast<size_t>(v) * n_gens + gen];
    }
};

WallSet build_hyperplanes(const BallGraph& ball);

struct ContactGraph {
    int32_t wall_count = 0;
    std::vector<std::pair<int32_t, int32_t>> edges; // a < b, sorted
    std::vector<bool> crossing;                     // parallel to edges
    std::vector<int32_t> adj_start;                 // CSR over walls
    std::vector<int32_t> adj;
    std::vector<std::vector<int32_t>> crossings_of; // walls crossed by each wall (sorted)

    bool adjacent(int32_t a, int32_t b) const;
};

ContactGraph contact_graph(const BallGraph& ball, const WallSet& walls);

// True iff the walls do not cross and no wall crosses both. valid goes false
// when either wall is non-interior (truncation may hide crossings).
bool strongly_separated(const WallSet& walls, const ContactGraph& cg, int32_t h1, int32_t h2,
                        bool* valid = nullptr);

// Wall dual to the last edge of the ShortLex-first geodesic e -> x.
int32_t q_map(const BallGraph& ball, const WallSet& walls, int32_t x);

// BFS distances in the contact graph from a wall (-1 = unreachable).
std::vector<int32_t> contact_distances(const ContactGraph& cg, int32_t from);

struct QMapPairRecord {
    int32_t x = -1, y = -1;
    int d = 0;       // word metric
    int d_cg = 0;    // contact graph metric between q(x), q(y); -1 unreachable
    bool lipschitz = true; // d_cg <= d
    bool lower_ok = true;  // d_cg >= d/(2*observed_r) - 1
};

struct QMapReport {
    std::vector<int32_t> members;     // vertices with assignments (excludes e)
    std::vector<int32_t> assignment;  // wall per member
    int observed_r = 0;               // max gap between consecutive strongly separated walls
    bool separation_chain_valid = true; // all chain walls interior
    std::vector<QMapPairRecord> pairs;
    bool all_lipschitz = true;
    bool all_lower = true;
    bool cg_connected = true;
};

QMapReport embedding_report(const BallGraph& ball, const StratumReport& stratum, const WallSet& walls,
                            const ContactGraph& cg);

// Exhaustive check that interior wall pairs at contact distance >= 3 are
// strongly separated: scans every non-strongly-separated interior pair and
// verifies its contact distance is <= 2. Returns the number of violations.
int64_t separation_distance3_violations(const WallSet& walls, const ContactGraph& cg);

} // namespace morselab
