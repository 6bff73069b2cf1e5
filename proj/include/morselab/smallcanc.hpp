#pragma once

#include <cstdint>
#include <vector>

#include "morselab/labelled_graph.hpp"
#include "morselab/morse.hpp"
#include "morselab/presentations.hpp"

namespace morselab {

struct PieceOccurrence {
    Word label;
    std::vector<LabelledGraph::Pos> first, second; // two distinct locations
};

struct CyclePieceCheck {
    int cycle_index = 0;
    int component = 0;
    int cycle_length = 0;
    int max_piece = 0;          // longest piece lying on this cycle
    Word witness_piece;         // empty when max_piece = 0
    bool pass = true;           // |p| < lambda * |C| for all pieces on C
};

struct PieceReport {
    int max_piece_overall = 0;       // longest piece found anywhere (up to cap)
    bool capped = false;             // a piece reached the length cap and may extend
    std::vector<CyclePieceCheck> cycles;
    std::vector<int> component_max;  // max piece on cycles per component
    std::vector<PieceOccurrence> witnesses; // one per distinct maximal piece length per cycle
    int64_t cycle_count = 0;
};

// All pieces up to length_cap: labelled paths with two distinct
// label-preserving locations in the doubled graph (inverse-orientation
// occurrences included). Classical relator lists convert via
// cycles_from_relators first.
PieceReport enumerate_pieces(const LabelledGraph& g, int n_gens, int length_cap,
                             std::size_t cycle_cap = 100000);

struct CPrimeResult {
    bool pass = true;
    Rational lambda;
    // first failing witness when pass = false
    Word witness_piece;
    int witness_cycle = -1;
    int witness_cycle_length = 0;
    PieceReport pieces;
};

CPrimeResult check_c_prime(const LabelledGraph& g, int n_gens, const Rational& lambda,
                           std::size_t cycle_cap = 100000);

// Girth (-1 for forests) and diameter per component.
std::vector<ComponentStats> girth_and_diameter(const LabelledGraph& g);

// Disjoint union of components with girth <= threshold.
LabelledGraph select_gamma_N(const LabelledGraph& g, int g_threshold);

struct DetourReport {
    bool found = false;
    int escape_distance = 0; // best max-distance-from-gamma1 over found connecting paths
    int required = 0;        // ceil(girth / 12)
    std::vector<int32_t> path;
    bool pass = false;       // escape_distance >= required
};

// Searches for a path between the endpoints of gamma1 (a subrange of the
// cycle) escaping the girth/12-neighborhood; path length capped at 5*diam.
DetourReport detour_probe(const LabelledGraph& g, int n_gens,
                          const std::vector<LabelledGraph::Pos>& cycle, int gamma1_begin,
                          int gamma1_len);

struct TruncationCheckResult {
    int kept_components = 0;
    int dropped_components = 0;
    int members_checked = 0;
    int pairs_checked = 0;
    bool monotone_ok = true;        // d <= d-bar on all trusted pairs
    bool witness_equality_ok = true; // equality for kept-alphabet witnesses
    int gauge_suspect = 0;           // pairs where equality failed (flagged, not fatal)
};

// Desk-scale check of the truncation embedding: distances never shrink in the
// truncated presentation and kept-alphabet witnesses keep their distances.
TruncationCheckResult truncation_embedding_check(const GroupSpec& spec, int g_threshold, int radius,
                                                 const GaugeTable& bound, const StratumOptions& sopts,
                                                 const BallBuildOptions& bopts = {});

} // namespace morselab
