#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "morselab/cayley.hpp"
#include "morselab/rational.hpp"

namespace morselab {

struct GaugePair {
    Rational K{1};
    Rational C{0};
    friend bool operator==(const GaugePair& a, const GaugePair& b) { return a.K == b.K && a.C == b.C; }
};

struct GaugeSchedule {
    std::vector<GaugePair> pairs;

    static GaugeSchedule standard(); // {(1,0),(2,0),(3,0),(1,2),(2,2),(3,2)}
    int find(const Rational& K, const Rational& C) const;
    void validate() const; // nonempty, K >= 1, C >= 0
};

// Empirical Morse gauge over a schedule. Values are max excursions of the
// enumerated quasi-geodesic family, so they lower-bound any true gauge.
struct GaugeTable {
    GaugeSchedule schedule;
    std::vector<int> values;
    std::vector<bool> truncated;     // budget hit for this pair
    std::vector<bool> guard_skipped; // some probe pair failed the guard
    std::vector<bool> uncertified;   // an excursion distance lacked the exactness certificate

    bool leq(const GaugeTable& bound) const; // pointwise, same schedule
    bool any_flag() const;

    static GaugeTable uniform(const GaugeSchedule& s, int value);
    // Covering bound N(K,C) = K*R + C rounded down.
    static GaugeTable covering(const GaugeSchedule& s, int radius);
};

struct QgOptions {
    std::int64_t budget = 2'000'000; // DFS node expansions per probe
};

struct QgPaths {
    std::vector<std::vector<int32_t>> paths;
    bool exact = true; // false when the budget truncated the search
};

// Checks the conservative enumeration guard |x|+|y|+K(d(x,y)+C) <= 2R.
bool qg_guard_ok(const BallGraph& ball, int32_t x, int32_t y, const GaugePair& kc);

// All edge paths x..y of length L <= K*d(x,y)+K*C satisfying the discrete
// lower quasi-geodesic condition d(v_i,v_j) >= |i-j|/K - C for all i<j.
QgPaths enumerate_quasigeodesics(const BallGraph& ball, int32_t x, int32_t y, const GaugePair& kc,
                                 const QgOptions& opts = {});

// Max excursion of enumerated (K,C) families with endpoints on the geodesic,
// per schedule pair. abort_above >= 0 stops a probe early once the excursion
// provably exceeds it (used for stratum membership tests).
GaugeTable empirical_gauge(const BallGraph& ball, const std::vector<int32_t>& geodesic,
                           const GaugeSchedule& schedule, const QgOptions& opts = {},
                           int abort_above = -1);

struct StratumOptions {
    int member_radius = -1; // default floor(R/2)
    int geodesic_cap = 4096;
    QgOptions qg;
};

struct StratumMember {
    int32_t vertex = -1;
    std::vector<int32_t> witness; // geodesic e..vertex achieving the bound
    GaugeTable gauge;             // measured on the witness
    bool truncated = false;       // any enumeration flag while certifying
};

struct StratumReport {
    GaugeTable bound;
    GaugeSchedule schedule;
    int member_radius = 0;
    std::vector<StratumMember> members;   // ordered by vertex id
    std::vector<bool> is_member;          // indexed by ball vertex id
    std::vector<bool> rejected_truncated; // non-members whose rejection saw truncation

    bool contains(int32_t v) const { return v < static_cast<int32_t>(is_member.size()) && is_member[v]; }
    const StratumMember* member(int32_t v) const;
};

StratumReport build_stratum(const BallGraph& ball, const GaugeTable& bound,
                            const StratumOptions& opts = {});

struct SlimDefectResult {
    int defect = 0;
    std::vector<int32_t> best_geodesic; // x..y geodesic achieving the minimum
    bool exact = true;                  // false when geodesic enumeration truncated
    bool certified = true;              // all point distances carried exactness certificates
};

// Minimal slimness constant over triangles (witness e..x, witness e..y, g) for
// g ranging over enumerated x..y geodesics.
SlimDefectResult slim_defect(const BallGraph& ball, const StratumReport& stratum, int32_t x, int32_t y,
                             int geodesic_cap = 256);

struct ConcatPathCheck {
    std::vector<int32_t> path;
    bool holds = false;   // discrete (3,0) lower bound for all pairs
    int worst_num = 0;    // most violated pair: 3*d(v_i,v_j) - (j-i), minimized
    bool certified = true;
};

struct ConcatReport {
    int32_t z = -1; // point of the ShortLex-first geodesic [a,b] closest to e
    ConcatPathCheck side1, side2;

    int gauge30 = 0;             // max of the two measured gauges at (3,0)
    bool hypothesis_met = false; // d(l1(t),l2(t)) > 4*N(3,0) for t >= t0 within the ball
    int t0 = -1;
    bool t0_close = false; // d(l1(t0),l2(t0)) <= 6*N(3,0)
    bool p_holds = false;  // concatenated path is a (1, 12*N(3,0)) quasi-geodesic
    int p_worst_defect = 0;
    bool certified = true;
};

ConcatReport concat_qg_check(const BallGraph& ball, const std::vector<int32_t>& l1,
                             const std::vector<int32_t>& l2, const QgOptions& opts = {});

// Measured gauge of the best geodesic between two stratum members; reporting
// helper for the member-to-member transfer claim.
struct PairGaugeResult {
    std::vector<int32_t> geodesic;
    GaugeTable gauge;
    bool exact = true;
};
PairGaugeResult measure_pair_gauge(const BallGraph& ball, int32_t a, int32_t b,
                                   const GaugeSchedule& schedule, const QgOptions& opts = {},
                                   int geodesic_cap = 256);

} // namespace morselab
