#include "morselab/morse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace morselab {

GaugeSchedule GaugeSchedule::standard() {
    GaugeSchedule s;
    s.pairs = {{Rational(1), Rational(0)}, {Rational(2), Rational(0)}, {Rational(3), Rational(0)},
               {Rational(1), Rational(2)}, {Rational(2), Rational(2)}, {Rational(3), Rational(2)}};
    return s;
}

int GaugeSchedule::find(const Rational& K, const Rational& C) const {
    for (size_t i = 0; i < pairs.size(); ++i)
        if (pairs[i].K == K && pairs[i].C == C) return static_cast<int>(i);
    return -1;
}

void GaugeSchedule::validate() const {
    if (pairs.empty()) throw InputError("gauge schedule must be nonempty");
    for (const auto& p : pairs) {
        if (p.K < Rational(1)) throw InputError("gauge pair requires K >= 1");
        if (p.C < Rational(0)) throw InputError("gauge pair requires C >= 0");
    }
}

bool GaugeTable::leq(const GaugeTable& bound) const {
    if (values.size() != bound.values.size()) throw InputError("gauge tables over different schedules");
    for (size_t i = 0; i < values.size(); ++i)
        if (values[i] > bound.values[i]) return false;
    return true;
}

bool GaugeTable::any_flag() const {
    for (size_t i = 0; i < values.size(); ++i)
        if (truncated[i] || guard_skipped[i] || uncertified[i]) return true;
    return false;
}

GaugeTable GaugeTable::uniform(const GaugeSchedule& s, int value) {
    GaugeTable t;
    t.schedule = s;
    t.values.assign(s.pairs.size(), value);
    t.truncated.assign(s.pairs.size(), false);
    t.guard_skipped.assign(s.pairs.size(), false);
    t.uncertified.assign(s.pairs.size(), false);
    return t;
}

GaugeTable GaugeTable::covering(const GaugeSchedule& s, int radius) {
    GaugeTable t = uniform(s, 0);
    for (size_t i = 0; i < s.pairs.size(); ++i) {
        Rational v = radius * s.pairs[i].K + s.pairs[i].C;
        t.values[i] = static_cast<int>(v.num / v.den); // floor; v >= 0
    }
    return t;
}

// --- scratch-based BFS ---------------------------------------------------------

namespace {

// Epoch-stamped scratch so repeated bounded searches skip reinitialization.
struct Scratch {
    std::vector<int32_t> stamp;
    std::vector<int> val;
    std::vector<int32_t> aux; // nearest-source ids for multi-source searches
    int32_t epoch = 0;
    std::vector<int32_t> frontier, next;

    void ensure(size_t n) {
        if (stamp.size() < n) {
            stamp.assign(n, 0);
            val.assign(n, 0);
            aux.assign(n, -1);
        }
    }
    void begin(size_t n) {
        ensure(n);
        if (epoch == INT32_MAX) {
            std::fill(stamp.begin(), stamp.end(), 0);
            epoch = 0;
        }
        ++epoch;
        frontier.clear();
        next.clear();
    }
    bool seen(int32_t v) const { return stamp[v] == epoch; }
    void set(int32_t v, int d, int32_t near = -1) {
        stamp[v] = epoch;
        val[v] = d;
        aux[v] = near;
    }
    int get(int32_t v) const { return stamp[v] == epoch ? val[v] : -1; }
    int32_t get_aux(int32_t v) const { return stamp[v] == epoch ? aux[v] : -1; }
};

Scratch& tl_scratch(int which) {
    thread_local Scratch s[3];
    return s[which];
}

void scratch_bfs(const BallGraph& ball, int32_t src, int depth_cap, Scratch& s) {
    s.begin(ball.size());
    s.set(src, 0, src);
    s.frontier.push_back(src);
    int d = 0;
    while (!s.frontier.empty() && (depth_cap < 0 || d < depth_cap)) {
        s.next.clear();
        for (int32_t v : s.frontier) {
            const int32_t* row = &ball.adj[static_cast<size_t>(v) * ball.letters];
            for (int l = 0; l < ball.letters; ++l) {
                int32_t u = row[l];
                if (u >= 0 && !s.seen(u)) {
                    s.set(u, d + 1, s.aux[v]);
                    s.next.push_back(u);
                }
            }
        }
        s.frontier.swap(s.next);
        ++d;
    }
}

void scratch_bfs_multi(const BallGraph& ball, const std::vector<int32_t>& srcs, int depth_cap, Scratch& s) {
    s.begin(ball.size());
    for (int32_t v : srcs)
        if (!s.seen(v)) {
            s.set(v, 0, v);
            s.frontier.push_back(v);
        }
    int d = 0;
    while (!s.frontier.empty() && (depth_cap < 0 || d < depth_cap)) {
        s.next.clear();
        for (int32_t v : s.frontier) {
            const int32_t* row = &ball.adj[static_cast<size_t>(v) * ball.letters];
            for (int l = 0; l < ball.letters; ++l) {
                int32_t u = row[l];
                if (u >= 0 && !s.seen(u)) {
                    s.set(u, d + 1, s.aux[v]);
                    s.next.push_back(u);
                }
            }
        }
        s.frontier.swap(s.next);
        ++d;
    }
}

// Exactness certificate: an in-ball distance d(u,v) is the true group
// distance whenever |u| + |v| + d <= 2R.
inline bool dist_certified(const BallGraph& ball, int32_t u, int32_t v, int d) {
    return ball.dist[u] + ball.dist[v] + d <= 2 * ball.radius;
}

// Minimal integer d with K(d + C) >= span, clamped at 0.
inline int qg_threshold(const GaugePair& kc, int span) {
    long long p = kc.K.num, q = kc.K.den, c = kc.C.num, e = kc.C.den;
    long long rhs = static_cast<long long>(span) * q * e - p * c;
    if (rhs <= 0) return 0;
    long long denom = p * e;
    return static_cast<int>((rhs + denom - 1) / denom);
}

// floor(K * (dist + C))
inline int qg_length_cap(const GaugePair& kc, int dist) {
    long long p = kc.K.num, q = kc.K.den, c = kc.C.num, e = kc.C.den;
    long long num = p * (static_cast<long long>(dist) * e + c);
    return static_cast<int>(num / (q * e));
}

inline bool guard_ok_known(const BallGraph& ball, int32_t x, int32_t y, const GaugePair& kc, int dxy) {
    Rational lhs = Rational(ball.dist[x] + ball.dist[y]) + kc.K * (Rational(dxy) + kc.C);
    return lhs <= Rational(2LL * ball.radius);
}

struct QgSearchResult {
    bool truncated = false;
    bool aborted = false;
};

// DFS over edge paths x..y of length <= K(d+C) with incremental pairwise
// lower-bound checks. Every accepted full path carries exactness certificates
// for all checked pair distances: for a path pair (v_i, v_j),
// |v_i|+|v_j|+d <= |x|+|y|+L <= 2R by the guard.
template <typename OnPath>
QgSearchResult qg_search(const BallGraph& ball, int32_t x, int32_t y, const GaugePair& kc, int dxy,
                         std::int64_t budget, OnPath&& on_path) {
    QgSearchResult res;
    const int Lmax = qg_length_cap(kc, dxy);

    Scratch& dy = tl_scratch(0);
    scratch_bfs(ball, y, Lmax, dy);

    std::vector<int32_t> path{x};
    if (x == y) {
        if (!on_path(path)) {
            res.aborted = true;
            return res;
        }
        if (Lmax == 0) return res;
    }

    std::vector<int> end_cap{qg_length_cap(kc, dxy)};
    std::vector<int> next_letter{0};
    std::int64_t expansions = 0;
    Scratch& pair_bfs = tl_scratch(1);
    std::vector<int> unresolved;

    while (!path.empty()) {
        const int i = static_cast<int>(path.size()) - 1;
        const int32_t v = path[i];
        if (next_letter[i] == 0 && i > 0 && v == y) {
            if (!on_path(path)) {
                res.aborted = true;
                return res;
            }
        }
        bool descended = false;
        while (next_letter[i] < ball.letters) {
            const int l = next_letter[i]++;
            const int32_t u = ball.neighbor(v, static_cast<Letter>(l));
            if (u < 0) continue;
            const int pos = i + 1;
            if (pos > Lmax) break;
            const int du_y = dy.get(u);
            if (du_y < 0 || pos + du_y > Lmax) continue;
            // feasibility of some final length: dxy <= L_end and for every j,
            // L_end <= j + floor(K*(d(v_j,y)+C)); prune when the window closes
            const int cap_here = std::min(end_cap[i], pos + qg_length_cap(kc, du_y));
            if (std::max(pos + du_y, dxy) > cap_here) continue;

            bool ok = true;
            int max_radius = 0;
            unresolved.clear();
            for (int j = pos - 1; j >= 0; --j) {
                const int t = qg_threshold(kc, pos - j);
                if (t <= 0) continue;
                const int32_t w = path[j];
                int lb = std::abs(ball.dist[w] - ball.dist[u]);
                const int wy = dy.get(w);
                if (wy >= 0) lb = std::max(lb, std::abs(wy - du_y));
                if (lb >= t) continue;
                unresolved.push_back(j);
                max_radius = std::max(max_radius, t);
            }
            if (!unresolved.empty()) {
                scratch_bfs(ball, u, max_radius, pair_bfs);
                for (int j : unresolved) {
                    const int t = qg_threshold(kc, pos - j);
                    const int d = pair_bfs.get(path[j]);
                    if (d >= 0 && d < t) {
                        ok = false;
                        break;
                    }
                }
            }
            if (!ok) continue;
            if (++expansions > budget) {
                res.truncated = true;
                return res;
            }
            path.push_back(u);
            end_cap.push_back(cap_here);
            next_letter.push_back(0);
            descended = true;
            break;
        }
        if (descended) continue;
        path.pop_back();
        end_cap.pop_back();
        next_letter.pop_back();
    }
    return res;
}

} // namespace

bool qg_guard_ok(const BallGraph& ball, int32_t x, int32_t y, const GaugePair& kc) {
    int d = bounded_distance(ball, x, y, -1);
    if (d < 0) return false;
    return guard_ok_known(ball, x, y, kc, d);
}

QgPaths enumerate_quasigeodesics(const BallGraph& ball, int32_t x, int32_t y, const GaugePair& kc,
                                 const QgOptions& opts) {
    if (kc.K < Rational(1) || kc.C < Rational(0)) throw InputError("invalid (K,C)");
    int dxy = bounded_distance(ball, x, y, -1);
    if (dxy < 0) throw InputError("quasi-geodesic endpoints are disconnected in the ball");
    if (!guard_ok_known(ball, x, y, kc, dxy))
        throw InputError("enumeration guard violated: |x|+|y|+K(d+C) > 2R");
    QgPaths out;
    auto res = qg_search(ball, x, y, kc, dxy, opts.budget, [&](const std::vector<int32_t>& p) {
        out.paths.push_back(p);
        return true;
    });
    out.exact = !res.truncated;
    return out;
}

// --- empirical gauge ----------------------------------------------------------

GaugeTable empirical_gauge(const BallGraph& ball, const std::vector<int32_t>& geodesic,
                           const GaugeSchedule& schedule, const QgOptions& opts, int abort_above) {
    schedule.validate();
    if (geodesic.empty()) throw InputError("empty geodesic");
    const int m = static_cast<int>(geodesic.size()) - 1;
    GaugeTable table = GaugeTable::uniform(schedule, 0);

    int max_L = 0;
    for (const auto& kc : schedule.pairs) max_L = std::max(max_L, qg_length_cap(kc, m));
    const int exc_cap = max_L / 2 + 2;
    Scratch& gf = tl_scratch(2);
    scratch_bfs_multi(ball, geodesic, exc_cap, gf);

    for (size_t si = 0; si < schedule.pairs.size(); ++si) {
        const GaugePair& kc = schedule.pairs[si];
        int best = 0;
        bool truncated = false, skipped = false, uncert = false, done = false;
        for (int i = 0; i <= m && !done; ++i) {
            for (int j = i; j <= m && !done; ++j) {
                const int32_t u = geodesic[i], v = geodesic[j];
                const int duv = j - i; // geodesic parameterization
                if (!guard_ok_known(ball, u, v, kc, duv)) {
                    skipped = true;
                    continue;
                }
                auto res = qg_search(ball, u, v, kc, duv, opts.budget,
                                     [&](const std::vector<int32_t>& p) {
                    for (int32_t pv : p) {
                        int d = gf.get(pv);
                        if (d < 0) { // beyond the excursion field cap
                            uncert = true;
                            d = exc_cap;
                        } else if (!dist_certified(ball, pv, gf.get_aux(pv), d)) {
                            uncert = true;
                        }
                        if (d > best) best = d;
                        if (abort_above >= 0 && best > abort_above) return false;
                    }
                    return true;
                });
                truncated = truncated || res.truncated;
                if (res.aborted) done = true;
            }
        }
        table.values[si] = best;
        table.truncated[si] = truncated;
        table.guard_skipped[si] = skipped;
        table.uncertified[si] = uncert;
        if (done) break; // bound already violated; remaining pairs irrelevant
    }
    return table;
}

// --- strata -------------------------------------------------------------------

const StratumMember* StratumReport::member(int32_t v) const {
    auto it = std::lower_bound(members.begin(), members.end(), v,
                               [](const StratumMember& mb, int32_t key) { return mb.vertex < key; });
    if (it == members.end() || it->vertex != v) return nullptr;
    return &*it;
}

StratumReport build_stratum(const BallGraph& ball, const GaugeTable& bound, const StratumOptions& opts) {
    bound.schedule.validate();
    StratumReport rep;
    rep.bound = bound;
    rep.schedule = bound.schedule;
    rep.member_radius = opts.member_radius >= 0 ? opts.member_radius : ball.radius / 2;
    rep.is_member.assign(ball.size(), false);
    rep.rejected_truncated.assign(ball.size(), false);

    const int32_t limit = ball.sphere_start[std::min(rep.member_radius + 1,
                                                     static_cast<int>(ball.sphere_start.size()) - 1)];
    std::vector<StratumMember> slots(limit);
    std::vector<char> member_flag(limit, 0), reject_flag(limit, 0);
    const int max_bound = *std::max_element(bound.values.begin(), bound.values.end());
    std::string error;

#pragma omp parallel for schedule(dynamic, 4)
    for (int32_t v = 0; v < limit; ++v) {
        try {
            auto geos = geodesics_between(ball, ball.base(), v, opts.geodesic_cap);
            bool any_trunc = !geos.exact;
            for (const auto& g : geos.paths) {
                GaugeTable t = empirical_gauge(ball, g, bound.schedule, opts.qg, max_bound);
                if (t.leq(bound)) {
                    StratumMember m;
                    m.vertex = v;
                    m.witness = g;
                    m.gauge = empirical_gauge(ball, g, bound.schedule, opts.qg);
                    m.truncated = any_trunc || m.gauge.any_flag();
                    slots[v] = std::move(m);
                    member_flag[v] = 1;
                    break;
                }
                any_trunc = any_trunc || t.any_flag();
            }
            if (!member_flag[v]) reject_flag[v] = any_trunc ? 1 : 0;
        } catch (const std::exception& e) {
#pragma omp critical
            error = e.what();
        }
    }
    if (!error.empty()) throw CapError("stratum construction failed: " + error);

    for (int32_t v = 0; v < limit; ++v) {
        if (member_flag[v]) {
            rep.is_member[v] = true;
            rep.members.push_back(std::move(slots[v]));
        } else {
            rep.rejected_truncated[v] = reject_flag[v] != 0;
        }
    }
    return rep;
}

// --- slimness -----------------------------------------------------------------

namespace {

// max over `from` of the distance to the union of the other two sides,
// searched up to depth_cap (exceeding the cap reports cap+1). Iterative
// deepening keeps the searched neighborhood proportional to the defect.
int side_defect(const BallGraph& ball, const std::vector<int32_t>& from,
                const std::vector<int32_t>& other1, const std::vector<int32_t>& other2, int depth_cap,
                bool& certified) {
    std::vector<int32_t> targets = other1;
    targets.insert(targets.end(), other2.begin(), other2.end());
    Scratch& s = tl_scratch(2);
    int cap = 2;
    for (;;) {
        cap = std::min(cap, depth_cap);
        scratch_bfs_multi(ball, targets, cap, s);
        bool all_reached = true;
        for (int32_t p : from) all_reached = all_reached && s.get(p) >= 0;
        if (all_reached || cap >= depth_cap) break;
        cap *= 2;
    }
    int worst = 0;
    for (int32_t p : from) {
        int d = s.get(p);
        if (d < 0) {
            certified = false;
            d = depth_cap + 1;
        } else if (!dist_certified(ball, p, s.get_aux(p), d)) {
            certified = false;
        }
        worst = std::max(worst, d);
    }
    return worst;
}

} // namespace

SlimDefectResult slim_defect(const BallGraph& ball, const StratumReport& stratum, int32_t x, int32_t y,
                             int geodesic_cap) {
    const StratumMember* mx = stratum.member(x);
    const StratumMember* my = stratum.member(y);
    if (!mx || !my) throw InputError("slim_defect endpoints must be stratum members");
    if (!ball.trusted(x, y)) throw InputError("untrusted member pair");

    SlimDefectResult out;
    if (x == y) {
        out.best_geodesic = {x};
        return out;
    }
    // search depth: anything deeper than the 4*N(3,0) claim is already a
    // violation, so cap a little above it when (3,0) is scheduled
    int idx30 = stratum.schedule.find(Rational(3), Rational(0));
    int depth_cap = idx30 >= 0 ? 4 * stratum.bound.values[idx30] + 2 : 2 * ball.radius;

    auto geos = geodesics_between(ball, x, y, geodesic_cap);
    out.exact = geos.exact;
    int best = -1;
    for (const auto& g : geos.paths) {
        bool cert = true;
        int d1 = side_defect(ball, mx->witness, my->witness, g, depth_cap, cert);
        int d2 = side_defect(ball, my->witness, mx->witness, g, depth_cap, cert);
        int d3 = side_defect(ball, g, mx->witness, my->witness, depth_cap, cert);
        int defect = std::max({d1, d2, d3});
        if (best < 0 || defect < best) {
            best = defect;
            out.best_geodesic = g;
            out.certified = cert;
        }
        if (best == 0) break; // nothing can improve on a tripod
    }
    out.defect = best < 0 ? 0 : best;
    return out;
}

// --- concatenation checks -------------------------------------------------------

namespace {

// Verifies d(v_i,v_j) >= (j-i)/K - C on a fixed path with exact distances.
ConcatPathCheck check_path_condition(const BallGraph& ball, std::vector<int32_t> path, long long Knum,
                                     long long Kden, long long Cnum, long long Cden) {
    ConcatPathCheck out;
    out.path = std::move(path);
    out.holds = true;
    const int L = static_cast<int>(out.path.size()) - 1;
    long long worst = 0;
    Scratch& s = tl_scratch(2);
    for (int i = 0; i <= L; ++i) {
        scratch_bfs(ball, out.path[i], -1, s);
        for (int j = i + 1; j <= L; ++j) {
            int d = s.get(out.path[j]);
            if (d < 0) {
                out.certified = false;
                continue;
            }
            if (!dist_certified(ball, out.path[i], out.path[j], d)) out.certified = false;
            // d >= (j-i)/K - C  <=>  d*Knum*Cden >= (j-i)*Kden*Cden - Knum*Cnum*Kden/Kden
            long long lhs = d * Knum * Cden;
            long long rhs = static_cast<long long>(j - i) * Kden * Cden - Knum * Cnum * Kden;
            long long margin = lhs - rhs;
            if (margin < worst) worst = margin;
            if (lhs < rhs) out.holds = false;
        }
    }
    out.worst_num = static_cast<int>(worst);
    return out;
}

} // namespace

ConcatReport concat_qg_check(const BallGraph& ball, const std::vector<int32_t>& l1,
                             const std::vector<int32_t>& l2, const QgOptions& opts) {
    if (l1.empty() || l2.empty() || l1.front() != ball.base() || l2.front() != ball.base())
        throw InputError("concat check expects geodesics starting at the basepoint");
    ConcatReport rep;
    const int32_t a = l1.back(), b = l2.back();
    if (!ball.trusted(a, b)) throw InputError("untrusted endpoint pair");

    auto geos = geodesics_between(ball, a, b, 1);
    if (geos.paths.empty()) throw InputError("no geodesic between endpoints");
    const auto& P = geos.paths.front();
    size_t zi = 0;
    for (size_t i = 1; i < P.size(); ++i)
        if (ball.dist[P[i]] < ball.dist[P[zi]]) zi = i;
    rep.z = P[zi];

    auto zgeos = geodesics_between(ball, rep.z, ball.base(), 1);
    const auto& gamma = zgeos.paths.front(); // z .. e

    std::vector<int32_t> side1(P.begin(), P.begin() + zi + 1);
    std::reverse(side1.begin(), side1.end()); // a .. z
    side1.insert(side1.end(), gamma.begin() + 1, gamma.end());
    std::vector<int32_t> side2(P.begin() + zi, P.end()); // z .. b
    std::reverse(side2.begin(), side2.end());            // b .. z
    side2.insert(side2.end(), gamma.begin() + 1, gamma.end());

    rep.side1 = check_path_condition(ball, side1, 3, 1, 0, 1);
    rep.side2 = check_path_condition(ball, side2, 3, 1, 0, 1);

    GaugeSchedule s30;
    s30.pairs = {{Rational(3), Rational(0)}};
    GaugeTable t1 = empirical_gauge(ball, l1, s30, opts);
    GaugeTable t2 = empirical_gauge(ball, l2, s30, opts);
    rep.gauge30 = std::max(t1.values[0], t2.values[0]);
    rep.certified = rep.side1.certified && rep.side2.certified && !t1.any_flag() && !t2.any_flag();

    const int T = static_cast<int>(std::min(l1.size(), l2.size())) - 1;
    std::vector<int> dpair(T + 1, -1);
    int t0 = -1;
    for (int t = T; t >= 0; --t) {
        int d = bounded_distance(ball, l1[t], l2[t], -1);
        dpair[t] = d;
        if (d > 4 * rep.gauge30)
            t0 = t;
        else
            break;
    }
    if (t0 >= 0 && t0 <= T) {
        rep.hypothesis_met = true;
        rep.t0 = t0;
        // discrete slack: d changes by at most 2 per unit step
        rep.t0_close = t0 == 0 || dpair[t0] <= std::max(6 * rep.gauge30, 4 * rep.gauge30 + 2);
        std::vector<int32_t> path(l1.begin() + t0, l1.end());
        std::reverse(path.begin(), path.end()); // y1 .. x1
        auto mid = geodesics_between(ball, l1[t0], l2[t0], 1);
        const auto& m = mid.paths.front();
        path.insert(path.end(), m.begin() + 1, m.end());        // .. x2
        path.insert(path.end(), l2.begin() + t0 + 1, l2.end()); // .. y2
        ConcatPathCheck pc = check_path_condition(ball, path, 1, 1, 12LL * rep.gauge30, 1);
        rep.p_holds = pc.holds;
        rep.p_worst_defect = static_cast<int>(-pc.worst_num);
        rep.certified = rep.certified && pc.certified;
    }
    return rep;
}

PairGaugeResult measure_pair_gauge(const BallGraph& ball, int32_t a, int32_t b,
                                   const GaugeSchedule& schedule, const QgOptions& opts,
                                   int geodesic_cap) {
    if (!ball.trusted(a, b)) throw InputError("untrusted pair");
    auto geos = geodesics_between(ball, a, b, geodesic_cap);
    PairGaugeResult out;
    out.exact = geos.exact;
    int best_max = -1;
    for (const auto& g : geos.paths) {
        GaugeTable t = empirical_gauge(ball, g, schedule, opts);
        int mx = *std::max_element(t.values.begin(), t.values.end());
        if (best_max < 0 || mx < best_max) {
            best_max = mx;
            out.geodesic = g;
            out.gauge = t;
        }
    }
    return out;
}

} // namespace morselab
