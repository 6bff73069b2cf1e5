// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Usage: acceptance <data-dir>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"

#include "morselab/boundary.hpp"
#include "morselab/raag_cube.hpp"
#include "morselab/run.hpp"
#include "morselab/smallcanc.hpp"
#include "oracles.hpp"

using namespace morselab;

namespace {

int g_failures = 0;

double now_s() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

void report(int idx, bool pass, const std::string& what, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", idx, what.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string g_data;

GroupSpec load(const std::string& name) { return parse_spec_file(g_data + "/" + name); }

GaugeSchedule sched13() {
    GaugeSchedule s;
    s.pairs = {{Rational(1), Rational(0)}, {Rational(3), Rational(0)}};
    return s;
}

// 1. Tree exactness at R=8: delta = 0 over all trusted sphere triples and
//    N(1,0) = 0 for every geodesic between trusted pairs, under 60 s.
void criterion1() {
    double t0 = now_s();
    GroupSpec f2 = load("free2.grp");
    BallGraph ball = build_ball(f2, 8);

    ProductMatrix pm = gromov_products(ball, ball.sphere(4), ball.base());
    Rational delta = four_point_delta(pm);
    bool delta_zero = delta == Rational(0);

    GaugeSchedule s;
    s.pairs = {{Rational(1), Rational(0)}};
    long long pairs = 0, bad = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : pairs, bad)
    for (int32_t x = 0; x < ball.size(); ++x) {
        for (int32_t y = x; y < ball.size(); ++y) {
            if (!ball.trusted(x, y)) continue;
            ++pairs;
            auto g = geodesics_between(ball, x, y, 2);
            GaugeTable t = empirical_gauge(ball, g.paths[0], s);
            if (t.values[0] != 0 || t.any_flag()) ++bad;
        }
    }
    double dt = now_s() - t0;
    bool pass = delta_zero && bad == 0 && dt < 60.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "delta=%s, %lld trusted pairs, %lld nonzero gauges, %.1fs",
                  delta.str().c_str(), pairs, bad, dt);
    report(1, pass, "tree exactness for Free(2) at R=8", buf);
}

// 2. Stratum monotonicity and the covering bound on three families at R=8.
void criterion2() {
    bool pass = true;
    std::string detail;
    for (const char* name : {"free2.grp", "zz.grp", "p3.grp"}) {
        GroupSpec spec = load(name);
        BallGraph ball = build_ball(spec, 8);
        GaugeSchedule s = sched13();
        StratumOptions opts;
        std::vector<StratumReport> strata;
        for (int b : {1, 2, 3}) strata.push_back(build_stratum(ball, GaugeTable::uniform(s, b), opts));
        for (size_t k = 0; k + 1 < strata.size(); ++k)
            for (const auto& m : strata[k].members)
                pass = pass && strata[k + 1].contains(m.vertex);
        StratumReport cover = build_stratum(ball, GaugeTable::covering(s, 8), opts);
        auto [lo, hi] = ball.sphere_range(4);
        (void)lo;
        bool covered = static_cast<int32_t>(cover.members.size()) == hi;
        pass = pass && covered;
        detail += std::string(name) + "=" + std::to_string(strata[0].members.size()) + "/" +
                  std::to_string(strata[1].members.size()) + "/" +
                  std::to_string(strata[2].members.size()) + "/cover" +
                  std::to_string(cover.members.size()) + " ";
    }
    report(2, pass, "stratum monotonicity and covering bound", detail);
}

// 3. Non-Morse detection in the lattice: corner gauges grow with R.
void criterion3() {
    GroupSpec z2 = load("zz.grp");
    GaugeSchedule s;
    s.pairs = {{Rational(1), Rational(0)}};
    bool oracle_match = true, lower_ok = true, strict = true;
    std::vector<int> values, max_values;
    for (int R : {4, 6, 8}) {
        BallGraph ball = build_ball(z2, R);
        Word corner_word;
        for (int i = 0; i < R / 2; ++i) corner_word.push_back(0);
        for (int i = 0; i < R / 2; ++i) corner_word.push_back(1);
        int32_t corner = *ball.find(z2.normal_form(corner_word));
        auto geos = geodesics_between(ball, ball.base(), corner, 4096);
        oracle_match = oracle_match && geos.exact;
        int best = -1, worst = 0;
        for (const auto& g : geos.paths) {
            GaugeTable t = empirical_gauge(ball, g, s);
            oracle_match = oracle_match && !t.any_flag();
            if (best < 0 || t.values[0] < best) best = t.values[0];
            worst = std::max(worst, t.values[0]);
        }
        int oracle = oracles::lattice_best_gauge_10({R / 2, R / 2});
        oracle_match = oracle_match && best == oracle;
        lower_ok = lower_ok && 4 * best >= R; // N(1,0) >= R/4
        if (!values.empty()) strict = strict && best > values.back();
        values.push_back(best);
        max_values.push_back(worst);
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "min-gauges R=4,6,8 -> %d,%d,%d: oracle-match=%d, >=R/4 %d, strict-increase %d "
                  "(per-geodesic max gauges %d,%d,%d)",
                  values[0], values[1], values[2], oracle_match ? 1 : 0, lower_ok ? 1 : 0,
                  strict ? 1 : 0, max_values[0], max_values[1], max_values[2]);
    report(3, oracle_match && lower_ok && strict, "non-Morse detection in FreeAbelian(2)", buf);
}

struct P3Setup {
    BallGraph ball;
    StratumReport stratum;
    int bound30 = 4;
};

P3Setup p3_setup() {
    P3Setup s{build_ball(load("p3.grp"), 8), {}, 4};
    s.stratum = build_stratum(s.ball, GaugeTable::uniform(sched13(), s.bound30), {});
    return s;
}

// 4. Slimness of witness triangles against 4*N(3,0).
void criterion4(const P3Setup& ps) {
    const auto& ball = ps.ball;
    const auto& st = ps.stratum;
    long long pairs = 0, viol = 0;
    int worst = 0;
    bool certified = true;
    const auto& members = st.members;
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : pairs, viol) reduction(max : worst) \
    reduction(&& : certified)
    for (size_t i = 0; i < members.size(); ++i) {
        for (size_t j = i; j < members.size(); ++j) {
            int32_t x = members[i].vertex, y = members[j].vertex;
            if (!ball.trusted(x, y)) continue;
            ++pairs;
            auto sd = slim_defect(ball, st, x, y, 8);
            worst = std::max(worst, sd.defect);
            certified = certified && sd.certified;
            if (sd.defect > 4 * ps.bound30) ++viol;
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%lld pairs, worst defect %d <= %d, %lld violations, certified=%d",
                  pairs, worst, 4 * ps.bound30, viol, certified ? 1 : 0);
    report(4, viol == 0 && pairs > 0 && certified, "witness triangles are 4N(3,0)-slim", buf);
}

// 5. Four-point delta of the stratum sphere against 8*N(3,0).
void criterion5(const P3Setup& ps) {
    std::vector<int32_t> pts;
    auto [lo, hi] = ps.ball.sphere_range(4);
    for (int32_t v = lo; v < hi; ++v)
        if (ps.stratum.contains(v)) pts.push_back(v);
    if (pts.empty()) {
        report(5, false, "stratum sphere hyperbolicity", "empty stratum sphere");
        return;
    }
    ProductMatrix pm = gromov_products(ps.ball, pts, ps.ball.base());
    Rational delta = four_point_delta(pm);
    bool pass = delta <= Rational(8 * ps.bound30);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu sphere points, delta=%s <= %d", pts.size(),
                  delta.str().c_str(), 8 * ps.bound30);
    report(5, pass, "stratum sphere is 8N(3,0)-hyperbolic", buf);
}

// 6. Visual metric sandwich: exact for the tree, within 1e-9 for Raag(P3).
void criterion6(const P3Setup& ps) {
    bool pass = true;
    std::string detail;
    {
        GroupSpec f2 = load("free2.grp");
        BallGraph ball = build_ball(f2, 12);
        GaugeSchedule s;
        s.pairs = {{Rational(1), Rational(0)}};
        StratumReport st = build_stratum(ball, GaugeTable::covering(s, 12), {});
        BoundaryProxy proxy = make_proxy(ball, st, 6, 0.3);
        auto chain = chain_visual_metric(proxy);
        auto sw = check_visual_sandwich(proxy, chain, 0.0, 1e-9);
        // delta = 0 forces equality d = rho
        pass = pass && sw.holds && std::abs(sw.worst_lower) <= 1e-9 && std::abs(sw.worst_upper) <= 1e-9;
        detail += "F2 r=6: d=rho exact; ";
    }
    {
        std::vector<int32_t> pts;
        auto [lo, hi] = ps.ball.sphere_range(4);
        for (int32_t v = lo; v < hi; ++v)
            if (ps.stratum.contains(v)) pts.push_back(v);
        ProductMatrix pm = gromov_products(ps.ball, pts, ps.ball.base());
        double delta = four_point_delta(pm).value();
        double eps = 0.9 * epsilon_max(delta);
        BoundaryProxy proxy = make_proxy(ps.ball, ps.stratum, 4, eps);
        auto chain = chain_visual_metric(proxy);
        auto sw = check_visual_sandwich(proxy, chain, delta, 1e-9);
        pass = pass && sw.holds;
        char buf[96];
        std::snprintf(buf, sizeof buf, "P3 r=4: %d pts delta=%.3g eps=%.3g holds=%d", proxy.n(),
                      delta, eps, sw.holds ? 1 : 0);
        detail += buf;
    }
    report(6, pass, "visual metric sandwich", detail);
}

// 7. Contact-graph bounds for the three raag families at R=8.
void criterion7() {
    bool pass = true;
    std::string detail;
    for (const char* name : {"noedge2.grp", "edge.grp", "p3.grp"}) {
        GroupSpec spec = load(name);
        BallGraph ball = build_ball(spec, 8);
        GaugeSchedule s;
        s.pairs = {{Rational(1), Rational(0)}};
        StratumReport st = build_stratum(ball, GaugeTable::covering(s, 8), {});
        WallSet walls = build_hyperplanes(ball);
        ContactGraph cg = contact_graph(ball, walls);
        QMapReport rep = embedding_report(ball, st, walls, cg);
        int64_t viol = separation_distance3_violations(walls, cg);
        pass = pass && rep.all_lipschitz && viol == 0 && rep.cg_connected;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s: pairs=%zu lip=%d d3viol=%lld r=%d; ", name,
                      rep.pairs.size(), rep.all_lipschitz ? 1 : 0, static_cast<long long>(viol),
                      rep.observed_r);
        detail += buf;
    }
    report(7, pass, "contact-graph Lipschitz and separation bounds", detail);
}

// 8. C'(1/6) certification under 5 s.
void criterion8() {
    double t0 = now_s();
    GroupSpec s2 = load("surface2.grp");
    LabelledGraph g2 = cycles_from_relators(s2.internal_relators(), s2.generator_count());
    CPrimeResult pass_res = check_c_prime(g2, s2.generator_count(), Rational(1, 6));

    GroupSpec ab = load("aabb.grp");
    LabelledGraph gab = cycles_from_relators(ab.internal_relators(), ab.generator_count());
    CPrimeResult fail_res = check_c_prime(gab, ab.generator_count(), Rational(1, 6));
    double dt = now_s() - t0;

    bool pass = pass_res.pass && pass_res.pieces.max_piece_overall == 1 && !fail_res.pass &&
                ab.word_to_text(fail_res.witness_piece) == "a" && dt < 5.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "surface passes (max piece 1), aabb fails (witness '%s'), %.2fs",
                  ab.word_to_text(fail_res.witness_piece).c_str(), dt);
    report(8, pass, "C'(1/6) certification", buf);
}

// 9. Truncation monotone bound with witness equality on the kept alphabet.
void criterion9() {
    GroupSpec two = load("twocomp.grp");
    GaugeSchedule s;
    s.pairs = {{Rational(1), Rational(0)}};
    StratumOptions sopts;
    TruncationCheckResult res =
        truncation_embedding_check(two, 8, 4, GaugeTable::covering(s, 4), sopts);
    bool pass = res.kept_components == 1 && res.dropped_components == 1 && res.monotone_ok &&
                res.witness_equality_ok && res.members_checked > 0 && res.pairs_checked > 0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "members=%d pairs=%d monotone=%d equality=%d suspect=%d",
                  res.members_checked, res.pairs_checked, res.monotone_ok ? 1 : 0,
                  res.witness_equality_ok ? 1 : 0, res.gauge_suspect);
    report(9, pass, "truncation keeps distances monotone and witness-exact", buf);
}

// 10. Byte-identical JSON across repeated runs of every command.
void criterion10() {
    bool pass = true;
    std::string detail;
    std::vector<RunConfig> cfgs;
    auto mk = [&](const char* cmd, const char* input, int radius) {
        RunConfig c;
        c.command = cmd;
        c.input_path = g_data + "/" + input;
        c.radius = radius;
        return c;
    };
    cfgs.push_back(mk("stratum", "free2.grp", 6));
    cfgs.push_back(mk("hyperbolicity", "p3.grp", 6));
    cfgs.push_back(mk("boundary", "free2.grp", 6));
    cfgs.push_back(mk("raag", "edge.grp", 6));
    {
        RunConfig c = mk("smallcanc", "twocomp.grp", 4);
        c.g_threshold = 8;
        cfgs.push_back(c);
    }
    for (const auto& cfg : cfgs) {
        RunResult a = run_command(cfg);
        RunResult b = run_command(cfg);
        bool ok = a.exit_code == 0 && b.exit_code == 0 && a.json == b.json && a.csv == b.csv;
        pass = pass && ok;
        detail += cfg.command + (ok ? "=ok " : "=MISMATCH ");
    }
    report(10, pass, "deterministic reports", detail);
}

} // namespace

int main(int argc, char** argv) {
    g_data = argc > 1 ? argv[1] : "data";
    double t0 = now_s();

    criterion1();
    criterion2();
    criterion3();
    P3Setup ps = p3_setup();
    criterion4(ps);
    criterion5(ps);
    criterion6(ps);
    criterion7();
    criterion8();
    criterion9();
    criterion10();

    std::printf("%s: %d/10 criteria passed in %.1fs\n", g_failures == 0 ? "OK" : "FAILURES",
                10 - g_failures, now_s() - t0);
    return g_failures == 0 ? 0 : 1;
}
