// Benchmark comparing the OpenMP kernels against the serial reference
// implementations. Run from the repository root:
//   ./build/morselab_bench [data-dir]

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "morselab/boundary.hpp"
#include "morselab/reference.hpp"

using namespace morselab;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename F>
double timed(F&& f) {
    double t0 = now_ms();
    f();
    return now_ms() - t0;
}

void row(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   %s\n", name, serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, equal ? "match" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    std::string data = argc > 1 ? argv[1] : "data";
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#endif
    std::printf("%-28s %13s %13s\n", "kernel", "serial", "openmp");

    GroupSpec f2 = parse_spec_file(data + "/free2.grp");
    GroupSpec p3 = parse_spec_file(data + "/p3.grp");

    // ball build
    {
        BallGraph serial_ball, par_ball;
        double ts = timed([&] { serial_ball = reference::build_ball(f2, 11); });
        BallBuildOptions opts;
        double tp = timed([&] { par_ball = build_ball(f2, 11, opts); });
        row("ball build F2 R=11", ts, tp,
            serial_ball.size() == par_ball.size() && serial_ball.words == par_ball.words);
    }

    BallGraph ball = build_ball(p3, 8);
    std::vector<int32_t> points;
    {
        auto [lo, hi] = ball.sphere_range(4);
        for (int32_t v = lo; v < hi; ++v) points.push_back(v);
    }

    // product matrix over the 214-point sphere of the P3 ball
    ProductMatrix pm_serial, pm_par;
    {
        double ts = timed([&] { pm_serial = reference::gromov_products(ball, points, ball.base()); });
        double tp = timed([&] { pm_par = gromov_products(ball, points, ball.base()); });
        row("gromov products (214 pts)", ts, tp, pm_serial.twice == pm_par.twice);
    }

    // four-point delta
    {
        Rational ds, dp;
        double ts = timed([&] { ds = reference::four_point_delta(pm_serial); });
        double tp = timed([&] { dp = four_point_delta(pm_par); });
        row("four-point delta", ts, tp, ds == dp);
    }

    // chain metric over a 324-point tree proxy
    {
        BallGraph fball = build_ball(f2, 10);
        GaugeSchedule s;
        s.pairs = {{Rational(1), Rational(0)}};
        StratumReport st = build_stratum(fball, GaugeTable::covering(s, 10), {});
        BoundaryProxy proxy = make_proxy(fball, st, 5, 0.2);
        std::vector<double> cs, cp;
        double ts = timed([&] { cs = reference::chain_visual_metric(proxy); });
        double tp = timed([&] { cp = chain_visual_metric(proxy); });
        bool equal = cs.size() == cp.size();
        for (size_t i = 0; equal && i < cs.size(); ++i) equal = std::abs(cs[i] - cp[i]) < 1e-12;
        row("chain visual metric (324)", ts, tp, equal);
    }

    // stratum gauge kernel: thread scaling of the same code path
    {
        GaugeSchedule s;
        s.pairs = {{Rational(1), Rational(0)}, {Rational(3), Rational(0)}};
        StratumReport st1, stn;
#ifdef _OPENMP
        int max_threads = omp_get_max_threads();
        omp_set_num_threads(1);
#endif
        double ts = timed([&] { st1 = build_stratum(ball, GaugeTable::uniform(s, 3), {}); });
#ifdef _OPENMP
        omp_set_num_threads(max_threads);
#endif
        double tp = timed([&] { stn = build_stratum(ball, GaugeTable::uniform(s, 3), {}); });
        bool equal = st1.members.size() == stn.members.size();
        for (size_t i = 0; equal && i < st1.members.size(); ++i)
            equal = st1.members[i].vertex == stn.members[i].vertex &&
                    st1.members[i].witness == stn.members[i].witness;
        row("stratum gauge probes", ts, tp, equal);
    }
    return 0;
}
