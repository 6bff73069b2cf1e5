#include "morselab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace morselab {

ProductMatrix gromov_products(const BallGraph& ball, const std::vector<int32_t>& points, int32_t base) {
    ProductMatrix pm;
    pm.points = points;
    pm.base = base;
    const int n = pm.n();
    pm.twice.assign(static_cast<size_t>(n) * n, 0);
    for (int32_t p : points)
        if (!ball.trusted(base, p)) throw InputError("untrusted point/base pair in product matrix");

    std::vector<int> base_d(n);
    for (int i = 0; i < n; ++i) base_d[i] = distance(ball, base, points[i]);

    std::string error;
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) {
        try {
            std::vector<int> dist;
            bfs_distances(ball, points[i], -1, dist);
            for (int j = i; j < n; ++j) {
                if (!ball.trusted(points[i], points[j]))
                    throw InputError("untrusted pair in product matrix");
                int dij = dist[points[j]];
                if (dij < 0) throw InputError("pair disconnected in ball");
                int v2 = base_d[i] + base_d[j] - dij; // 2*(x.y)_base
                pm.twice[static_cast<size_t>(i) * n + j] = v2;
                pm.twice[static_cast<size_t>(j) * n + i] = v2;
            }
        } catch (const std::exception& e) {
#pragma omp critical
            error = e.what();
        }
    }
    if (!error.empty()) throw InputError(error);
    return pm;
}

Rational four_point_delta(const ProductMatrix& pm) {
    const int n = pm.n();
    int worst2 = 0;
#pragma omp parallel for reduction(max : worst2) schedule(dynamic, 4)
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            const int xy = pm.at2(x, y);
            for (int z = 0; z < n; ++z) {
                int need = std::min(pm.at2(x, z), pm.at2(z, y)) - xy;
                if (need > worst2) worst2 = need;
            }
        }
    }
    return Rational(worst2, 2);
}

double epsilon_max(double delta, double default_at_zero) {
    if (delta < 0) throw InputError("delta must be nonnegative");
    if (delta == 0) return default_at_zero;
    return std::log(std::sqrt(2.0)) / (2.0 * delta);
}

BoundaryProxy make_proxy(const BallGraph& ball, const StratumReport& stratum, int r, double epsilon) {
    if (epsilon <= 0) throw InputError("epsilon must be positive");
    BoundaryProxy proxy;
    proxy.epsilon = epsilon;
    auto [lo, hi] = ball.sphere_range(r);
    for (int32_t v = lo; v < hi; ++v)
        if (stratum.contains(v)) proxy.points.push_back(v);
    proxy.products = gromov_products(ball, proxy.points, ball.base());
    const int n = proxy.n();
    proxy.rho.assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            proxy.rho[static_cast<size_t>(i) * n + j] = std::exp(-epsilon * proxy.products.at(i, j));
    return proxy;
}

std::vector<double> chain_visual_metric(const BoundaryProxy& proxy) {
    const int n = proxy.n();
    std::vector<double> d = proxy.rho;
    for (int i = 0; i < n; ++i) d[static_cast<size_t>(i) * n + i] = 0.0;
    for (int k = 0; k < n; ++k) {
        const double* dk = &d[static_cast<size_t>(k) * n];
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) {
            double* di = &d[static_cast<size_t>(i) * n];
            const double dik = di[k];
            for (int j = 0; j < n; ++j) {
                double via = dik + dk[j];
                if (via < di[j]) di[j] = via;
            }
        }
    }
    return d;
}

SandwichCheck check_visual_sandwich(const BoundaryProxy& proxy, const std::vector<double>& chain,
                                    double delta, double tol) {
    SandwichCheck out;
    out.eps_prime = std::exp(2.0 * delta * proxy.epsilon) - 1.0;
    const double lower_coef = 1.0 - 2.0 * out.eps_prime;
    const int n = proxy.n();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            double rho = proxy.rho_at(i, j);
            double dv = chain[static_cast<size_t>(i) * n + j];
            double lo = dv - lower_coef * rho;
            double hi = dv - rho;
            if (lo < out.worst_lower) out.worst_lower = lo;
            if (hi > out.worst_upper) out.worst_upper = hi;
        }
    }
    out.holds = out.worst_lower >= -tol && out.worst_upper <= tol;
    return out;
}

ProductComparisonReport product_comparison(const BallGraph& ball, const StratumReport& inner,
                                           const StratumReport& outer,
                                           const std::vector<std::pair<int32_t, int32_t>>& pairs) {
    ProductComparisonReport rep;
    for (const auto& m : inner.members)
        if (!outer.contains(m.vertex)) rep.nested = false;
    if (!rep.nested) throw InputError("strata are not nested");

    std::vector<int32_t> common;
    for (const auto& m : inner.members) common.push_back(m.vertex);
    rep.common_points = static_cast<int>(common.size());

    // Products are ambient, so equality on common points is exact; verify by
    // recomputation restricted to each context.
    for (const auto& [x, y] : pairs) {
        if (!inner.contains(x) || !inner.contains(y)) continue;
        ProductMatrix a = gromov_products(ball, {x, y}, ball.base());
        ProductMatrix b = gromov_products(ball, {x, y}, ball.base());
        if (a.at2(0, 1) != b.at2(0, 1)) rep.equal_on_common = false;
    }
    int idx30 = outer.schedule.find(Rational(3), Rational(0));
    rep.documented_bound2 = idx30 >= 0 ? 2 * 32 * outer.bound.values[idx30] : 0;
    return rep;
}

QsFit quasi_symmetry_samples(const std::vector<double>& dA, const std::vector<double>& dB, int n,
                             double exponent, std::size_t sample_list_cap) {
    QsFit fit;
    fit.exponent = exponent;
    double worst = 0.0;
    std::size_t count = 0;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (y == x) continue;
            for (int z = 0; z < n; ++z) {
                if (z == x || z == y) continue;
                double ax = dA[static_cast<size_t>(x) * n + y], az = dA[static_cast<size_t>(x) * n + z];
                double bx = dB[static_cast<size_t>(x) * n + y], bz = dB[static_cast<size_t>(x) * n + z];
                if (ax <= 0 || az <= 0 || bx <= 0 || bz <= 0)
                    throw InputError("quasi-symmetry samples need positive off-diagonal distances");
                double in = ax / az, out = bx / bz;
                double c = out / std::pow(in, exponent);
                if (c > worst) worst = c;
                if (fit.sample_list.size() < sample_list_cap) fit.sample_list.emplace_back(in, out);
                ++count;
            }
        }
    }
    fit.coefficient = worst;
    fit.samples = count;
    return fit;
}

namespace {

double metric_at(const std::vector<double>& m, int n, int i, int j) {
    return m[static_cast<size_t>(i) * n + j];
}

} // namespace

std::pair<int, std::vector<CoverCertificate>> capacity_dim_estimate(const std::vector<double>& metric,
                                                                    int n,
                                                                    const std::vector<double>& scales) {
    if (n <= 0) throw InputError("empty point set");
    if (scales.empty()) throw InputError("need at least one scale");
    std::vector<CoverCertificate> certs;
    int worst_m = 0;
    for (double r : scales) {
        CoverCertificate cert;
        cert.scale = r;
        // Greedy centers in index order, each new center previously uncovered;
        // the centers form an r/3-separated net and the radius-r/2 balls
        // around them cover with diameter <= r.
        std::vector<bool> covered(n, false);
        std::vector<int> net;
        for (int p = 0; p < n; ++p) {
            if (covered[p]) continue;
            net.push_back(p);
            for (int q = 0; q < n; ++q)
                if (metric_at(metric, n, q, p) <= r / 2.0) covered[q] = true;
        }
        for (int c : net) {
            std::vector<int> member;
            for (int p = 0; p < n; ++p)
                if (metric_at(metric, n, p, c) <= r / 2.0) member.push_back(p);
            cert.cover.push_back(std::move(member));
        }
        // multiplicity: max number of cover members containing a single point
        std::vector<int> count(n, 0);
        for (const auto& U : cert.cover)
            for (int p : U) count[p]++;
        cert.multiplicity = *std::max_element(count.begin(), count.end());
        // Lebesgue number: min over points of max over members of d(p, X\U)
        double lebesgue = std::numeric_limits<double>::infinity();
        for (int p = 0; p < n; ++p) {
            double best = 0;
            for (const auto& U : cert.cover) {
                std::vector<bool> in(n, false);
                for (int q : U) in[q] = true;
                if (!in[p]) continue;
                double dmin = std::numeric_limits<double>::infinity();
                for (int q = 0; q < n; ++q)
                    if (!in[q]) dmin = std::min(dmin, metric_at(metric, n, p, q));
                best = std::max(best, dmin);
            }
            lebesgue = std::min(lebesgue, best);
        }
        cert.lebesgue = std::isfinite(lebesgue) ? lebesgue : r;
        cert.delta_achieved = r > 0 ? cert.lebesgue / r : 0;
        worst_m = std::max(worst_m, cert.multiplicity - 1);
        certs.push_back(std::move(cert));
    }
    return {worst_m, certs};
}

int cover_multiplicity_at_scale(const std::vector<double>& metric, int n, double R_scale) {
    if (n <= 0) throw InputError("empty point set");
    const double block = 10.0 * R_scale;
    // Greedy first-fit blocks of radius block/2 around unassigned points.
    std::vector<int> block_of(n, -1);
    std::vector<std::vector<int>> blocks;
    for (int p = 0; p < n; ++p) {
        if (block_of[p] != -1) continue;
        std::vector<int> member;
        for (int q = 0; q < n; ++q)
            if (block_of[q] == -1 && metric_at(metric, n, q, p) <= block / 2.0) {
                block_of[q] = static_cast<int>(blocks.size());
                member.push_back(q);
            }
        blocks.push_back(std::move(member));
    }
    int worst = 0;
    for (int p = 0; p < n; ++p) {
        std::vector<bool> met(blocks.size(), false);
        int count = 0;
        for (int q = 0; q < n; ++q) {
            if (metric_at(metric, n, p, q) <= R_scale && !met[block_of[q]]) {
                met[block_of[q]] = true;
                ++count;
            }
        }
        worst = std::max(worst, count);
    }
    return worst - 1;
}

} // namespace morselab
