#include "morselab/reference.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace morselab::reference {

BallGraph build_ball(const GroupSpec& spec, int radius, std::int64_t vertex_cap) {
    BallBuildOptions opts;
    opts.vertex_cap = vertex_cap;
    opts.parallel = false;
    return morselab::build_ball(spec, radius, opts);
}

ProductMatrix gromov_products(const BallGraph& ball, const std::vector<int32_t>& points, int32_t base) {
    ProductMatrix pm;
    pm.points = points;
    pm.base = base;
    const int n = pm.n();
    pm.twice.assign(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            int dix = distance(ball, base, points[i]);
            int djx = distance(ball, base, points[j]);
            int dij = distance(ball, points[i], points[j]);
            pm.twice[static_cast<size_t>(i) * n + j] = dix + djx - dij;
            pm.twice[static_cast<size_t>(j) * n + i] = dix + djx - dij;
        }
    }
    return pm;
}

Rational four_point_delta(const ProductMatrix& pm) {
    const int n = pm.n();
    int worst2 = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                worst2 = std::max(worst2, std::min(pm.at2(x, z), pm.at2(z, y)) - pm.at2(x, y));
    return Rational(worst2, 2);
}

std::vector<double> chain_visual_metric(const BoundaryProxy& proxy) {
    const int n = proxy.n();
    std::vector<double> out(static_cast<size_t>(n) * n, 0.0);
    using Item = std::pair<double, int>;
    for (int s = 0; s < n; ++s) {
        std::vector<double> dist(n, std::numeric_limits<double>::infinity());
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        dist[s] = 0;
        pq.push({0.0, s});
        while (!pq.empty()) {
            auto [d, v] = pq.top();
            pq.pop();
            if (d > dist[v]) continue;
            for (int u = 0; u < n; ++u) {
                if (u == v) continue;
                double nd = d + proxy.rho_at(v, u);
                if (nd < dist[u]) {
                    dist[u] = nd;
                    pq.push({nd, u});
                }
            }
        }
        for (int u = 0; u < n; ++u) out[static_cast<size_t>(s) * n + u] = u == s ? 0.0 : dist[u];
    }
    return out;
}

} // namespace morselab::reference
