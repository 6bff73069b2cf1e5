#include "morselab/raag_cube.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace morselab {

namespace {

struct UnionFind {
    std::vector<int32_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int32_t find(int32_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(int32_t a, int32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Canonical key of the undirected edge leaving v by letter l.
inline int64_t edge_key(const BallGraph& ball, int32_t v, int l, int n) {
    if (l < n) return static_cast<int64_t>(v) * n + l;
    int32_t u = ball.neighbor(v, static_cast<Letter>(l));
    return static_cast<int64_t>(u) * n + (l - n);
}

} // namespace

WallSet build_hyperplanes(const BallGraph& ball) {
    if (ball.spec.family != Family::Raag)
        throw InputError("hyperplanes are defined for raag balls only");
    const int n = ball.spec.generator_count();
    const int32_t V = ball.size();

    UnionFind uf(static_cast<size_t>(V) * n);

    // Two parallel edges of a square are dual to the same wall. Squares come
    // from commuting generator pairs with all four corners in the ball.
    for (int32_t v = 0; v < V; ++v) {
        for (int g = 0; g < n; ++g) {
            int32_t a = ball.neighbor(v, static_cast<Letter>(g));
            if (a < 0) continue;
            for (int h = g + 1; h < n; ++h) {
                if (!ball.spec.commutes(g, h)) continue;
                int32_t b = ball.neighbor(v, static_cast<Letter>(h));
                if (b < 0) continue;
                int32_t c = ball.neighbor(a, static_cast<Letter>(h));
                if (c < 0 || c != ball.neighbor(b, static_cast<Letter>(g))) continue;
                uf.unite(static_cast<int32_t>(v * static_cast<int64_t>(n) + g),
                         static_cast<int32_t>(b * static_cast<int64_t>(n) + g));
                uf.unite(static_cast<int32_t>(v * static_cast<int64_t>(n) + h),
                         static_cast<int32_t>(a * static_cast<int64_t>(n) + h));
            }
        }
    }

    WallSet ws;
    ws.n_gens = n;
    ws.edge_wall.assign(static_cast<size_t>(V) * n, -1);
    std::unordered_map<int32_t, int32_t> root_to_wall;
    for (int32_t v = 0; v < V; ++v) {
        for (int g = 0; g < n; ++g) {
            if (ball.neighbor(v, static_cast<Letter>(g)) < 0) continue;
            int32_t slot = static_cast<int32_t>(v * static_cast<int64_t>(n) + g);
            int32_t root = uf.find(slot);
            auto it = root_to_wall.find(root);
            int32_t wid;
            if (it == root_to_wall.end()) {
                wid = static_cast<int32_t>(ws.walls.size());
                root_to_wall.emplace(root, wid);
                Wall w;
                w.id = wid;
                w.type = g;
                ws.walls.push_back(std::move(w));
            } else {
                wid = it->second;
            }
            ws.edge_wall[slot] = wid;
            ws.walls[wid].dual_edges.push_back(slot);
            int32_t u = ball.neighbor(v, static_cast<Letter>(g));
            if (ball.dist[v] == ball.radius || ball.dist[u] == ball.radius)
                ws.walls[wid].interior = false;
        }
    }
    return ws;
}

bool ContactGraph::adjacent(int32_t a, int32_t b) const {
    if (a == b) return false;
    for (int32_t i = adj_start[a]; i < adj_start[a + 1]; ++i)
        if (adj[i] == b) return true;
    return false;
}

ContactGraph contact_graph(const BallGraph& ball, const WallSet& walls) {
    const int n = walls.n_gens;
    ContactGraph cg;
    cg.wall_count = static_cast<int32_t>(walls.walls.size());

    struct Rec {
        int32_t a, b;
        bool cross;
    };
    std::vector<Rec> recs;

    // Contact via a shared 0-cube: all wall pairs among edges at each vertex.
    std::vector<int32_t> local;
    for (int32_t v = 0; v < ball.size(); ++v) {
        local.clear();
        for (int l = 0; l < ball.letters; ++l) {
            if (ball.neighbor(v, static_cast<Letter>(l)) < 0) continue;
            local.push_back(walls.edge_wall[edge_key(ball, v, l, n)]);
        }
        std::sort(local.begin(), local.end());
        local.erase(std::unique(local.begin(), local.end()), local.end());
        for (size_t i = 0; i < local.size(); ++i)
            for (size_t j = i + 1; j < local.size(); ++j)
                recs.push_back({local[i], local[j], false});
    }

    // Crossings: the two wall types of every square.
    for (int32_t v = 0; v < ball.size(); ++v) {
        for (int g = 0; g < n; ++g) {
            int32_t a = ball.neighbor(v, static_cast<Letter>(g));
            if (a < 0) continue;
            for (int h = g + 1; h < n; ++h) {
                if (!ball.spec.commutes(g, h)) continue;
                int32_t b = ball.neighbor(v, static_cast<Letter>(h));
                if (b < 0) continue;
                int32_t c = ball.neighbor(a, static_cast<Letter>(h));
                if (c < 0 || c != ball.neighbor(b, static_cast<Letter>(g))) continue;
                int32_t w1 = walls.edge_wall[static_cast<size_t>(v) * n + g];
                int32_t w2 = walls.edge_wall[static_cast<size_t>(v) * n + h];
                if (w1 != w2) recs.push_back({std::min(w1, w2), std::max(w1, w2), true});
            }
        }
    }

    std::sort(recs.begin(), recs.end(), [](const Rec& x, const Rec& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.cross > y.cross;
    });
    for (const Rec& r : recs) {
        if (!cg.edges.empty() && cg.edges.back().first == r.a && cg.edges.back().second == r.b) {
            if (r.cross) cg.crossing.back() = true;
            continue;
        }
        cg.edges.emplace_back(r.a, r.b);
        cg.crossing.push_back(r.cross);
    }

    // CSR adjacency and per-wall crossing lists.
    std::vector<int32_t> deg(cg.wall_count, 0);
    for (const auto& [a, b] : cg.edges) {
        deg[a]++;
        deg[b]++;
    }
    cg.adj_start.assign(cg.wall_count + 1, 0);
    for (int32_t w = 0; w < cg.wall_count; ++w) cg.adj_start[w + 1] = cg.adj_start[w] + deg[w];
    cg.adj.assign(cg.adj_start.back(), -1);
    std::vector<int32_t> fill(cg.wall_count, 0);
    cg.crossings_of.assign(cg.wall_count, {});
    for (size_t i = 0; i < cg.edges.size(); ++i) {
        auto [a, b] = cg.edges[i];
        cg.adj[cg.adj_start[a] + fill[a]++] = b;
        cg.adj[cg.adj_start[b] + fill[b]++] = a;
        if (cg.crossing[i]) {
            cg.crossings_of[a].push_back(b);
            cg.crossings_of[b].push_back(a);
        }
    }
    for (auto& v : cg.crossings_of) std::sort(v.begin(), v.end());
    return cg;
}

bool strongly_separated(const WallSet& walls, const ContactGraph& cg, int32_t h1, int32_t h2,
                        bool* valid) {
    if (h1 == h2) throw InputError("strong separation needs distinct walls");
    if (valid) *valid = walls.walls[h1].interior && walls.walls[h2].interior;
    const auto& c1 = cg.crossings_of[h1];
    if (std::binary_search(c1.begin(), c1.end(), h2)) return false;
    const auto& c2 = cg.crossings_of[h2];
    // sorted intersection test
    size_t i = 0, j = 0;
    while (i < c1.size() && j < c2.size()) {
        if (c1[i] == c2[j]) return false;
        if (c1[i] < c2[j]) ++i;
        else ++j;
    }
    return true;
}

int32_t q_map(const BallGraph& ball, const WallSet& walls, int32_t x) {
    if (x == ball.base()) throw InputError("q is undefined at the basepoint");
    auto geos = geodesics_between(ball, ball.base(), x, 1);
    const auto& g = geos.paths.front();
    int32_t prev = g[g.size() - 2];
    for (int l = 0; l < ball.letters; ++l)
        if (ball.neighbor(prev, static_cast<Letter>(l)) == x)
            return walls.edge_wall[edge_key(ball, prev, l, walls.n_gens)];
    throw InputError("geodesic end edge not found"); // unreachable
}

std::vector<int32_t> contact_distances(const ContactGraph& cg, int32_t from) {
    std::vector<int32_t> dist(cg.wall_count, -1);
    dist[from] = 0;
    std::vector<int32_t> frontier{from}, next;
    int d = 0;
    while (!frontier.empty()) {
        next.clear();
        for (int32_t w : frontier)
            for (int32_t i = cg.adj_start[w]; i < cg.adj_start[w + 1]; ++i) {
                int32_t u = cg.adj[i];
                if (dist[u] == -1) {
                    dist[u] = d + 1;
                    next.push_back(u);
                }
            }
        frontier.swap(next);
        ++d;
    }
    return dist;
}

QMapReport embedding_report(const BallGraph& ball, const StratumReport& stratum, const WallSet& walls,
                            const ContactGraph& cg) {
    QMapReport rep;
    for (const auto& m : stratum.members) {
        if (m.vertex == ball.base()) continue;
        rep.members.push_back(m.vertex);
        rep.assignment.push_back(q_map(ball, walls, m.vertex));
    }

    // Observed r: along each witness, greedily pick the next wall strongly
    // separated from the last picked one; record the largest index gap.
    for (const auto& m : stratum.members) {
        if (m.witness.size() < 2) continue;
        std::vector<int32_t> seq;
        for (size_t i = 0; i + 1 < m.witness.size(); ++i) {
            int32_t v = m.witness[i];
            for (int l = 0; l < ball.letters; ++l)
                if (ball.neighbor(v, static_cast<Letter>(l)) == m.witness[i + 1]) {
                    seq.push_back(walls.edge_wall[edge_key(ball, v, l, walls.n_gens)]);
                    break;
                }
        }
        size_t last = 0;
        for (size_t i = 1; i < seq.size(); ++i) {
            bool valid = true;
            if (strongly_separated(walls, cg, seq[last], seq[i], &valid)) {
                rep.observed_r = std::max(rep.observed_r, static_cast<int>(i - last));
                rep.separation_chain_valid = rep.separation_chain_valid && valid;
                last = i;
            }
        }
        rep.observed_r = std::max(rep.observed_r, static_cast<int>(seq.size() - 1 - last));
    }
    if (rep.observed_r == 0) rep.observed_r = 1;

    // Contact-graph distances from each distinct assigned wall.
    std::unordered_map<int32_t, std::vector<int32_t>> cg_dist;
    for (int32_t w : rep.assignment) cg_dist.emplace(w, std::vector<int32_t>());
    std::vector<int32_t> distinct;
    for (auto& [w, _] : cg_dist) distinct.push_back(w);
    std::sort(distinct.begin(), distinct.end());
#pragma omp parallel for schedule(dynamic, 1)
    for (size_t i = 0; i < distinct.size(); ++i) {
        auto d = contact_distances(cg, distinct[i]);
#pragma omp critical
        cg_dist[distinct[i]] = std::move(d);
    }

    for (size_t i = 0; i < rep.members.size(); ++i) {
        for (size_t j = i; j < rep.members.size(); ++j) {
            int32_t x = rep.members[i], y = rep.members[j];
            if (!ball.trusted(x, y)) continue;
            QMapPairRecord r;
            r.x = x;
            r.y = y;
            r.d = distance(ball, x, y);
            r.d_cg = i == j ? 0 : cg_dist[rep.assignment[i]][rep.assignment[j]];
            if (r.d_cg < 0) {
                rep.cg_connected = false;
            } else {
                r.lipschitz = r.d_cg <= r.d;
                // d_cg >= d/(2r) - 1  <=>  2r*(d_cg + 1) >= d
                r.lower_ok = 2LL * rep.observed_r * (r.d_cg + 1) >= r.d;
            }
            rep.all_lipschitz = rep.all_lipschitz && r.lipschitz;
            rep.all_lower = rep.all_lower && r.lower_ok;
            rep.pairs.push_back(r);
        }
    }
    return rep;
}

int64_t separation_distance3_violations(const WallSet& walls, const ContactGraph& cg) {
    // A pair failing strong separation either crosses or shares a crossing
    // wall; in both cases its contact distance must come out <= 2. Scanning
    // those pairs exhaustively proves the distance-3 implication for all
    // interior pairs.
    int64_t violations = 0;
    for (size_t i = 0; i < cg.edges.size(); ++i) {
        if (!cg.crossing[i]) continue;
        auto [a, b] = cg.edges[i];
        if (!walls.walls[a].interior || !walls.walls[b].interior) continue;
        if (!cg.adjacent(a, b)) ++violations; // crossing pair must contact
    }
    for (int32_t w = 0; w < cg.wall_count; ++w) {
        const auto& cr = cg.crossings_of[w];
        for (size_t i = 0; i < cr.size(); ++i) {
            for (size_t j = i + 1; j < cr.size(); ++j) {
                int32_t a = cr[i], b = cr[j];
                if (!walls.walls[a].interior || !walls.walls[b].interior) continue;
                // common crosser w must witness d_cg(a,b) <= 2
                if (!cg.adjacent(a, w) || !cg.adjacent(b, w)) ++violations;
            }
        }
    }
    return violations;
}

} // namespace morselab
