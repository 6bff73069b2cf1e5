#include "morselab/cayley.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdint>
#include <queue>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"

namespace morselab {

std::pair<int32_t, int32_t> BallGraph::sphere_range(int r) const {
    if (r < 0 || r > radius) throw InputError("sphere radius out of range");
    return {sphere_start[r], sphere_start[r + 1]};
}

std::vector<int32_t> BallGraph::sphere(int r) const {
    auto [a, b] = sphere_range(r);
    std::vector<int32_t> out(b - a);
    for (int32_t i = a; i < b; ++i) out[i - a] = i;
    return out;
}

std::optional<int32_t> BallGraph::follow(int32_t from, const Word& labels) const {
    int32_t v = from;
    for (char c : labels) {
        v = neighbor(v, static_cast<Letter>(c));
        if (v < 0) return std::nullopt;
    }
    return v;
}

namespace {

struct Candidate {
    Word word;
    int32_t parent;
    Letter letter;
};

bool candidate_less(const Candidate& a, const Candidate& b) {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    if (a.word != b.word) return a.word < b.word;
    if (a.parent != b.parent) return a.parent < b.parent;
    return a.letter < b.letter;
}

} // namespace

BallGraph build_ball(const GroupSpec& spec, int radius, const BallBuildOptions& opts) {
    if (radius < 0) throw InputError("radius must be nonnegative");
    BallGraph ball;
    ball.spec = spec;
    ball.radius = radius;
    ball.letters = spec.letter_count();

    ball.words.push_back(Word());
    ball.dist.push_back(0);
    ball.index.emplace(Word(), 0);
    ball.sphere_start = {0, 1};
    ball.adj.assign(ball.letters, -1);

    for (int r = 0; r < radius + 1 && ball.sphere_start[r] < ball.sphere_start[r + 1]; ++r) {
        const int32_t lo = ball.sphere_start[r];
        const int32_t hi = ball.sphere_start[r + 1];
        const bool last_layer = (r == radius); // expand only to close intra-sphere edges

        // Generate candidates from the frontier.
        std::vector<Candidate> cands;
        {
            const int64_t total = static_cast<int64_t>(hi - lo) * ball.letters;
            cands.resize(total);
            std::atomic<bool> failed{false};
            std::string error_msg;
#pragma omp parallel for schedule(dynamic, 64) if (opts.parallel)
            for (int32_t v = lo; v < hi; ++v) {
                if (failed.load(std::memory_order_relaxed)) continue;
                for (int l = 0; l < ball.letters; ++l) {
                    Word w = ball.words[v];
                    w.push_back(static_cast<char>(l));
                    Candidate& c = cands[static_cast<int64_t>(v - lo) * ball.letters + l];
                    try {
                        c.word = spec.normal_form(w);
                    } catch (const std::exception&) {
                        failed.store(true, std::memory_order_relaxed);
                    }
                    c.parent = v;
                    c.letter = static_cast<Letter>(l);
                }
            }
            if (failed.load()) throw CapError("normal form computation failed during ball build");
        }
        std::sort(cands.begin(), cands.end(), candidate_less);

        // Register new vertices (words of length r+1 not seen before).
        for (const Candidate& c : cands) {
            if (static_cast<int>(c.word.size()) > r + 1)
                throw CapError("normal form longer than BFS layer; canonicalization incomplete");
            if (last_layer || static_cast<int>(c.word.size()) != r + 1) continue;
            if (ball.index.count(c.word)) continue;
            if (static_cast<std::int64_t>(ball.words.size()) >= opts.vertex_cap)
                throw CapError("vertex cap exceeded at radius " + std::to_string(r + 1));
            int32_t id = ball.size();
            ball.index.emplace(c.word, id);
            ball.words.push_back(c.word);
            ball.dist.push_back(r + 1);
        }
        if (!last_layer) {
            ball.adj.resize(static_cast<size_t>(ball.words.size()) * ball.letters, -1);
            ball.sphere_start.push_back(ball.size());
        }

        // Wire edges for every candidate that lands inside the ball.
        const int n = spec.generator_count();
        for (const Candidate& c : cands) {
            auto it = ball.index.find(c.word);
            if (it == ball.index.end()) continue;
            int32_t u = it->second;
            ball.adj[static_cast<size_t>(c.parent) * ball.letters + c.letter] = u;
            ball.adj[static_cast<size_t>(u) * ball.letters + inverse_letter(c.letter, n)] = c.parent;
        }
        if (last_layer) break;
    }
    while (static_cast<int>(ball.sphere_start.size()) < radius + 2)
        ball.sphere_start.push_back(ball.size());
    return ball;
}

void bfs_distances(const BallGraph& ball, int32_t src, int depth_cap, std::vector<int>& out) {
    out.assign(ball.size(), -1);
    out[src] = 0;
    std::vector<int32_t> frontier{src}, next;
    int d = 0;
    while (!frontier.empty() && (depth_cap < 0 || d < depth_cap)) {
        next.clear();
        for (int32_t v : frontier) {
            const int32_t* row = &ball.adj[static_cast<size_t>(v) * ball.letters];
            for (int l = 0; l < ball.letters; ++l) {
                int32_t u = row[l];
                if (u >= 0 && out[u] == -1) {
                    out[u] = d + 1;
                    next.push_back(u);
                }
            }
        }
        frontier.swap(next);
        ++d;
    }
}

void bfs_distances_multi(const BallGraph& ball, const std::vector<int32_t>& srcs, int depth_cap,
                         std::vector<int>& out, std::vector<int32_t>* nearest) {
    out.assign(ball.size(), -1);
    if (nearest) nearest->assign(ball.size(), -1);
    std::vector<int32_t> frontier, next;
    for (int32_t s : srcs)
        if (out[s] == -1) {
            out[s] = 0;
            if (nearest) (*nearest)[s] = s;
            frontier.push_back(s);
        }
    int d = 0;
    while (!frontier.empty() && (depth_cap < 0 || d < depth_cap)) {
        next.clear();
        for (int32_t v : frontier) {
            const int32_t* row = &ball.adj[static_cast<size_t>(v) * ball.letters];
            for (int l = 0; l < ball.letters; ++l) {
                int32_t u = row[l];
                if (u >= 0 && out[u] == -1) {
                    out[u] = d + 1;
                    if (nearest) (*nearest)[u] = (*nearest)[v];
                    next.push_back(u);
                }
            }
        }
        frontier.swap(next);
        ++d;
    }
}

namespace {

// epoch-stamped visited marks, reused across queries per thread
struct VisitScratch {
    std::vector<int32_t> stamp;
    int32_t epoch = 0;
    std::vector<int32_t> frontier, next;
};

} // namespace

int bounded_distance(const BallGraph& ball, int32_t x, int32_t y, int depth_cap) {
    if (x == y) return 0;
    thread_local VisitScratch s;
    if (s.stamp.size() < static_cast<size_t>(ball.size())) s.stamp.assign(ball.size(), 0);
    if (s.epoch == INT32_MAX) {
        std::fill(s.stamp.begin(), s.stamp.end(), 0);
        s.epoch = 0;
    }
    ++s.epoch;
    s.stamp[x] = s.epoch;
    s.frontier.clear();
    s.frontier.push_back(x);
    int d = 0;
    while (!s.frontier.empty() && (depth_cap < 0 || d < depth_cap)) {
        s.next.clear();
        for (int32_t v : s.frontier) {
            const int32_t* row = &ball.adj[static_cast<size_t>(v) * ball.letters];
            for (int l = 0; l < ball.letters; ++l) {
                int32_t u = row[l];
                if (u >= 0 && s.stamp[u] != s.epoch) {
                    if (u == y) return d + 1;
                    s.stamp[u] = s.epoch;
                    s.next.push_back(u);
                }
            }
        }
        s.frontier.swap(s.next);
        ++d;
    }
    return -1;
}

int distance(const BallGraph& ball, int32_t x, int32_t y) {
    if (!ball.trusted(x, y))
        throw InputError("untrusted pair: |x|+|y| exceeds ball radius (raise R)");
    int d = bounded_distance(ball, x, y, ball.dist[x] + ball.dist[y]);
    if (d < 0) throw InputError("distance query failed inside trusted radius");
    return d;
}

GeodesicList geodesics_between(const BallGraph& ball, int32_t x, int32_t y, int cap) {
    if (!ball.trusted(x, y)) throw InputError("untrusted pair in geodesic enumeration");
    if (cap < 1) throw InputError("geodesic cap must be >= 1");
    GeodesicList out;
    const int d = distance(ball, x, y);
    if (d == 0) {
        out.paths.push_back({x});
        return out;
    }
    std::vector<int> to_y;
    bfs_distances(ball, y, d, to_y);

    // Forward DFS from x along distance-decreasing edges in label order;
    // paths emerge in ShortLex order of their label words.
    std::vector<int32_t> path{x};
    struct Frame {
        int32_t v;
        int l;
    };
    std::vector<Frame> stack{{x, 0}};
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.v == y) {
            if (static_cast<int>(out.paths.size()) >= cap) {
                out.exact = false;
                return out;
            }
            out.paths.push_back(path);
            stack.pop_back();
            path.pop_back();
            continue;
        }
        bool descended = false;
        while (f.l < ball.letters) {
            int l = f.l++;
            int32_t u = ball.neighbor(f.v, static_cast<Letter>(l));
            if (u < 0 || to_y[u] == -1 || to_y[u] != to_y[f.v] - 1) continue;
            path.push_back(u);
            stack.push_back({u, 0});
            descended = true;
            break;
        }
        if (!descended && !stack.empty() && &f == &stack.back()) {
            stack.pop_back();
            path.pop_back();
        }
    }
    return out;
}

Word path_labels(const BallGraph& ball, const std::vector<int32_t>& path) {
    Word w;
    const int n = ball.spec.generator_count();
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        bool found = false;
        for (int l = 0; l < ball.letters && !found; ++l)
            if (ball.neighbor(path[i], static_cast<Letter>(l)) == path[i + 1]) {
                w.push_back(static_cast<char>(l));
                found = true;
            }
        if (!found) throw InputError("path vertices not adjacent");
    }
    (void)n;
    return w;
}

void export_jsonl(const BallGraph& ball, std::ostream& os) {
    for (int32_t v = 0; v < ball.size(); ++v) {
        nlohmann::ordered_json j;
        j["id"] = v;
        j["word"] = ball.spec.word_to_text(ball.words[v]);
        j["dist"] = ball.dist[v];
        auto neighbors = nlohmann::ordered_json::array();
        for (int l = 0; l < ball.letters; ++l) {
            int32_t u = ball.neighbor(v, static_cast<Letter>(l));
            if (u < 0) continue;
            neighbors.push_back({{"id", u}, {"label", ball.spec.letter_name(static_cast<Letter>(l))}});
        }
        j["neighbors"] = neighbors;
        os << j.dump() << "\n";
    }
}

} // namespace morselab
