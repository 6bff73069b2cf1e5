#include "morselab/smallcanc.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace morselab {

namespace {

using Pos = LabelledGraph::Pos;

std::vector<Pos> all_positions(const LabelledGraph& g) {
    std::vector<Pos> out;
    out.reserve(2 * g.arcs.size());
    for (int32_t k = 0; k < static_cast<int32_t>(g.arcs.size()); ++k) {
        out.push_back({k, true});
        out.push_back({k, false});
    }
    return out;
}

// Walk counts per end position, capped: enough to decide the >= 2 test.
struct WalkState {
    std::vector<std::pair<Pos, int>> ends; // sorted by Pos, count capped at 3

    int total() const {
        int t = 0;
        for (const auto& [p, c] : ends) t = std::min(3, t + c);
        return t;
    }
};

// positions reading a given letter, bucketed once per graph
struct PosIndex {
    std::vector<std::vector<Pos>> by_letter;            // letter -> positions
    std::vector<std::vector<std::pair<Letter, Pos>>> out; // vertex -> (letter, position)

    PosIndex(const LabelledGraph& g, int n_gens) {
        by_letter.assign(2 * n_gens, {});
        out.assign(g.vertex_count, {});
        for (const Pos& p : all_positions(g)) {
            Letter l = g.pos_letter(p, n_gens);
            by_letter[l].push_back(p);
            out[g.pos_from(p)].emplace_back(l, p);
        }
        for (auto& v : out)
            std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first < b.first;
                return a.second < b.second;
            });
    }
};

// Walks are immersions: consecutive steps never reuse the arc just crossed
// (otherwise back-and-forth folds would make arbitrarily long "pieces").
WalkState advance(const LabelledGraph& g, const WalkState& st, Letter l, const PosIndex& idx) {
    std::map<Pos, int> next;
    for (const auto& [p, c] : st.ends) {
        int32_t v = g.pos_to(p);
        for (const auto& [letter, q] : idx.out[v]) {
            if (letter != l || q.arc == p.arc) continue;
            next[q] = std::min(3, next[q] + c);
        }
    }
    WalkState out;
    out.ends.assign(next.begin(), next.end());
    return out;
}

WalkState start_state(Letter l, const PosIndex& idx) {
    WalkState st;
    for (const Pos& p : idx.by_letter[l]) st.ends.emplace_back(p, 1);
    return st;
}

// Longest piece lying on the cycle starting at a given offset, up to cap.
int max_piece_at_offset(const LabelledGraph& g, int n_gens, const PosIndex& idx,
                        const std::vector<Pos>& cycle, int offset, int cap) {
    const int L = static_cast<int>(cycle.size());
    int best = 0;
    WalkState st;
    for (int len = 1; len <= cap && len < L + 1; ++len) {
        Pos p = cycle[(offset + len - 1) % L];
        Letter l = g.pos_letter(p, n_gens);
        st = len == 1 ? start_state(l, idx) : advance(g, st, l, idx);
        if (st.total() >= 2) best = len;
        if (st.total() == 0) break;
    }
    return best;
}

// Up to two distinct walks spelling a word, for witness reporting.
std::vector<std::vector<Pos>> find_walks(const LabelledGraph& g, int n_gens, const PosIndex& idx,
                                         const Word& w, size_t max_walks) {
    (void)n_gens;
    std::vector<std::vector<Pos>> found;
    std::vector<Pos> walk;
    std::function<void(size_t, int32_t)> dfs = [&](size_t i, int32_t at) {
        if (found.size() >= max_walks) return;
        if (i == w.size()) {
            found.push_back(walk);
            return;
        }
        auto try_pos = [&](const Pos& q) {
            if (found.size() >= max_walks) return;
            if (!walk.empty() && walk.back().arc == q.arc) return; // immersion
            walk.push_back(q);
            dfs(i + 1, g.pos_to(q));
            walk.pop_back();
        };
        if (at == -1) {
            for (const Pos& q : idx.by_letter[static_cast<Letter>(w[i])]) try_pos(q);
        } else {
            for (const auto& [letter, q] : idx.out[at])
                if (letter == static_cast<Letter>(w[i])) try_pos(q);
        }
    };
    dfs(0, -1);
    return found;
}

Word subword_on_cycle(const LabelledGraph& g, int n_gens, const std::vector<Pos>& cycle, int offset,
                      int len) {
    Word w;
    const int L = static_cast<int>(cycle.size());
    for (int i = 0; i < len; ++i)
        w.push_back(static_cast<char>(g.pos_letter(cycle[(offset + i) % L], n_gens)));
    return w;
}

} // namespace

PieceReport enumerate_pieces(const LabelledGraph& g, int n_gens, int length_cap,
                             std::size_t cycle_cap) {
    if (length_cap < 1) throw InputError("piece length cap must be >= 1");
    PieceReport rep;
    PosIndex idx(g, n_gens);

    // Global scan: DFS over words whose walk count stays positive; a word with
    // two walks is a piece.
    {
        struct Frame {
            WalkState st;
            Letter next = 0;
        };
        std::vector<Frame> stack;
        Word word;
        for (Letter l0 = 0; l0 < static_cast<Letter>(2 * n_gens); ++l0) {
            WalkState st = start_state(l0, idx);
            if (st.ends.empty()) continue;
            word.assign(1, static_cast<char>(l0));
            if (st.total() >= 2) rep.max_piece_overall = std::max(rep.max_piece_overall, 1);
            stack.assign(1, {st, 0});
            while (!stack.empty()) {
                Frame& f = stack.back();
                if (static_cast<int>(word.size()) >= length_cap) {
                    if (f.st.total() >= 2) rep.capped = true;
                    stack.pop_back();
                    word.pop_back();
                    continue;
                }
                bool descended = false;
                while (f.next < static_cast<Letter>(2 * n_gens)) {
                    Letter l = f.next++;
                    WalkState nxt = advance(g, f.st, l, idx);
                    if (nxt.ends.empty()) continue;
                    word.push_back(static_cast<char>(l));
                    if (nxt.total() >= 2)
                        rep.max_piece_overall =
                            std::max(rep.max_piece_overall, static_cast<int>(word.size()));
                    stack.push_back({std::move(nxt), 0});
                    descended = true;
                    break;
                }
                if (!descended) {
                    stack.pop_back();
                    word.pop_back();
                }
            }
        }
    }

    // Per-cycle maxima.
    int32_t comp_count = 0;
    auto labels = g.component_labels(&comp_count);
    rep.component_max.assign(comp_count, 0);
    auto cycles = simple_cycles(g, cycle_cap);
    rep.cycle_count = static_cast<int64_t>(cycles.size());
    for (size_t ci = 0; ci < cycles.size(); ++ci) {
        const auto& C = cycles[ci];
        CyclePieceCheck chk;
        chk.cycle_index = static_cast<int>(ci);
        chk.component = C.empty() ? 0 : labels[g.pos_from(C[0])];
        chk.cycle_length = static_cast<int>(C.size());
        int best = 0, best_off = -1;
        const int cap = std::min(length_cap, chk.cycle_length);
        for (int off = 0; off < chk.cycle_length; ++off) {
            int m = max_piece_at_offset(g, n_gens, idx, C, off, cap);
            if (m > best) {
                best = m;
                best_off = off;
            }
        }
        chk.max_piece = best;
        rep.component_max[chk.component] = std::max(rep.component_max[chk.component], best);
        if (best > 0 && best_off >= 0) {
            chk.witness_piece = subword_on_cycle(g, n_gens, C, best_off, best);
            auto walks = find_walks(g, n_gens, idx, chk.witness_piece, 2);
            if (walks.size() >= 2)
                rep.witnesses.push_back({chk.witness_piece, walks[0], walks[1]});
        }
        rep.cycles.push_back(std::move(chk));
    }
    return rep;
}

CPrimeResult check_c_prime(const LabelledGraph& g, int n_gens, const Rational& lambda,
                           std::size_t cycle_cap) {
    if (!(Rational(0) < lambda && lambda < Rational(1)))
        throw InputError("lambda must lie in (0,1)");
    auto cycles = simple_cycles(g, cycle_cap);
    int max_cycle = 0;
    for (const auto& c : cycles) max_cycle = std::max(max_cycle, static_cast<int>(c.size()));
    // cap >= lambda * max cycle length, plus one to witness failures exactly
    int cap = static_cast<int>((lambda * Rational(max_cycle)).num / (lambda * Rational(max_cycle)).den) + 1;
    cap = std::max(cap, 1);

    CPrimeResult res;
    res.lambda = lambda;
    res.pieces = enumerate_pieces(g, n_gens, cap, cycle_cap);
    for (const auto& chk : res.pieces.cycles) {
        // fail iff some piece p on C has |p| >= lambda*|C|
        // exact: p.den * |p| >= p.num * |C|
        bool ok = static_cast<long long>(chk.max_piece) * lambda.den <
                  lambda.num * static_cast<long long>(chk.cycle_length);
        if (!ok && res.pass) {
            res.pass = false;
            res.witness_piece = chk.witness_piece;
            res.witness_cycle = chk.cycle_index;
            res.witness_cycle_length = chk.cycle_length;
        }
    }
    // update per-cycle pass flags
    for (auto& chk : res.pieces.cycles)
        chk.pass = static_cast<long long>(chk.max_piece) * lambda.den <
                   lambda.num * static_cast<long long>(chk.cycle_length);
    return res;
}

std::vector<ComponentStats> girth_and_diameter(const LabelledGraph& g) { return component_stats(g); }

LabelledGraph select_gamma_N(const LabelledGraph& g, int g_threshold) {
    int32_t count = 0;
    auto labels = g.component_labels(&count);
    auto stats = component_stats(g);
    std::vector<bool> keep(count, false);
    for (const auto& st : stats)
        keep[st.component] = st.girth >= 0 && st.girth <= g_threshold;
    return g.keep_components(labels, keep);
}

namespace {

// undirected BFS over the labelled graph
std::vector<int> graph_bfs(const LabelledGraph& g, const std::vector<std::vector<int32_t>>& inc,
                           const std::vector<int32_t>& srcs) {
    std::vector<int> dist(g.vertex_count, -1);
    std::vector<int32_t> frontier, next;
    for (int32_t s : srcs)
        if (dist[s] == -1) {
            dist[s] = 0;
            frontier.push_back(s);
        }
    int d = 0;
    while (!frontier.empty()) {
        next.clear();
        for (int32_t v : frontier)
            for (int32_t k : inc[v]) {
                int32_t u = g.arcs[k].src == v ? g.arcs[k].dst : g.arcs[k].src;
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

} // namespace

DetourReport detour_probe(const LabelledGraph& g, int n_gens,
                          const std::vector<LabelledGraph::Pos>& cycle, int gamma1_begin,
                          int gamma1_len) {
    (void)n_gens;
    const int L = static_cast<int>(cycle.size());
    if (gamma1_len < 1 || gamma1_len >= L) throw InputError("gamma1 must be a proper subpath");
    if (6 * gamma1_len < L) throw InputError("gamma1 must satisfy |gamma1| >= |C|/6");

    auto stats = component_stats(g);
    // component of the cycle
    auto labels = g.component_labels();
    int comp = labels[g.pos_from(cycle[0])];
    int girth = 0, diam = 0;
    for (const auto& st : stats)
        if (st.component == comp) {
            girth = st.girth;
            diam = st.diameter;
        }

    DetourReport rep;
    rep.required = girth > 0 ? (girth + 11) / 12 : 1;

    std::vector<int32_t> gamma_vertices;
    for (int i = 0; i < gamma1_len; ++i) gamma_vertices.push_back(g.pos_from(cycle[(gamma1_begin + i) % L]));
    gamma_vertices.push_back(g.pos_to(cycle[(gamma1_begin + gamma1_len - 1) % L]));
    int32_t u = gamma_vertices.front(), v = gamma_vertices.back();

    auto inc = g.incidence();
    auto d_gamma = graph_bfs(g, inc, gamma_vertices);
    auto d_u = graph_bfs(g, inc, {u});
    auto d_v = graph_bfs(g, inc, {v});

    const int len_cap = 5 * diam;
    int best = -1;
    int32_t best_w = -1;
    for (int32_t w = 0; w < g.vertex_count; ++w) {
        if (labels[w] != comp || d_u[w] < 0 || d_v[w] < 0) continue;
        if (d_u[w] + d_v[w] > len_cap) continue;
        if (d_gamma[w] > best) {
            best = d_gamma[w];
            best_w = w;
        }
    }
    if (best >= 0) {
        rep.found = true;
        rep.escape_distance = best;
        rep.pass = best >= rep.required;
        // reconstruct a u -> best_w -> v path along BFS parents
        auto walk_down = [&](std::vector<int>& dist, int32_t from) {
            std::vector<int32_t> path{from};
            int32_t cur = from;
            while (dist[cur] > 0) {
                for (int32_t k : inc[cur]) {
                    int32_t nb = g.arcs[k].src == cur ? g.arcs[k].dst : g.arcs[k].src;
                    if (dist[nb] == dist[cur] - 1) {
                        cur = nb;
                        path.push_back(cur);
                        break;
                    }
                }
            }
            return path;
        };
        auto p1 = walk_down(d_u, best_w); // best_w .. u
        std::reverse(p1.begin(), p1.end());
        auto p2 = walk_down(d_v, best_w); // best_w .. v
        p1.insert(p1.end(), p2.begin() + 1, p2.end());
        rep.path = std::move(p1);
    }
    return rep;
}

TruncationCheckResult truncation_embedding_check(const GroupSpec& spec, int g_threshold, int radius,
                                                 const GaugeTable& bound, const StratumOptions& sopts,
                                                 const BallBuildOptions& bopts) {
    if (spec.family != Family::GraphicalSC)
        throw InputError("truncation check requires a graphical-sc spec");
    TruncationCheckResult res;

    auto stats = component_stats(spec.graph);
    LabelledGraph gamma_n = select_gamma_N(spec.graph, g_threshold);
    for (const auto& st : stats) {
        if (st.girth >= 0 && st.girth <= g_threshold) res.kept_components++;
        else res.dropped_components++;
    }

    GroupSpec spec_n = spec;
    spec_n.graph = gamma_n;
    spec_n.relators.clear();
    spec_n.finalize();

    std::vector<bool> kept_gen(spec.generator_count(), false);
    for (const auto& a : gamma_n.arcs) kept_gen[a.gen] = true;

    BallGraph ball = build_ball(spec, radius, bopts);
    BallGraph ball_n = build_ball(spec_n, radius, bopts);
    StratumReport stratum = build_stratum(ball, bound, sopts);

    std::vector<int32_t> images(stratum.members.size(), -1);
    std::vector<bool> kept_word(stratum.members.size(), false);
    for (size_t i = 0; i < stratum.members.size(); ++i) {
        const auto& m = stratum.members[i];
        Word w = path_labels(ball, m.witness);
        auto img = ball_n.follow(ball_n.base(), w);
        if (!img) continue; // witness leaves the truncated ball: skip
        images[i] = *img;
        bool kw = true;
        for (char c : w) kw = kw && kept_gen[letter_gen(static_cast<Letter>(c), spec.generator_count())];
        kept_word[i] = kw;
        res.members_checked++;
        int d0 = ball.dist[m.vertex];
        int d0n = ball_n.dist[*img];
        if (d0 > d0n) res.monotone_ok = false;
        if (kw && d0 != d0n) {
            res.witness_equality_ok = false;
            res.gauge_suspect++;
        }
    }

    for (size_t i = 0; i < stratum.members.size(); ++i) {
        if (images[i] < 0) continue;
        for (size_t j = i + 1; j < stratum.members.size(); ++j) {
            if (images[j] < 0) continue;
            int32_t x = stratum.members[i].vertex, y = stratum.members[j].vertex;
            if (!ball.trusted(x, y)) continue;
            if (!ball_n.trusted(images[i], images[j])) continue;
            int d = distance(ball, x, y);
            int dn = distance(ball_n, images[i], images[j]);
            res.pairs_checked++;
            if (d > dn) res.monotone_ok = false;
            if (kept_word[i] && kept_word[j] && d != dn) {
                res.witness_equality_ok = false;
                res.gauge_suspect++;
            }
        }
    }
    return res;
}

} // namespace morselab
