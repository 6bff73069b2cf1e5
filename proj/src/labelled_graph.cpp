#include "morselab/labelled_graph.hpp"

#include <algorithm>
#include <deque>
#include <queue>

#include "morselab/errors.hpp"

namespace morselab {

std::vector<std::vector<int32_t>> LabelledGraph::incidence() const {
    std::vector<std::vector<int32_t>> inc(vertex_count);
    for (int32_t k = 0; k < static_cast<int32_t>(arcs.size()); ++k) {
        inc[arcs[k].src].push_back(k);
        if (arcs[k].dst != arcs[k].src) inc[arcs[k].dst].push_back(k);
    }
    return inc;
}

std::vector<int32_t> LabelledGraph::component_labels(int32_t* count) const {
    std::vector<int32_t> label(vertex_count, -1);
    auto inc = incidence();
    int32_t next = 0;
    for (int32_t s = 0; s < vertex_count; ++s) {
        if (label[s] != -1) continue;
        label[s] = next;
        std::queue<int32_t> q;
        q.push(s);
        while (!q.empty()) {
            int32_t v = q.front();
            q.pop();
            for (int32_t k : inc[v]) {
                int32_t u = arcs[k].src == v ? arcs[k].dst : arcs[k].src;
                if (label[u] == -1) {
                    label[u] = next;
                    q.push(u);
                }
            }
        }
        ++next;
    }
    if (count) *count = next;
    return label;
}

LabelledGraph LabelledGraph::keep_components(const std::vector<int32_t>& labels,
                                             const std::vector<bool>& keep) const {
    LabelledGraph out;
    std::vector<int32_t> remap(vertex_count, -1);
    for (int32_t v = 0; v < vertex_count; ++v)
        if (keep[labels[v]]) remap[v] = out.vertex_count++;
    for (const Arc& a : arcs)
        if (remap[a.src] != -1) out.arcs.push_back({remap[a.src], remap[a.dst], a.gen});
    return out;
}

namespace {

// BFS over the undirected graph; parallel arcs and loops count as cycles.
void bfs_component(const LabelledGraph& g, const std::vector<std::vector<int32_t>>& inc,
                   int32_t src, std::vector<int>& dist, std::vector<int32_t>& via_arc) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(via_arc.begin(), via_arc.end(), -1);
    dist[src] = 0;
    std::queue<int32_t> q;
    q.push(src);
    while (!q.empty()) {
        int32_t v = q.front();
        q.pop();
        for (int32_t k : inc[v]) {
            int32_t u = g.arcs[k].src == v ? g.arcs[k].dst : g.arcs[k].src;
            if (dist[u] == -1) {
                dist[u] = dist[v] + 1;
                via_arc[u] = k;
                q.push(u);
            }
        }
    }
}

} // namespace

std::vector<ComponentStats> component_stats(const LabelledGraph& g) {
    int32_t comp_count = 0;
    auto labels = g.component_labels(&comp_count);
    std::vector<ComponentStats> stats(comp_count);
    for (int32_t c = 0; c < comp_count; ++c) stats[c].component = c;
    for (int32_t v = 0; v < g.vertex_count; ++v) stats[labels[v]].vertices++;
    for (const auto& a : g.arcs) stats[labels[a.src]].arcs++;

    auto inc = g.incidence();
    std::vector<int> dist(g.vertex_count);
    std::vector<int32_t> via(g.vertex_count);
    for (int32_t s = 0; s < g.vertex_count; ++s) {
        auto& st = stats[labels[s]];
        bfs_component(g, inc, s, dist, via);
        for (int32_t v = 0; v < g.vertex_count; ++v)
            if (dist[v] > st.diameter) st.diameter = dist[v];
        // Girth via BFS: every non-tree arc (u,v) closes a cycle of length
        // dist[u] + dist[v] + 1; the minimum over all roots is exact.
        for (int32_t k = 0; k < static_cast<int32_t>(g.arcs.size()); ++k) {
            int32_t u = g.arcs[k].src, v = g.arcs[k].dst;
            if (labels[u] != labels[s] || dist[u] == -1 || dist[v] == -1) continue;
            if (via[u] == k || via[v] == k) continue; // tree arc
            int cyc = dist[u] + dist[v] + 1;
            if (u == v) cyc = 1; // loop
            if (st.girth == -1 || cyc < st.girth) st.girth = cyc;
        }
    }
    return stats;
}

namespace {

struct CycleKey {
    std::vector<int32_t> arcs_sorted;
    friend bool operator<(const CycleKey& a, const CycleKey& b) { return a.arcs_sorted < b.arcs_sorted; }
    friend bool operator==(const CycleKey& a, const CycleKey& b) { return a.arcs_sorted == b.arcs_sorted; }
};

} // namespace

std::vector<std::vector<LabelledGraph::Pos>> simple_cycles(const LabelledGraph& g,
                                                           std::size_t cycle_cap,
                                                           int max_length) {
    // Backtracking enumeration of simple cycles (distinct vertices, distinct
    // arcs), each canonicalized by its arc set. Deterministic order.
    auto inc = g.incidence();
    std::vector<std::vector<LabelledGraph::Pos>> out;
    std::vector<CycleKey> seen;

    std::vector<bool> on_path(g.vertex_count, false);
    std::vector<bool> arc_used(g.arcs.size(), false);
    std::vector<LabelledGraph::Pos> path;

    // To enumerate each cycle once we anchor at its smallest vertex.
    for (int32_t root = 0; root < g.vertex_count; ++root) {
        struct Frame {
            int32_t vertex;
            size_t next_idx;
        };
        std::vector<Frame> stack;
        stack.push_back({root, 0});
        on_path[root] = true;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (max_length >= 0 && static_cast<int>(path.size()) > max_length) {
                // too long: backtrack
                if (!path.empty()) {
                    arc_used[path.back().arc] = false;
                    path.pop_back();
                }
                on_path[f.vertex] = false;
                stack.pop_back();
                continue;
            }
            bool advanced = false;
            while (f.next_idx < inc[f.vertex].size()) {
                int32_t k = inc[f.vertex][f.next_idx++];
                if (arc_used[k]) continue;
                const auto& a = g.arcs[k];
                bool fwd = a.src == f.vertex;
                int32_t to = fwd ? a.dst : a.src;
                if (to < root) continue; // cycle anchored at its min vertex
                if (to == root && !path.empty()) {
                    // closed a cycle
                    path.push_back({k, fwd});
                    CycleKey key;
                    for (const auto& p : path) key.arcs_sorted.push_back(p.arc);
                    std::sort(key.arcs_sorted.begin(), key.arcs_sorted.end());
                    if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
                        seen.push_back(key);
                        out.push_back(path);
                        if (out.size() > cycle_cap)
                            throw CapError("simple cycle enumeration exceeded cap");
                    }
                    path.pop_back();
                    continue;
                }
                if (to == root && path.empty() && a.src == a.dst) {
                    // loop arc
                    path.push_back({k, true});
                    out.push_back(path);
                    path.pop_back();
                    continue;
                }
                if (on_path[to]) continue;
                path.push_back({k, fwd});
                arc_used[k] = true;
                on_path[to] = true;
                stack.push_back({to, 0});
                advanced = true;
                break;
            }
            if (!advanced && !stack.empty() && &f == &stack.back()) {
                on_path[f.vertex] = false;
                if (!path.empty() && stack.size() > 1) {
                    arc_used[path.back().arc] = false;
                    path.pop_back();
                }
                stack.pop_back();
            }
        }
    }
    return out;
}

Word cycle_label(const LabelledGraph& g, const std::vector<LabelledGraph::Pos>& cycle, int n_gens) {
    Word w;
    w.reserve(cycle.size());
    for (const auto& p : cycle) w.push_back(static_cast<char>(g.pos_letter(p, n_gens)));
    return w;
}

LabelledGraph cycles_from_relators(const std::vector<Word>& relators, int n_gens) {
    LabelledGraph g;
    for (const Word& r : relators) {
        if (r.empty()) continue;
        int32_t base = g.vertex_count;
        int32_t len = static_cast<int32_t>(r.size());
        g.vertex_count += len;
        for (int32_t i = 0; i < len; ++i) {
            auto l = static_cast<Letter>(r[i]);
            int32_t from = base + i;
            int32_t to = base + (i + 1) % len;
            if (letter_is_inverse(l, n_gens))
                g.arcs.push_back({to, from, letter_gen(l, n_gens)});
            else
                g.arcs.push_back({from, to, letter_gen(l, n_gens)});
        }
    }
    return g;
}

} // namespace morselab
