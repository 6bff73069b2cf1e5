#pragma once

#include <cstdint>
#include <vector>

#include "morselab/word.hpp"

namespace morselab {

// Finite directed graph with generator-labelled edges. Traversing arc k
// forward reads gen(k), backward reads gen(k)^-1.
struct LabelledGraph {
    struct Arc {
        int32_t src = 0;
        int32_t dst = 0;
        int32_t gen = 0; // generator index (always the positive generator)
    };

    int32_t vertex_count = 0;
    std::vector<Arc> arcs;

    // A location in the graph: an arc plus a traversal direction.
    struct Pos {
        int32_t arc = -1;
        bool forward = true;
        friend bool operator==(const Pos& a, const Pos& b) {
            return a.arc == b.arc && a.forward == b.forward;
        }
        friend bool operator<(const Pos& a, const Pos& b) {
            if (a.arc != b.arc) return a.arc < b.arc;
            return a.forward < b.forward;
        }
    };

    int32_t pos_from(const Pos& p) const { return p.forward ? arcs[p.arc].src : arcs[p.arc].dst; }
    int32_t pos_to(const Pos& p) const { return p.forward ? arcs[p.arc].dst : arcs[p.arc].src; }
    Letter pos_letter(const Pos& p, int n_gens) const {
        auto g = static_cast<Letter>(arcs[p.arc].gen);
        return p.forward ? g : inverse_letter(g, n_gens);
    }

    // Undirected incidence lists (arc indices), built on demand.
    std::vector<std::vector<int32_t>> incidence() const;

    // Connected components as vertex labels 0..k-1 (undirected connectivity).
    std::vector<int32_t> component_labels(int32_t* count = nullptr) const;

    // Subgraph induced by keeping the listed components; vertices renumbered.
    LabelledGraph keep_components(const std::vector<int32_t>& labels,
                                  const std::vector<bool>& keep) const;
};

struct ComponentStats {
    int32_t component = 0;
    int32_t vertices = 0;
    int32_t arcs = 0;
    int girth = -1;   // -1 when the component is a forest
    int diameter = 0;
};

std::vector<ComponentStats> component_stats(const LabelledGraph& g);

// All simple cycles as closed traversal sequences, each reported once
// (deduplicated over rotation, reversal and starting point). Throws CapError
// when more than cycle_cap cycles exist.
std::vector<std::vector<LabelledGraph::Pos>> simple_cycles(const LabelledGraph& g,
                                                           std::size_t cycle_cap,
                                                           int max_length = -1);

Word cycle_label(const LabelledGraph& g, const std::vector<LabelledGraph::Pos>& cycle, int n_gens);

// Disjoint union of one cycle per word; vertex/arc counts grow accordingly.
LabelledGraph cycles_from_relators(const std::vector<Word>& relators, int n_gens);

} // namespace morselab
