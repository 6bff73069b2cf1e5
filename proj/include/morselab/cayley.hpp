#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "morselab/presentations.hpp"

namespace morselab {

struct BallBuildOptions {
    std::int64_t vertex_cap = 5'000'000;
    bool parallel = true;
};

// Radius-R Cayley ball. Vertices are canonical normal forms, id-ordered by
// (distance from e, ShortLex), so layouts are identical across thread counts.
struct BallGraph {
    GroupSpec spec;
    int radius = 0;
    int letters = 0; // 2 * generator count

    std::vector<Word> words;          // canonical word per vertex
    std::vector<int> dist;            // distance from base
    std::vector<int32_t> adj;         // adj[v * letters + l] = vertex or -1
    std::vector<int32_t> sphere_start; // sphere r = ids [sphere_start[r], sphere_start[r+1])
    std::unordered_map<Word, int32_t> index;

    int32_t base() const { return 0; }
    int32_t size() const { return static_cast<int32_t>(words.size()); }
    int32_t neighbor(int32_t v, Letter l) const { return adj[static_cast<size_t>(v) * letters + l]; }
    std::optional<int32_t> find(const Word& w) const {
        auto it = index.find(w);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }

    std::pair<int32_t, int32_t> sphere_range(int r) const;
    std::vector<int32_t> sphere(int r) const;

    bool trusted(int32_t x, int32_t y) const { return dist[x] + dist[y] <= radius; }

    // Follows a label word from a start vertex; nullopt if it exits the ball.
    std::optional<int32_t> follow(int32_t from, const Word& labels) const;
};

BallGraph build_ball(const GroupSpec& spec, int radius, const BallBuildOptions& opts = {});

// Exact word-metric distance; requires a trusted pair.
int distance(const BallGraph& ball, int32_t x, int32_t y);

// In-ball BFS distance, truncated at depth_cap (-1 = unlimited); returns -1
// when unreached. Exact whenever dist[x] + dist[y] + result <= 2R.
int bounded_distance(const BallGraph& ball, int32_t x, int32_t y, int depth_cap);

// Distance field from src truncated at depth_cap; -1 marks unreached. The
// result vector has one entry per ball vertex.
void bfs_distances(const BallGraph& ball, int32_t src, int depth_cap, std::vector<int>& out);

// Multi-source variant (distance to the nearest of srcs), with nearest-source
// ids written to nearest when non-null.
void bfs_distances_multi(const BallGraph& ball, const std::vector<int32_t>& srcs, int depth_cap,
                         std::vector<int>& out, std::vector<int32_t>* nearest = nullptr);

struct GeodesicList {
    std::vector<std::vector<int32_t>> paths; // vertex sequences x..y
    bool exact = true;                       // false when truncated at cap
};

// All geodesic edge paths from x to y in ShortLex label order, truncated at
// cap. Requires a trusted pair, which makes the enumeration complete.
GeodesicList geodesics_between(const BallGraph& ball, int32_t x, int32_t y, int cap);

Word path_labels(const BallGraph& ball, const std::vector<int32_t>& path);

void export_jsonl(const BallGraph& ball, std::ostream& os);

} // namespace morselab
