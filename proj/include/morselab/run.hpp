#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "morselab/morse.hpp"

namespace morselab {

inline constexpr const char* kToolVersion = "morselab 0.1.0";

struct RunConfig {
    std::string command;
    std::string input_path;
    int radius = 6;
    std::string schedule_text = "1,0;2,0;3,0;1,2;2,2;3,2";
    std::string bound_text = "cover"; // "cover", single value, or per-pair list "a;b;..."
    double epsilon = -1;              // <= 0 selects 0.9 * epsilon_max
    int proxy_radius = -1;            // default: stratum member radius
    std::vector<double> scales;       // capacity-dimension scales
    std::string out_dir;              // empty: no files written
    std::int64_t vertex_cap = 5'000'000;
    std::int64_t qg_budget = 2'000'000;
    int cycle_cap = 100000;
    int geodesic_cap = 4096;
    int threads = 0; // 0 keeps the OpenMP default
    int g_threshold = -1; // smallcanc: run the truncation check when >= 0
    bool dump_ball = false;
};

struct RunResult {
    int exit_code = 0; // 0 ok, 1 input, 2 cap, 3 internal
    std::string json;
    std::string csv;
    std::string error;
};

GaugeSchedule parse_schedule(const std::string& text);
GaugeTable parse_bound(const std::string& text, const GaugeSchedule& schedule, int radius);

RunResult run_command(const RunConfig& cfg);

} // namespace morselab
