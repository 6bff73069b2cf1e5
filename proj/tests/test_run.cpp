#include "doctest.h"

#include "json.hpp"

#include "morselab/run.hpp"

using namespace morselab;

namespace {

RunConfig base(const std::string& cmd, const std::string& input) {
    RunConfig cfg;
    cfg.command = cmd;
    cfg.input_path = "data/" + input;
    cfg.radius = 6;
    return cfg;
}

} // namespace

TEST_CASE("schedule and bound parsing") {
    GaugeSchedule s = parse_schedule("1,0;3,0;3/2,1/2");
    REQUIRE(s.pairs.size() == 3);
    CHECK(s.pairs[2].K == Rational(3, 2));
    CHECK(s.pairs[2].C == Rational(1, 2));
    CHECK_THROWS_AS(parse_schedule("1;2"), InputError);
    CHECK_THROWS_AS(parse_schedule(""), InputError);

    GaugeTable cover = parse_bound("cover", s, 8);
    CHECK(cover.values[0] == 8);
    GaugeTable uni = parse_bound("2", s, 8);
    CHECK(uni.values == std::vector<int>{2, 2, 2});
    GaugeTable list = parse_bound("1;2;3", s, 8);
    CHECK(list.values == std::vector<int>{1, 2, 3});
    CHECK_THROWS_AS(parse_bound("1;2", s, 8), InputError);
}

TEST_CASE("missing input exits 1") {
    RunConfig cfg = base("stratum", "no-such-file.grp");
    RunResult res = run_command(cfg);
    CHECK(res.exit_code == 1);
    CHECK(!res.error.empty());
}

TEST_CASE("unknown command exits 1") {
    RunConfig cfg = base("frobnicate", "free2.grp");
    CHECK(run_command(cfg).exit_code == 1);
}

TEST_CASE("vertex cap exits 2") {
    RunConfig cfg = base("stratum", "free2.grp");
    cfg.vertex_cap = 5;
    CHECK(run_command(cfg).exit_code == 2);
}

TEST_CASE("stratum command emits members and csv") {
    RunConfig cfg = base("stratum", "free2.grp");
    RunResult res = run_command(cfg);
    REQUIRE(res.exit_code == 0);
    auto j = nlohmann::json::parse(res.json);
    CHECK(j["family"] == "free");
    CHECK(j["ball"]["vertices"] == 1457);
    // covering bound takes the whole trusted ball
    CHECK(j["stratum"]["member_count"] == 53);
    CHECK(res.csv.find("word,dist,member") == 0);
    CHECK(j["tool"] == std::string(kToolVersion));
    CHECK(j["config"]["command"] == "stratum");
}

TEST_CASE("hyperbolicity command: trees pass at delta 0") {
    RunConfig cfg = base("hyperbolicity", "free2.grp");
    cfg.schedule_text = "1,0;3,0";
    RunResult res = run_command(cfg);
    REQUIRE(res.exit_code == 0);
    auto j = nlohmann::json::parse(res.json);
    CHECK(j["delta"] == 0.0);
    CHECK(j["pass"] == true);
}

TEST_CASE("boundary command: epsilon above the cap exits 1") {
    RunConfig cfg = base("boundary", "zz.grp");
    cfg.radius = 8;
    cfg.epsilon = 100.0;
    RunResult res = run_command(cfg);
    CHECK(res.exit_code == 1);
    CHECK(res.error.find("epsilon_max") != std::string::npos);
}

TEST_CASE("boundary command: tree proxy reports capacity dimension 0") {
    RunConfig cfg = base("boundary", "free2.grp");
    RunResult res = run_command(cfg);
    REQUIRE(res.exit_code == 0);
    auto j = nlohmann::json::parse(res.json);
    CHECK(j["capacity_dim_estimate"] == 0);
    CHECK(j["sandwich"]["holds"] == true);
}

TEST_CASE("raag command requires a raag family") {
    RunConfig cfg = base("raag", "free2.grp");
    CHECK(run_command(cfg).exit_code == 1);

    RunConfig ok = base("raag", "edge.grp");
    ok.radius = 4;
    RunResult res = run_command(ok);
    REQUIRE(res.exit_code == 0);
    auto j = nlohmann::json::parse(res.json);
    CHECK(j["all_lipschitz"] == true);
    CHECK(j["distance3_separation_violations"] == 0);
}

TEST_CASE("smallcanc command: surface passes, aabb fails with witness") {
    RunConfig pass = base("smallcanc", "surface2.grp");
    RunResult res = run_command(pass);
    REQUIRE(res.exit_code == 0);
    auto j = nlohmann::json::parse(res.json);
    CHECK(j["pass"] == true);
    CHECK(j["max_piece"] == 1);

    RunConfig fail = base("smallcanc", "aabb.grp");
    RunResult res2 = run_command(fail);
    REQUIRE(res2.exit_code == 0);
    auto j2 = nlohmann::json::parse(res2.json);
    CHECK(j2["pass"] == false);
    CHECK(j2["witness_piece"] == "a");
}

TEST_CASE("every command is byte-deterministic across repeat runs") {
    std::vector<RunConfig> cfgs;
    cfgs.push_back(base("stratum", "free2.grp"));
    cfgs.push_back(base("hyperbolicity", "p3.grp"));
    {
        RunConfig b = base("boundary", "free2.grp");
        cfgs.push_back(b);
    }
    {
        RunConfig r = base("raag", "edge.grp");
        r.radius = 4;
        cfgs.push_back(r);
    }
    cfgs.push_back(base("smallcanc", "surface2.grp"));
    for (auto& cfg : cfgs) {
        if (cfg.command == "hyperbolicity") cfg.radius = 4;
        RunResult a = run_command(cfg);
        RunResult b = run_command(cfg);
        REQUIRE(a.exit_code == 0);
        CHECK(a.json == b.json);
        CHECK(a.csv == b.csv);
    }
}
