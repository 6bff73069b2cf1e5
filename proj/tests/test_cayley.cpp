#include "doctest.h"

#include <map>
#include <set>
#include <sstream>

#include "morselab/cayley.hpp"
#include "morselab/reference.hpp"

using namespace morselab;

namespace {

GroupSpec make(const std::string& text) { return parse_spec(text); }

// Oracle: enumerate every word of length <= R and bucket by normal form.
std::set<Word> brute_force_elements(const GroupSpec& spec, int R) {
    std::set<Word> out{Word()};
    std::vector<Word> frontier{Word()};
    for (int r = 0; r < R; ++r) {
        std::vector<Word> next;
        for (const Word& w : frontier)
            for (int l = 0; l < spec.letter_count(); ++l) {
                Word nw = w;
                nw.push_back(static_cast<char>(l));
                Word nf = spec.normal_form(nw);
                if (!out.count(nf)) {
                    out.insert(nf);
                    next.push_back(nf);
                }
            }
        frontier = std::move(next);
    }
    return out;
}

} // namespace

TEST_CASE("ball sizes: free group tree") {
    GroupSpec f2 = make("family: free\ngenerators: a b\n");
    BallGraph ball = build_ball(f2, 3);
    // spheres 1 + 4 + 12 + 36
    CHECK(ball.size() == 53);
    CHECK(ball.sphere(1).size() == 4);
    CHECK(ball.sphere(2).size() == 12);
    CHECK(ball.sphere(3).size() == 36);
    CHECK(ball.dist[ball.base()] == 0);
}

TEST_CASE("ball sizes: free abelian L1 ball") {
    GroupSpec z2 = make("family: free-abelian\ngenerators: a b\n");
    BallGraph ball = build_ball(z2, 2);
    CHECK(ball.size() == 13); // 1 + 4 + 8
    CHECK(ball.sphere(2).size() == 8);
}

TEST_CASE("ball sizes: raag P3 matches brute-force enumeration") {
    GroupSpec p3 = make("family: raag\ngenerators: a b c\nedges: a-b b-c\n");
    auto oracle = brute_force_elements(p3, 2);
    BallGraph ball = build_ball(p3, 2);
    CHECK(ball.size() == static_cast<int32_t>(oracle.size()));
    for (int32_t v = 0; v < ball.size(); ++v) CHECK(oracle.count(ball.words[v]) == 1);
}

TEST_CASE("ball: classical sc matches brute-force enumeration and Dehn pair oracle") {
    GroupSpec s2 = make("family: classical-sc\ngenerators: a b c d\nrelators: abABcdCD\nlambda: 1/6\n");
    const int R = 5; // covers both half-swap shapes of single-face bigons
    auto oracle = brute_force_elements(s2, R);
    BallGraph ball = build_ball(s2, R);
    CHECK(ball.size() == static_cast<int32_t>(oracle.size()));

    // Pairwise Dehn-triviality oracle on a deterministic sample: distinct
    // vertices are distinct group elements.
    unsigned state = 99;
    for (int trial = 0; trial < 300; ++trial) {
        state = state * 1664525u + 1013904223u;
        int32_t x = static_cast<int32_t>(state % ball.size());
        state = state * 1664525u + 1013904223u;
        int32_t y = static_cast<int32_t>(state % ball.size());
        Word rel = ball.words[x] + invert_word(ball.words[y], s2.generator_count());
        CHECK(s2.is_trivial(rel) == (x == y));
    }

    // BFS layer agrees with |normal form|
    for (int32_t v = 0; v < ball.size(); ++v)
        CHECK(ball.dist[v] == static_cast<int>(ball.words[v].size()));
}

TEST_CASE("ball: two-component graphical sc matches brute-force enumeration") {
    GroupSpec two = parse_spec_file("data/twocomp.grp");
    auto oracle = brute_force_elements(two, 3);
    BallGraph ball = build_ball(two, 3);
    CHECK(ball.size() == static_cast<int32_t>(oracle.size()));
    for (int32_t v = 0; v < ball.size(); ++v) CHECK(oracle.count(ball.words[v]) == 1);
}

TEST_CASE("parallel and serial ball builds agree") {
    GroupSpec p3 = make("family: raag\ngenerators: a b c\nedges: a-b b-c\n");
    BallGraph a = build_ball(p3, 4);
    BallGraph b = reference::build_ball(p3, 4);
    CHECK(a.size() == b.size());
    CHECK(a.words == b.words);
    CHECK(a.adj == b.adj);
    CHECK(a.sphere_start == b.sphere_start);
}

TEST_CASE("distance queries") {
    GroupSpec f2 = make("family: free\ngenerators: a b\n");
    BallGraph ball = build_ball(f2, 4);
    auto at = [&](const std::string& w) { return *ball.find(f2.word_from_text(w)); };

    CHECK(distance(ball, ball.base(), ball.base()) == 0);
    CHECK(distance(ball, at("ab"), at("aB")) == 2);

    GroupSpec z2 = make("family: free-abelian\ngenerators: a b\n");
    BallGraph zball = build_ball(z2, 8);
    auto zat = [&](const std::string& w) { return *zball.find(z2.word_from_text(w)); };
    CHECK(distance(zball, zat("aaa"), zat("bbb")) == 6);

    // untrusted pair raises
    CHECK_THROWS_AS(distance(zball, zat("aaaaa"), zat("bbbbb")), InputError);
}

TEST_CASE("distance is a metric on trusted triples") {
    GroupSpec p3 = make("family: raag\ngenerators: a b c\nedges: a-b b-c\n");
    BallGraph ball = build_ball(p3, 6);
    unsigned state = 7;
    auto pick = [&]() {
        state = state * 1664525u + 1013904223u;
        auto [lo, hi] = ball.sphere_range(2);
        return static_cast<int32_t>(lo + state % (hi - lo));
    };
    for (int trial = 0; trial < 60; ++trial) {
        int32_t x = pick(), y = pick(), z = pick();
        int dxy = distance(ball, x, y), dyx = distance(ball, y, x);
        CHECK(dxy == dyx);
        CHECK(dxy <= distance(ball, x, z) + distance(ball, z, y));
        CHECK((dxy == 0) == (x == y));
    }
}

TEST_CASE("geodesic enumeration") {
    GroupSpec f2 = make("family: free\ngenerators: a b\n");
    BallGraph ball = build_ball(f2, 4);
    auto at = [&](const std::string& w) { return *ball.find(f2.word_from_text(w)); };

    auto g = geodesics_between(ball, ball.base(), at("ab"), 16);
    CHECK(g.exact);
    CHECK(g.paths.size() == 1); // tree geodesics are unique

    GroupSpec z2 = make("family: free-abelian\ngenerators: a b\n");
    BallGraph zball = build_ball(z2, 6);
    auto zat = [&](const std::string& w) { return *zball.find(z2.word_from_text(w)); };
    auto gz = geodesics_between(zball, zball.base(), zat("aabb"), 64);
    CHECK(gz.exact);
    CHECK(gz.paths.size() == 6); // C(4,2) lattice paths

    // truncation flag
    auto gcap = geodesics_between(zball, zball.base(), zat("aabb"), 3);
    CHECK(!gcap.exact);
    CHECK(gcap.paths.size() == 3);

    // every geodesic has the right length and consecutive vertices adjacent
    for (const auto& p : gz.paths) {
        CHECK(static_cast<int>(p.size()) == 5);
        for (size_t i = 0; i + 1 < p.size(); ++i) {
            bool adjacent = false;
            for (int l = 0; l < zball.letters; ++l)
                adjacent = adjacent || zball.neighbor(p[i], static_cast<Letter>(l)) == p[i + 1];
            CHECK(adjacent);
        }
    }

    // raag P3: e to "ac" has a unique geodesic (a and c do not commute)
    GroupSpec p3 = make("family: raag\ngenerators: a b c\nedges: a-b b-c\n");
    BallGraph pball = build_ball(p3, 4);
    auto target = *pball.find(p3.normal_form(p3.word_from_text("ac")));
    auto gp = geodesics_between(pball, pball.base(), target, 16);
    CHECK(gp.paths.size() == 1);
    // but e to "ab" = "ba" has two
    auto target2 = *pball.find(p3.normal_form(p3.word_from_text("ab")));
    auto gp2 = geodesics_between(pball, pball.base(), target2, 16);
    CHECK(gp2.paths.size() == 2);
}

TEST_CASE("geodesics come out in ShortLex label order") {
    GroupSpec z2 = make("family: free-abelian\ngenerators: a b\n");
    BallGraph ball = build_ball(z2, 6);
    auto at = *ball.find(z2.word_from_text("ab"));
    auto g = geodesics_between(ball, ball.base(), at, 16);
    REQUIRE(g.paths.size() == 2);
    CHECK(path_labels(ball, g.paths[0]) < path_labels(ball, g.paths[1]));
}

TEST_CASE("sphere accessors and errors") {
    GroupSpec f2 = make("family: free\ngenerators: a b\n");
    BallGraph ball = build_ball(f2, 3);
    CHECK(ball.sphere(0).size() == 1);
    CHECK_THROWS_AS(ball.sphere(4), InputError);
    CHECK_THROWS_AS(ball.sphere(-1), InputError);
}

TEST_CASE("radius-0 ball holds just the basepoint") {
    GroupSpec f2 = make("family: free\ngenerators: a b\n");
    BallGraph ball = build_ball(f2, 0);
    CHECK(ball.size() == 1);
    CHECK(ball.sphere(0).size() == 1);
    CHECK(distance(ball, ball.base(), ball.base()) == 0);
    CHECK_THROWS_AS(build_ball(f2, -1), InputError);
}

TEST_CASE("vertex cap raises a cap error") {
    GroupSpec f2 = make("family: free\ngenerators: a b\n");
    BallBuildOptions opts;
    opts.vertex_cap = 10;
    CHECK_THROWS_AS(build_ball(f2, 3, opts), CapError);
}

TEST_CASE("jsonl export emits one record per vertex") {
    GroupSpec f2 = make("family: free\ngenerators: a b\n");
    BallGraph ball = build_ball(f2, 2);
    std::ostringstream os;
    export_jsonl(ball, os);
    int lines = 0;
    std::string line;
    std::istringstream in(os.str());
    while (std::getline(in, line)) ++lines;
    CHECK(lines == ball.size());
    CHECK(os.str().find("\"word\":\"ab\"") != std::string::npos);
}

TEST_CASE("dist_from_base equals word length of the normal form") {
    for (const char* text : {"family: free\ngenerators: a b\n",
                             "family: raag\ngenerators: a b c\nedges: a-b b-c\n"}) {
        GroupSpec spec = make(text);
        BallGraph ball = build_ball(spec, 4);
        for (int32_t v = 0; v < ball.size(); ++v)
            CHECK(ball.dist[v] == static_cast<int>(ball.words[v].size()));
    }
}
