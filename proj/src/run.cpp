#include "morselab/run.hpp"

#include <fstream>
#include <map>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"

#include "morselab/boundary.hpp"
#include "morselab/raag_cube.hpp"
#include "morselab/smallcanc.hpp"

namespace morselab {

using json = nlohmann::ordered_json;

GaugeSchedule parse_schedule(const std::string& text) {
    GaugeSchedule s;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        auto comma = item.find(',');
        if (comma == std::string::npos) throw InputError("schedule entries are 'K,C'");
        s.pairs.push_back({Rational::parse(item.substr(0, comma)), Rational::parse(item.substr(comma + 1))});
    }
    s.validate();
    return s;
}

GaugeTable parse_bound(const std::string& text, const GaugeSchedule& schedule, int radius) {
    if (text == "cover") return GaugeTable::covering(schedule, radius);
    std::vector<int> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (!item.empty()) vals.push_back(std::stoi(item));
    if (vals.size() == 1) return GaugeTable::uniform(schedule, vals[0]);
    if (vals.size() != schedule.pairs.size())
        throw InputError("bound list must match the schedule length");
    GaugeTable t = GaugeTable::uniform(schedule, 0);
    t.values = vals;
    return t;
}

namespace {

json config_json(const RunConfig& cfg) {
    json j;
    j["command"] = cfg.command;
    j["input"] = cfg.input_path;
    j["radius"] = cfg.radius;
    j["schedule"] = cfg.schedule_text;
    j["bound"] = cfg.bound_text;
    j["epsilon"] = cfg.epsilon;
    j["proxy_radius"] = cfg.proxy_radius;
    j["scales"] = cfg.scales;
    j["vertex_cap"] = cfg.vertex_cap;
    j["qg_budget"] = cfg.qg_budget;
    j["cycle_cap"] = cfg.cycle_cap;
    j["geodesic_cap"] = cfg.geodesic_cap;
    j["g_threshold"] = cfg.g_threshold;
    return j;
}

json schedule_json(const GaugeSchedule& s) {
    json arr = json::array();
    for (const auto& p : s.pairs) arr.push_back({{"K", p.K.str()}, {"C", p.C.str()}});
    return arr;
}

json gauge_json(const GaugeTable& t) {
    json j;
    j["values"] = t.values;
    j["truncated"] = t.truncated;
    j["guard_skipped"] = t.guard_skipped;
    j["uncertified"] = t.uncertified;
    return j;
}

struct Setup {
    GroupSpec spec;
    GaugeSchedule schedule;
    GaugeTable bound;
    StratumOptions sopts;
    BallBuildOptions bopts;
};

Setup make_setup(const RunConfig& cfg) {
    Setup s{parse_spec_file(cfg.input_path), parse_schedule(cfg.schedule_text), GaugeTable{}, {}, {}};
    s.bound = parse_bound(cfg.bound_text, s.schedule, cfg.radius);
    s.sopts.geodesic_cap = cfg.geodesic_cap;
    s.sopts.qg.budget = cfg.qg_budget;
    s.bopts.vertex_cap = cfg.vertex_cap;
    return s;
}

json stratum_json(const BallGraph& ball, const StratumReport& st) {
    json j;
    j["bound"] = gauge_json(st.bound);
    j["schedule"] = schedule_json(st.schedule);
    j["member_radius"] = st.member_radius;
    j["member_count"] = st.members.size();
    json members = json::array();
    for (const auto& m : st.members) {
        json mj;
        mj["word"] = ball.spec.word_to_text(ball.words[m.vertex]);
        mj["dist"] = ball.dist[m.vertex];
        mj["witness"] = ball.spec.word_to_text(path_labels(ball, m.witness));
        mj["gauge"] = gauge_json(m.gauge);
        mj["truncated"] = m.truncated;
        members.push_back(std::move(mj));
    }
    j["members"] = std::move(members);
    return j;
}

RunResult finish(const RunConfig& cfg, json& j, std::string csv) {
    RunResult res;
    j["tool"] = kToolVersion;
    j["config"] = config_json(cfg);
    res.json = j.dump(2) + "\n";
    res.csv = std::move(csv);
    if (!cfg.out_dir.empty()) {
        std::ofstream jf(cfg.out_dir + "/" + cfg.command + ".json");
        if (!jf) throw InputError("cannot write to output directory " + cfg.out_dir);
        jf << res.json;
        if (!res.csv.empty()) {
            std::ofstream cf(cfg.out_dir + "/" + cfg.command + ".csv");
            cf << res.csv;
        }
    }
    return res;
}

RunResult cmd_stratum(const RunConfig& cfg) {
    Setup s = make_setup(cfg);
    BallGraph ball = build_ball(s.spec, cfg.radius, s.bopts);
    StratumReport st = build_stratum(ball, s.bound, s.sopts);

    json j;
    j["family"] = family_name(s.spec.family);
    j["ball"] = {{"radius", ball.radius}, {"vertices", ball.size()}};
    j["stratum"] = stratum_json(ball, st);

    std::ostringstream csv;
    csv << "word,dist,member\n";
    const int32_t limit = ball.sphere_start[std::min(st.member_radius + 1,
                                                     static_cast<int>(ball.sphere_start.size()) - 1)];
    for (int32_t v = 0; v < limit; ++v)
        csv << '"' << ball.spec.word_to_text(ball.words[v]) << "\"," << ball.dist[v] << ','
            << (st.contains(v) ? 1 : 0) << '\n';

    if (cfg.dump_ball && !cfg.out_dir.empty()) {
        std::ofstream bf(cfg.out_dir + "/ball.jsonl");
        export_jsonl(ball, bf);
    }
    return finish(cfg, j, csv.str());
}

RunResult cmd_hyperbolicity(const RunConfig& cfg) {
    Setup s = make_setup(cfg);
    BallGraph ball = build_ball(s.spec, cfg.radius, s.bopts);
    StratumReport st = build_stratum(ball, s.bound, s.sopts);
    int pr = cfg.proxy_radius >= 0 ? cfg.proxy_radius : st.member_radius;

    std::vector<int32_t> points;
    auto [lo, hi] = ball.sphere_range(pr);
    for (int32_t v = lo; v < hi; ++v)
        if (st.contains(v)) points.push_back(v);

    json j;
    j["proxy_radius"] = pr;
    j["points"] = points.size();
    Rational delta(0);
    bool vacuous = points.empty();
    if (!vacuous) {
        ProductMatrix pm = gromov_products(ball, points, ball.base());
        delta = four_point_delta(pm);
    }
    int idx30 = s.schedule.find(Rational(3), Rational(0));
    j["delta"] = delta.value();
    j["delta_exact"] = delta.str();
    if (idx30 >= 0) {
        int bound8 = 8 * s.bound.values[idx30];
        j["bound"] = bound8;
        j["pass"] = delta <= Rational(bound8);
    } else {
        j["bound"] = nullptr;
        j["pass"] = true;
    }
    j["vacuous"] = vacuous;
    std::ostringstream csv;
    csv << "delta,bound,pass\n"
        << delta.value() << ',' << (idx30 >= 0 ? std::to_string(8 * s.bound.values[idx30]) : "")
        << ',' << (j["pass"].get<bool>() ? 1 : 0) << '\n';
    return finish(cfg, j, csv.str());
}

RunResult cmd_boundary(const RunConfig& cfg) {
    Setup s = make_setup(cfg);
    BallGraph ball = build_ball(s.spec, cfg.radius, s.bopts);
    StratumReport st = build_stratum(ball, s.bound, s.sopts);
    int pr = cfg.proxy_radius >= 0 ? cfg.proxy_radius : st.member_radius;

    // measured hyperbolicity constant of the proxy point set
    std::vector<int32_t> points;
    auto [lo, hi] = ball.sphere_range(pr);
    for (int32_t v = lo; v < hi; ++v)
        if (st.contains(v)) points.push_back(v);
    if (points.empty()) {
        json j;
        j["proxy_radius"] = pr;
        j["points"] = 0;
        j["vacuous"] = true;
        return finish(cfg, j, "");
    }
    ProductMatrix pm = gromov_products(ball, points, ball.base());
    double delta = four_point_delta(pm).value();
    double emax = epsilon_max(delta);
    double eps = cfg.epsilon > 0 ? cfg.epsilon : 0.9 * emax;
    if (eps > emax)
        throw InputError("epsilon " + std::to_string(eps) + " exceeds epsilon_max " +
                         std::to_string(emax));

    BoundaryProxy proxy = make_proxy(ball, st, pr, eps);
    auto chain = chain_visual_metric(proxy);
    auto sandwich = check_visual_sandwich(proxy, chain, delta);

    std::vector<double> scales = cfg.scales;
    if (scales.empty()) scales = {0.05, 0.1, 0.2, 0.4};
    auto [cdim, certs] = capacity_dim_estimate(chain, proxy.n(), scales);

    // asymptotic-dimension probe: block-cover multiplicities per scale
    json asdim = json::array();
    for (double r : scales)
        asdim.push_back({{"scale", r}, {"multiplicity", cover_multiplicity_at_scale(chain, proxy.n(), r)}});

    // quasi-symmetry modulus of the inclusion into the covering stratum:
    // same points, visual parameters from the two measured deltas
    json qs = nullptr;
    if (cfg.bound_text != "cover" && proxy.n() >= 3) {
        StratumReport outer = build_stratum(ball, GaugeTable::covering(s.schedule, cfg.radius), s.sopts);
        std::vector<int32_t> opts_pts;
        auto [olo, ohi] = ball.sphere_range(pr);
        for (int32_t v = olo; v < ohi; ++v)
            if (outer.contains(v)) opts_pts.push_back(v);
        ProductMatrix opm = gromov_products(ball, opts_pts, ball.base());
        double odelta = four_point_delta(opm).value();
        double oeps = 0.9 * epsilon_max(odelta);
        BoundaryProxy oproxy = make_proxy(ball, outer, pr, oeps);
        auto ochain = chain_visual_metric(oproxy);
        // restrict the outer chain metric to the inner point set
        std::vector<double> restricted(static_cast<size_t>(proxy.n()) * proxy.n(), 0.0);
        {
            std::map<int32_t, int> where;
            for (int i = 0; i < oproxy.n(); ++i) where[oproxy.points[i]] = i;
            bool ok = true;
            for (int i = 0; i < proxy.n() && ok; ++i) ok = where.count(proxy.points[i]) > 0;
            if (ok) {
                for (int i = 0; i < proxy.n(); ++i)
                    for (int k = 0; k < proxy.n(); ++k)
                        restricted[static_cast<size_t>(i) * proxy.n() + k] =
                            ochain[static_cast<size_t>(where[proxy.points[i]]) * oproxy.n() +
                                   where[proxy.points[k]]];
                QsFit fit = quasi_symmetry_samples(chain, restricted, proxy.n(), oeps / eps, 0);
                qs = {{"exponent", fit.exponent},
                      {"coefficient", fit.coefficient},
                      {"samples", fit.samples},
                      {"outer_delta", odelta},
                      {"outer_epsilon", oeps}};
            }
        }
    }

    json j;
    j["proxy_radius"] = pr;
    j["points"] = points.size();
    j["delta"] = delta;
    j["epsilon_max"] = emax;
    j["epsilon"] = eps;
    j["sandwich"] = {{"holds", sandwich.holds},
                     {"eps_prime", sandwich.eps_prime},
                     {"worst_lower", sandwich.worst_lower},
                     {"worst_upper", sandwich.worst_upper}};
    j["capacity_dim_estimate"] = cdim;
    j["asdim_probe"] = std::move(asdim);
    j["quasi_symmetry"] = std::move(qs);
    json jcerts = json::array();
    for (const auto& c : certs) {
        json cj;
        cj["scale"] = c.scale;
        cj["multiplicity"] = c.multiplicity;
        cj["lebesgue"] = c.lebesgue;
        cj["delta_achieved"] = c.delta_achieved;
        cj["cover"] = c.cover;
        jcerts.push_back(std::move(cj));
    }
    j["certificates"] = std::move(jcerts);

    std::ostringstream csv;
    csv << "i,j,rho,chain\n";
    for (int i = 0; i < proxy.n(); ++i)
        for (int k = i + 1; k < proxy.n(); ++k)
            csv << i << ',' << k << ',' << proxy.rho_at(i, k) << ','
                << chain[static_cast<size_t>(i) * proxy.n() + k] << '\n';
    return finish(cfg, j, csv.str());
}

RunResult cmd_raag(const RunConfig& cfg) {
    Setup s = make_setup(cfg);
    if (s.spec.family != Family::Raag) throw InputError("raag command requires a raag input");
    BallGraph ball = build_ball(s.spec, cfg.radius, s.bopts);
    StratumReport st = build_stratum(ball, s.bound, s.sopts);
    WallSet walls = build_hyperplanes(ball);
    ContactGraph cg = contact_graph(ball, walls);
    QMapReport rep = embedding_report(ball, st, walls, cg);
    int64_t violations = separation_distance3_violations(walls, cg);

    json j;
    j["wall_count"] = walls.walls.size();
    int interior = 0;
    for (const auto& w : walls.walls) interior += w.interior ? 1 : 0;
    j["interior_walls"] = interior;
    j["edge_count"] = cg.edges.size();
    int64_t crossings = 0;
    for (bool c : cg.crossing) crossings += c ? 1 : 0;
    j["crossing_edges"] = crossings;
    j["members"] = rep.members.size();
    j["pairs"] = rep.pairs.size();
    j["observed_r"] = rep.observed_r;
    j["separation_chain_valid"] = rep.separation_chain_valid;
    j["all_lipschitz"] = rep.all_lipschitz;
    j["all_lower"] = rep.all_lower;
    j["cg_connected"] = rep.cg_connected;
    j["distance3_separation_violations"] = violations;

    // full export stays manageable only for small balls
    if (walls.walls.size() <= 50000) {
        json jw = json::array();
        for (const auto& w : walls.walls)
            jw.push_back({{"id", w.id},
                          {"type", ball.spec.generators[w.type]},
                          {"interior", w.interior}});
        j["walls"] = std::move(jw);
        json je = json::array();
        for (size_t i = 0; i < cg.edges.size(); ++i)
            je.push_back({{"a", cg.edges[i].first}, {"b", cg.edges[i].second}, {"crossing", static_cast<bool>(cg.crossing[i])}});
        j["edges"] = std::move(je);
    } else {
        j["walls"] = nullptr;
        j["edges"] = nullptr;
    }

    std::ostringstream csv;
    csv << "x,y,d,d_cg,lipschitz,lower\n";
    for (const auto& p : rep.pairs)
        csv << '"' << ball.spec.word_to_text(ball.words[p.x]) << "\",\""
            << ball.spec.word_to_text(ball.words[p.y]) << "\"," << p.d << ',' << p.d_cg << ','
            << (p.lipschitz ? 1 : 0) << ',' << (p.lower_ok ? 1 : 0) << '\n';
    return finish(cfg, j, csv.str());
}

RunResult cmd_smallcanc(const RunConfig& cfg) {
    Setup s = make_setup(cfg);
    if (s.spec.family != Family::ClassicalSC && s.spec.family != Family::GraphicalSC)
        throw InputError("smallcanc command requires classical-sc or graphical-sc input");

    LabelledGraph g = s.spec.family == Family::GraphicalSC
                          ? s.spec.graph
                          : cycles_from_relators(s.spec.internal_relators(), s.spec.generator_count());
    CPrimeResult cp = check_c_prime(g, s.spec.generator_count(), s.spec.lambda,
                                    static_cast<size_t>(cfg.cycle_cap));
    auto stats = girth_and_diameter(g);

    json j;
    j["lambda"] = s.spec.lambda.str();
    j["pass"] = cp.pass;
    j["max_piece"] = cp.pieces.max_piece_overall;
    j["component_max_piece"] = cp.pieces.component_max;
    j["piece_cap_hit"] = cp.pieces.capped;
    j["cycles"] = cp.pieces.cycle_count;
    if (!cp.pass) {
        j["witness_piece"] = s.spec.word_to_text(cp.witness_piece);
        j["witness_cycle_length"] = cp.witness_cycle_length;
    }
    json jc = json::array();
    for (const auto& st : stats)
        jc.push_back({{"component", st.component},
                      {"vertices", st.vertices},
                      {"arcs", st.arcs},
                      {"girth", st.girth},
                      {"diameter", st.diameter}});
    j["components"] = std::move(jc);

    if (cfg.g_threshold >= 0) {
        Setup st2 = make_setup(cfg);
        TruncationCheckResult tr = truncation_embedding_check(st2.spec, cfg.g_threshold, cfg.radius,
                                                              st2.bound, st2.sopts, st2.bopts);
        j["truncation"] = {{"kept_components", tr.kept_components},
                           {"dropped_components", tr.dropped_components},
                           {"members_checked", tr.members_checked},
                           {"pairs_checked", tr.pairs_checked},
                           {"monotone_ok", tr.monotone_ok},
                           {"witness_equality_ok", tr.witness_equality_ok},
                           {"gauge_suspect", tr.gauge_suspect}};
    }

    std::ostringstream csv;
    csv << "cycle,length,max_piece,pass\n";
    for (const auto& chk : cp.pieces.cycles)
        csv << chk.cycle_index << ',' << chk.cycle_length << ',' << chk.max_piece << ','
            << (chk.pass ? 1 : 0) << '\n';
    return finish(cfg, j, csv.str());
}

} // namespace

RunResult run_command(const RunConfig& cfg) {
    RunResult res;
    try {
#ifdef _OPENMP
        if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif
        if (cfg.command == "stratum") return cmd_stratum(cfg);
        if (cfg.command == "hyperbolicity") return cmd_hyperbolicity(cfg);
        if (cfg.command == "boundary") return cmd_boundary(cfg);
        if (cfg.command == "raag") return cmd_raag(cfg);
        if (cfg.command == "smallcanc") return cmd_smallcanc(cfg);
        throw InputError("unknown command '" + cfg.command + "'");
    } catch (const CapError& e) {
        res.exit_code = 2;
        res.error = e.what();
    } catch (const InputError& e) {
        res.exit_code = 1;
        res.error = e.what();
    } catch (const std::exception& e) {
        res.exit_code = 3;
        res.error = e.what();
    }
    return res;
}

} // namespace morselab
