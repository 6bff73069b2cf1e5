#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "morselab/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"morselab: finite-scale geometry lab for Cayley graphs"};
    app.require_subcommand(1);

    morselab::RunConfig cfg;
    std::string scales_text;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input_path, "presentation file (.grp)")->required();
        sub->add_option("--radius", cfg.radius, "ball radius R");
        sub->add_option("--schedule", cfg.schedule_text, "gauge schedule, e.g. '1,0;3,0'");
        sub->add_option("--bound", cfg.bound_text, "gauge bound: 'cover', value, or list 'a;b'");
        sub->add_option("--out", cfg.out_dir, "output directory for JSON/CSV");
        sub->add_option("--vertex-cap", cfg.vertex_cap, "ball vertex cap");
        sub->add_option("--qg-budget", cfg.qg_budget, "quasi-geodesic search budget per probe");
        sub->add_option("--cycle-cap", cfg.cycle_cap, "simple cycle enumeration cap");
        sub->add_option("--geodesic-cap", cfg.geodesic_cap, "geodesic enumeration cap");
        sub->add_option("--threads", cfg.threads, "worker threads (0 = default)");
    };

    auto* stratum = app.add_subcommand("stratum", "build a gauge stratum of the ball");
    add_common(stratum);
    stratum->add_flag("--dump-ball", cfg.dump_ball, "write ball.jsonl adjacency dump");

    auto* hyp = app.add_subcommand("hyperbolicity", "four-point delta of a stratum sphere");
    add_common(hyp);
    hyp->add_option("--proxy-radius", cfg.proxy_radius, "sphere radius for the point set");

    auto* bound = app.add_subcommand("boundary", "visual metric and dimension probes");
    add_common(bound);
    bound->add_option("--proxy-radius", cfg.proxy_radius, "sphere radius for the proxy");
    bound->add_option("--epsilon", cfg.epsilon, "visual parameter (default 0.9*epsilon_max)");
    bound->add_option("--scales", scales_text, "comma-separated cover scales");

    auto* raag = app.add_subcommand("raag", "walls, contact graph and the q-map report");
    add_common(raag);

    auto* sc = app.add_subcommand("smallcanc", "piece enumeration and C'(lambda) check");
    add_common(sc);
    sc->add_option("--g-threshold", cfg.g_threshold, "girth threshold: also run truncation check");

    CLI11_PARSE(app, argc, argv);

    if (!scales_text.empty()) {
        std::stringstream ss(scales_text);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) cfg.scales.push_back(std::stod(item));
    }
    for (auto* sub : {stratum, hyp, bound, raag, sc})
        if (sub->parsed()) cfg.command = sub->get_name();

    morselab::RunResult res = morselab::run_command(cfg);
    if (res.exit_code != 0) {
        std::cerr << "error: " << res.error << "\n";
        return res.exit_code;
    }
    std::cout << res.json;
    return 0;
}
