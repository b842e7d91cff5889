// Command-line front end: runs one named experiment and writes CSV + JSON
// reports. Exit codes: 0 all checks pass, 1 any check failed, 2 usage/config
// error, 3 inconclusive only.

#include <CLI11.hpp>

#include "greedylab/experiments.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"greedylab: thresholding-greedy approximation laboratory"};
    app.get_formatter()->column_width(30);

    std::string experiment, config_path, out_dir = "reports", construction;
    std::string seed, dim, budget;
    std::vector<std::string> extra;
    bool list = false;

    app.add_option("--experiment", experiment, "experiment name (see --list)");
    app.add_option("--config", config_path, "key = value config file");
    app.add_option("--seed", seed, "RNG seed (overrides config)");
    app.add_option("--dim", dim, "size/dimension knob (overrides config)");
    app.add_option("--budget", budget, "sampling budget (overrides config)");
    app.add_option("--out", out_dir, "output directory for reports");
    app.add_option("--construction", construction, "serialized construction file");
    app.add_option("--set", extra, "extra key=value overrides")->take_all();
    app.add_flag("--list", list, "list experiments and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (list) {
        for (const auto& [name, _] : greedylab::experiment_catalog()) std::cout << name << "\n";
        return 0;
    }

    try {
        greedylab::ExperimentConfig cfg;
        if (!config_path.empty()) cfg = greedylab::ExperimentConfig::from_file(config_path);
        if (!experiment.empty()) cfg.set("experiment", experiment);
        if (!seed.empty()) cfg.set("seed", seed);
        if (!dim.empty()) cfg.set("dim", dim);
        if (!budget.empty()) cfg.set("budget", budget);
        if (!construction.empty()) cfg.set("construction", construction);
        for (const std::string& kv : extra) {
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--set expects key=value, got: " + kv);
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        cfg.set("out", out_dir);

        greedylab::Report rep = greedylab::run_experiment(cfg);

        std::filesystem::create_directories(out_dir);
        const std::string base = out_dir + "/" + rep.experiment;
        greedylab::write_csv(rep, base + ".csv");
        greedylab::write_json(rep, base + ".json");

        for (const auto& c : rep.checks) {
            std::printf("[%s] %s: measured %.6g %s bound %.6g  (%s)\n",
                        c.verdict == "pass" ? "PASS" : (c.verdict == "fail" ? "FAIL" : "INCONCLUSIVE"),
                        c.name.c_str(), c.measured,
                        c.relation == greedylab::CheckRecord::Relation::LessEq ? "<=" : ">=", c.bound,
                        c.anchor.c_str());
        }
        std::printf("report: %s.{csv,json}  wall %.3fs\n", base.c_str(), rep.wall_seconds);
        return rep.exit_code();
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
