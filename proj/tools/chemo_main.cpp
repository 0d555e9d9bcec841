// chemo — command-line front end: simulate / thresholds / sweep / lyapunov-check.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chemo/run.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir;
    long long seed = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON config file");
    cmd->add_option("--set", args.sets, "override a config field, e.g. --set params.r=2")
        ->take_all();
    cmd->add_option("--out", args.out_dir, "output directory (overrides output.dir)");
    cmd->add_option("--seed", args.seed, "RNG seed (overrides seed)");
}

chemo::RunConfig build_config(const CommonArgs& args) {
    std::vector<std::string> overrides = args.sets;
    if (!args.out_dir.empty()) overrides.push_back("output.dir=\"" + args.out_dir + "\"");
    if (args.seed >= 0) overrides.push_back("seed=" + std::to_string(args.seed));
    return chemo::load_config_file(args.config_path, overrides);
}

void print_run_digest(const chemo::RunSummary& s) {
    std::cout << "scenario:    " << s.scenario << "\n"
              << "regime:      " << chemo::to_string(s.regime) << "\n"
              << "termination: " << chemo::to_string(s.reason);
    if (!s.error_message.empty()) std::cout << " (" << s.error_message << ")";
    std::cout << "\n"
              << "final t:     " << s.final_t << "\n"
              << "|u-u*|_inf:  " << s.linf_u_dev << "\n"
              << "|v-v*|_inf:  " << s.linf_v_dev << "\n"
              << "lyapunov:    case=" << (s.constants.which == chemo::LyapCase::none
                                              ? "none"
                                              : (s.constants.which == chemo::LyapCase::case1
                                                     ? "case1"
                                                     : "case2"))
              << " c=" << s.constants.c << (s.constants.certified ? " (certified)" : "")
              << " violations=" << s.decay.violations << "/" << s.decay.intervals << "\n";
    for (const std::string& n : s.notes) std::cout << "note: " << n << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for a repulsive chemotaxis system with lethal chemical"};
    app.require_subcommand(1);

    CommonArgs sim_args, thr_args, sweep_args, lyap_args;

    CLI::App* sim = app.add_subcommand("simulate", "run one scenario and write CSV/JSON output");
    add_common(sim, sim_args);
    std::string scenario_flag;
    bool save_states_flag = false;
    sim->add_option("--scenario", scenario_flag,
                    "extinction | persistence | taxis-free | pattern | custom");
    sim->add_flag("--save-states", save_states_flag,
                  "also store field snapshots for lyapunov-check");

    CLI::App* thr = app.add_subcommand("thresholds",
                                       "print the stability-threshold report as JSON");
    add_common(thr, thr_args);

    CLI::App* sweep = app.add_subcommand("sweep", "run the sweep described in the config");
    add_common(sweep, sweep_args);

    CLI::App* lyap = app.add_subcommand("lyapunov-check",
                                        "re-evaluate the functionals on stored states");
    std::string states_path;
    lyap->add_option("--states", states_path, "states file written by simulate --save-states")
        ->required();
    add_common(lyap, lyap_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            if (!scenario_flag.empty())
                sim_args.sets.push_back("scenario=\"" + scenario_flag + "\"");
            if (save_states_flag) sim_args.sets.push_back("store_states=true");
            chemo::RunConfig cfg = build_config(sim_args);
            const chemo::RunSummary s = chemo::run_scenario(cfg);
            print_run_digest(s);
            if (!cfg.out_dir.empty())
                std::cout << "wrote " << cfg.out_dir << "/" << cfg.prefix
                          << "_{timeseries.csv,summary.json}\n";
            return 0;
        }
        if (thr->parsed()) {
            chemo::RunConfig cfg = build_config(thr_args);
            const chemo::ThresholdReport rep = chemo::threshold_report(cfg.sim.params);
            const nlohmann::ordered_json j = chemo::threshold_report_to_json(rep);
            std::cout << j.dump(2) << "\n";
            if (!thr_args.out_dir.empty()) {
                std::filesystem::create_directories(thr_args.out_dir);
                std::ofstream out(std::filesystem::path(thr_args.out_dir) /
                                  (cfg.prefix + "_thresholds.json"));
                out << j.dump(2) << "\n";
            }
            return 0;
        }
        if (sweep->parsed()) {
            chemo::RunConfig cfg = build_config(sweep_args);
            if (!cfg.sweep) throw chemo::ConfigError("config has no sweep section");
            const auto results = chemo::run_sweep(cfg);
            int failed = 0;
            for (const auto& s : results)
                if (!s.error_message.empty()) ++failed;
            std::cout << "sweep finished: " << results.size() << " points, " << failed
                      << " failed\n";
            if (!cfg.out_dir.empty())
                std::cout << "wrote " << cfg.out_dir << "/" << cfg.prefix << "_sweep.csv\n";
            return 0;
        }
        if (lyap->parsed()) {
            const chemo::StoredTrajectory stored = chemo::load_states(states_path);
            const chemo::LyapunovCheckResult res = chemo::lyapunov_check(stored);
            nlohmann::ordered_json j;
            j["states"] = states_path;
            j["samples"] = res.samples.size();
            j["constants"] = nlohmann::ordered_json{
                {"case", res.constants.which == chemo::LyapCase::case1 ? "case1" : "case2"},
                {"k", res.constants.k},
                {"c", res.constants.c},
                {"certified", res.constants.certified}};
            j["decay"] = nlohmann::ordered_json{
                {"intervals", res.decay.intervals},
                {"violations", res.decay.violations},
                {"excluded", res.decay.excluded},
                {"violation_fraction", res.decay.violation_fraction},
                {"worst_violation", res.decay.worst_violation},
                {"max_relative_increase", res.decay.max_relative_increase}};
            j["notes"] = res.notes;
            std::cout << j.dump(2) << "\n";
            if (!lyap_args.out_dir.empty()) {
                std::filesystem::create_directories(lyap_args.out_dir);
                std::ofstream out(std::filesystem::path(lyap_args.out_dir) /
                                  "lyapunov_check.json");
                out << j.dump(2) << "\n";
                std::string csv = "t,E,F\n";
                char buf[96];
                for (const chemo::Sample& m : res.samples) {
                    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", m.t, m.E, m.F);
                    csv += buf;
                }
                std::ofstream csv_out(std::filesystem::path(lyap_args.out_dir) /
                                      "lyapunov_check.csv");
                csv_out << csv;
            }
            return 0;
        }
    } catch (const chemo::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
