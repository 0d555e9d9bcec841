#include "chemo/run.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "chemo/parallel.hpp"

namespace chemo {

using nlohmann::ordered_json;

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string sanitize_csv(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

const char* lyap_case_name(LyapCase c) {
    switch (c) {
        case LyapCase::none: return "none";
        case LyapCase::case1: return "case1";
        case LyapCase::case2: return "case2";
    }
    return "?";
}

ordered_json interval_to_json(const KInterval& iv) {
    ordered_json j;
    j["empty"] = iv.empty;
    if (!iv.empty) {
        j["lo"] = iv.lo;
        j["hi"] = iv.unbounded() ? ordered_json() : ordered_json(iv.hi);
        j["unbounded"] = iv.unbounded();
    }
    return j;
}

ordered_json decay_to_json(const DecayReport& d) {
    return ordered_json{{"case", lyap_case_name(d.which)},
                        {"c", d.c},
                        {"intervals", d.intervals},
                        {"violations", d.violations},
                        {"excluded", d.excluded},
                        {"violation_fraction", d.violation_fraction},
                        {"worst_violation", d.worst_violation},
                        {"max_relative_increase", d.max_relative_increase}};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << content;
}

}  // namespace

LyapunovConstants pick_constants(const ModelParams& p, Regime regime,
                                 std::vector<std::string>& notes) {
    LyapunovConstants c;
    switch (regime) {
        case Regime::extinction:
            if (case1_feasible(p.r, p.a)) return select_constants_case1(p);
            notes.push_back("case-1 hypothesis r >= a fails (r=" + fmt(p.r) + ", a=" + fmt(p.a) +
                            "); E1 monitored without a certified constant");
            c.which = LyapCase::case1;
            c.k = p.a > 0.0 ? p.r / (p.a * p.a) : 1.0 / p.r;
            return c;
        case Regime::coexistence: {
            const KInterval fk = feasible_k(p.r, p);
            if (!fk.empty) {
                LyapunovConstants got = select_constants_case2(p, fk);
                const double rc = r_critical(p);
                if (p.r <= rc)
                    notes.push_back("r <= r_c (" + fmt(rc) +
                                    "); constant certified by direct positive-definiteness scan");
                return got;
            }
            notes.push_back("no positive-definite k at r=" + fmt(p.r) +
                            "; E2 monitored without a certified constant");
            c.which = LyapCase::case2;
            c.k = std::max(1.0, 2.0 * k_min(p.r, p));
            return c;
        }
        case Regime::degenerate:
            notes.push_back("r = f is outside both lemmas; E1 monitored without a certified "
                            "constant");
            c.which = LyapCase::case1;
            c.k = 1.0 / p.r;
            return c;
    }
    return c;
}

std::string timeseries_csv(const Trajectory& traj) {
    std::string out =
        "t,linf_u_dev,linf_v_dev,l2_u_dev,l2_v_dev,mass_u,min_u,E,F,dE_dt_estimate\n";
    for (size_t i = 0; i < traj.samples.size(); ++i) {
        const Sample& s = traj.samples[i];
        double dEdt = 0.0;
        if (i > 0) {
            const Sample& prev = traj.samples[i - 1];
            dEdt = (s.E - prev.E) / (s.t - prev.t);
        }
        out += fmt(s.t) + ',' + fmt(s.linf_u_dev) + ',' + fmt(s.linf_v_dev) + ',' +
               fmt(s.l2_u_dev) + ',' + fmt(s.l2_v_dev) + ',' + fmt(s.mass_u) + ',' +
               fmt(s.min_u) + ',' + fmt(s.E) + ',' + fmt(s.F) + ',' + fmt(dEdt) + '\n';
    }
    return out;
}

RunSummary run_scenario(const RunConfig& cfg, Trajectory* out_traj) {
    const auto t0 = std::chrono::steady_clock::now();
    const ModelParams& p = cfg.sim.params;

    RunSummary sum;
    sum.scenario = to_string(cfg.scenario);
    sum.regime = classify_local_stability(p).regime;

    try {
        sum.r_c = r_critical(p);
    } catch (const NumericalError& e) {
        sum.r_c = std::numeric_limits<double>::quiet_NaN();
        sum.notes.push_back(std::string("r_c unavailable: ") + e.what());
    }
    if (p.r > p.f) {
        sum.feasible = feasible_k(p.r, p);
        sum.feasible_defined = true;
    }

    if (cfg.lyapunov_enabled) sum.constants = pick_constants(p, sum.regime, sum.notes);

    SimConfig sim = cfg.sim;
    sim.lyapunov = LyapunovSettings{sum.constants.which, sum.constants.k};
    sim.store_states = cfg.store_states;

    Trajectory traj = simulate(sim);
    sum.reason = traj.reason;
    sum.error_message = traj.error_message;
    sum.final_t = traj.final_t;
    const Sample& last = traj.last();
    sum.linf_u_dev = last.linf_u_dev;
    sum.linf_v_dev = last.linf_v_dev;
    sum.l2_u_dev = last.l2_u_dev;
    sum.l2_v_dev = last.l2_v_dev;
    sum.mass_u = last.mass_u;
    sum.min_u = last.min_u;
    sum.spatial_variance_u = last.var_u;
    sum.decay = monitor_decay(traj.samples, sum.constants.which, sum.constants);
    sum.patterned = cfg.scenario == Scenario::pattern && traj.reason == StopReason::steady &&
                    sum.spatial_variance_u > 1e-4;
    if (traj.min_v_seen < 0.0)
        sum.notes.push_back("warning: v dipped negative (min " + fmt(traj.min_v_seen) + ")");

    sum.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!cfg.out_dir.empty()) {
        const std::filesystem::path dir(cfg.out_dir);
        std::filesystem::create_directories(dir);
        write_file(dir / (cfg.prefix + "_timeseries.csv"), timeseries_csv(traj));
        write_file(dir / (cfg.prefix + "_summary.json"),
                   summary_to_json(cfg, sum).dump(2) + "\n");
        if (cfg.store_states)
            save_states((dir / (cfg.prefix + "_states.bin")).string(), sim, traj);
    }
    if (out_traj) *out_traj = std::move(traj);
    return sum;
}

std::string sweep_csv_header() {
    return "index,param,value,regime,termination,final_t,linf_u_dev,linf_v_dev,l2_u_dev,"
           "l2_v_dev,r_c,feasible_empty,feasible_lo,feasible_hi,decay_case,decay_c,"
           "decay_violations,max_e_increase,variance_u,error\n";
}

std::string sweep_csv_row(int index, const SweepSpec& sweep, double value, const RunSummary& s) {
    std::string row = std::to_string(index) + ',' + sweep.param + ',' + fmt(value) + ',';
    row += std::string(to_string(s.regime)) + ',' + to_string(s.reason) + ',' + fmt(s.final_t) +
           ',' + fmt(s.linf_u_dev) + ',' + fmt(s.linf_v_dev) + ',' + fmt(s.l2_u_dev) + ',' +
           fmt(s.l2_v_dev) + ',' + fmt(s.r_c) + ',';
    if (s.feasible_defined) {
        row += std::string(s.feasible.empty ? "1" : "0") + ',';
        row += (s.feasible.empty ? std::string() : fmt(s.feasible.lo)) + ',';
        row += (s.feasible.empty ? std::string()
                                 : (s.feasible.unbounded() ? "inf" : fmt(s.feasible.hi))) + ',';
    } else {
        row += ",,,";
    }
    row += std::string(lyap_case_name(s.constants.which)) + ',' + fmt(s.decay.c) + ',' +
           std::to_string(s.decay.violations) + ',' + fmt(s.decay.max_relative_increase) + ',' +
           fmt(s.spatial_variance_u) + ',' + sanitize_csv(s.error_message) + '\n';
    return row;
}

std::vector<RunSummary> run_sweep(const RunConfig& cfg) {
    if (!cfg.sweep) throw ConfigError("run_sweep: config has no sweep spec");
    const SweepSpec& sw = *cfg.sweep;

    std::vector<double> values(sw.count);
    for (int i = 0; i < sw.count; ++i) {
        if (sw.count == 1) {
            values[i] = sw.from;
        } else if (sw.log_spaced) {
            values[i] = sw.from * std::pow(sw.to / sw.from, double(i) / (sw.count - 1));
        } else {
            values[i] = sw.from + (sw.to - sw.from) * double(i) / (sw.count - 1);
        }
    }

    std::vector<RunSummary> results(sw.count);
    std::atomic<int> next{0};
    auto work = [&](bool concurrent) {
        // Concurrent points keep their kernels serial; a lone worker may use them.
        std::optional<parallel::SerialKernelsGuard> guard;
        if (concurrent) guard.emplace();
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= sw.count) break;
            ordered_json doc = cfg.raw;
            doc["params"][sw.param] = values[i];
            doc.erase("sweep");
            doc["output"]["dir"] = "";
            try {
                RunConfig point = parse_config(doc);
                results[i] = run_scenario(point);
            } catch (const Error& e) {
                results[i] = RunSummary{};
                results[i].scenario = to_string(cfg.scenario);
                results[i].error_message = e.what();
                results[i].reason = StopReason::blow_up;
                try {
                    results[i].regime = classify_local_stability(
                        parse_config(doc).sim.params).regime;
                } catch (...) {
                }
            }
        }
    };

    const unsigned workers =
        std::min<unsigned>(parallel::sweep_workers(), static_cast<unsigned>(sw.count));
    if (workers <= 1) {
        work(false);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, true);
        for (auto& th : pool) th.join();
    }

    if (!cfg.out_dir.empty()) {
        const std::filesystem::path dir(cfg.out_dir);
        std::filesystem::create_directories(dir);
        std::string csv = sweep_csv_header();
        ordered_json all = ordered_json::array();
        for (int i = 0; i < sw.count; ++i) {
            csv += sweep_csv_row(i, sw, values[i], results[i]);
            ordered_json j = summary_to_json(cfg, results[i]);
            j.erase("config");
            j["sweep_value"] = values[i];
            all.push_back(std::move(j));
        }
        write_file(dir / (cfg.prefix + "_sweep.csv"), csv);
        write_file(dir / (cfg.prefix + "_sweep_summary.json"), all.dump(2) + "\n");
    }
    return results;
}

ordered_json summary_to_json(const RunConfig& cfg, const RunSummary& s) {
    ordered_json j;
    j["scenario"] = s.scenario;
    j["regime"] = to_string(s.regime);
    j["termination"] = to_string(s.reason);
    j["error"] = s.error_message;
    j["final_t"] = s.final_t;
    j["final"] = ordered_json{{"linf_u_dev", s.linf_u_dev}, {"linf_v_dev", s.linf_v_dev},
                              {"l2_u_dev", s.l2_u_dev},     {"l2_v_dev", s.l2_v_dev},
                              {"mass_u", s.mass_u},         {"min_u", s.min_u},
                              {"spatial_variance_u", s.spatial_variance_u}};
    j["thresholds"] =
        ordered_json{{"r_c", std::isfinite(s.r_c) ? ordered_json(s.r_c) : ordered_json()},
                     {"feasible_k", s.feasible_defined ? interval_to_json(s.feasible)
                                                       : ordered_json()}};
    j["lyapunov"] = ordered_json{{"case", lyap_case_name(s.constants.which)},
                                 {"k", s.constants.k},
                                 {"eps1", s.constants.which == LyapCase::case1
                                              ? ordered_json(s.constants.eps1)
                                              : ordered_json()},
                                 {"c", s.constants.c},
                                 {"certified", s.constants.certified},
                                 {"decay", decay_to_json(s.decay)}};
    j["patterned"] = s.patterned;
    j["wall_seconds"] = s.wall_seconds;
    j["notes"] = s.notes;
    j["config"] = cfg.raw;
    return j;
}

ordered_json threshold_report_to_json(const ThresholdReport& rep) {
    ordered_json j;
    j["params"] = ordered_json{{"D", rep.params.D}, {"chi", rep.params.chi}, {"r", rep.params.r},
                               {"a", rep.params.a}, {"f", rep.params.f}};
    j["regime"] = to_string(classify_local_stability(rep.params).regime);
    j["taxis_free"] = rep.taxis_free;
    j["case1_feasible"] = rep.case1_ok;
    if (rep.cubic_defined) {
        j["cubic"] = ordered_json{{"coeffs", rep.cubic.c}, {"degenerate", rep.cubic.degenerate}};
    } else {
        j["cubic"] = ordered_json();
    }
    j["positive_roots"] = rep.positive_roots;
    j["r_c"] = rep.r_c;
    if (rep.k_fields_defined) {
        j["k_min"] = rep.k_min_at_r;
        j["k_interval"] = interval_to_json(rep.k_interval_at_r);
        j["feasible_k"] = interval_to_json(rep.feasible_at_r);
    } else {
        j["k_min"] = ordered_json();
        j["k_interval"] = ordered_json();
        j["feasible_k"] = ordered_json();
    }
    return j;
}

LyapunovCheckResult lyapunov_check(const StoredTrajectory& stored) {
    LyapunovCheckResult res;
    const Regime regime = classify_local_stability(stored.params).regime;
    res.constants = pick_constants(stored.params, regime, res.notes);
    for (const State& st : stored.states) {
        Sample m;
        m.t = st.t;
        switch (res.constants.which) {
            case LyapCase::case1:
                m.E = e1(st, stored.params, res.constants.k);
                m.F = f1(st, stored.params);
                m.lyap_defined = true;
                break;
            case LyapCase::case2:
                try {
                    m.E = e2(st, stored.params, res.constants.k);
                    m.F = f2(st, stored.params);
                    m.lyap_defined = true;
                } catch (const UndefinedFunctionalError&) {
                    m.E = m.F = std::numeric_limits<double>::quiet_NaN();
                }
                break;
            case LyapCase::none:
                break;
        }
        res.samples.push_back(m);
    }
    res.decay = monitor_decay(res.samples, res.constants.which, res.constants);
    return res;
}

}  // namespace chemo
