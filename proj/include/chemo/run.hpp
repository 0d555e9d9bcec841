#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chemo/lyapunov.hpp"
#include "chemo/model.hpp"
#include "chemo/thresholds.hpp"

namespace chemo {

enum class Scenario { custom, extinction, persistence, taxis_free, pattern };
const char* to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

struct SweepSpec {
    std::string param;  // one of D, chi, r, a, f
    double from = 0.0;
    double to = 0.0;
    int count = 1;
    bool log_spaced = false;
};

struct RunConfig {
    SimConfig sim;
    Scenario scenario = Scenario::custom;
    bool lyapunov_enabled = true;
    std::string out_dir = "out";
    std::string prefix = "run";
    bool store_states = false;
    std::optional<SweepSpec> sweep;
    nlohmann::ordered_json raw;  // effective config document (sweep re-derives from it)
};

struct RunSummary {
    std::string scenario;
    Regime regime = Regime::degenerate;
    StopReason reason = StopReason::t_end;
    std::string error_message;
    double final_t = 0.0;
    double linf_u_dev = 0.0, linf_v_dev = 0.0;
    double l2_u_dev = 0.0, l2_v_dev = 0.0;
    double mass_u = 0.0, min_u = 0.0;
    double spatial_variance_u = 0.0;
    double r_c = 0.0;
    KInterval feasible;
    bool feasible_defined = false;  // r > f
    LyapunovConstants constants;
    DecayReport decay;
    bool patterned = false;
    double wall_seconds = 0.0;
    std::vector<std::string> notes;
};

// Config document handling. parse_config applies scenario defaults for fields
// the document leaves unset; apply_overrides handles --set key.path=value.
nlohmann::ordered_json default_config_json();
void apply_override(nlohmann::ordered_json& doc, const std::string& key_eq_value);
RunConfig parse_config(const nlohmann::ordered_json& doc);
RunConfig load_config_file(const std::string& path, const std::vector<std::string>& overrides);

/// Pick the Lyapunov case + constants for the regime; uncertified (c = 0)
/// when the lemma hypotheses fail, with an explanatory note.
LyapunovConstants pick_constants(const ModelParams& p, Regime regime,
                                 std::vector<std::string>& notes);

/// Run one scenario: classify, certify constants, simulate, attach the decay
/// report, emit <prefix>_timeseries.csv and <prefix>_summary.json (and
/// <prefix>_states.bin when requested). Pass out_dir="" to skip file output.
RunSummary run_scenario(const RunConfig& cfg, Trajectory* out_traj = nullptr);

/// One row per sweep point into <prefix>_sweep.csv; points run concurrently
/// (capped by CHEMO_THREADS), output is written in point order.
std::vector<RunSummary> run_sweep(const RunConfig& cfg);

nlohmann::ordered_json summary_to_json(const RunConfig& cfg, const RunSummary& s);
nlohmann::ordered_json threshold_report_to_json(const ThresholdReport& rep);

// Fixed CSV schema: t, linf_u_dev, linf_v_dev, l2_u_dev, l2_v_dev, mass_u,
// min_u, E, F, dE_dt_estimate.
std::string timeseries_csv(const Trajectory& traj);
std::string sweep_csv_header();
std::string sweep_csv_row(int index, const SweepSpec& sweep, double value, const RunSummary& s);

// Trajectory store for `lyapunov-check` (little-endian binary, see README).
void save_states(const std::string& path, const SimConfig& cfg, const Trajectory& traj);

struct StoredTrajectory {
    ModelParams params;
    Grid grid;
    LyapCase lyap_case = LyapCase::none;
    double k = 0.0;
    std::vector<State> states;
};

StoredTrajectory load_states(const std::string& path);

/// Re-evaluates E/F on a stored trajectory with freshly selected constants
/// and re-runs the decay monitor.
struct LyapunovCheckResult {
    LyapunovConstants constants;
    DecayReport decay;
    std::vector<Sample> samples;
    std::vector<std::string> notes;
};

LyapunovCheckResult lyapunov_check(const StoredTrajectory& stored);

}  // namespace chemo
