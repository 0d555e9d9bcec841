#include <fstream>
#include <string>

#include "chemo/run.hpp"

namespace chemo {

using nlohmann::ordered_json;

const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::custom: return "custom";
        case Scenario::extinction: return "extinction";
        case Scenario::persistence: return "persistence";
        case Scenario::taxis_free: return "taxis-free";
        case Scenario::pattern: return "pattern";
    }
    return "?";
}

Scenario scenario_from_string(const std::string& name) {
    if (name == "custom") return Scenario::custom;
    if (name == "extinction") return Scenario::extinction;
    if (name == "persistence") return Scenario::persistence;
    if (name == "taxis-free" || name == "taxis_free") return Scenario::taxis_free;
    if (name == "pattern") return Scenario::pattern;
    throw ConfigError("unknown scenario '" + name + "'");
}

ordered_json default_config_json() {
    return ordered_json{
        {"scenario", "custom"},
        {"params", {{"D", 1.0}, {"chi", 1.0}, {"r", 1.0}, {"a", 0.0}, {"f", 0.0}}},
        {"grid", {{"dim", 1}, {"nx", 128}, {"ny", 1}, {"Lx", 1.0}, {"Ly", 1.0}}},
        {"initial",
         {{"u", {{"kind", "constant"}, {"base", 0.5}, {"amplitude", 0.0}, {"mode_x", 1},
                 {"mode_y", 0}}},
          {"v", {{"kind", "constant"}, {"base", 0.0}, {"amplitude", 0.0}, {"mode_x", 1},
                 {"mode_y", 0}}}}},
        {"time",
         {{"dt_init", 0.0}, {"t_end", 10.0}, {"cfl_safety", 0.9}, {"steady_tol", 1e-9},
          {"monitor_every", 200}}},
        {"lyapunov", true},
        {"seed", 42},
        {"output", {{"dir", "out"}, {"prefix", "run"}}},
        {"store_states", false},
    };
}

namespace {

void merge_into(ordered_json& base, const ordered_json& overlay) {
    for (auto it = overlay.begin(); it != overlay.end(); ++it) {
        if (it->is_object() && base.contains(it.key()) && base[it.key()].is_object())
            merge_into(base[it.key()], *it);
        else
            base[it.key()] = *it;
    }
}

ModelParams params_from_json(const ordered_json& j) {
    ModelParams p;
    p.D = j.at("D").get<double>();
    p.chi = j.at("chi").get<double>();
    p.r = j.at("r").get<double>();
    p.a = j.at("a").get<double>();
    p.f = j.at("f").get<double>();
    p.validate();
    return p;
}

// Scenario presets. Initial data depends on the final parameter values, so
// the caller passes those in.
ordered_json scenario_defaults(Scenario sc, const ModelParams& p) {
    ordered_json d;
    switch (sc) {
        case Scenario::custom:
            break;
        case Scenario::extinction: {
            d["params"] = {{"D", 1.0}, {"chi", 1.0}, {"r", 1.0}, {"a", 0.5}, {"f", 2.0}};
            d["initial"]["u"] = {{"kind", "cosine_perturbation"}, {"base", 0.5},
                                 {"amplitude", 0.1}, {"mode_x", 2}, {"mode_y", 0}};
            d["initial"]["v"] = {{"kind", "constant"}, {"base", p.f}};
            d["time"]["t_end"] = 50.0;
            break;
        }
        case Scenario::persistence:
        case Scenario::taxis_free: {
            d["params"] = {{"D", 1.0}, {"chi", sc == Scenario::taxis_free ? 0.0 : 1.0},
                           {"r", 2.0}, {"a", 1.0}, {"f", 0.0}};
            const SteadyState cs = coexistence_state(p);
            d["initial"]["u"] = {{"kind", "cosine_perturbation"}, {"base", cs.u_val},
                                 {"amplitude", 0.1 * cs.u_val}, {"mode_x", 1}, {"mode_y", 0}};
            d["initial"]["v"] = {{"kind", "constant"}, {"base", cs.v_val}};
            d["time"]["t_end"] = 100.0;
            break;
        }
        case Scenario::pattern: {
            // Three positive cubic roots (~0.107, 0.575, 2.608); r sits between
            // the two largest.
            d["params"] = {{"D", 1.0}, {"chi", 5.0}, {"r", 1.2}, {"a", 2.0}, {"f", 0.0}};
            const SteadyState cs = coexistence_state(p);
            d["initial"]["u"] = {{"kind", "random_perturbation"}, {"base", cs.u_val},
                                 {"amplitude", 0.5 * cs.u_val}};
            d["initial"]["v"] = {{"kind", "constant"}, {"base", cs.v_val}};
            d["time"]["t_end"] = 300.0;
            break;
        }
    }
    return d;
}

InitialSpec initial_from_json(const ordered_json& j) {
    InitialSpec s;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant")
        s.kind = InitialKind::constant;
    else if (kind == "cosine_perturbation")
        s.kind = InitialKind::cosine_perturbation;
    else if (kind == "random_perturbation")
        s.kind = InitialKind::random_perturbation;
    else
        throw ConfigError("unknown initial-condition kind '" + kind + "'");
    s.base = j.at("base").get<double>();
    s.amplitude = j.value("amplitude", 0.0);
    s.mode_x = j.value("mode_x", 1);
    s.mode_y = j.value("mode_y", 0);
    return s;
}

}  // namespace

void apply_override(ordered_json& doc, const std::string& key_eq_value) {
    const auto eq = key_eq_value.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("--set expects key.path=value, got '" + key_eq_value + "'");
    const std::string path = key_eq_value.substr(0, eq);
    const std::string raw = key_eq_value.substr(eq + 1);

    ordered_json value;
    try {
        value = ordered_json::parse(raw);
    } catch (...) {
        value = raw;  // unquoted strings are convenient on the command line
    }

    ordered_json* node = &doc;
    size_t pos = 0;
    while (true) {
        const size_t dot = path.find('.', pos);
        const std::string key = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
        if (key.empty()) throw ConfigError("--set: empty key segment in '" + path + "'");
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return;
        }
        node = &(*node)[key];
        pos = dot + 1;
    }
}

RunConfig parse_config(const ordered_json& user_doc) {
    const Scenario sc = scenario_from_string(
        user_doc.value("scenario", std::string("custom")));

    // Parameter precedence: library defaults < scenario preset < user document.
    ordered_json doc = default_config_json();
    ordered_json params_doc = doc["params"];
    const ordered_json preset_probe = scenario_defaults(sc, params_from_json(params_doc));
    if (preset_probe.contains("params")) merge_into(params_doc, preset_probe["params"]);
    if (user_doc.contains("params")) merge_into(params_doc, user_doc["params"]);
    const ModelParams params = params_from_json(params_doc);

    merge_into(doc, scenario_defaults(sc, params));
    merge_into(doc, user_doc);
    doc["params"] = params_doc;

    RunConfig cfg;
    cfg.scenario = sc;
    cfg.sim.params = params;

    const ordered_json& gj = doc.at("grid");
    const int dim = gj.at("dim").get<int>();
    if (dim == 1)
        cfg.sim.grid = Grid::make_1d(gj.at("nx").get<int>(), gj.at("Lx").get<double>());
    else if (dim == 2)
        cfg.sim.grid = Grid::make_2d(gj.at("nx").get<int>(), gj.at("ny").get<int>(),
                                     gj.at("Lx").get<double>(), gj.at("Ly").get<double>());
    else
        throw ConfigError("grid.dim must be 1 or 2");

    cfg.sim.init_u = initial_from_json(doc.at("initial").at("u"));
    cfg.sim.init_v = initial_from_json(doc.at("initial").at("v"));

    const ordered_json& tj = doc.at("time");
    cfg.sim.dt_init = tj.at("dt_init").get<double>();
    cfg.sim.t_end = tj.at("t_end").get<double>();
    cfg.sim.cfl_safety = tj.at("cfl_safety").get<double>();
    cfg.sim.steady_tol = tj.at("steady_tol").get<double>();
    cfg.sim.monitor_every = tj.at("monitor_every").get<int>();
    cfg.sim.seed = doc.at("seed").get<std::uint64_t>();

    cfg.lyapunov_enabled = doc.at("lyapunov").get<bool>();
    cfg.out_dir = doc.at("output").at("dir").get<std::string>();
    cfg.prefix = doc.at("output").at("prefix").get<std::string>();
    cfg.store_states = doc.at("store_states").get<bool>();

    if (doc.contains("sweep") && !doc["sweep"].is_null()) {
        const ordered_json& sj = doc["sweep"];
        SweepSpec sw;
        sw.param = sj.at("param").get<std::string>();
        if (sw.param != "D" && sw.param != "chi" && sw.param != "r" && sw.param != "a" &&
            sw.param != "f")
            throw ConfigError("sweep.param must be one of D, chi, r, a, f");
        sw.from = sj.at("from").get<double>();
        sw.to = sj.at("to").get<double>();
        sw.count = sj.at("count").get<int>();
        sw.log_spaced = sj.value("log", false);
        if (sw.count < 1) throw ConfigError("sweep.count must be >= 1");
        if (sw.log_spaced && !(sw.from > 0.0 && sw.to > 0.0))
            throw ConfigError("log-spaced sweep needs positive endpoints");
        cfg.sweep = sw;
    }

    cfg.sim.validate();
    cfg.raw = doc;
    return cfg;
}

RunConfig load_config_file(const std::string& path, const std::vector<std::string>& overrides) {
    ordered_json doc = ordered_json::object();
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file '" + path + "'");
        try {
            in >> doc;
        } catch (const std::exception& e) {
            throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
        }
    }
    for (const std::string& ov : overrides) apply_override(doc, ov);
    return parse_config(doc);
}

}  // namespace chemo
