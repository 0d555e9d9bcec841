#include "chemo/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "chemo/kernels.hpp"
#include "chemo/lyapunov.hpp"

namespace chemo {

State::State(Field u_, Field v_, double t_) : u(std::move(u_)), v(std::move(v_)), t(t_) {
    require_same_grid(u, v);
    if (!kernels::all_finite(u.data(), u.size()) || !kernels::all_finite(v.data(), v.size()))
        throw InvalidFieldError("State: non-finite entries");
    const double mn = kernels::min_value(u.data(), u.size());
    if (mn < -kNegTol) throw NegativityError(t, mn);
    if (mn < 0.0)
        for (double& x : u.values())
            if (x < 0.0) x = 0.0;
}

double cfl_dt_bound(const Grid& g, const ModelParams& p, double safety) {
    const double h = g.min_h();
    return safety * h * h / (2.0 * g.dim * std::max(p.D, 1.0) + 1e-30);
}

namespace {

struct Workspace {
    Field lap_u, chem, lap_v;
    Field k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
    Field su, sv;

    explicit Workspace(const Grid& g)
        : lap_u(g), chem(g), lap_v(g), k1u(g), k1v(g), k2u(g), k2v(g), k3u(g), k3v(g), k4u(g),
          k4v(g), su(g), sv(g) {}

    void rhs_raw(const Grid& g, const ModelParams& p, const double* u, const double* v,
                 Field& du, Field& dv) {
        kernels::laplacian_neumann(g, u, lap_u.data());
        kernels::chemotaxis_divergence(g, p.chi, u, v, chem.data());
        kernels::laplacian_neumann(g, v, lap_v.data());
        kernels::reaction_combine(p, u, v, lap_u.data(), chem.data(), lap_v.data(), du.data(),
                                  dv.data(), g.cells());
    }
};

// Advances (u, v) by dt into (out_u, out_v); throws on blow-up or negativity.
// Returns the minimum of v for the monitor.
double step_core(const Grid& g, const ModelParams& p, Workspace& ws, const Field& u,
                 const Field& v, double t, double dt, TimeScheme scheme, Field& out_u,
                 Field& out_v) {
    const int n = g.cells();
    ws.rhs_raw(g, p, u.data(), v.data(), ws.k1u, ws.k1v);
    CombineStats su_stats{}, sv_stats{};
    if (scheme == TimeScheme::euler) {
        su_stats = kernels::euler_combine(u.data(), ws.k1u.data(), dt, out_u.data(), n, kNegTol);
        sv_stats = kernels::euler_combine(v.data(), ws.k1v.data(), dt, out_v.data(), n, 0.0);
    } else {
        kernels::stage(u.data(), ws.k1u.data(), 0.5 * dt, ws.su.data(), n);
        kernels::stage(v.data(), ws.k1v.data(), 0.5 * dt, ws.sv.data(), n);
        ws.rhs_raw(g, p, ws.su.data(), ws.sv.data(), ws.k2u, ws.k2v);
        kernels::stage(u.data(), ws.k2u.data(), 0.5 * dt, ws.su.data(), n);
        kernels::stage(v.data(), ws.k2v.data(), 0.5 * dt, ws.sv.data(), n);
        ws.rhs_raw(g, p, ws.su.data(), ws.sv.data(), ws.k3u, ws.k3v);
        kernels::stage(u.data(), ws.k3u.data(), dt, ws.su.data(), n);
        kernels::stage(v.data(), ws.k3v.data(), dt, ws.sv.data(), n);
        ws.rhs_raw(g, p, ws.su.data(), ws.sv.data(), ws.k4u, ws.k4v);
        su_stats = kernels::rk4_combine(u.data(), ws.k1u.data(), ws.k2u.data(), ws.k3u.data(),
                                        ws.k4u.data(), dt, out_u.data(), n, kNegTol);
        sv_stats = kernels::rk4_combine(v.data(), ws.k1v.data(), ws.k2v.data(), ws.k3v.data(),
                                        ws.k4v.data(), dt, out_v.data(), n, 0.0);
    }
    if (!su_stats.finite || !sv_stats.finite) throw BlowUpError(t + dt);
    if (su_stats.min_value < -kNegTol) throw NegativityError(t + dt, su_stats.min_value);
    return sv_stats.min_value;
}

}  // namespace

void rhs(const State& s, const ModelParams& p, Field& du, Field& dv) {
    p.validate();
    require_same_grid(s.u, du);
    require_same_grid(s.u, dv);
    Workspace ws(s.u.grid());
    ws.rhs_raw(s.u.grid(), p, s.u.data(), s.v.data(), du, dv);
    if (!kernels::all_finite(du.data(), du.size()) || !kernels::all_finite(dv.data(), dv.size()))
        throw BlowUpError(s.t);
}

State step(const State& s, const ModelParams& p, double dt, TimeScheme scheme) {
    p.validate();
    if (!(dt > 0.0)) throw ConfigError("step: dt must be > 0");
    const double hard_bound = cfl_dt_bound(s.u.grid(), p, 1.0);
    if (dt > hard_bound)
        throw ConfigError("step: dt " + std::to_string(dt) + " violates the diffusion CFL bound " +
                          std::to_string(hard_bound));
    Workspace ws(s.u.grid());
    Field out_u(s.u.grid()), out_v(s.u.grid());
    step_core(s.u.grid(), p, ws, s.u, s.v, s.t, dt, scheme, out_u, out_v);
    return State(std::move(out_u), std::move(out_v), s.t + dt);
}

namespace {

inline double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Field make_initial(const Grid& g, const InitialSpec& spec, std::uint64_t seed) {
    Field f(g);
    switch (spec.kind) {
        case InitialKind::constant:
            for (double& x : f.values()) x = spec.base;
            break;
        case InitialKind::cosine_perturbation: {
            const double pi = 3.14159265358979323846;
            for (int j = 0; j < g.ny; ++j) {
                const double cy =
                    g.ny > 1 ? std::cos(spec.mode_y * pi * g.y_center(j) / g.Ly) : 1.0;
                for (int i = 0; i < g.nx; ++i) {
                    const double cx = std::cos(spec.mode_x * pi * g.x_center(i) / g.Lx);
                    f.at(i, j) = spec.base + spec.amplitude * cx * cy;
                }
            }
            break;
        }
        case InitialKind::random_perturbation: {
            std::mt19937_64 rng(seed);
            for (double& x : f.values()) x = spec.base + spec.amplitude * (2.0 * u01(rng) - 1.0);
            break;
        }
    }
    return f;
}

void SimConfig::validate() const {
    params.validate();
    if (grid.nx < 3) throw ConfigError("SimConfig: grid not initialized");
    if (!(t_end > 0.0)) throw ConfigError("SimConfig: t_end must be > 0");
    if (!(steady_tol > 0.0)) throw ConfigError("SimConfig: steady_tol must be > 0");
    if (!(cfl_safety > 0.0 && cfl_safety < 1.0))
        throw ConfigError("SimConfig: cfl_safety must lie in (0,1)");
    if (monitor_every < 1) throw ConfigError("SimConfig: monitor cadence must be >= 1");
}

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::steady: return "steady";
        case StopReason::t_end: return "t_end";
        case StopReason::blow_up: return "blow_up";
        case StopReason::negativity: return "negativity";
    }
    return "?";
}

namespace {

struct Monitor {
    const SimConfig& cfg;
    double target_u, target_v;
    Workspace& ws;

    Sample take(const State& s) {
        const Grid& g = s.u.grid();
        const int n = g.cells();
        const double vol = g.cell_volume();
        Sample m;
        m.t = s.t;
        m.linf_u_dev = kernels::max_abs_diff(s.u.data(), target_u, n);
        m.linf_v_dev = kernels::max_abs_diff(s.v.data(), target_v, n);
        m.l2_u_dev = std::sqrt(vol * kernels::sum_sq_diff(s.u.data(), target_u, n));
        m.l2_v_dev = std::sqrt(vol * kernels::sum_sq_diff(s.v.data(), target_v, n));
        m.mass_u = vol * kernels::sum(s.u.data(), n);
        m.min_u = kernels::min_value(s.u.data(), n);
        const double mean_u = m.mass_u / g.volume();
        m.var_u = std::max(
            0.0, vol * kernels::sum_sq_diff(s.u.data(), 0.0, n) / g.volume() - mean_u * mean_u);
        ws.rhs_raw(g, cfg.params, s.u.data(), s.v.data(), ws.k1u, ws.k1v);
        m.rhs_linf = std::max(kernels::max_abs(ws.k1u.data(), n),
                              kernels::max_abs(ws.k1v.data(), n));
        switch (cfg.lyapunov.which) {
            case LyapCase::case1:
                m.E = e1(s, cfg.params, cfg.lyapunov.k);
                m.F = f1(s, cfg.params);
                m.lyap_defined = true;
                break;
            case LyapCase::case2:
                try {
                    m.E = e2(s, cfg.params, cfg.lyapunov.k);
                    m.F = f2(s, cfg.params);
                    m.lyap_defined = true;
                } catch (const UndefinedFunctionalError&) {
                    m.E = m.F = std::numeric_limits<double>::quiet_NaN();
                    m.lyap_defined = false;
                }
                break;
            case LyapCase::none:
                break;
        }
        return m;
    }
};

}  // namespace

Trajectory simulate(const SimConfig& cfg) {
    cfg.validate();
    const Grid& g = cfg.grid;

    // Independent streams for the two fields from the one run seed.
    State s(make_initial(g, cfg.init_u, cfg.seed),
            make_initial(g, cfg.init_v, cfg.seed ^ 0x9e3779b97f4a7c15ull), 0.0);

    Trajectory traj;
    const RegimeReport regime = classify_local_stability(cfg.params);
    if (regime.regime == Regime::coexistence) {
        const SteadyState target = coexistence_state(cfg.params);
        traj.target_u = target.u_val;
        traj.target_v = target.v_val;
    } else {
        traj.target_u = 0.0;
        traj.target_v = cfg.params.f;
    }

    Workspace ws(g);
    Monitor monitor{cfg, traj.target_u, traj.target_v, ws};
    traj.min_v_seen = kernels::min_value(s.v.data(), s.v.size());

    auto record = [&](const State& st) {
        traj.samples.push_back(monitor.take(st));
        traj.min_v_seen = std::min(traj.min_v_seen, kernels::min_value(st.v.data(), st.v.size()));
        if (cfg.store_states) traj.states.push_back(st);
    };

    record(s);
    if (traj.samples.back().rhs_linf < cfg.steady_tol) {
        traj.reason = StopReason::steady;
        traj.final_t = s.t;
        return traj;
    }

    const double bound = cfl_dt_bound(g, cfg.params, cfg.cfl_safety);
    double dt = cfg.dt_init > 0.0 ? std::min(cfg.dt_init, bound) : bound;
    const double t_eps = 1e-12 * std::max(1.0, cfg.t_end);
    Field out_u(g), out_v(g);
    int steps_since = 0;

    while (true) {
        if (s.t >= cfg.t_end - t_eps) {
            traj.reason = StopReason::t_end;
            break;
        }
        const double dt_step = std::min(dt, cfg.t_end - s.t);
        try {
            const double min_v =
                step_core(g, cfg.params, ws, s.u, s.v, s.t, dt_step, TimeScheme::rk4, out_u,
                          out_v);
            traj.min_v_seen = std::min(traj.min_v_seen, min_v);
        } catch (const NegativityError& e) {
            dt *= 0.5;
            if (dt < bound * 0x1p-40) {
                traj.reason = StopReason::negativity;
                traj.error_message = e.what();
                break;
            }
            continue;
        } catch (const BlowUpError& e) {
            traj.reason = StopReason::blow_up;
            traj.error_message = e.what();
            break;
        }
        s.u.values().swap(out_u.values());
        s.v.values().swap(out_v.values());
        s.t += dt_step;
        dt = std::min(dt * 1.1, bound);
        ++steps_since;

        if (steps_since >= cfg.monitor_every || s.t >= cfg.t_end - t_eps) {
            steps_since = 0;
            record(s);
            if (traj.samples.back().rhs_linf < cfg.steady_tol) {
                traj.reason = StopReason::steady;
                break;
            }
        }
    }

    if (traj.samples.back().t < s.t) record(s);
    traj.final_t = s.t;
    return traj;
}

}  // namespace chemo
