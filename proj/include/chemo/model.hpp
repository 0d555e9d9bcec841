#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chemo/equilibria.hpp"
#include "chemo/grid.hpp"
#include "chemo/params.hpp"

namespace chemo {

// u entries in [-kNegTol, 0) are clamped to 0; anything below is an error.
inline constexpr double kNegTol = 1e-12;

/// Discrete (u, v) fields at a time instant. Construction clamps tiny
/// negative u entries and rejects anything worse.
struct State {
    Field u;
    Field v;
    double t = 0.0;

    State(Field u_, Field v_, double t_);
};

void rhs(const State& s, const ModelParams& p, Field& du, Field& dv);

enum class TimeScheme { rk4, euler };

/// Hard explicit-diffusion stability bound times `safety`:
/// safety * h_min^2 / (2*dim*max(D,1) + eps).
double cfl_dt_bound(const Grid& g, const ModelParams& p, double safety);

/// One explicit step (classical RK4, or forward Euler for sanity tests).
/// dt must respect cfl_dt_bound(grid, p, 1.0).
State step(const State& s, const ModelParams& p, double dt, TimeScheme scheme = TimeScheme::rk4);

enum class InitialKind { constant, cosine_perturbation, random_perturbation };

/// base + amplitude*cos(mode_x*pi*x/Lx)*cos(mode_y*pi*y/Ly) for the cosine
/// kind (integer modes satisfy zero flux exactly); base + U(-amplitude,
/// amplitude) per cell for the random kind.
struct InitialSpec {
    InitialKind kind = InitialKind::constant;
    double base = 0.0;
    double amplitude = 0.0;
    int mode_x = 1;
    int mode_y = 0;
};

Field make_initial(const Grid& g, const InitialSpec& spec, std::uint64_t seed);

enum class LyapCase { none, case1, case2 };

struct LyapunovSettings {
    LyapCase which = LyapCase::none;
    double k = 1.0;
};

struct SimConfig {
    ModelParams params;
    Grid grid;
    InitialSpec init_u;
    InitialSpec init_v;
    std::uint64_t seed = 0;
    double dt_init = 0.0;  // <= 0 means "start at the CFL bound"
    double t_end = 1.0;
    double cfl_safety = 0.9;
    double steady_tol = 1e-9;
    int monitor_every = 200;  // steps between monitor samples
    LyapunovSettings lyapunov;
    bool store_states = false;

    void validate() const;
};

enum class StopReason { steady, t_end, blow_up, negativity };
const char* to_string(StopReason r);

struct Sample {
    double t = 0.0;
    double linf_u_dev = 0.0, linf_v_dev = 0.0;
    double l2_u_dev = 0.0, l2_v_dev = 0.0;
    double mass_u = 0.0;
    double min_u = 0.0;
    double var_u = 0.0;  // spatial variance of u over the domain
    double E = 0.0, F = 0.0;
    bool lyap_defined = false;
    double rhs_linf = 0.0;
};

struct Trajectory {
    std::vector<Sample> samples;
    StopReason reason = StopReason::t_end;
    std::string error_message;
    double target_u = 0.0, target_v = 0.0;
    double final_t = 0.0;
    double min_v_seen = 0.0;  // monitor warns (never errors) if this went negative
    std::vector<State> states;  // populated when store_states

    const Sample& last() const { return samples.back(); }
};

/// Advance with adaptive dt (halve on negativity, grow by 1.1 up to the CFL
/// bound), sampling monitors every `monitor_every` steps. Stops on steady
/// (rhs inf-norm below steady_tol), t_end, or a step error; errors are
/// returned in the trajectory, not thrown.
Trajectory simulate(const SimConfig& cfg);

}  // namespace chemo
