#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "chemo/kernels.hpp"
#include "chemo/model.hpp"
#include "oracles.hpp"

using namespace chemo;

namespace {

ModelParams make(double D, double chi, double r, double a, double f) {
    ModelParams p;
    p.D = D;
    p.chi = chi;
    p.r = r;
    p.a = a;
    p.f = f;
    return p;
}

const ModelParams kA1 = make(1, 1, 1, 0.5, 2);  // extinction regime
const ModelParams kA2 = make(1, 1, 2, 1, 0);    // coexistence regime

}  // namespace

TEST_CASE("rhs vanishes at the homogeneous steady states") {
    const Grid g = Grid::make_1d(32, 1.0);
    Field du(g), dv(g);

    rhs(State(Field(g, 0.0), Field(g, kA1.f), 0.0), kA1, du, dv);
    CHECK(max_abs(du) == 0.0);
    CHECK(max_abs(dv) <= 1e-14);

    const SteadyState cs = coexistence_state(kA2);
    rhs(State(Field(g, cs.u_val), Field(g, cs.v_val), 0.0), kA2, du, dv);
    CHECK(max_abs(du) <= 1e-14);
    CHECK(max_abs(dv) <= 1e-14);
}

TEST_CASE("rhs by direct substitution: u=1, v=0, r=a=1, f=0") {
    const Grid g = Grid::make_1d(8, 1.0);
    const ModelParams p = make(1, 1, 1, 1, 0);
    Field du(g), dv(g);
    rhs(State(Field(g, 1.0), Field(g, 0.0), 0.0), p, du, dv);
    for (int i = 0; i < g.cells(); ++i) {
        CHECK(du[i] == 0.0);
        CHECK(dv[i] == 1.0);
    }
}

TEST_CASE("forward-Euler single step sanity") {
    const Grid g = Grid::make_1d(3, 3.0);  // h = 1 so dt = 0.1 respects the CFL bound
    const ModelParams p = make(1, 1, 1, 1, 0);
    const State s(Field(g, 1.0), Field(g, 0.0), 0.0);
    const State next = step(s, p, 0.1, TimeScheme::euler);
    for (int i = 0; i < g.cells(); ++i) {
        CHECK(next.u[i] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(next.v[i] == doctest::Approx(0.1).epsilon(1e-15));
    }
    CHECK(next.t == doctest::Approx(0.1));
}

TEST_CASE("stepping from the coexistence state is a fixed point") {
    const Grid g = Grid::make_1d(64, 1.0);
    const SteadyState cs = coexistence_state(kA2);
    State s(Field(g, cs.u_val), Field(g, cs.v_val), 0.0);
    const double dt = cfl_dt_bound(g, kA2, 0.9);
    for (int it = 0; it < 10; ++it) s = step(s, kA2, dt);
    for (int i = 0; i < g.cells(); ++i) {
        CHECK(std::abs(s.u[i] - cs.u_val) <= 1e-14);
        CHECK(std::abs(s.v[i] - cs.v_val) <= 1e-14);
    }
}

TEST_CASE("step rejects CFL-violating dt") {
    const Grid g = Grid::make_1d(64, 1.0);
    const State s(Field(g, 0.5), Field(g, 0.5), 0.0);
    const double bound = cfl_dt_bound(g, kA1, 1.0);
    CHECK_THROWS_AS(step(s, kA1, 2.0 * bound), ConfigError);
    CHECK_THROWS_AS(step(s, kA1, 0.0), ConfigError);
    CHECK(cfl_dt_bound(g, kA1, 0.9) ==
          doctest::Approx(0.9 * g.hx * g.hx / 2.0).epsilon(1e-12));
}

TEST_CASE("negativity beyond tolerance raises, tiny negatives clamp") {
    const Grid g = Grid::make_1d(3, 3.0);
    const ModelParams p = make(1, 0, 1, 0, 10);  // strong kill term via v
    const State s(Field(g, 0.01), Field(g, 10.0), 0.0);
    // du ~ u(r - v) = -0.09 per unit time; an Euler step of 0.2 overshoots zero
    CHECK_THROWS_AS(step(s, p, 0.2, TimeScheme::euler), NegativityError);

    Field u(g, 1.0);
    u[1] = -1e-13;  // clamped on construction
    const State ok(std::move(u), Field(g, 0.0), 0.0);
    CHECK(ok.u[1] == 0.0);

    Field bad(g, 1.0);
    bad[1] = -1e-10;
    CHECK_THROWS_AS(State(std::move(bad), Field(g, 0.0), 0.0), NegativityError);

    Field nan_field(g, 1.0);
    nan_field[0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(State(std::move(nan_field), Field(g, 0.0), 0.0), InvalidFieldError);
}

TEST_CASE("homogeneous data stays homogeneous and tracks the scalar ODE oracle") {
    for (const ModelParams& p : {kA1, kA2}) {
        SimConfig cfg;
        cfg.params = p;
        cfg.grid = Grid::make_1d(16, 1.0);
        cfg.init_u = InitialSpec{InitialKind::constant, 0.7, 0.0, 1, 0};
        cfg.init_v = InitialSpec{InitialKind::constant, 0.3, 0.0, 1, 0};
        cfg.t_end = 1.0;
        cfg.steady_tol = 1e-14;
        cfg.monitor_every = 100;
        const Trajectory traj = simulate(cfg);
        REQUIRE(traj.reason == StopReason::t_end);
        REQUIRE(traj.final_t == doctest::Approx(1.0).epsilon(1e-12));
        REQUIRE(traj.states.empty());

        // rerun with stored states to inspect the final fields
        cfg.store_states = true;
        const Trajectory with_states = simulate(cfg);
        const State& last = with_states.states.back();
        double umin = last.u[0], umax = last.u[0], vmin = last.v[0], vmax = last.v[0];
        for (int i = 0; i < last.u.size(); ++i) {
            umin = std::min(umin, last.u[i]);
            umax = std::max(umax, last.u[i]);
            vmin = std::min(vmin, last.v[i]);
            vmax = std::max(vmax, last.v[i]);
        }
        CHECK(umax - umin < 1e-10);
        CHECK(vmax - vmin < 1e-10);

        const oracle::OdePoint ref = oracle::integrate_ode(p, {0.7, 0.3}, last.t);
        CHECK(std::abs(last.u[0] - ref.u) < 1e-6);
        CHECK(std::abs(last.v[0] - ref.v) < 1e-6);
    }
}

TEST_CASE("simulate terminates immediately at the trivial steady state") {
    SimConfig cfg;
    cfg.params = kA1;
    cfg.grid = Grid::make_1d(32, 1.0);
    cfg.init_u = InitialSpec{InitialKind::constant, 0.0, 0.0, 1, 0};
    cfg.init_v = InitialSpec{InitialKind::constant, kA1.f, 0.0, 1, 0};
    cfg.t_end = 5.0;
    const Trajectory traj = simulate(cfg);
    CHECK(traj.reason == StopReason::steady);
    CHECK(traj.final_t == 0.0);
    CHECK(traj.samples.size() == 1);
}

TEST_CASE("trajectory times are strictly increasing and monitors finite") {
    SimConfig cfg;
    cfg.params = kA1;
    cfg.grid = Grid::make_1d(48, 1.0);
    cfg.init_u = InitialSpec{InitialKind::cosine_perturbation, 0.5, 0.1, 2, 0};
    cfg.init_v = InitialSpec{InitialKind::constant, kA1.f, 0.0, 1, 0};
    cfg.t_end = 0.5;
    cfg.monitor_every = 37;
    cfg.lyapunov = LyapunovSettings{LyapCase::case1, 4.0};
    const Trajectory traj = simulate(cfg);
    REQUIRE(traj.samples.size() > 3);
    for (size_t i = 1; i < traj.samples.size(); ++i)
        CHECK(traj.samples[i].t > traj.samples[i - 1].t);
    for (const Sample& s : traj.samples) {
        CHECK(std::isfinite(s.linf_u_dev));
        CHECK(std::isfinite(s.mass_u));
        CHECK(std::isfinite(s.E));
        CHECK(std::isfinite(s.F));
        CHECK(s.lyap_defined);
    }
}

TEST_CASE("initial condition kinds") {
    const Grid g = Grid::make_1d(64, 1.0);

    const Field c = make_initial(g, InitialSpec{InitialKind::constant, 1.5, 0.0, 1, 0}, 0);
    for (int i = 0; i < g.cells(); ++i) CHECK(c[i] == 1.5);

    const Field cos2 =
        make_initial(g, InitialSpec{InitialKind::cosine_perturbation, 0.5, 0.1, 2, 0}, 0);
    CHECK(cos2[0] == doctest::Approx(0.5 + 0.1 * std::cos(2.0 * 3.14159265358979323846 *
                                                          g.x_center(0))));
    // integer modes satisfy the zero-flux condition: the discrete Laplacian
    // integral stays at rounding level
    Field lap(g);
    kernels::laplacian_neumann(g, cos2.data(), lap.data());
    CHECK(std::abs(integrate(lap)) < 1e-12);

    const Field r1 =
        make_initial(g, InitialSpec{InitialKind::random_perturbation, 1.0, 0.25, 1, 0}, 42);
    const Field r2 =
        make_initial(g, InitialSpec{InitialKind::random_perturbation, 1.0, 0.25, 1, 0}, 42);
    const Field r3 =
        make_initial(g, InitialSpec{InitialKind::random_perturbation, 1.0, 0.25, 1, 0}, 43);
    bool any_diff = false;
    for (int i = 0; i < g.cells(); ++i) {
        CHECK(r1[i] == r2[i]);  // same seed, bit-identical
        CHECK(r1[i] >= 0.75);
        CHECK(r1[i] <= 1.25);
        any_diff = any_diff || r1[i] != r3[i];
    }
    CHECK(any_diff);

    // 2D cosine uses both modes
    const Grid g2 = Grid::make_2d(8, 8, 1.0, 1.0);
    const Field cc =
        make_initial(g2, InitialSpec{InitialKind::cosine_perturbation, 0.0, 1.0, 1, 1}, 0);
    const double pi = 3.14159265358979323846;
    CHECK(cc.at(2, 3) == doctest::Approx(std::cos(pi * g2.x_center(2)) *
                                         std::cos(pi * g2.y_center(3))));
}

TEST_CASE("refinement consistency: halving h moves the monitors at second order") {
    // extinction scenario at T=0.5, identical dt on all grids so the spatial
    // error dominates the differences
    const double T = 0.5;
    const Grid fine = Grid::make_1d(128, 1.0);
    const double dt = cfl_dt_bound(fine, kA1, 0.9);
    std::vector<double> monitors;
    for (int n : {32, 64, 128}) {
        const Grid g = Grid::make_1d(n, 1.0);
        State s(make_initial(g, InitialSpec{InitialKind::cosine_perturbation, 0.5, 0.1, 2, 0}, 0),
                Field(g, kA1.f), 0.0);
        const int steps = static_cast<int>(std::round(T / dt));
        for (int it = 0; it < steps; ++it) s = step(s, kA1, dt);
        monitors.push_back(max_abs(s.u));  // deviation from the target u = 0
    }
    const double d1 = std::abs(monitors[0] - monitors[1]);
    const double d2 = std::abs(monitors[1] - monitors[2]);
    REQUIRE(d2 > 0.0);
    const double order = std::log2(d1 / d2);
    CHECK(order > 1.5);
    CHECK(order < 2.5);
}

TEST_CASE("invalid initial data fails fast on construction") {
    SimConfig cfg;
    cfg.params = kA2;
    cfg.grid = Grid::make_1d(16, 1.0);
    cfg.init_u = InitialSpec{InitialKind::random_perturbation, 0.05, 0.2, 1, 0};
    cfg.init_v = InitialSpec{InitialKind::constant, 0.0, 0.0, 1, 0};
    cfg.t_end = 1.0;
    CHECK_THROWS_AS(simulate(cfg), NegativityError);
}
