#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "chemo/equilibria.hpp"
#include "chemo/lyapunov.hpp"

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

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

State const_state(const Grid& g, double u, double v) {
    return State(Field(g, u), Field(g, v), 0.0);
}

}  // namespace

TEST_CASE("E1 and F1 on constant states") {
    const Grid g1 = Grid::make_1d(16, 1.0);
    const ModelParams p = make(1, 1, 1, 0.5, 2);

    CHECK(e1(const_state(g1, 0.0, p.f), p, 1.0) == doctest::Approx(0.0));
    CHECK(f1(const_state(g1, 0.0, p.f), p) == doctest::Approx(0.0));

    CHECK(e1(const_state(g1, 1.0, p.f), p, 0.37) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e1(const_state(g1, 0.0, p.f + 1.0), p, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f1(const_state(g1, 1.0, p.f), p) == doctest::Approx(1.0).epsilon(1e-14));

    const Grid g2 = Grid::make_1d(10, 2.0);
    CHECK(f1(const_state(g2, 1.0, p.f + 1.0), p) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("E1/F1 nonnegative, vanish together only at (0,f)") {
    const Grid g = Grid::make_1d(24, 1.0);
    const ModelParams p = make(1, 1, 1, 0.5, 2);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        Field u(g), v(g);
        for (int i = 0; i < g.cells(); ++i) {
            u[i] = 2.0 * u01(rng);
            v[i] = p.f + 2.0 * (u01(rng) - 0.5);
        }
        const State s(std::move(u), std::move(v), 0.0);
        const double E = e1(s, p, 0.7), F = f1(s, p);
        CHECK(E >= 0.0);
        CHECK(F >= 0.0);
        if (F < 1e-30) {
            CHECK(max_abs(s.u) == 0.0);
            for (int i = 0; i < g.cells(); ++i) CHECK(s.v[i] == doctest::Approx(p.f));
        }
    }
}

TEST_CASE("E2 and F2 on constant states") {
    const Grid g = Grid::make_1d(16, 1.0);
    const ModelParams p = make(1, 1, 2, 1, 0);  // u* = v* = 2/3
    const SteadyState cs = coexistence_state(p);

    CHECK(e2(const_state(g, cs.u_val, cs.v_val), p, 1.0) ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK(f2(const_state(g, cs.u_val, cs.v_val), p) == doctest::Approx(0.0).epsilon(1e-14));

    const double e = std::exp(1.0);
    CHECK(e2(const_state(g, cs.u_val * e, cs.v_val), p, 1.0) ==
          doctest::Approx(cs.u_val * (e - 2.0)).epsilon(1e-13));
    CHECK(e2(const_state(g, cs.u_val, cs.v_val + 1.0), p, 2.0) ==
          doctest::Approx(1.0).epsilon(1e-13));
    CHECK(f2(const_state(g, 2.0 * cs.u_val, cs.v_val), p) ==
          doctest::Approx(cs.u_val * cs.u_val).epsilon(1e-13));
}

TEST_CASE("E2 guard rails") {
    const Grid g = Grid::make_1d(8, 1.0);
    const ModelParams p = make(1, 1, 2, 1, 0);
    CHECK_THROWS_AS(e2(const_state(g, 0.0, 1.0), p, 1.0), UndefinedFunctionalError);
    CHECK_THROWS_AS(f2(const_state(g, 0.0, 1.0), p), UndefinedFunctionalError);
    const ModelParams bad = make(1, 1, 1, 1, 2);  // r < f
    CHECK_THROWS_AS(e2(const_state(g, 1.0, 1.0), bad, 1.0), RegimeError);
}

TEST_CASE("E2 nonnegative for positive states") {
    const Grid g = Grid::make_1d(32, 1.0);
    const ModelParams p = make(1, 1, 2, 1, 0);
    const SteadyState cs = coexistence_state(p);
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        Field u(g), v(g);
        for (int i = 0; i < g.cells(); ++i) {
            u[i] = cs.u_val * (0.05 + 3.0 * u01(rng));
            v[i] = cs.v_val + 2.0 * (u01(rng) - 0.5);
        }
        const State s(std::move(u), std::move(v), 0.0);
        CHECK(e2(s, p, 0.9) >= -1e-12);
        CHECK(f2(s, p) >= 0.0);
    }
}

TEST_CASE("quadratic forms") {
    const QuadraticForms q1 = build_forms(make(1, 1, 2, 1, 0), 1.0);
    CHECK(q1.P.m11 == 2.0);
    CHECK(q1.P.m12 == 0.0);  // (1 - ka)/2 vanishes at ka = 1
    CHECK(q1.P.m22 == 1.0);

    // u* = 0.5 via r=2, a=2, f=0
    const QuadraticForms q2 = build_forms(make(1, 2, 2, 2, 0), 1.0);
    CHECK(q2.S.m11 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q2.S.m12 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q2.S.m22 == 1.0);
    CHECK(q2.S.det() == doctest::Approx(0.25).epsilon(1e-14));

    // minors match the closed determinant formulas
    std::mt19937_64 rng(77);
    for (int i = 0; i < 100; ++i) {
        const ModelParams p = make(0.2 + 2.0 * u01(rng), 2.0 * u01(rng), 1.0 + 2.0 * u01(rng),
                                   2.0 * u01(rng), 0.5 * u01(rng));
        const double k = 0.1 + 3.0 * u01(rng);
        const QuadraticForms q = build_forms(p, k);
        const double us = coexistence_state(p).u_val;
        const double m2p = p.r * k - 0.25 * (1.0 - k * p.a) * (1.0 - k * p.a);
        const double m2s = p.D * k * us - 0.25 * p.chi * p.chi * us * us;
        CHECK(q.P.det() == doctest::Approx(m2p).epsilon(1e-14));
        CHECK(q.S.det() == doctest::Approx(m2s).epsilon(1e-14));
    }

    CHECK_THROWS_AS(build_forms(make(1, 1, 1, 1, 2), 1.0), RegimeError);
}

TEST_CASE("positive definiteness checks") {
    QuadraticForms diag;
    diag.P = Sym2{2.0, 0.0, 1.0};
    diag.S = Sym2{1.0, 0.0, 1.0};
    const PdVerdict v1 = check_positive_definite(diag);
    CHECK(v1.positive_definite);
    CHECK(v1.lambda_min == doctest::Approx(1.0));

    // S with negative determinant: D=1, u*=0.5, chi=4, k=0.1
    const QuadraticForms q = build_forms(make(1, 4, 2, 2, 0), 0.1);
    CHECK(q.S.det() == doctest::Approx(0.05 - 1.0).epsilon(1e-14));
    CHECK_FALSE(check_positive_definite(q).positive_definite);
}

TEST_CASE("Sylvester verdict equals the eigenvalue verdict on 1000 random draws") {
    std::mt19937_64 rng(2718);
    int done = 0;
    while (done < 1000) {
        auto draw = [&]() { return -2.0 + 4.0 * u01(rng); };
        QuadraticForms q;
        q.P = Sym2{draw(), draw(), draw()};
        q.S = Sym2{draw(), draw(), draw()};
        // skip numerically ambiguous draws near the PD boundary
        if (std::abs(q.P.det()) < 1e-10 || std::abs(q.S.det()) < 1e-10 ||
            std::abs(q.P.m11) < 1e-10 || std::abs(q.S.m11) < 1e-10)
            continue;
        ++done;
        const PdVerdict v = check_positive_definite(q);
        // independent route: trace/determinant eigenvalue formula
        auto lam_min = [](const Sym2& mtx) {
            const double tr = mtx.trace(), det = mtx.det();
            return 0.5 * (tr - std::sqrt(std::max(0.0, tr * tr - 4.0 * det)));
        };
        const double lmin = std::min(lam_min(q.P), lam_min(q.S));
        CHECK(v.positive_definite == (lmin > 0.0));
        CHECK(v.lambda_min == doctest::Approx(lmin).epsilon(1e-10));
    }
}

TEST_CASE("case-1 constants: the three worked examples") {
    // a=0, r=1: the paper's fixed choice
    const LyapunovConstants c0 = select_constants_case1(make(1, 1, 1, 0, 2));
    CHECK(c0.k == doctest::Approx(1.0));
    CHECK(c0.eps1 == doctest::Approx(0.75));
    CHECK(c0.c == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(c0.certified);

    // boundary r = a: the window collapses and c1 = 0 exactly
    const LyapunovConstants cb = select_constants_case1(make(1, 1, 1, 1, 2));
    CHECK(cb.k == doctest::Approx(1.0));
    CHECK(cb.eps1 == doctest::Approx(0.5));
    CHECK(cb.c == 0.0);

    // a=1, r=2: optimum sits at the crossing of the two coefficients
    const LyapunovConstants c2 = select_constants_case1(make(1, 1, 2, 1, 3));
    CHECK(c2.k == doctest::Approx(2.0));
    CHECK(c2.c >= 0.375);  // hand value at the midpoint eps = 0.625
    CHECK(c2.c == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(c2.eps1 == doctest::Approx(0.5).epsilon(1e-5));

    CHECK_THROWS_AS(select_constants_case1(make(1, 1, 2, 1, 1)), HypothesisError);  // f <= r
    CHECK_THROWS_AS(select_constants_case1(make(1, 1, 0.5, 1, 2)), HypothesisError);  // r < a
}

TEST_CASE("case-1 constants satisfy condition (1/(2r) <= eps <= Q(k)) on 1000 draws") {
    std::mt19937_64 rng(1414);
    for (int i = 0; i < 1000; ++i) {
        const double a = 2.0 * u01(rng);
        const double r = (a == 0.0 ? 0.05 : a) + 3.0 * u01(rng);
        const double f = r + 0.05 + 3.0 * u01(rng);
        const ModelParams p = make(1, 1, r, a, f);
        const LyapunovConstants c = select_constants_case1(p);
        const double q = c.k - a * a * c.k * c.k / (2.0 * r);
        CHECK(c.eps1 >= 1.0 / (2.0 * r) - 1e-12);
        CHECK(c.eps1 <= q + 1e-12);
        CHECK(c.c >= 0.0);
        // the reported constant is the minimum of the two coefficients
        const double coeff_u = 0.5 * r - 1.0 / (4.0 * c.eps1);
        const double coeff_v = q - c.eps1;
        CHECK(c.c == doctest::Approx(std::min(coeff_u, coeff_v)).epsilon(1e-9));
    }
}

TEST_CASE("c1 = 0 exactly at r = a") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 100; ++i) {
        const double a = 0.05 + 3.0 * u01(rng);
        const LyapunovConstants c = select_constants_case1(make(1, 1, a, a, a + 1.0));
        CHECK(c.c == 0.0);
    }
}

TEST_CASE("case-2 constants") {
    const ModelParams p = make(1, 1, 2, 1, 0);
    const KInterval iv = feasible_k(p.r, p);
    const LyapunovConstants c = select_constants_case2(p, iv);
    CHECK(c.certified);
    CHECK(iv.contains(c.k));
    // hand evaluation at k=1 is a lower bound for the optimum
    CHECK(c.c >= 0.46);
    const PdVerdict v = check_positive_definite(build_forms(p, c.k));
    CHECK(v.positive_definite);
    CHECK(v.lambda_min == doctest::Approx(c.c).epsilon(1e-12));

    // taxis-free: S diagonal, any k in the interval works
    const ModelParams tf = make(1, 0, 2, 1, 0);
    const LyapunovConstants ctf = select_constants_case2(tf, feasible_k(tf.r, tf));
    CHECK(ctf.c > 0.0);
    CHECK(ctf.certified);

    CHECK_THROWS_AS(select_constants_case2(p, KInterval::none()), InfeasibleError);
}

TEST_CASE("decay monitor") {
    LyapunovConstants c;
    c.which = LyapCase::case1;
    c.c = 0.5;

    // stationary trajectory: all differences vanish
    std::vector<Sample> flat(5);
    for (int i = 0; i < 5; ++i) {
        flat[i].t = i;
        flat[i].E = 0.0;
        flat[i].F = 0.0;
        flat[i].lyap_defined = true;
    }
    DecayReport rep = monitor_decay(flat, LyapCase::case1, c);
    CHECK(rep.intervals == 4);
    CHECK(rep.violations == 0);
    CHECK(rep.worst_violation == 0.0);

    // exact exponential decay E' = -c F with F = E: no violations
    std::vector<Sample> decay(40);
    for (int i = 0; i < 40; ++i) {
        const double t = 0.05 * i;
        decay[i].t = t;
        decay[i].E = std::exp(-0.5 * t);
        decay[i].F = decay[i].E;
        decay[i].lyap_defined = true;
    }
    rep = monitor_decay(decay, LyapCase::case1, c);
    CHECK(rep.violations == 0);
    CHECK(rep.max_relative_increase <= 0.0);

    // an increase is flagged
    std::vector<Sample> bad = decay;
    bad[20].E = bad[19].E * 1.5;
    rep = monitor_decay(bad, LyapCase::case1, c);
    CHECK(rep.violations >= 1);
    CHECK(rep.worst_violation > 0.0);
    CHECK(rep.max_relative_increase > 0.0);

    // undefined samples are excluded and counted
    std::vector<Sample> gap = decay;
    gap[10].lyap_defined = false;
    rep = monitor_decay(gap, LyapCase::case1, c);
    CHECK(rep.excluded == 2);
    CHECK(rep.intervals == 37);
    CHECK(rep.violations == 0);
}
