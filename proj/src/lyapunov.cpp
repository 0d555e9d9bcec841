#include "chemo/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "chemo/equilibria.hpp"
#include "chemo/kernels.hpp"

namespace chemo {

double Sym2::lambda_min() const {
    const double mean = 0.5 * (m11 + m22);
    return mean - std::hypot(0.5 * (m11 - m22), m12);
}

double Sym2::lambda_max() const {
    const double mean = 0.5 * (m11 + m22);
    return mean + std::hypot(0.5 * (m11 - m22), m12);
}

namespace {

void require_state_u_nonnegative(const State& s) {
    if (kernels::min_value(s.u.data(), s.u.size()) < -kNegTol)
        throw InvalidFieldError("lyapunov: state has negative u beyond tolerance");
}

double coexistence_u_star(const ModelParams& p) {
    if (!(p.r > p.f)) throw RegimeError("coexistence functionals require r > f");
    return coexistence_state(p).u_val;
}

template <class F>
std::pair<double, double> golden_max(F&& fn, double lo, double hi) {
    const double gr = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = fn(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = fn(x1);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, fn(xm)};
}

}  // namespace

double e1(const State& s, const ModelParams& p, double k) {
    p.validate();
    if (!(k > 0.0)) throw ConfigError("e1: k must be > 0");
    require_state_u_nonnegative(s);
    const double vol = s.u.grid().cell_volume();
    const double mass_u = vol * kernels::sum(s.u.data(), s.u.size());
    const double vdev2 = vol * kernels::sum_sq_diff(s.v.data(), p.f, s.v.size());
    return mass_u + 0.5 * k * vdev2;
}

double f1(const State& s, const ModelParams& p) {
    p.validate();
    require_state_u_nonnegative(s);
    const double vol = s.u.grid().cell_volume();
    const double u2 = vol * kernels::sum_sq_diff(s.u.data(), 0.0, s.u.size());
    const double vdev2 = vol * kernels::sum_sq_diff(s.v.data(), p.f, s.v.size());
    return u2 + vdev2;
}

double e2(const State& s, const ModelParams& p, double k) {
    p.validate();
    if (!(k > 0.0)) throw ConfigError("e2: k must be > 0");
    const double us = coexistence_u_star(p);
    const double vs = coexistence_state(p).v_val;
    if (kernels::min_value(s.u.data(), s.u.size()) <= kUFloor)
        throw UndefinedFunctionalError("e2 undefined: min(u) at or below the log floor");
    const int n = s.u.size();
    const double* u = s.u.data();
    double ent = 0.0;
    for (int i = 0; i < n; ++i) ent += u[i] - us - us * std::log(u[i] / us);
    const double vol = s.u.grid().cell_volume();
    const double vdev2 = vol * kernels::sum_sq_diff(s.v.data(), vs, s.v.size());
    return vol * ent + 0.5 * k * vdev2;
}

double f2(const State& s, const ModelParams& p) {
    p.validate();
    const double us = coexistence_u_star(p);
    const double vs = coexistence_state(p).v_val;
    if (kernels::min_value(s.u.data(), s.u.size()) <= kUFloor)
        throw UndefinedFunctionalError("f2 undefined: min(u) at or below the log floor");
    const Grid& g = s.u.grid();
    const double vol = g.cell_volume();
    Field grad_u(g), grad_v(g);
    kernels::gradient_magnitude_sq(g, s.u.data(), grad_u.data());
    kernels::gradient_magnitude_sq(g, s.v.data(), grad_v.data());
    const int n = s.u.size();
    const double* u = s.u.data();
    double rel_grad = 0.0;
    for (int i = 0; i < n; ++i) rel_grad += grad_u[i] / (u[i] * u[i]);
    const double gv = vol * kernels::sum(grad_v.data(), n);
    const double udev2 = vol * kernels::sum_sq_diff(s.u.data(), us, n);
    const double vdev2 = vol * kernels::sum_sq_diff(s.v.data(), vs, n);
    return vol * rel_grad + gv + udev2 + vdev2;
}

QuadraticForms build_forms(const ModelParams& p, double k) {
    p.validate();
    if (!(k > 0.0)) throw ConfigError("build_forms: k must be > 0");
    if (!(p.r > p.f)) throw RegimeError("build_forms requires r > f");
    const double us = coexistence_state(p).u_val;
    QuadraticForms q;
    q.P = Sym2{p.r, 0.5 * (1.0 - k * p.a), k};
    q.S = Sym2{p.D * us, 0.5 * p.chi * us, k};
    return q;
}

PdVerdict check_positive_definite(const QuadraticForms& forms) {
    PdVerdict v;
    v.positive_definite = forms.P.m11 > 0.0 && forms.P.det() > 0.0 && forms.S.m11 > 0.0 &&
                          forms.S.det() > 0.0;
    v.lambda_min = std::min(forms.P.lambda_min(), forms.S.lambda_min());
    return v;
}

LyapunovConstants select_constants_case1(const ModelParams& p) {
    p.validate();
    if (!(p.f > p.r)) throw HypothesisError("case 1 requires f > r");
    if (p.r < p.a) throw HypothesisError("case 1 requires r >= a");

    LyapunovConstants out;
    out.which = LyapCase::case1;
    if (p.a == 0.0) {
        // Unbounded parabola; the fixed textbook choice.
        out.k = 1.0 / p.r;
        out.eps1 = 3.0 / (4.0 * p.r);
        const double q = out.k;  // Q(k) = k when a = 0
        out.c = std::min(0.5 * p.r - 1.0 / (4.0 * out.eps1), q - out.eps1);
        out.certified = true;
        return out;
    }

    const double k = p.r / (p.a * p.a);  // vertex of Q
    const double q = k - p.a * p.a * k * k / (2.0 * p.r);
    const double lo = 1.0 / (2.0 * p.r);
    out.k = k;
    if (p.r == p.a || !(q > lo)) {
        // Window collapses to a point; both decay coefficients vanish there.
        out.eps1 = lo;
        out.c = 0.0;
        out.certified = true;
        return out;
    }
    auto score = [&](double eps) {
        return std::min(0.5 * p.r - 1.0 / (4.0 * eps), q - eps);
    };
    auto [eps_best, c_best] = golden_max(score, lo, q);
    out.eps1 = eps_best;
    out.c = std::max(0.0, c_best);
    out.certified = true;
    return out;
}

LyapunovConstants select_constants_case2(const ModelParams& p, const KInterval& feasible) {
    p.validate();
    if (!(p.r > p.f)) throw HypothesisError("case 2 requires r > f");
    if (feasible.empty) throw InfeasibleError("case 2: empty feasible k interval");

    const double lo = feasible.lo;
    const double hi = feasible.unbounded() ? (lo + 1.0) * 1e3 : feasible.hi;
    auto score = [&](double k) {
        const QuadraticForms q = build_forms(p, k);
        return std::min(q.P.lambda_min(), q.S.lambda_min());
    };

    int best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    const int grid_points = 64;
    auto grid_k = [&](int j) { return lo + (hi - lo) * (j + 0.5) / grid_points; };
    for (int j = 0; j < grid_points; ++j) {
        const double val = score(grid_k(j));
        if (val > best_val) {
            best_val = val;
            best = j;
        }
    }
    const double ref_lo = grid_k(std::max(0, best - 1));
    const double ref_hi = grid_k(std::min(grid_points - 1, best + 1));
    auto [k_best, c_best] = golden_max(score, ref_lo, ref_hi);

    LyapunovConstants out;
    out.which = LyapCase::case2;
    out.k = k_best;
    out.c = std::max(0.0, c_best);
    out.certified = check_positive_definite(build_forms(p, k_best)).positive_definite;
    return out;
}

DecayReport monitor_decay(const std::vector<Sample>& samples, LyapCase which,
                          const LyapunovConstants& constants) {
    DecayReport rep;
    rep.which = which;
    rep.c = constants.c;
    if (which == LyapCase::none) return rep;
    for (size_t i = 1; i < samples.size(); ++i) {
        const Sample& s0 = samples[i - 1];
        const Sample& s1 = samples[i];
        if (!s0.lyap_defined || !s1.lyap_defined) {
            ++rep.excluded;
            continue;
        }
        const double dt = s1.t - s0.t;
        if (!(dt > 0.0)) continue;
        ++rep.intervals;
        const double dEdt = (s1.E - s0.E) / dt;
        const double f_mid = 0.5 * (s0.F + s1.F);
        const double tol = 1e-6 * (1.0 + std::abs(s0.E));
        const double excess = dEdt + constants.c * f_mid - tol;
        if (excess > 0.0) {
            ++rep.violations;
            rep.worst_violation = std::max(rep.worst_violation, excess);
        }
        rep.max_relative_increase =
            std::max(rep.max_relative_increase, (s1.E - s0.E) / (1.0 + std::abs(s0.E)));
    }
    rep.violation_fraction =
        rep.intervals > 0 ? static_cast<double>(rep.violations) / rep.intervals : 0.0;
    return rep;
}

}  // namespace chemo
