#include "chemo/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chemo/equilibria.hpp"
#include "chemo/errors.hpp"

namespace chemo {

double k_min(double rate, const ModelParams& p) {
    p.validate();
    if (rate < p.f) throw RegimeError("k_min requires r >= f");
    if (rate == p.f) return 0.0;
    return p.chi * p.chi * (rate - p.f) / (4.0 * p.D * (rate + p.a));
}

KInterval k_interval(double rate, double a) {
    if (!(rate > 0.0)) throw ConfigError("k_interval requires r > 0");
    if (a == 0.0) return KInterval::open(0.0, std::numeric_limits<double>::infinity());
    const double q = (a + 2.0 * rate) + 2.0 * std::sqrt(rate * rate + a * rate);
    return KInterval::open(1.0 / q, q / (a * a));
}

CubicCoeffs cubic_coeffs(const ModelParams& p) {
    p.validate();
    if (p.a == 0.0)
        throw DegenerateCubicError("cubic is identically zero for a = 0 (r_c = 0)");
    const double D = p.D, chi = p.chi, a = p.a, f = p.f;
    const double a2 = a * a, a3 = a2 * a, a4 = a2 * a2;
    const double chi2 = chi * chi, chi4 = chi2 * chi2;
    CubicCoeffs cc;
    cc.c[0] = 16.0 * D * a2 * chi2;
    cc.c[1] = 24.0 * D * a3 * chi2 - a4 * chi4 - 16.0 * f * D * a2 * chi2 - 16.0 * D * D * a2;
    cc.c[2] = 2.0 * f * a4 * chi4 + 8.0 * D * a4 * chi2 - 24.0 * f * D * a3 * chi2 -
              32.0 * D * D * a3;
    cc.c[3] = -(16.0 * D * D * a4 + 8.0 * D * a4 * chi2 * f + a4 * chi4 * f * f);
    cc.degenerate = cc.c[0] == 0.0;
    return cc;
}

namespace {

// Monic cubic helpers. p(x) = x^3 + b2 x^2 + b1 x + b0.
struct Monic {
    double b2, b1, b0;
    double eval(double x) const { return ((x + b2) * x + b1) * x + b0; }
    double deriv(double x) const { return (3.0 * x + 2.0 * b2) * x + b1; }
};

double bisect_root(const Monic& m, double lo, double hi, double flo) {
    // flo carries the sign at lo; a sign change across [lo, hi] is the caller's contract.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval no longer splittable
        const double fm = m.eval(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-13 * (1.0 + std::abs(mid))) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> cubic_real_roots(const CubicCoeffs& cubic) {
    if (cubic.c[0] == 0.0)
        throw DegenerateCubicError("cubic_real_roots: leading coefficient is zero");
    const Monic m{cubic.c[1] / cubic.c[0], cubic.c[2] / cubic.c[0], cubic.c[3] / cubic.c[0]};
    const double bound =
        1.0 + std::max({std::abs(m.b2), std::abs(m.b1), std::abs(m.b0)});  // Cauchy bound

    // Monotone pieces are delimited by the critical points of p.
    std::vector<double> crit;
    const double disc = m.b2 * m.b2 - 3.0 * m.b1;
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        crit.push_back((-m.b2 - s) / 3.0);
        crit.push_back((-m.b2 + s) / 3.0);
    }
    std::vector<double> nodes{-bound};
    for (double x : crit)
        if (x > -bound && x < bound) nodes.push_back(x);
    nodes.push_back(bound);

    std::vector<double> distinct;
    for (size_t s = 0; s + 1 < nodes.size(); ++s) {
        const double lo = nodes[s], hi = nodes[s + 1];
        const double flo = m.eval(lo), fhi = m.eval(hi);
        if (fhi == 0.0) {
            distinct.push_back(hi);
            continue;
        }
        if (flo != 0.0 && (flo < 0.0) != (fhi < 0.0))
            distinct.push_back(bisect_root(m, lo, hi, flo));
    }

    // A tangency leaves the residual at a critical point at rounding level
    // without a sign change; pick it up by residual test.
    auto near_known = [&](double x) {
        for (double r : distinct)
            if (std::abs(r - x) <= 1e-9 * (1.0 + std::abs(x))) return true;
        return false;
    };
    for (double xc : crit) {
        const double scale = std::abs(xc * xc * xc) + std::abs(m.b2 * xc * xc) +
                             std::abs(m.b1 * xc) + std::abs(m.b0) + 1.0;
        if (!near_known(xc) && std::abs(m.eval(xc)) <= 1e-12 * scale) distinct.push_back(xc);
    }
    std::sort(distinct.begin(), distinct.end());

    // Merge near-coincident roots, then restore multiplicity: a cubic with
    // exactly two distinct real roots always has a double one (the one where
    // p' vanishes).
    std::vector<double> merged;
    for (size_t i = 0; i < distinct.size(); ++i) {
        if (i + 1 < distinct.size() &&
            distinct[i + 1] - distinct[i] <= 1e-9 * (1.0 + std::abs(distinct[i]))) {
            merged.push_back(0.5 * (distinct[i] + distinct[i + 1]));
            ++i;
        } else {
            merged.push_back(distinct[i]);
        }
    }
    if (merged.size() > 3) throw NumericalError("cubic_real_roots: found more than three roots");

    std::vector<double> expanded;
    if (merged.size() == 2) {
        const size_t dbl =
            std::abs(m.deriv(merged[0])) <= std::abs(m.deriv(merged[1])) ? 0 : 1;
        for (size_t i = 0; i < 2; ++i) {
            expanded.push_back(merged[i]);
            if (i == dbl) expanded.push_back(merged[i]);
        }
    } else {
        expanded = merged;
    }
    return expanded;
}

RootReport cubic_positive_roots(const ModelParams& p) {
    p.validate();
    RootReport rep;
    if (p.a == 0.0 || p.chi == 0.0) {
        rep.r_c = 0.0;  // self-production-free or taxis-free: every r > f is feasible
        return rep;
    }
    const CubicCoeffs cc = cubic_coeffs(p);
    const std::vector<double> all = cubic_real_roots(cc);
    for (double r : all)
        if (r > 0.0) rep.positive_roots.push_back(r);

    const size_t n = rep.positive_roots.size();
    if (n == 1) {
        rep.r_c = rep.positive_roots.front();
    } else if (n == 3) {
        rep.r_c = rep.positive_roots.back();
    } else {
        throw NumericalError("cubic root classification: expected 1 or 3 positive roots, got " +
                             std::to_string(n) + " (D=" + std::to_string(p.D) +
                             " chi=" + std::to_string(p.chi) + " a=" + std::to_string(p.a) +
                             " f=" + std::to_string(p.f) + ")");
    }
    return rep;
}

double r_critical(const ModelParams& p) { return cubic_positive_roots(p).r_c; }

KInterval feasible_k(double rate, const ModelParams& p) {
    p.validate();
    if (rate <= p.f) throw RegimeError("feasible_k requires r > f");
    const double lo_s = k_min(rate, p);
    if (p.a == 0.0)
        return KInterval::open(lo_s, std::numeric_limits<double>::infinity());
    const KInterval kp = k_interval(rate, p.a);
    return KInterval::open(std::max(lo_s, kp.lo), kp.hi);
}

bool case1_feasible(double rate, double a) {
    if (!(rate > 0.0)) throw ConfigError("case1_feasible requires r > 0");
    if (a < 0.0) throw ConfigError("case1_feasible requires a >= 0");
    if (a == 0.0) return true;
    return rate >= a;
}

ThresholdReport threshold_report(const ModelParams& p) {
    p.validate();
    ThresholdReport rep;
    rep.params = p;
    rep.taxis_free = p.chi == 0.0;
    rep.cubic_defined = p.a > 0.0;
    if (rep.cubic_defined) rep.cubic = cubic_coeffs(p);
    const RootReport roots = cubic_positive_roots(p);
    rep.positive_roots = roots.positive_roots;
    rep.r_c = roots.r_c;
    rep.case1_ok = case1_feasible(p.r, p.a);
    rep.k_fields_defined = p.r >= p.f;
    if (rep.k_fields_defined) {
        rep.k_min_at_r = k_min(p.r, p);
        rep.k_interval_at_r = k_interval(p.r, p.a);
        rep.feasible_at_r = p.r > p.f ? feasible_k(p.r, p) : KInterval::none();
    }
    return rep;
}

}  // namespace chemo
