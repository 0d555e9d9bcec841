#pragma once

#include <array>
#include <limits>
#include <vector>

#include "chemo/params.hpp"

namespace chemo {

/// Open interval of admissible weights k; hi may be +inf (unbounded).
struct KInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;

    bool unbounded() const { return !empty && hi == std::numeric_limits<double>::infinity(); }
    bool contains(double k) const { return !empty && k > lo && k < hi; }
    static KInterval open(double lo, double hi) {
        KInterval iv;
        iv.empty = !(lo < hi);
        iv.lo = lo;
        iv.hi = hi;
        return iv;
    }
    static KInterval none() { return KInterval{}; }
};

/// Smallest admissible k for the S-matrix minor: chi^2 (r-f) / (4D (r+a)).
/// Increasing in r with limit chi^2/(4D); returns 0 at r = f.
double k_min(double rate, const ModelParams& p);

/// Solution interval of r k - (1-ka)^2/4 > 0. For a > 0 both endpoints are
/// positive: ((a+2r) -+ 2*sqrt(r^2+ar))/a^2; the lower one is evaluated as the
/// rationalized conjugate 1/((a+2r) + 2*sqrt(r^2+ar)) to avoid cancellation.
/// For a = 0 the condition reduces to rk > 0, i.e. the interval (0, +inf).
KInterval k_interval(double rate, double a);

struct CubicCoeffs {
    std::array<double, 4> c{};  // {c3, c2, c1, c0}, highest degree first
    bool degenerate = false;    // c3 == 0 (chi == 0)

    double eval(double x) const { return ((c[0] * x + c[1]) * x + c[2]) * x + c[3]; }
};

/// Coefficients of the critical-rate cubic:
///   c3 = 16 D a^2 chi^2
///   c2 = 24 D a^3 chi^2 - a^4 chi^4 - 16 f D a^2 chi^2 - 16 D^2 a^2
///   c1 = 2 f a^4 chi^4 + 8 D a^4 chi^2 - 24 f D a^3 chi^2 - 32 D^2 a^3
///   c0 = -(16 D^2 a^4 + 8 D a^4 chi^2 f + a^4 chi^4 f^2)
/// Throws DegenerateCubicError for a = 0 (identically zero polynomial).
CubicCoeffs cubic_coeffs(const ModelParams& p);

/// All real roots of c3 x^3 + c2 x^2 + c1 x + c0 (c3 != 0), each expanded by
/// multiplicity, ascending. Bracketed bisection on the monotone pieces between
/// the derivative's critical points, inside the Cauchy bound; two roots closer
/// than 1e-9*(1+|x|) collapse to a double root.
std::vector<double> cubic_real_roots(const CubicCoeffs& cubic);

struct RootReport {
    std::vector<double> positive_roots;  // ascending, multiplicity expanded
    double r_c = 0.0;
};

/// Positive roots of the cubic and the critical rate: one positive root gives
/// r_c = r1, three (a tangency counts as two) give r_c = r3. a = 0 or chi = 0
/// short-circuit to r_c = 0.
RootReport cubic_positive_roots(const ModelParams& p);
double r_critical(const ModelParams& p);

/// Intersection (max(k_min(r), k1(r)), k2(r)) of both minor conditions;
/// (k_min(r), +inf) for a = 0. Requires r > f.
KInterval feasible_k(double rate, const ModelParams& p);

/// Lemma hypothesis for the extinction-case functional: r >= a when a > 0,
/// always satisfiable when a = 0.
bool case1_feasible(double rate, double a);

/// Aggregate report for the CLI `thresholds` subcommand.
struct ThresholdReport {
    ModelParams params;
    bool taxis_free = false;                  // chi == 0
    bool cubic_defined = false;               // a > 0
    CubicCoeffs cubic;                        // valid iff cubic_defined
    std::vector<double> positive_roots;       // multiplicity expanded
    double r_c = 0.0;
    bool k_fields_defined = false;            // r >= f
    double k_min_at_r = 0.0;                  // valid iff k_fields_defined
    KInterval k_interval_at_r;                // P-minor interval at params.r
    KInterval feasible_at_r;                  // both minors; r > f only
    bool case1_ok = false;                    // case1_feasible(r, a)
};

ThresholdReport threshold_report(const ModelParams& p);

}  // namespace chemo
