#pragma once

#include <vector>

#include "chemo/model.hpp"
#include "chemo/params.hpp"
#include "chemo/thresholds.hpp"

namespace chemo {

// E2's logarithm guard: below this, the functional is reported undefined.
inline constexpr double kUFloor = 1e-30;

/// 2x2 symmetric matrix [[m11, m12], [m12, m22]].
struct Sym2 {
    double m11 = 0.0, m12 = 0.0, m22 = 0.0;

    double det() const { return m11 * m22 - m12 * m12; }
    double trace() const { return m11 + m22; }
    double lambda_min() const;
    double lambda_max() const;
};

/// P = [[r, (1-ka)/2], [(1-ka)/2, k]], S = [[D u*, chi u*/2], [chi u*/2, k]].
struct QuadraticForms {
    Sym2 P;
    Sym2 S;
};

struct LyapunovConstants {
    LyapCase which = LyapCase::none;
    double k = 0.0;
    double eps1 = 0.0;  // case 1 only
    double c = 0.0;     // certified decay constant (c1 or c2)
    bool certified = false;
};

// Extinction-case functionals (target (0, f)).
double e1(const State& s, const ModelParams& p, double k);
double f1(const State& s, const ModelParams& p);

// Coexistence-case functionals (target (u*, v*)); throw UndefinedFunctionalError
// when min(u) <= kUFloor.
double e2(const State& s, const ModelParams& p, double k);
double f2(const State& s, const ModelParams& p);

QuadraticForms build_forms(const ModelParams& p, double k);

struct PdVerdict {
    bool positive_definite = false;
    double lambda_min = 0.0;  // smaller eigenvalue over both matrices
};

/// Sylvester-minor verdict, cross-checked against the closed-form 2x2
/// eigenvalues: verdict true iff lambda_min > 0.
PdVerdict check_positive_definite(const QuadraticForms& forms);

/// Case 1 (f > r >= a): k at the vertex r/a^2 (or the k = 1/r choice when
/// a = 0), eps1 maximizing the smaller of the two decay coefficients
///   r/2 - 1/(4 eps1)  and  Q(k) - eps1,  Q(k) = k - a^2 k^2 / (2r),
/// over the admissible window [1/(2r), Q(k)]. c1 = 0 exactly at r = a.
LyapunovConstants select_constants_case1(const ModelParams& p);

/// Case 2 (r > f): scans k over the feasible interval (64-point grid, then
/// golden-section refinement) maximizing min(lambda_min(P), lambda_min(S)).
LyapunovConstants select_constants_case2(const ModelParams& p, const KInterval& feasible);

struct DecayReport {
    LyapCase which = LyapCase::none;
    double c = 0.0;
    int intervals = 0;
    int violations = 0;
    int excluded = 0;  // intervals touching an undefined-E sample
    double violation_fraction = 0.0;
    double worst_violation = 0.0;        // max of dE/dt + c*F_mid - tol, clipped at 0
    double max_relative_increase = 0.0;  // max of (E_i - E_{i-1}) / (1 + |E_{i-1}|)
};

/// Checks dE/dt <= -c*F + tol per sampled interval, with F at the interval
/// midpoint (mean of the endpoint values) and tol = 1e-6*(1 + |E|).
DecayReport monitor_decay(const std::vector<Sample>& samples, LyapCase which,
                          const LyapunovConstants& constants);

}  // namespace chemo
