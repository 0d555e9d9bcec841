#pragma once

#include "chemo/grid.hpp"
#include "chemo/params.hpp"

// Hot loops live here, in two flavors with identical signatures:
//   chemo::kernels — OpenMP-parallel production path
//   chemo::ref     — plain serial reference, kept for tests and the benchmark
//
// Every kernel is thread-count-invariant: maps are pure per-cell functions and
// reductions accumulate fixed 1024-cell chunk partials combined in chunk
// order. Stencil kernels therefore agree bit-for-bit between the two flavors;
// reduction kernels agree to rounding (the reference sums left to right).

namespace chemo {

struct CombineStats {
    double min_value;  // before any clamping
    bool finite;
};

namespace kernels {

void laplacian_neumann(const Grid& g, const double* f, double* out);
void chemotaxis_divergence(const Grid& g, double chi, const double* u, const double* v,
                           double* out);
void gradient_magnitude_sq(const Grid& g, const double* f, double* out);

// du = D*lap_u + chem + r*u*(1-u) - u*v ; dv = lap_v + a*u - v + f
void reaction_combine(const ModelParams& p, const double* u, const double* v,
                      const double* lap_u, const double* chem_u, const double* lap_v,
                      double* du, double* dv, int n);

// out = base + coef*k
void stage(const double* base, const double* k, double coef, double* out, int n);

// out = y + (dt/6)*(k1 + 2*k2 + 2*k3 + k4); if clamp_tol > 0, entries in
// [-clamp_tol, 0) are set to 0 after the min is taken.
CombineStats rk4_combine(const double* y, const double* k1, const double* k2, const double* k3,
                         const double* k4, double dt, double* out, int n, double clamp_tol);
CombineStats euler_combine(const double* y, const double* k1, double dt, double* out, int n,
                           double clamp_tol);

double sum(const double* x, int n);
double min_value(const double* x, int n);
double max_abs(const double* x, int n);
double max_abs_diff(const double* x, double c, int n);  // max |x[i] - c|
double sum_sq_diff(const double* x, double c, int n);   // sum (x[i] - c)^2
bool all_finite(const double* x, int n);

}  // namespace kernels

namespace ref {

void laplacian_neumann(const Grid& g, const double* f, double* out);
void chemotaxis_divergence(const Grid& g, double chi, const double* u, const double* v,
                           double* out);
void gradient_magnitude_sq(const Grid& g, const double* f, double* out);
void reaction_combine(const ModelParams& p, const double* u, const double* v,
                      const double* lap_u, const double* chem_u, const double* lap_v,
                      double* du, double* dv, int n);
void stage(const double* base, const double* k, double coef, double* out, int n);
CombineStats rk4_combine(const double* y, const double* k1, const double* k2, const double* k3,
                         const double* k4, double dt, double* out, int n, double clamp_tol);
double sum(const double* x, int n);
double min_value(const double* x, int n);
double max_abs(const double* x, int n);
bool all_finite(const double* x, int n);

}  // namespace ref

}  // namespace chemo
