// Serial reference kernels. Same per-cell arithmetic as chemo::kernels, no
// OpenMP, straight loops; reductions accumulate left to right. Tests compare
// the two flavors (stencils bit-for-bit, reductions to rounding) and the
// benchmark times them against each other.

#include <algorithm>
#include <cmath>
#include <limits>

#include "chemo/kernels.hpp"

namespace chemo::ref {

void laplacian_neumann(const Grid& g, const double* f, double* out) {
    const int nx = g.nx, ny = g.ny;
    const double ihx2 = 1.0 / (g.hx * g.hx);
    const double ihy2 = ny > 1 ? 1.0 / (g.hy * g.hy) : 0.0;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int id = j * nx + i;
            const double c = f[id];
            const double xl = (i > 0) ? f[id - 1] : c;
            const double xr = (i < nx - 1) ? f[id + 1] : c;
            double lap = (xl - 2.0 * c + xr) * ihx2;
            if (ny > 1) {
                const double yl = (j > 0) ? f[id - nx] : c;
                const double yr = (j < ny - 1) ? f[id + nx] : c;
                lap += (yl - 2.0 * c + yr) * ihy2;
            }
            out[id] = lap;
        }
    }
}

void chemotaxis_divergence(const Grid& g, double chi, const double* u, const double* v,
                           double* out) {
    const int nx = g.nx, ny = g.ny;
    const double ihx = 1.0 / g.hx;
    const double ihy = ny > 1 ? 1.0 / g.hy : 0.0;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int id = j * nx + i;
            const double fxl =
                (i > 0) ? 0.5 * (u[id - 1] + u[id]) * (v[id] - v[id - 1]) * ihx : 0.0;
            const double fxr =
                (i < nx - 1) ? 0.5 * (u[id] + u[id + 1]) * (v[id + 1] - v[id]) * ihx : 0.0;
            double div = (fxr - fxl) * ihx;
            if (ny > 1) {
                const double fyl =
                    (j > 0) ? 0.5 * (u[id - nx] + u[id]) * (v[id] - v[id - nx]) * ihy : 0.0;
                const double fyr =
                    (j < ny - 1) ? 0.5 * (u[id] + u[id + nx]) * (v[id + nx] - v[id]) * ihy : 0.0;
                div += (fyr - fyl) * ihy;
            }
            out[id] = chi * div;
        }
    }
}

void gradient_magnitude_sq(const Grid& g, const double* f, double* out) {
    const int nx = g.nx, ny = g.ny;
    const double hx2 = 0.5 / g.hx;
    const double hy2 = ny > 1 ? 0.5 / g.hy : 0.0;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int id = j * nx + i;
            const double c = f[id];
            const double xl = (i > 0) ? f[id - 1] : c;
            const double xr = (i < nx - 1) ? f[id + 1] : c;
            const double gx = (xr - xl) * hx2;
            double gg = gx * gx;
            if (ny > 1) {
                const double yl = (j > 0) ? f[id - nx] : c;
                const double yr = (j < ny - 1) ? f[id + nx] : c;
                const double gy = (yr - yl) * hy2;
                gg += gy * gy;
            }
            out[id] = gg;
        }
    }
}

void reaction_combine(const ModelParams& p, const double* u, const double* v,
                      const double* lap_u, const double* chem_u, const double* lap_v,
                      double* du, double* dv, int n) {
    const double D = p.D, r = p.r, a = p.a, f = p.f;
    for (int i = 0; i < n; ++i) {
        du[i] = D * lap_u[i] + chem_u[i] + r * u[i] * (1.0 - u[i]) - u[i] * v[i];
        dv[i] = lap_v[i] + a * u[i] - v[i] + f;
    }
}

void stage(const double* base, const double* k, double coef, double* out, int n) {
    for (int i = 0; i < n; ++i) out[i] = base[i] + coef * k[i];
}

CombineStats rk4_combine(const double* y, const double* k1, const double* k2, const double* k3,
                         const double* k4, double dt, double* out, int n, double clamp_tol) {
    const double w = dt / 6.0;
    CombineStats st{std::numeric_limits<double>::infinity(), true};
    for (int i = 0; i < n; ++i) {
        const double val = y[i] + w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (val < st.min_value) st.min_value = val;
        st.finite = st.finite && std::isfinite(val);
        out[i] = (clamp_tol > 0.0 && val < 0.0 && val >= -clamp_tol) ? 0.0 : val;
    }
    return st;
}

double sum(const double* x, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += x[i];
    return s;
}

double min_value(const double* x, int n) {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) m = std::min(m, x[i]);
    return m;
}

double max_abs(const double* x, int n) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
    return m;
}

bool all_finite(const double* x, int n) {
    for (int i = 0; i < n; ++i)
        if (!std::isfinite(x[i])) return false;
    return true;
}

}  // namespace chemo::ref
