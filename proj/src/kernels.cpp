#include "chemo/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "chemo/parallel.hpp"

namespace chemo::kernels {

namespace {

// Fixed chunking makes every reduction independent of the thread count: chunk
// partials are computed in parallel but combined serially in chunk order.
constexpr int kChunk = 1024;

inline int chunk_count(int n) { return (n + kChunk - 1) / kChunk; }

inline bool parallel_ok(int n) {
    return parallel::kernels_enabled() && n >= parallel::kGrainSize;
}

}  // namespace

void laplacian_neumann(const Grid& g, const double* f, double* out) {
    const int nx = g.nx, ny = g.ny;
    const double ihx2 = 1.0 / (g.hx * g.hx);
    const double ihy2 = ny > 1 ? 1.0 / (g.hy * g.hy) : 0.0;
    const bool par = parallel_ok(nx * ny);
#pragma omp parallel for collapse(2) schedule(static) if (par)
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
    const bool par = parallel_ok(nx * ny);
#pragma omp parallel for collapse(2) schedule(static) if (par)
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int id = j * nx + i;
            // Face flux = mean(u) * central difference of v; boundary faces carry none.
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
    const bool par = parallel_ok(nx * ny);
#pragma omp parallel for collapse(2) schedule(static) if (par)
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
    const bool par = parallel_ok(n);
#pragma omp parallel for schedule(static) if (par)
    for (int i = 0; i < n; ++i) {
        du[i] = D * lap_u[i] + chem_u[i] + r * u[i] * (1.0 - u[i]) - u[i] * v[i];
        dv[i] = lap_v[i] + a * u[i] - v[i] + f;
    }
}

void stage(const double* base, const double* k, double coef, double* out, int n) {
    const bool par = parallel_ok(n);
#pragma omp parallel for schedule(static) if (par)
    for (int i = 0; i < n; ++i) out[i] = base[i] + coef * k[i];
}

namespace {

template <class PerElement>
CombineStats combine_impl(PerElement value_at, double* out, int n, double clamp_tol) {
    const int nch = chunk_count(n);
    std::vector<double> mins(nch, std::numeric_limits<double>::infinity());
    std::vector<char> fins(nch, 1);
    const bool par = parallel_ok(n);
#pragma omp parallel for schedule(static) if (par)
    for (int c = 0; c < nch; ++c) {
        const int b = c * kChunk;
        const int e = std::min(n, b + kChunk);
        double mn = std::numeric_limits<double>::infinity();
        bool fin = true;
        for (int i = b; i < e; ++i) {
            const double val = value_at(i);
            if (val < mn) mn = val;
            fin = fin && std::isfinite(val);
            out[i] = (clamp_tol > 0.0 && val < 0.0 && val >= -clamp_tol) ? 0.0 : val;
        }
        mins[c] = mn;
        fins[c] = fin ? 1 : 0;
    }
    CombineStats st{std::numeric_limits<double>::infinity(), true};
    for (int c = 0; c < nch; ++c) {
        if (mins[c] < st.min_value) st.min_value = mins[c];
        st.finite = st.finite && fins[c];
    }
    return st;
}

}  // namespace

CombineStats rk4_combine(const double* y, const double* k1, const double* k2, const double* k3,
                         const double* k4, double dt, double* out, int n, double clamp_tol) {
    const double w = dt / 6.0;
    return combine_impl(
        [=](int i) { return y[i] + w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]); }, out, n,
        clamp_tol);
}

CombineStats euler_combine(const double* y, const double* k1, double dt, double* out, int n,
                           double clamp_tol) {
    return combine_impl([=](int i) { return y[i] + dt * k1[i]; }, out, n, clamp_tol);
}

namespace {

template <class ChunkFn>
double reduce_sum(int n, ChunkFn chunk_sum) {
    const int nch = chunk_count(n);
    std::vector<double> part(nch, 0.0);
    const bool par = parallel_ok(n);
#pragma omp parallel for schedule(static) if (par)
    for (int c = 0; c < nch; ++c) part[c] = chunk_sum(c * kChunk, std::min(n, c * kChunk + kChunk));
    double total = 0.0;
    for (int c = 0; c < nch; ++c) total += part[c];
    return total;
}

template <class ChunkFn>
double reduce_max(int n, ChunkFn chunk_max) {
    const int nch = chunk_count(n);
    std::vector<double> part(nch, -std::numeric_limits<double>::infinity());
    const bool par = parallel_ok(n);
#pragma omp parallel for schedule(static) if (par)
    for (int c = 0; c < nch; ++c) part[c] = chunk_max(c * kChunk, std::min(n, c * kChunk + kChunk));
    double m = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < nch; ++c) m = std::max(m, part[c]);
    return m;
}

}  // namespace

double sum(const double* x, int n) {
    return reduce_sum(n, [x](int b, int e) {
        double s = 0.0;
        for (int i = b; i < e; ++i) s += x[i];
        return s;
    });
}

double min_value(const double* x, int n) {
    return -reduce_max(n, [x](int b, int e) {
        double m = -std::numeric_limits<double>::infinity();
        for (int i = b; i < e; ++i) m = std::max(m, -x[i]);
        return m;
    });
}

double max_abs(const double* x, int n) {
    return reduce_max(n, [x](int b, int e) {
        double m = 0.0;
        for (int i = b; i < e; ++i) m = std::max(m, std::abs(x[i]));
        return m;
    });
}

double max_abs_diff(const double* x, double c, int n) {
    return reduce_max(n, [x, c](int b, int e) {
        double m = 0.0;
        for (int i = b; i < e; ++i) m = std::max(m, std::abs(x[i] - c));
        return m;
    });
}

double sum_sq_diff(const double* x, double c, int n) {
    return reduce_sum(n, [x, c](int b, int e) {
        double s = 0.0;
        for (int i = b; i < e; ++i) {
            const double d = x[i] - c;
            s += d * d;
        }
        return s;
    });
}

bool all_finite(const double* x, int n) {
    const int nch = chunk_count(n);
    std::vector<char> fins(nch, 1);
    const bool par = parallel_ok(n);
#pragma omp parallel for schedule(static) if (par)
    for (int c = 0; c < nch; ++c) {
        bool fin = true;
        const int b = c * kChunk, e = std::min(n, b + kChunk);
        for (int i = b; i < e; ++i) fin = fin && std::isfinite(x[i]);
        fins[c] = fin ? 1 : 0;
    }
    for (int c = 0; c < nch; ++c)
        if (!fins[c]) return false;
    return true;
}

}  // namespace chemo::kernels
