// Times the OpenMP kernels against the serial reference on a 256x256 grid
// and reports ns/cell plus speedup. Build target only; not part of ctest.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "chemo/kernels.hpp"
#include "chemo/parallel.hpp"

using namespace chemo;

namespace {

double run_timed(const std::function<void()>& fn, int reps) {
    // warm-up
    fn();
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
    const Grid g = Grid::make_2d(256, 256, 1.0, 1.0);
    const int n = g.cells();
    const int reps = 200;

    std::mt19937_64 rng(1234);
    auto u01 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    Field u(g), v(g), out1(g), out2(g), dv(g);
    for (int i = 0; i < n; ++i) {
        u[i] = 0.5 + 0.4 * u01();
        v[i] = 1.0 + 0.5 * u01();
    }
    ModelParams p;
    p.D = 1.0;
    p.chi = 1.0;
    p.r = 2.0;
    p.a = 1.0;
    p.f = 0.5;

    struct Row {
        const char* name;
        std::function<void()> omp;
        std::function<void()> serial;
    };
    Field lap_u(g), chem(g), lap_v(g);
    const std::vector<Row> rows = {
        {"laplacian_neumann",
         [&] { kernels::laplacian_neumann(g, u.data(), out1.data()); },
         [&] { ref::laplacian_neumann(g, u.data(), out2.data()); }},
        {"chemotaxis_divergence",
         [&] { kernels::chemotaxis_divergence(g, p.chi, u.data(), v.data(), out1.data()); },
         [&] { ref::chemotaxis_divergence(g, p.chi, u.data(), v.data(), out2.data()); }},
        {"gradient_magnitude_sq",
         [&] { kernels::gradient_magnitude_sq(g, u.data(), out1.data()); },
         [&] { ref::gradient_magnitude_sq(g, u.data(), out2.data()); }},
        {"reaction_combine",
         [&] {
             kernels::reaction_combine(p, u.data(), v.data(), lap_u.data(), chem.data(),
                                       lap_v.data(), out1.data(), dv.data(), n);
         },
         [&] {
             ref::reaction_combine(p, u.data(), v.data(), lap_u.data(), chem.data(),
                                   lap_v.data(), out2.data(), dv.data(), n);
         }},
        {"sum",
         [&] { volatile double s = kernels::sum(u.data(), n); (void)s; },
         [&] { volatile double s = ref::sum(u.data(), n); (void)s; }},
    };

    std::printf("%-24s %12s %12s %9s\n", "kernel", "omp ns/cell", "ref ns/cell", "speedup");
    for (const Row& row : rows) {
        const double t_omp = run_timed(row.omp, reps) / n * 1e9;
        const double t_ref = run_timed(row.serial, reps) / n * 1e9;
        std::printf("%-24s %12.3f %12.3f %8.2fx\n", row.name, t_omp, t_ref, t_ref / t_omp);
    }
    return 0;
}
