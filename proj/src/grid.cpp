#include "chemo/grid.hpp"

#include <string>

#include "chemo/kernels.hpp"

namespace chemo {

Grid Grid::make_1d(int nx, double Lx) {
    if (nx < 3) throw ConfigError("Grid: nx must be >= 3");
    if (!(Lx > 0.0)) throw ConfigError("Grid: Lx must be > 0");
    Grid g;
    g.dim = 1;
    g.nx = nx;
    g.ny = 1;
    g.Lx = Lx;
    g.Ly = 0.0;
    g.hx = Lx / nx;
    g.hy = 0.0;
    return g;
}

Grid Grid::make_2d(int nx, int ny, double Lx, double Ly) {
    if (nx < 3 || ny < 3) throw ConfigError("Grid: nx and ny must be >= 3 in 2D");
    if (!(Lx > 0.0) || !(Ly > 0.0)) throw ConfigError("Grid: Lx and Ly must be > 0");
    Grid g;
    g.dim = 2;
    g.nx = nx;
    g.ny = ny;
    g.Lx = Lx;
    g.Ly = Ly;
    g.hx = Lx / nx;
    g.hy = Ly / ny;
    return g;
}

void require_finite(const Field& f, const char* what) {
    if (!kernels::all_finite(f.data(), f.size()))
        throw InvalidFieldError(std::string(what) + ": field has non-finite entries");
}

void require_same_grid(const Field& a, const Field& b) {
    if (!a.grid().same_shape(b.grid()))
        throw ShapeError("fields live on different grids");
}

Field laplacian_neumann(const Field& f) {
    require_finite(f, "laplacian_neumann");
    Field out(f.grid());
    kernels::laplacian_neumann(f.grid(), f.data(), out.data());
    return out;
}

Field chemotaxis_divergence(const Field& u, const Field& v, double chi) {
    require_same_grid(u, v);
    require_finite(u, "chemotaxis_divergence");
    require_finite(v, "chemotaxis_divergence");
    Field out(u.grid());
    kernels::chemotaxis_divergence(u.grid(), chi, u.data(), v.data(), out.data());
    return out;
}

Field gradient_magnitude_sq(const Field& f) {
    require_finite(f, "gradient_magnitude_sq");
    Field out(f.grid());
    kernels::gradient_magnitude_sq(f.grid(), f.data(), out.data());
    return out;
}

double integrate(const Field& f) {
    require_finite(f, "integrate");
    return f.grid().cell_volume() * kernels::sum(f.data(), f.size());
}

double min_value(const Field& f) { return kernels::min_value(f.data(), f.size()); }
double max_abs(const Field& f) { return kernels::max_abs(f.data(), f.size()); }
bool all_finite(const Field& f) { return kernels::all_finite(f.data(), f.size()); }

}  // namespace chemo
