#pragma once

#include <vector>

#include "chemo/errors.hpp"

namespace chemo {

/// Cell-centered rectangular mesh, 1D or 2D. Zero-flux boundaries are
/// implemented by the operators via mirrored ghost cells (ghost = adjacent
/// interior value), which makes the discrete divergence theorem exact.
struct Grid {
    int dim = 1;
    int nx = 0, ny = 1;
    double Lx = 0.0, Ly = 0.0;
    double hx = 0.0, hy = 0.0;

    static Grid make_1d(int nx, double Lx);
    static Grid make_2d(int nx, int ny, double Lx, double Ly);

    int cells() const { return nx * ny; }
    double cell_volume() const { return dim == 1 ? hx : hx * hy; }
    double min_h() const { return dim == 1 ? hx : (hx < hy ? hx : hy); }
    double volume() const { return dim == 1 ? Lx : Lx * Ly; }
    double x_center(int i) const { return (i + 0.5) * hx; }
    double y_center(int j) const { return (j + 0.5) * hy; }
    int idx(int i, int j) const { return j * nx + i; }

    bool same_shape(const Grid& o) const {
        return dim == o.dim && nx == o.nx && ny == o.ny && Lx == o.Lx && Ly == o.Ly;
    }
};

/// One scalar value per cell. Row-major, index = j*nx + i.
class Field {
  public:
    explicit Field(const Grid& g, double fill = 0.0) : grid_(g), values_(g.cells(), fill) {}

    const Grid& grid() const { return grid_; }
    int size() const { return static_cast<int>(values_.size()); }

    double& operator[](int i) { return values_[i]; }
    double operator[](int i) const { return values_[i]; }
    double& at(int i, int j) { return values_[grid_.idx(i, j)]; }
    double at(int i, int j) const { return values_[grid_.idx(i, j)]; }

    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

  private:
    Grid grid_;
    std::vector<double> values_;
};

// Discrete operators. All enforce zero-flux boundaries with mirrored ghosts
// and have exactly vanishing cell-volume-weighted sums where the continuous
// operator integrates to zero.

Field laplacian_neumann(const Field& f);
Field chemotaxis_divergence(const Field& u, const Field& v, double chi);
Field gradient_magnitude_sq(const Field& f);

/// Midpoint quadrature: cell_volume * sum(values).
double integrate(const Field& f);

double min_value(const Field& f);
double max_abs(const Field& f);
bool all_finite(const Field& f);

void require_finite(const Field& f, const char* what);
void require_same_grid(const Field& a, const Field& b);

}  // namespace chemo
