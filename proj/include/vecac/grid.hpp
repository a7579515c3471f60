#pragma once

#include <string>
#include <vector>

namespace vecac {

enum class BCKind { Dirichlet, Periodic };

struct BC {
    BCKind kind = BCKind::Dirichlet;
    bool periodic_x = true;  // per-axis flags, Periodic only
    bool periodic_y = true;
};

// Node-centered uniform square grid carrying a field u: Omega -> R^k.
// values is nx*ny*k, row-major over (iy, ix), component-fastest.
struct Grid2D {
    int nx = 0, ny = 0, k = 1;
    double h = 0.0;
    double ox = 0.0, oy = 0.0;
    BC bc;
    std::vector<double> values;

    static Grid2D make(int nx, int ny, int k, double h, double ox, double oy,
                       BC bc = BC{});

    double x(int ix) const { return ox + ix * h; }
    double y(int iy) const { return oy + iy * h; }
    size_t idx(int ix, int iy) const { return ((size_t)iy * nx + ix) * k; }
    double* at(int ix, int iy) { return values.data() + idx(ix, iy); }
    const double* at(int ix, int iy) const { return values.data() + idx(ix, iy); }
    bool on_boundary(int ix, int iy) const {
        return ix == 0 || iy == 0 || ix == nx - 1 || iy == ny - 1;
    }
};

// VAC1 dump: ASCII header "VAC1 nx ny k h eps\n" then little-endian f64,
// row-major, component-fastest.
void save_vac1(const Grid2D& g, double eps, const std::string& path);
struct LoadedField {
    Grid2D grid;
    double eps = 0.0;
};
LoadedField load_vac1(const std::string& path);

}  // namespace vecac
