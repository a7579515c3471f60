#pragma once

#include "vecac/grid.hpp"
#include "vecac/potential.hpp"

#include <string>
#include <vector>

namespace vecac {

struct ScalarField {
    int nx = 0, ny = 0;
    double h = 0.0, ox = 0.0, oy = 0.0;
    std::vector<double> v;

    static ScalarField like(const Grid2D& g) {
        return {g.nx, g.ny, g.h, g.ox, g.oy, std::vector<double>((size_t)g.nx * g.ny, 0.0)};
    }
    double x(int ix) const { return ox + ix * h; }
    double y(int iy) const { return oy + iy * h; }
    double& at(int ix, int iy) { return v[(size_t)iy * nx + ix]; }
    double at(int ix, int iy) const { return v[(size_t)iy * nx + ix]; }
};

// Per-node diagnostic densities. mu_ij = eps du/dx_i . du/dx_j,
// e = (mu11+mu22)/2 + zeta, xi = zeta - (mu11+mu22)/2,
// hopf = (mu11 - mu22) - 2 i mu12, stress A_ij = e delta_ij - mu_ij.
struct DiagnosticSet {
    int k = 1;
    double eps = 0.0;
    ScalarField e, zeta, xi;
    ScalarField mu11, mu22, mu12;
    ScalarField hopf_re, hopf_im;
    ScalarField a11, a22, a12;
    std::vector<double> gx, gy;  // du/dx, du/dy, nx*ny*k
};

// Central differences at interior nodes, second-order one-sided at the
// boundary (periodic axes wrap). All algebraic identities between the
// fields hold by construction.
DiagnosticSet diagnostics(const Grid2D& g, const Potential& p, double eps);

// Integral of the field over the disk D((x0,y0), r); boundary cells are
// weighted by a deterministic 4x4 subsample of the circle-cell overlap.
double ball_mass(const ScalarField& f, double x0, double y0, double r);

struct RadialScan {
    double x0 = 0, y0 = 0;
    std::vector<double> r;
    std::vector<double> mass_over_r;
};

// r -> mass(D(x0,r))/r on a geometric grid of n_r radii.
RadialScan radial_scan(const ScalarField& f, double x0, double y0, double r_min,
                       double r_max, int n_r);

void export_scan_csv(const RadialScan& scan, const std::string& path);

struct FrameFields {
    ScalarField mu_par_par, mu_perp_perp, mu_perp_par;
};

// Rotates mu_ij into the frame with e1 = (cos g, sin g).
FrameFields frame_project(const DiagnosticSet& d, double gamma);

// Bilinear interpolation; clamps to the grid rectangle.
double bilinear(const ScalarField& f, double x, double y);

void save_field_vac1(const ScalarField& f, double eps, const std::string& path);

}  // namespace vecac
