#pragma once

#include "vecac/fields.hpp"
#include "vecac/grid.hpp"
#include "vecac/potential.hpp"

#include <string>
#include <utility>
#include <vector>

namespace vecac {

struct InterfaceArc {
    std::vector<std::pair<double, double>> points;  // polyline, physical coords
    double density = 0.0;                           // zeta mass per unit length
    double length = 0.0;
};

struct InterfaceJunction {
    double x = 0, y = 0;
    std::vector<double> directions;  // incident branch angles
    std::vector<double> densities;   // per-branch densities
    double balance_residual = 0.0;   // |sum theta_i e_i| / sum theta_i
};

struct InterfaceGraph {
    std::vector<InterfaceArc> arcs;
    std::vector<InterfaceJunction> junctions;
    double eps = 0, eta = 0, probe_r = 0;
};

struct LevelSetStats {
    double level = 0;
    double total_length = 0;
    std::vector<double> component_lengths;
    double bound = 0;  // 8 E / (sqrt(lambda0) level^2)
    bool bound_ok = false;
};

struct TangentConeReport {
    std::vector<std::pair<double, double>> theta_min_per_r;  // (r, smallest admissible angle)
    bool pass = false;
};

// theta_hat(x) = e-mass of D(x, probe_r) / probe_r; nodes whose probe disk
// leaves the grid hold -1 (invalid).
ScalarField density_field(const DiagnosticSet& d, double probe_r);

// Thresholds theta_hat >= eta, thins to a one-cell skeleton, traces arcs,
// clusters branch pixels (crossing number >= 3) into junctions. Arc densities come from the
// zeta mass in a tube of radius probe_r around the junction-trimmed polyline.
InterfaceGraph extract_interface(const ScalarField& theta, const DiagnosticSet& d, double eta,
                                 double probe_r);

// Per-junction residuals |sum theta_i e_i| / sum theta_i.
std::vector<double> junction_balance(const InterfaceGraph& graph);

// Marching-squares length of {|u - sigma_i| = level}; level must sit below
// the 3 mu0 / 4 cap.
LevelSetStats level_set_stats(const Grid2D& g, const Potential& p, const WellConstants& wc,
                              int well_index, double level, double eps);

// Cone confinement around the fitted tangent at an arc point away from
// junctions: for each radius, reports the smallest admissible half-angle.
TangentConeReport tangent_cone_check(const InterfaceGraph& graph, double x0, double y0,
                                     const std::vector<double>& angles,
                                     const std::vector<double>& radii);

std::string interface_to_json(const InterfaceGraph& graph);

}  // namespace vecac
