#pragma once

#include "vecac/fields.hpp"
#include "vecac/grid.hpp"
#include "vecac/potential.hpp"

#include <functional>
#include <string>
#include <vector>

namespace vecac {

struct IdentityReport {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string scale_note;
    bool pass = false;
    bool applicable = true;
    std::string detail;
};

// Compactly supported test vector field with analytic Jacobian.
struct TestVectorField {
    std::string name;
    double cx = 0, cy = 0, R = 0;  // support disk
    std::function<void(double x, double y, double X[2], double J[4])> eval;
};

// Five defaults: two translations, dilation, rotation, shear, all cut off
// by the same smooth bump on D((cx,cy), R).
std::vector<TestVectorField> default_test_fields(double cx, double cy, double R);

// Disk-potential identity: (1/eps) int_D V = (r/4) oint (mu_tt - mu_rr + 2 zeta).
// Rejects fields whose scaled PDE residual exceeds conv_tol.
IdentityReport pohozaev_residual(const Grid2D& g, const Potential& p, double eps,
                                 double x0, double y0, double r, double tol = 3e-2,
                                 double conv_tol = 1e-3);

// (1/eps) int_D V <= (r/2) oint e, slack reported.
IdentityReport potential_bound_check(const Grid2D& g, const Potential& p, double eps,
                                     double x0, double y0, double r,
                                     double conv_tol = 1e-3);

// max over test fields of |int A_ij dX_i/dx_j| / int |A||grad X|.
IdentityReport stress_divergence_residual(const Grid2D& g, const Potential& p, double eps,
                                          const std::vector<TestVectorField>& testfields,
                                          double tol = 1e-2, double conv_tol = 1e-3);

// Largest downward violation of r -> mass/r on a zeta scan; pass iff <= C eps.
IdentityReport zeta_monotonicity_report(const RadialScan& scan, double eps, double C = 0.1);

struct StripRect {
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
};

// Integrated |2 zeta - (mu_perp_perp - mu_par_par)| and |mu_perp_par| over an
// axis-aligned strip crossing a straight interface with the given normal
// angle; both must stay below frac_tol times the strip energy.
IdentityReport discrepancy_relation_check(const Grid2D& g, const Potential& p, double eps,
                                          const StripRect& strip, double normal_angle,
                                          double frac_tol = 5e-2);

// Clearing-out dichotomy probe on D((x0,y0), r) at threshold eta.
IdentityReport clearing_out_probe(const Grid2D& g, const Potential& p, const WellConstants& wc,
                                  double eps, double x0, double y0, double r, double eta);

// d/dr(E/r) = r^-2 int xi + r^-1 oint mu_rr, finite differences across r_grid.
IdentityReport energy_ratio_identity(const Grid2D& g, const Potential& p, double eps,
                                     double x0, double y0, const std::vector<double>& r_grid,
                                     double tol = 5e-2, double conv_tol = 1e-3);

}  // namespace vecac
