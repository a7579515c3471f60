#pragma once

#include "vecac/potential.hpp"

#include <string>
#include <vector>

namespace vecac {

// One-dimensional heteroclinic connection between two wells of a scalar
// potential, sampled on a uniform grid over [-span, span].
struct Profile1D {
    double eps = 1.0;
    double span = 0.0;
    double sigma_minus = 0.0;
    double sigma_plus = 0.0;
    std::vector<double> s;
    std::vector<double> w;
};

// Integrates eps dw/ds = sqrt(2 V(w)) sign(sigma_plus - sigma_minus) by
// adaptive RK4 (step doubling) from the midpoint value at s = 0 outward.
// Scalar potentials only. Throws if the endpoints coincide, are not wells,
// or another well sits strictly between them.
Profile1D solve_profile_firstorder(const Potential& p, double eps, double sigma_minus,
                                   double sigma_plus, double span, int n);

// Max magnitude of the discrete derivative of V(w)/eps - eps w'^2/2.
double conservation_residual(const Profile1D& prof, const Potential& p);

// Sup of |V(w)/eps - eps w'^2/2| along the profile (zero for exact profiles).
double discrepancy_sup(const Profile1D& prof, const Potential& p);

// Energy of the profile, trapezoid rule on eps w'^2/2 + V(w)/eps.
double profile_energy(const Profile1D& prof, const Potential& p);

// Transition constant c0 = integral of sqrt(2 V(w)) dw between the wells,
// by composite Simpson quadrature with n panels. Cross-checked against the
// energy of a solved profile to 1e-4 relative; throws on disagreement.
double transition_energy(const Potential& p, double sigma_minus, double sigma_plus, int n);

// Two-column CSV: s, w.
void export_profile_csv(const Profile1D& prof, const std::string& path);

}  // namespace vecac
