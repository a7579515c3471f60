#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vecac {

// Multi-well potential V: R^k -> R with analytic gradient and Hessian.
// The vacuum set lists the wells sigma_i (zeros of V).
struct Potential {
    int k = 1;
    std::string name;
    std::function<double(const double*)> eval;
    std::function<void(const double*, double*)> grad;        // k entries
    std::function<void(const double*, double*)> hess;        // k*k, row-major
    std::vector<std::vector<double>> vacuum;

    double value(const std::vector<double>& y) const { return eval(y.data()); }
    std::vector<double> gradient(const std::vector<double>& y) const {
        std::vector<double> g(k);
        grad(y.data(), g.data());
        return g;
    }
    std::vector<double> hessian(const std::vector<double>& y) const {
        std::vector<double> H(k * k);
        hess(y.data(), H.data());
        return H;
    }
};

// Structural constants attached to a validated potential.
struct WellConstants {
    double mu0 = 0;         // well neighbourhood radius
    double alpha0 = 0;      // potential floor outside the mu0-balls
    double lambda0 = 0;     // min over wells of smallest Hessian eigenvalue
    double lambda_max = 0;  // max over wells of largest Hessian eigenvalue
    double R0 = 0;          // max |sigma_i|
    double beta_inf = 0;    // quadratic growth constant for |y| >= 2 R0
    double alpha_inf = 0;   // empirical radial-growth constant
    double R_inf = 0;       // radius beyond which the radial growth was observed
    std::vector<double> lambda_minus;  // per-well smallest eigenvalue
    std::vector<double> lambda_plus;   // per-well largest eigenvalue
};

struct HypothesesReport {
    bool h1_ok = false;
    bool h2_ok = false;
    bool h3_ok = false;
    std::vector<double> eigen_min;   // per well
    std::vector<double> eigen_max;   // per well
    double h3_margin = 0;            // min of y.grad V / |y|^2 on sampled spheres
    double h3_sample_radius = 0;     // largest sampled radius
    std::string message;
};

struct NearestWell {
    std::vector<double> sigma;
    int index = -1;
    double bound = 0;  // sqrt(4 V(y) / lambda0), >= |y - sigma|
};

// Checks (H1)-(H3) by eigen-decomposition at the wells and sampling on
// spheres of growing radius. Throws std::invalid_argument on structural
// defects (well with V>0, coincident wells, degenerate Hessian).
HypothesesReport validate_hypotheses(const Potential& p, int sample_budget = 4096);

// Derives mu0 by dyadic bisection (largest admissible value <= d_min/4),
// then the dependent constants. Throws std::runtime_error if the bisection
// exhausts 60 iterations without an admissible value.
WellConstants derive_constants(const Potential& p);

// If V(y) < alpha0, returns the well within distance mu0 together with the
// bound sqrt(4 V(y)/lambda0); otherwise empty.
std::optional<NearestWell> nearest_well(const Potential& p, const WellConstants& wc,
                                        const std::vector<double>& y);

// Built-in potentials: "scalar_gl", "vector_gl_decoupled",
// "triple_well_equilateral". Throws on unknown name.
Potential builtin_potential(const std::string& name);

// Loads a potential from a structured text definition: a builtin base plus an
// optional scale factor and affine change of variable. No expression parsing.
//
//   [potential]
//   base  = scalar_gl
//   scale = 1.0
//   map   = 1 0 0 1      # k*k row-major, must be invertible
//   shift = 0 0          # k entries; V(y) = scale * V_base(A y + b)
Potential load_potential(const std::string& path);

// Resolves "name" either as a builtin or, with a "file:" prefix, from disk.
Potential resolve_potential(const std::string& spec);

}  // namespace vecac
