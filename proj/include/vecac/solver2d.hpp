#pragma once

#include "vecac/grid.hpp"
#include "vecac/potential.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vecac {

struct SolveConfig {
    double eps = 0.1;
    double tol = 1e-8;              // target on eps^2 * sup residual
    int max_iters = 200000;
    double dt_safety = 0.9;
    double newton_switch_tol = 1e-2;  // eps^2 * sup residual level for Newton entry
};

struct IterationReport {
    int iters = 0;
    double sup_residual = 0.0;     // sup-norm PDE residual over interior nodes
    double scaled_residual = 0.0;  // eps^2 * sup_residual
    bool converged = false;
    bool diverged = false;
    std::vector<double> history;   // scaled residual per logged step
    std::string message;
};

// Pointwise |Delta u - eps^-2 grad V(u)| (euclidean over components),
// nx*ny scalars. Dirichlet boundary nodes report zero.
std::vector<double> residual_field(const Grid2D& g, const Potential& p, double eps);
double sup_residual(const Grid2D& g, const Potential& p, double eps);

// Discrete energy: edge-based gradient part plus nodal potential part.
double discrete_energy(const Grid2D& g, const Potential& p, double eps);

// Explicit Euler on u_t = Delta u - eps^-2 grad V(u) with
// dt = dt_safety * min(h^2/4, eps^2/(2 lambda_max)). Energy must be
// non-increasing; ten consecutive increases abort with diverged=true.
IterationReport gradient_flow(Grid2D& g, const Potential& p, const SolveConfig& cfg);

// Damped Newton, linearized operator -Delta + eps^-2 Hess V(u) applied
// matrix-free, inner solves by CG at relative tolerance 1e-2. Requires the
// scaled residual to already be below cfg.newton_switch_tol. Falls back to
// gradient-flow steps when the linearization shows negative curvature.
IterationReport newton_solve(Grid2D& g, const Potential& p, const SolveConfig& cfg);

enum class SeedKind { Planar, Cross, TripleJunction, Random, Constant };

struct SeedParams {
    double angle = 0.0;        // planar: interface normal angle
    double amplitude = 0.25;   // random: box margin around the wells
    uint64_t rng_seed = 0;
    int well_index = 0;        // constant
};

SeedKind parse_seed_kind(const std::string& name);

// Fills a field of the shape grid's geometry with the named initial datum.
// Dirichlet data is the seed trace on the boundary.
Grid2D seed(SeedKind kind, const Grid2D& shape, const Potential& p, double eps,
            const SeedParams& sp = {});

}  // namespace vecac
