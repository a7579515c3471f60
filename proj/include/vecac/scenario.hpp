#pragma once

#include "vecac/identities.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vecac {

// Flat key=value scenario description ([section] headers are cosmetic).
struct Scenario {
    std::string name = "scenario";
    std::string potential_spec = "scalar_gl";
    std::string seed_kind = "planar";
    std::string bc = "dirichlet";
    std::string out_dir = "out";
    double x0 = -1, y0 = -1, x1 = 1, y1 = 1;
    int nx = 0, ny = 0;        // fixed grid, or
    double resolve = 0;        // cells per eps (h = eps / resolve), per member
    std::vector<double> eps_list;
    std::vector<std::string> checks;
    double angle = 0.0;
    double amplitude = 0.25;
    int well_index = 0;
    uint64_t rng_seed = 0;
    double eta = 0.3;          // clearing-out threshold
    double solver_tol = 1e-8;
    int max_iters = 20000;
    bool allow_underresolved = false;
};

struct RunOptions {
    std::string out_override;
    int threads = 1;
    bool allow_underresolved = false;
};

Scenario parse_scenario(const std::string& path);

// Runs every sweep member, writes VAC1 dumps, CSV scans, JSON reports.
// 0 = all applicable checks passed, 1 = check failure, 2 = bad config,
// 3 = solver divergence.
int run_scenario(const Scenario& sc, const RunOptions& opts);

// Reruns the exact-identity checks across grid refinements and writes a
// residual-vs-h CSV with observed orders. Needs >= 2 levels.
int convergence_study(const Scenario& sc, int levels, const RunOptions& opts);

std::string reports_to_json(const std::vector<IdentityReport>& reports);

}  // namespace vecac
