#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vecac/potential.hpp"
#include "vecac/solver2d.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

using namespace vecac;

namespace {

Grid2D square(int n, double h, double L, int k = 1) {
    return Grid2D::make(n, n, k, h, -L, -L);
}

}  // namespace

TEST_CASE("seed kinds parse") {
    CHECK(parse_seed_kind("planar") == SeedKind::Planar);
    CHECK(parse_seed_kind("cross") == SeedKind::Cross);
    CHECK(parse_seed_kind("triple_junction") == SeedKind::TripleJunction);
    CHECK_THROWS(parse_seed_kind("swirl"));
}

TEST_CASE("cross seed is close to the product solution") {
    Potential p = builtin_potential("vector_gl_decoupled");
    const double eps = 0.05, h = eps / 4;
    const int n = (int)std::lround(2.0 / h) + 1;
    Grid2D g = seed(SeedKind::Cross, square(n, h, 1.0, 2), p, eps);
    CHECK(g.k == 2);
    // tanh(x) tanh(y) ansatz solves the decoupled system exactly
    const double sr = eps * eps * sup_residual(g, p, eps);
    CHECK(sr < 1e-2);
}

TEST_CASE("gradient flow then Newton reaches machine residual") {
    Potential p = builtin_potential("vector_gl_decoupled");
    const double eps = 0.05, h = eps / 4;
    const int n = (int)std::lround(2.0 / h) + 1;
    Grid2D g = seed(SeedKind::Cross, square(n, h, 1.0, 2), p, eps);

    SolveConfig cfg;
    cfg.eps = eps;
    cfg.tol = 1e-10;
    SolveConfig flow = cfg;
    flow.tol = cfg.newton_switch_tol * 0.5;

    const double e0 = discrete_energy(g, p, eps);
    IterationReport fr = gradient_flow(g, p, flow);
    CHECK(!fr.diverged);
    CHECK(discrete_energy(g, p, eps) <= e0 + 1e-12);

    IterationReport nr = newton_solve(g, p, cfg);
    CHECK(nr.converged);
    CHECK(nr.scaled_residual <= 1e-9);
    CHECK(discrete_energy(g, p, eps) > 0.0);
}

TEST_CASE("newton requires a warm start") {
    Potential p = builtin_potential("scalar_gl");
    const int n = 33;
    Grid2D g = square(n, 1.0 / 16, 1.0);
    SeedParams sp;
    sp.rng_seed = 7;
    g = seed(SeedKind::Random, g, p, 0.1, sp);
    SolveConfig cfg;
    cfg.eps = 0.1;
    CHECK_THROWS(newton_solve(g, p, cfg));
}

TEST_CASE("solve is deterministic") {
    Potential p = builtin_potential("vector_gl_decoupled");
    const double eps = 0.1, h = eps / 4;
    const int n = (int)std::lround(2.0 / h) + 1;
    auto run = [&]() {
        Grid2D g = seed(SeedKind::Cross, square(n, h, 1.0, 2), p, eps);
        SolveConfig cfg;
        cfg.eps = eps;
        SolveConfig flow = cfg;
        flow.tol = cfg.newton_switch_tol * 0.5;
        gradient_flow(g, p, flow);
        newton_solve(g, p, cfg);
        return g;
    };
    Grid2D a = run(), b = run();
    REQUIRE(a.values.size() == b.values.size());
    CHECK(std::memcmp(a.values.data(), b.values.data(), a.values.size() * sizeof(double)) == 0);
}

TEST_CASE("vac1 round trip") {
    Potential p = builtin_potential("scalar_gl");
    Grid2D g = seed(SeedKind::Planar, square(17, 0.125, 1.0), p, 0.3);
    const char* path = "test_grid.tmp.vac1";
    save_vac1(g, 0.3, path);
    LoadedField lf = load_vac1(path);
    CHECK(lf.eps == 0.3);
    CHECK(lf.grid.nx == g.nx);
    CHECK(lf.grid.ny == g.ny);
    CHECK(lf.grid.k == g.k);
    CHECK(lf.grid.h == g.h);
    REQUIRE(lf.grid.values.size() == g.values.size());
    CHECK(std::memcmp(lf.grid.values.data(), g.values.data(),
                      g.values.size() * sizeof(double)) == 0);
    std::remove(path);
}

TEST_CASE("periodic planar pair relaxes") {
    // two opposite layers so the periodic field is compatible
    Potential p = builtin_potential("scalar_gl");
    const double eps = 0.1, h = eps / 4;
    const int n = (int)std::lround(2.0 / h);
    BC bc;
    bc.kind = BCKind::Periodic;
    Grid2D g = Grid2D::make(n, n, 1, h, -1.0, -1.0, bc);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const double x = g.x(ix);
            g.at(ix, iy)[0] = std::tanh((0.5 - std::abs(x)) / (std::sqrt(2.0) * eps));
        }
    SolveConfig cfg;
    cfg.eps = eps;
    cfg.tol = 1e-6;
    cfg.max_iters = 50000;
    IterationReport fr = gradient_flow(g, p, cfg);
    CHECK(!fr.diverged);
    CHECK(fr.scaled_residual < 1e-2);
}
