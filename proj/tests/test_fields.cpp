#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vecac/fields.hpp"
#include "vecac/potential.hpp"
#include "vecac/solver2d.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

using namespace vecac;

namespace {

Grid2D solved_planar(const Potential& p, double eps, double h, double L) {
    const int n = (int)std::lround(2.0 * L / h) + 1;
    Grid2D g = seed(SeedKind::Planar, Grid2D::make(n, n, 1, h, -L, -L), p, eps);
    SolveConfig cfg;
    cfg.eps = eps;
    SolveConfig flow = cfg;
    flow.tol = cfg.newton_switch_tol * 0.5;
    gradient_flow(g, p, flow);
    newton_solve(g, p, cfg);
    return g;
}

}  // namespace

TEST_CASE("diagnostic algebra holds by construction") {
    Potential p = builtin_potential("scalar_gl");
    Grid2D g = solved_planar(p, 0.1, 0.025, 1.0);
    DiagnosticSet d = diagnostics(g, p, 0.1);
    REQUIRE(d.e.v.size() == (size_t)g.nx * g.ny);
    for (int iy = 0; iy < g.ny; iy += 7)
        for (int ix = 0; ix < g.nx; ix += 7) {
            const double tr_mu = d.mu11.at(ix, iy) + d.mu22.at(ix, iy);
            CHECK(d.e.at(ix, iy) == doctest::Approx(0.5 * tr_mu + d.zeta.at(ix, iy)).epsilon(1e-12));
            CHECK(d.xi.at(ix, iy) ==
                  doctest::Approx(d.zeta.at(ix, iy) - 0.5 * tr_mu).epsilon(1e-12));
            CHECK(d.hopf_re.at(ix, iy) ==
                  doctest::Approx(d.mu11.at(ix, iy) - d.mu22.at(ix, iy)).epsilon(1e-12));
            CHECK(d.hopf_im.at(ix, iy) == doctest::Approx(-2.0 * d.mu12.at(ix, iy)).epsilon(1e-12));
            // stress trace is twice the discrepancy density
            CHECK(d.a11.at(ix, iy) + d.a22.at(ix, iy) ==
                  doctest::Approx(2.0 * d.zeta.at(ix, iy)).epsilon(1e-12));
        }
}

TEST_CASE("planar layer equipartitions") {
    Potential p = builtin_potential("scalar_gl");
    const double eps = 0.1;
    Grid2D g = solved_planar(p, eps, eps / 4, 1.0);
    DiagnosticSet d = diagnostics(g, p, eps);
    double e_sup = 0.0, xi_sup = 0.0, mu22_sup = 0.0, mu12_sup = 0.0;
    for (int iy = 1; iy + 1 < g.ny; ++iy)
        for (int ix = 1; ix + 1 < g.nx; ++ix) {
            e_sup = std::max(e_sup, d.e.at(ix, iy));
            xi_sup = std::max(xi_sup, std::abs(d.xi.at(ix, iy)));
            mu22_sup = std::max(mu22_sup, std::abs(d.mu22.at(ix, iy)));
            mu12_sup = std::max(mu12_sup, std::abs(d.mu12.at(ix, iy)));
        }
    CHECK(e_sup > 1.0);  // layer density concentrates at scale 1/eps
    // vertical layer: y-derivatives stay at the solver-tolerance level (the
    // Newton correction vanishes on the frozen boundary, so exact
    // y-invariance is not preserved), and xi vanishes up to discretization
    CHECK(mu22_sup <= 1e-4 * e_sup);
    CHECK(mu12_sup <= 5e-3 * e_sup);
    CHECK(xi_sup <= 2e-2 * e_sup);
}

TEST_CASE("ball mass of a constant field") {
    ScalarField f;
    f.nx = f.ny = 101;
    f.h = 0.02;
    f.ox = f.oy = -1.0;
    f.v.assign((size_t)f.nx * f.ny, 3.0);
    const double r = 0.55;
    CHECK(ball_mass(f, 0.0, 0.0, r) == doctest::Approx(3.0 * M_PI * r * r).epsilon(2e-3));
    CHECK_THROWS(ball_mass(f, 0.0, 0.0, 1.05));  // disk leaves the grid
}

TEST_CASE("radial scan and csv export") {
    Potential p = builtin_potential("scalar_gl");
    const double eps = 0.1;
    Grid2D g = solved_planar(p, eps, eps / 4, 1.0);
    DiagnosticSet d = diagnostics(g, p, eps);
    RadialScan scan = radial_scan(d.zeta, 0.0, 0.0, 0.4, 0.9, 12);
    REQUIRE(scan.r.size() == 12);
    CHECK(scan.r.front() == doctest::Approx(0.4));
    CHECK(scan.r.back() == doctest::Approx(0.9));
    for (size_t i = 0; i + 1 < scan.r.size(); ++i) CHECK(scan.r[i] < scan.r[i + 1]);
    for (double m : scan.mass_over_r) CHECK(m > 0.0);

    const char* path = "test_scan.tmp.csv";
    export_scan_csv(scan, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "r,mass_over_r");
    std::remove(path);
}

TEST_CASE("frame projection") {
    Potential p = builtin_potential("scalar_gl");
    const double eps = 0.1;
    Grid2D g = solved_planar(p, eps, eps / 4, 1.0);
    DiagnosticSet d = diagnostics(g, p, eps);

    FrameFields id = frame_project(d, 0.0);
    FrameFields quarter = frame_project(d, M_PI / 2);
    const int ix = g.nx / 2, iy = g.ny / 2;
    CHECK(id.mu_par_par.at(ix, iy) == doctest::Approx(d.mu11.at(ix, iy)).epsilon(1e-12));
    CHECK(quarter.mu_par_par.at(ix, iy) == doctest::Approx(d.mu22.at(ix, iy)).epsilon(1e-9));
    // trace is frame invariant
    FrameFields tilt = frame_project(d, 0.37);
    CHECK(tilt.mu_par_par.at(ix, iy) + tilt.mu_perp_perp.at(ix, iy) ==
          doctest::Approx(d.mu11.at(ix, iy) + d.mu22.at(ix, iy)).epsilon(1e-9));
}

TEST_CASE("bilinear interpolation") {
    ScalarField f;
    f.nx = f.ny = 5;
    f.h = 0.5;
    f.ox = f.oy = 0.0;
    f.v.assign(25, 0.0);
    for (int iy = 0; iy < 5; ++iy)
        for (int ix = 0; ix < 5; ++ix) f.at(ix, iy) = 2.0 * (ix * 0.5) + 3.0 * (iy * 0.5);
    // exact for affine data, clamped outside
    CHECK(bilinear(f, 0.75, 1.25) == doctest::Approx(2.0 * 0.75 + 3.0 * 1.25).epsilon(1e-12));
    CHECK(bilinear(f, -1.0, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
}
