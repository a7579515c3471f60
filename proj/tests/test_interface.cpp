#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vecac/fields.hpp"
#include "vecac/interface_graph.hpp"
#include "vecac/potential.hpp"
#include "vecac/solver2d.hpp"

#include <algorithm>
#include <cmath>

using namespace vecac;

namespace {

Grid2D solved(const Potential& p, SeedKind kind, double eps, double h, double L) {
    const int n = (int)std::lround(2.0 * L / h) + 1;
    Grid2D g = seed(kind, Grid2D::make(n, n, p.k, h, -L, -L), p, eps);
    SolveConfig cfg;
    cfg.eps = eps;
    cfg.tol = 1e-10;
    SolveConfig flow = cfg;
    flow.tol = cfg.newton_switch_tol * 0.5;
    gradient_flow(g, p, flow);
    newton_solve(g, p, cfg);
    return g;
}

InterfaceGraph graph_of(const Grid2D& g, const Potential& p, double eps, double probe) {
    DiagnosticSet d = diagnostics(g, p, eps);
    ScalarField theta = density_field(d, probe);
    double tmax = 0.0;
    for (double v : theta.v) tmax = std::max(tmax, v);
    return extract_interface(theta, d, 0.5 * tmax, probe);
}

// principal direction of a polyline, degrees in [0, 180)
double polyline_angle_deg(const std::vector<std::pair<double, double>>& pts) {
    double mx = 0, my = 0;
    for (auto& q : pts) {
        mx += q.first;
        my += q.second;
    }
    mx /= pts.size();
    my /= pts.size();
    double sxx = 0, sxy = 0, syy = 0;
    for (auto& q : pts) {
        sxx += (q.first - mx) * (q.first - mx);
        sxy += (q.first - mx) * (q.second - my);
        syy += (q.second - my) * (q.second - my);
    }
    double a = 0.5 * std::atan2(2.0 * sxy, sxx - syy) * 180.0 / M_PI;
    if (a < 0) a += 180.0;
    return a;
}

}  // namespace

TEST_CASE("density field marks the layer") {
    Potential p = builtin_potential("scalar_gl");
    const double eps = 0.05;
    Grid2D g = solved(p, SeedKind::Planar, eps, eps / 4, 1.0);
    DiagnosticSet d = diagnostics(g, p, eps);
    CHECK_THROWS(density_field(d, 2.0 * eps));  // probe must be >= 4 eps

    ScalarField theta = density_field(d, 4.0 * eps);
    // invalid margin near the boundary
    CHECK(theta.at(0, 0) == -1.0);
    double on_layer = theta.at(g.nx / 2, g.ny / 2);
    double off_layer = theta.at(7 * g.nx / 8, g.ny / 2);
    // a transversal disk of radius r collects about 2 r c0 of energy
    const double two_c0 = 4.0 * std::sqrt(2.0) / 3.0;
    CHECK(on_layer == doctest::Approx(two_c0).epsilon(0.05));
    CHECK(off_layer <= 0.05 * on_layer);
}

TEST_CASE("flat layer extracts as one straight arc") {
    Potential p = builtin_potential("scalar_gl");
    const double eps = 0.05;
    Grid2D g = solved(p, SeedKind::Planar, eps, eps / 4, 1.0);
    InterfaceGraph graph = graph_of(g, p, eps, 4.0 * eps);
    REQUIRE(graph.arcs.size() == 1);
    CHECK(graph.junctions.empty());
    // vertical interface
    CHECK(std::abs(polyline_angle_deg(graph.arcs[0].points) - 90.0) <= 2.0);
    // line density of zeta along a straight layer is c0/2
    CHECK(graph.arcs[0].density ==
          doctest::Approx(0.5 * 2.0 * std::sqrt(2.0) / 3.0).epsilon(0.15));
}

TEST_CASE("cross extracts four balanced branches") {
    Potential p = builtin_potential("vector_gl_decoupled");
    const double eps = 0.05;
    Grid2D g = solved(p, SeedKind::Cross, eps, eps / 4, 1.0);
    InterfaceGraph graph = graph_of(g, p, eps, 4.0 * eps);
    CHECK(graph.arcs.size() == 4);
    REQUIRE(graph.junctions.size() == 1);
    const InterfaceJunction& j = graph.junctions[0];
    CHECK(std::abs(j.x) <= 2.0 * eps);
    CHECK(std::abs(j.y) <= 2.0 * eps);
    REQUIRE(j.directions.size() == 4);
    std::vector<double> ds = j.directions;
    std::sort(ds.begin(), ds.end());
    for (size_t i = 0; i + 1 < ds.size(); ++i)
        CHECK(std::abs((ds[i + 1] - ds[i]) * 180.0 / M_PI - 90.0) <= 3.0);
    CHECK(j.balance_residual <= 0.05);
}

TEST_CASE("level set length obeys the energy bound") {
    Potential p = builtin_potential("scalar_gl");
    WellConstants wc = derive_constants(p);
    const double eps = 0.05;
    Grid2D g = solved(p, SeedKind::Planar, eps, eps / 4, 1.0);
    LevelSetStats stats = level_set_stats(g, p, wc, 1, 0.5 * wc.mu0, eps);
    CHECK(stats.total_length > 0.0);
    CHECK(stats.bound_ok);
    CHECK(stats.total_length <= stats.bound);
    CHECK_THROWS(level_set_stats(g, p, wc, 1, wc.mu0, eps));   // level cap
    CHECK_THROWS(level_set_stats(g, p, wc, 5, 0.5 * wc.mu0, eps));
}

TEST_CASE("tangent cone confinement for the flat layer") {
    Potential p = builtin_potential("scalar_gl");
    const double eps = 0.05;
    Grid2D g = solved(p, SeedKind::Planar, eps, eps / 4, 1.0);
    InterfaceGraph graph = graph_of(g, p, eps, 4.0 * eps);
    REQUIRE(graph.arcs.size() == 1);
    TangentConeReport rep =
        tangent_cone_check(graph, 0.0, 0.0, {5.0 * M_PI / 180.0}, {0.2, 0.4, 0.6});
    CHECK(rep.pass);
    REQUIRE(rep.theta_min_per_r.size() == 3);
    for (auto& [r, th] : rep.theta_min_per_r) CHECK(th <= 5.0 * M_PI / 180.0);
}

TEST_CASE("interface json serializes") {
    Potential p = builtin_potential("scalar_gl");
    const double eps = 0.1;
    Grid2D g = solved(p, SeedKind::Planar, eps, eps / 4, 1.0);
    InterfaceGraph graph = graph_of(g, p, eps, 4.0 * eps);
    std::string js = interface_to_json(graph);
    CHECK(js.find("\"arcs\"") != std::string::npos);
    CHECK(js.find("\"junctions\"") != std::string::npos);
}
