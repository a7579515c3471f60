// Acceptance gate: runs the ten headline checks end to end and prints one
// PASS/FAIL line per criterion. Exit code is the number of failures.

#include "vecac/fields.hpp"
#include "vecac/identities.hpp"
#include "vecac/interface_graph.hpp"
#include "vecac/potential.hpp"
#include "vecac/profile1d.hpp"
#include "vecac/scenario.hpp"
#include "vecac/solver2d.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace vecac;
namespace fs = std::filesystem;

namespace {

int n_fail = 0;

void verdict(int num, const char* title, bool ok, const std::string& detail) {
    std::printf("criterion %2d [%s]: %s  (%s)\n", num, title, ok ? "PASS" : "FAIL",
                detail.c_str());
    if (!ok) ++n_fail;
}

double now_s() {
    using clk = std::chrono::steady_clock;
    static const clk::time_point t0 = clk::now();
    return std::chrono::duration<double>(clk::now() - t0).count();
}

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

const double c0 = 2.0 * std::sqrt(2.0) / 3.0;

// shared solves
struct Lab {
    Potential gl = builtin_potential("scalar_gl");
    Potential vec = builtin_potential("vector_gl_decoupled");
    Potential tri = builtin_potential("triple_well_equilateral");
    std::map<double, Grid2D> planar;  // eps -> solve at h = eps/4
    Grid2D cross4, cross8, triple4;

    Lab() {
        for (double eps : {0.1, 0.05, 0.025})
            planar.emplace(eps, solved(gl, SeedKind::Planar, eps, eps / 4, 1.0));
        cross4 = solved(vec, SeedKind::Cross, 0.05, 0.05 / 4, 1.0);
        cross8 = solved(vec, SeedKind::Cross, 0.05, 0.05 / 8, 1.0);
        triple4 = solved(tri, SeedKind::TripleJunction, 0.04, 0.04 / 4, 1.0);
    }
};

InterfaceGraph graph_of(const Grid2D& g, const Potential& p, double eps) {
    DiagnosticSet d = diagnostics(g, p, eps);
    const double probe = 4.0 * eps;
    ScalarField theta = density_field(d, probe);
    double tmax = 0.0;
    for (double v : theta.v) tmax = std::max(tmax, v);
    return extract_interface(theta, d, 0.5 * tmax, probe);
}

void c1_profile(const Lab& lab) {
    const double t0 = now_s();
    Profile1D prof = solve_profile_firstorder(lab.gl, 1.0, -1.0, 1.0, 10.0, 4096);
    double sup = 0.0;
    for (size_t i = 0; i < prof.s.size(); ++i)
        sup = std::max(sup, std::abs(prof.w[i] - std::tanh(prof.s[i] / std::sqrt(2.0))));
    const double disc = discrepancy_sup(prof, lab.gl);
    const double dt = now_s() - t0;
    std::ostringstream os;
    os << "sup_err=" << sup << " discrepancy=" << disc << " time=" << dt << "s";
    verdict(1, "1d profile accuracy", sup <= 1e-6 && disc <= 1e-6 && dt < 1.0, os.str());
}

void c2_transition_constant(const Lab& lab) {
    const double c0_quad = transition_energy(lab.gl, -1.0, 1.0, 2048);
    bool ok = std::abs(c0_quad - c0) <= 1e-4 * c0;
    std::ostringstream os;
    os << "c0=" << c0_quad << " exact=" << c0;
    for (double eps : {1.0, 0.1, 0.01}) {
        Profile1D prof = solve_profile_firstorder(lab.gl, eps, -1.0, 1.0, 10.0 * eps, 4096);
        const double e = profile_energy(prof, lab.gl);
        ok = ok && std::abs(e - c0) <= 1e-4 * c0;
        os << " E(eps=" << eps << ")=" << e;
    }
    verdict(2, "transition constant", ok, os.str());
}

void c3_residual_order(const Lab& lab) {
    const double t0 = now_s(), eps = 0.05;
    double res[2];
    int level = 0;
    for (double h : {eps / 4, eps / 8}) {
        const int n = (int)std::lround(2.0 / h) + 1;
        Grid2D g = seed(SeedKind::Cross, Grid2D::make(n, n, 2, h, -1.0, -1.0), lab.vec, eps);
        res[level++] = sup_residual(g, lab.vec, eps);
    }
    const double order = std::log2(res[0] / res[1]);
    const double dt = now_s() - t0;
    std::ostringstream os;
    os << "order=" << order << " time=" << dt << "s";
    verdict(3, "cross ansatz residual order", order >= 1.7 && order <= 2.3 && dt < 30.0,
            os.str());
}

void c4_disk_identity(const Lab& lab) {
    IdentityReport a = pohozaev_residual(lab.cross4, lab.vec, 0.05, 0.0, 0.0, 0.5);
    IdentityReport b = pohozaev_residual(lab.cross8, lab.vec, 0.05, 0.0, 0.0, 0.5);
    const double ratio = a.residual / b.residual;
    std::ostringstream os;
    os << "residual=" << a.residual << " refined=" << b.residual << " ratio=" << ratio;
    verdict(4, "disk potential identity", a.pass && a.residual <= 3e-2 && ratio >= 2.5,
            os.str());
}

void c5_stress(const Lab& lab) {
    auto fields = default_test_fields(0.0, 0.0, 0.7);
    IdentityReport pl =
        stress_divergence_residual(lab.planar.at(0.05), lab.gl, 0.05, fields);
    IdentityReport cr = stress_divergence_residual(lab.cross4, lab.vec, 0.05, fields);
    std::ostringstream os;
    os << "n_fields=" << fields.size() << " planar=" << pl.residual << " cross=" << cr.residual;
    verdict(5, "stress divergence", fields.size() == 5 && pl.residual <= 1e-2 &&
                                        cr.residual <= 1e-2,
            os.str());
}

void c6_zeta_monotone(const Lab& lab) {
    bool ok = true;
    double prev = 1e300;
    std::ostringstream os;
    for (double eps : {0.1, 0.05, 0.025}) {
        DiagnosticSet d = diagnostics(lab.planar.at(eps), lab.gl, eps);
        // eps-proportional window keeps the quadrature jitter scaling with eps
        RadialScan scan =
            radial_scan(d.zeta, 0.0, 0.0, 4.0 * eps, std::min(18.0 * eps, 0.85), 24);
        IdentityReport rep = zeta_monotonicity_report(scan, eps);
        ok = ok && rep.pass && rep.residual <= 0.1 * eps && rep.residual <= prev;
        prev = rep.residual;
        os << " delta(eps=" << eps << ")=" << rep.residual;
    }
    verdict(6, "zeta mass monotonicity", ok, os.str().substr(1));
}

void c7_discrepancy(const Lab& lab) {
    bool ok = true;
    double prev = 1e300;
    std::ostringstream os;
    for (double eps : {0.1, 0.05, 0.025}) {
        StripRect strip{-0.4, 0.4, -0.6, 0.6};
        IdentityReport rep =
            discrepancy_relation_check(lab.planar.at(eps), lab.gl, eps, strip, 0.0);
        ok = ok && rep.applicable && rep.pass && rep.residual <= 5e-2 && rep.residual <= prev;
        prev = rep.residual;
        os << " r(eps=" << eps << ")=" << rep.residual;
    }
    verdict(7, "discrepancy relation", ok, os.str().substr(1));
}

void c8_interface_geometry(const Lab& lab) {
    bool ok = true;
    std::ostringstream os;

    InterfaceGraph planar = graph_of(lab.planar.at(0.05), lab.gl, 0.05);
    if (planar.arcs.size() == 1 && planar.junctions.empty()) {
        const auto& pts = planar.arcs[0].points;
        double sxx = 0, sxy = 0, syy = 0, mx = 0, my = 0;
        for (auto& q : pts) {
            mx += q.first;
            my += q.second;
        }
        mx /= pts.size();
        my /= pts.size();
        for (auto& q : pts) {
            sxx += (q.first - mx) * (q.first - mx);
            sxy += (q.first - mx) * (q.second - my);
            syy += (q.second - my) * (q.second - my);
        }
        double ang = std::abs(0.5 * std::atan2(2.0 * sxy, sxx - syy) * 180.0 / M_PI);
        if (ang > 90.0) ang = 180.0 - ang;
        ok = ok && std::abs(ang - 90.0) <= 2.0;
        os << "planar_angle=" << ang;
    } else {
        ok = false;
        os << "planar_arcs=" << planar.arcs.size();
    }

    auto gaps = [](std::vector<double> ds) {
        std::sort(ds.begin(), ds.end());
        std::vector<double> out;
        for (size_t i = 0; i < ds.size(); ++i) {
            double g = (i + 1 < ds.size() ? ds[i + 1] : ds[0] + 2 * M_PI) - ds[i];
            out.push_back(g * 180.0 / M_PI);
        }
        return out;
    };

    InterfaceGraph cross = graph_of(lab.cross4, lab.vec, 0.05);
    if (cross.junctions.size() == 1 && cross.junctions[0].directions.size() == 4) {
        double worst = 0.0;
        for (double g : gaps(cross.junctions[0].directions))
            worst = std::max(worst, std::abs(g - 90.0));
        ok = ok && worst <= 3.0 && cross.junctions[0].balance_residual <= 0.05;
        os << " cross_gap_err=" << worst << " cross_balance="
           << cross.junctions[0].balance_residual;
    } else {
        ok = false;
        os << " cross_junctions=" << cross.junctions.size();
    }

    InterfaceGraph triple = graph_of(lab.triple4, lab.tri, 0.04);
    if (triple.junctions.size() == 1 && triple.junctions[0].directions.size() == 3) {
        double worst = 0.0;
        for (double g : gaps(triple.junctions[0].directions))
            worst = std::max(worst, std::abs(g - 120.0));
        ok = ok && worst <= 5.0 && triple.junctions[0].balance_residual <= 0.05;
        os << " triple_gap_err=" << worst << " triple_balance="
           << triple.junctions[0].balance_residual;
    } else {
        ok = false;
        os << " triple_junctions=" << triple.junctions.size();
    }

    verdict(8, "interface geometry", ok, os.str());
}

void c9_clearing_out(const Lab& lab) {
    WellConstants wc = derive_constants(lab.gl);
    bool ok = true;
    std::ostringstream os;
    double last_ratio = 0.0;
    for (double eps : {0.1, 0.05, 0.025}) {
        const Grid2D& g = lab.planar.at(eps);
        DiagnosticSet d = diagnostics(g, lab.gl, eps);
        last_ratio = ball_mass(d.e, 0.0, 0.0, 0.5) / 0.5;
        IdentityReport on = clearing_out_probe(g, lab.gl, wc, eps, 0.0, 0.0, 0.3, 0.3);
        IdentityReport off = clearing_out_probe(g, lab.gl, wc, eps, 0.55, 0.0, 0.3, 0.3);
        ok = ok && !on.applicable && off.applicable && off.pass;
        os << " E/r(eps=" << eps << ")=" << last_ratio;
    }
    // a centered transversal disk carries 2 c0 per unit radius in the limit
    ok = ok && std::abs(last_ratio - 2.0 * c0) <= 0.05 * 2.0 * c0;
    verdict(9, "clearing-out dichotomy", ok, os.str().substr(1) + " limit=" +
                                                 std::to_string(2.0 * c0));
}

void c10_determinism() {
    const auto tmp = fs::temp_directory_path();
    const std::string scn = (tmp / "vecac_det.scn").string();
    {
        std::ofstream out(scn);
        out << "name = det\n"
               "potential = scalar_gl\n"
               "seed = planar\n"
               "resolve = 4\n"
               "eps = 0.1 0.05\n";
    }
    Scenario sc = parse_scenario(scn);
    RunOptions opts;
    opts.threads = 1;
    const std::string a = (tmp / "vecac_det_a").string(), b = (tmp / "vecac_det_b").string();
    fs::remove_all(a);
    fs::remove_all(b);
    opts.out_override = a;
    const int ra = run_scenario(sc, opts);
    opts.out_override = b;
    const int rb = run_scenario(sc, opts);

    bool ok = ra == 0 && rb == 0;
    int n_files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        ++n_files;
        const fs::path other = fs::path(b) / entry.path().filename();
        if (!fs::exists(other)) {
            ok = false;
            continue;
        }
        std::ifstream fa(entry.path(), std::ios::binary), fb(other, std::ios::binary);
        std::string sa((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
        std::string sb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
        if (sa != sb || sa.empty()) ok = false;
    }
    ok = ok && n_files >= 8;
    std::ostringstream os;
    os << "exit=" << ra << "," << rb << " files_compared=" << n_files;
    verdict(10, "byte-identical reruns", ok, os.str());
    std::remove(scn.c_str());
    fs::remove_all(a);
    fs::remove_all(b);
}

}  // namespace

int main() {
    std::printf("acceptance gate\n");
    Lab lab;
    c1_profile(lab);
    c2_transition_constant(lab);
    c3_residual_order(lab);
    c4_disk_identity(lab);
    c5_stress(lab);
    c6_zeta_monotone(lab);
    c7_discrepancy(lab);
    c8_interface_geometry(lab);
    c9_clearing_out(lab);
    c10_determinism();
    std::printf("%d of 10 criteria passed\n", 10 - n_fail);
    return n_fail;
}
