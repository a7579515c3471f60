#include "vecac/scenario.hpp"

#include "vecac/fields.hpp"
#include "vecac/interface_graph.hpp"
#include "vecac/profile1d.hpp"
#include "vecac/solver2d.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace vecac {

namespace {

std::string eps_tag(double eps) {
    std::ostringstream os;
    os << eps;
    return os.str();
}

nlohmann::json report_json(const IdentityReport& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["residual"] = r.residual;
    j["tolerance"] = r.tolerance;
    j["scale_note"] = r.scale_note;
    j["pass"] = r.pass;
    j["applicable"] = r.applicable;
    j["detail"] = r.detail;
    return j;
}

bool wants(const Scenario& sc, const std::string& check) {
    if (sc.checks.empty()) return true;
    return std::find(sc.checks.begin(), sc.checks.end(), check) != sc.checks.end();
}

struct MemberResult {
    int exit_code = 0;
    std::string message;
};

// solve one sweep member and run its checks; all artifacts carry the eps tag
MemberResult run_member(const Scenario& sc, const Potential& p, const WellConstants& wc,
                        double eps, const std::string& out_dir) {
    MemberResult mr;
    double h;
    int nx, ny;
    if (sc.resolve > 0) {
        h = eps / sc.resolve;
        nx = (int)std::lround((sc.x1 - sc.x0) / h) + 1;
        ny = (int)std::lround((sc.y1 - sc.y0) / h) + 1;
    } else {
        nx = sc.nx;
        ny = sc.ny;
        h = (sc.x1 - sc.x0) / (nx - 1);
    }
    BC bc;
    bc.kind = sc.bc == "periodic" ? BCKind::Periodic : BCKind::Dirichlet;
    Grid2D shape = Grid2D::make(nx, ny, 1, h, sc.x0, sc.y0, bc);

    SeedParams sp;
    sp.angle = sc.angle;
    sp.amplitude = sc.amplitude;
    sp.well_index = sc.well_index;
    sp.rng_seed = sc.rng_seed;
    if (const char* env = std::getenv("VECAC_SEED")) sp.rng_seed = std::strtoull(env, nullptr, 10);

    SeedKind kind = parse_seed_kind(sc.seed_kind);
    Grid2D g = seed(kind, shape, p, eps, sp);

    SolveConfig cfg;
    cfg.eps = eps;
    cfg.tol = sc.solver_tol;
    cfg.max_iters = sc.max_iters;

    SolveConfig flow = cfg;
    flow.tol = cfg.newton_switch_tol * 0.5;
    IterationReport fr = gradient_flow(g, p, flow);
    if (fr.diverged) {
        mr.exit_code = 3;
        mr.message = "gradient flow diverged: " + fr.message;
        return mr;
    }
    IterationReport nr;
    if (fr.scaled_residual <= cfg.newton_switch_tol) {
        nr = newton_solve(g, p, cfg);
    } else {
        nr = fr;
    }
    if (nr.scaled_residual > 1e-3) {
        mr.exit_code = 3;
        mr.message = "solver did not reach a usable residual";
        return mr;
    }

    const std::string tag = eps_tag(eps);
    save_vac1(g, eps, out_dir + "/u_eps" + tag + ".vac1");
    DiagnosticSet d = diagnostics(g, p, eps);
    save_field_vac1(d.e, eps, out_dir + "/e_eps" + tag + ".vac1");

    const double cx = 0.5 * (sc.x0 + sc.x1), cy = 0.5 * (sc.y0 + sc.y1);
    const double hw = 0.5 * (sc.x1 - sc.x0), hh = 0.5 * (sc.y1 - sc.y0);
    const double safe = std::min(hw, hh) - 3.0 * h;

    std::vector<IdentityReport> reports;
    {
        IdentityReport solver_rep;
        solver_rep.name = "solver";
        solver_rep.residual = nr.scaled_residual;
        solver_rep.tolerance = 1e-3;
        solver_rep.scale_note = "eps^2 sup residual";
        solver_rep.pass = true;
        std::ostringstream os;
        os << "flow_iters=" << fr.iters << " newton_iters=" << nr.iters
           << " scaled_residual=" << nr.scaled_residual;
        solver_rep.detail = os.str();
        reports.push_back(solver_rep);
    }

    const double r_mid = 0.5 * safe;
    if (wants(sc, "pohozaev"))
        reports.push_back(pohozaev_residual(g, p, eps, cx, cy, r_mid));
    if (wants(sc, "potential_bound"))
        reports.push_back(potential_bound_check(g, p, eps, cx, cy, r_mid));
    if (wants(sc, "stress"))
        reports.push_back(
            stress_divergence_residual(g, p, eps, default_test_fields(cx, cy, 0.7 * safe)));

    RadialScan scan;
    const double r_lo = std::max(4.0 * eps, 2.5 * h);
    const double r_hi = 0.95 * safe;
    if (r_hi > r_lo * 1.1) {
        scan = radial_scan(d.zeta, cx, cy, r_lo, r_hi, 24);
        export_scan_csv(scan, out_dir + "/zeta_scan_eps" + tag + ".csv");
        if (wants(sc, "zeta_monotonicity"))
            reports.push_back(zeta_monotonicity_report(scan, eps));
    }

    if (wants(sc, "discrepancy") && kind == SeedKind::Planar) {
        StripRect strip;
        const double w = std::min(0.4 * hw, std::max(10.0 * eps, 0.25 * hw));
        strip.x0 = cx - w;
        strip.x1 = cx + w;
        strip.y0 = cy - 0.6 * hh;
        strip.y1 = cy + 0.6 * hh;
        reports.push_back(discrepancy_relation_check(g, p, eps, strip, sc.angle));
    }

    if (wants(sc, "clearing_out")) {
        const double r_co = std::min(0.3 * safe, std::max(10.0 * eps, 0.15 * safe));
        IdentityReport on = clearing_out_probe(g, p, wc, eps, cx, cy, r_co, sc.eta);
        on.name = "clearing_out_interface";
        reports.push_back(on);
        // the pure-phase probe sits on a well-sector bisector; for the cross
        // the +x axis is itself an interface, so shift off-axis there
        double px = cx + 0.55 * hw, py = cy;
        if (kind == SeedKind::Cross) py = cy + 0.4 * hh;
        const double r_off = std::min({0.2 * hw, px - 8.0 * eps - cx > 0 ? 0.2 * hw : 0.2 * hw,
                                       (sc.x1 - px) - 3.0 * h});
        IdentityReport off = clearing_out_probe(g, p, wc, eps, px, py, std::max(r_off, eps), sc.eta);
        off.name = "clearing_out_interior";
        reports.push_back(off);
    }

    if (wants(sc, "energy_ratio")) {
        std::vector<double> r_grid;
        for (double r = std::max(4.0 * eps, 0.4 * safe); r <= 0.9 * safe && r_grid.size() < 9;
             r += 4.0 * h)
            r_grid.push_back(r);
        if (r_grid.size() >= 2)
            reports.push_back(energy_ratio_identity(g, p, eps, cx, cy, r_grid));
    }

    if (wants(sc, "interface")) {
        // tight probe radius: wider disks blend neighbouring interfaces near a
        // junction and bend the extracted skeleton toward their bisector
        const double probe = 4.0 * eps;
        ScalarField theta = density_field(d, probe);
        double theta_max = 0.0;
        for (double v : theta.v) theta_max = std::max(theta_max, v);
        InterfaceGraph graph = extract_interface(theta, d, 0.5 * theta_max, probe);
        std::ofstream out(out_dir + "/interface_eps" + tag + ".json");
        out << interface_to_json(graph) << "\n";
        IdentityReport rep;
        rep.name = "interface";
        rep.scale_note = "junction balance";
        rep.tolerance = 0.05;
        double worst = 0.0;
        for (double b : junction_balance(graph)) worst = std::max(worst, b);
        rep.residual = worst;
        rep.pass = graph.junctions.empty() || worst <= rep.tolerance;
        std::ostringstream os;
        os << "arcs=" << graph.arcs.size() << " junctions=" << graph.junctions.size();
        rep.detail = os.str();
        reports.push_back(rep);
    }

    std::ofstream out(out_dir + "/reports_eps" + tag + ".json");
    out << reports_to_json(reports) << "\n";

    for (const auto& r : reports)
        if (r.applicable && !r.pass) mr.exit_code = std::max(mr.exit_code, 1);
    return mr;
}

}  // namespace

Scenario parse_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    Scenario sc;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto trim = [](std::string& s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
        };
        trim(line);
        if (line.empty() || line.front() == '[') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        trim(key);
        trim(val);
        try {
            if (key == "name") sc.name = val;
            else if (key == "potential") sc.potential_spec = val;
            else if (key == "seed") sc.seed_kind = val;
            else if (key == "bc") sc.bc = val;
            else if (key == "out") sc.out_dir = val;
            else if (key == "x0") sc.x0 = std::stod(val);
            else if (key == "x1") sc.x1 = std::stod(val);
            else if (key == "y0") sc.y0 = std::stod(val);
            else if (key == "y1") sc.y1 = std::stod(val);
            else if (key == "nx") sc.nx = std::stoi(val);
            else if (key == "ny") sc.ny = std::stoi(val);
            else if (key == "resolve") sc.resolve = std::stod(val);
            else if (key == "angle") sc.angle = std::stod(val);
            else if (key == "amplitude") sc.amplitude = std::stod(val);
            else if (key == "well_index") sc.well_index = std::stoi(val);
            else if (key == "rng_seed") sc.rng_seed = std::stoull(val);
            else if (key == "eta") sc.eta = std::stod(val);
            else if (key == "solver_tol") sc.solver_tol = std::stod(val);
            else if (key == "max_iters") sc.max_iters = std::stoi(val);
            else if (key == "allow_underresolved") sc.allow_underresolved = val == "true";
            else if (key == "eps") {
                std::istringstream iss(val);
                double e;
                while (iss >> e) sc.eps_list.push_back(e);
            } else if (key == "checks") {
                std::istringstream iss(val);
                std::string c;
                while (iss >> c) sc.checks.push_back(c);
            } else {
                throw std::runtime_error("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad value for " + key);
        }
    }
    if (sc.eps_list.empty()) throw std::runtime_error(path + ": no eps sweep given");
    if (sc.resolve <= 0 && (sc.nx < 8 || sc.ny < 8))
        throw std::runtime_error(path + ": give either resolve or nx/ny");
    return sc;
}

int run_scenario(const Scenario& sc, const RunOptions& opts) {
    const std::string out_dir = opts.out_override.empty() ? sc.out_dir : opts.out_override;
    std::filesystem::create_directories(out_dir);

    // resolution sanity before any work
    for (double eps : sc.eps_list) {
        double h = sc.resolve > 0 ? eps / sc.resolve : (sc.x1 - sc.x0) / (sc.nx - 1);
        if (eps < 2.0 * h && !sc.allow_underresolved && !opts.allow_underresolved) {
            std::fprintf(stderr, "eps=%g under-resolved (h=%g); pass --allow-underresolved\n", eps,
                         h);
            return 2;
        }
    }

    Potential p;
    WellConstants wc;
    try {
        p = resolve_potential(sc.potential_spec);
        wc = derive_constants(p);
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "config error: %s\n", ex.what());
        return 2;
    }

    std::vector<MemberResult> results(sc.eps_list.size());
    auto work = [&](size_t i) {
        try {
            results[i] = run_member(sc, p, wc, sc.eps_list[i], out_dir);
        } catch (const std::exception& ex) {
            results[i].exit_code = 2;
            results[i].message = ex.what();
        }
    };
    if (opts.threads > 1) {
        std::vector<std::thread> pool;
        for (size_t i = 0; i < sc.eps_list.size(); ++i) pool.emplace_back(work, i);
        for (auto& t : pool) t.join();
    } else {
        for (size_t i = 0; i < sc.eps_list.size(); ++i) work(i);
    }

    int code = 0;
    for (size_t i = 0; i < results.size(); ++i) {
        if (!results[i].message.empty())
            std::fprintf(stderr, "eps=%g: %s\n", sc.eps_list[i], results[i].message.c_str());
        code = std::max(code, results[i].exit_code);
    }
    return code;
}

int convergence_study(const Scenario& sc, int levels, const RunOptions& opts) {
    if (levels < 2) {
        std::fprintf(stderr, "convergence study needs at least 2 levels\n");
        return 2;
    }
    const std::string out_dir = opts.out_override.empty() ? sc.out_dir : opts.out_override;
    std::filesystem::create_directories(out_dir);

    Potential p = resolve_potential(sc.potential_spec);
    const double eps = sc.eps_list.front();
    const double base_resolve = sc.resolve > 0 ? sc.resolve : 4.0;
    const double cx = 0.5 * (sc.x0 + sc.x1), cy = 0.5 * (sc.y0 + sc.y1);
    const double hw = 0.5 * (sc.x1 - sc.x0), hh = 0.5 * (sc.y1 - sc.y0);

    std::vector<double> hs, poho, stress, eratio;
    for (int lvl = 0; lvl < levels; ++lvl) {
        Scenario m = sc;
        m.resolve = base_resolve * std::pow(2.0, lvl);
        const double h = eps / m.resolve;
        const int nx = (int)std::lround((m.x1 - m.x0) / h) + 1;
        const int ny = (int)std::lround((m.y1 - m.y0) / h) + 1;
        BC bc;
        bc.kind = m.bc == "periodic" ? BCKind::Periodic : BCKind::Dirichlet;
        Grid2D shape = Grid2D::make(nx, ny, 1, h, m.x0, m.y0, bc);
        SeedParams sp;
        sp.angle = m.angle;
        Grid2D g = seed(parse_seed_kind(m.seed_kind), shape, p, eps, sp);
        SolveConfig cfg;
        cfg.eps = eps;
        cfg.tol = m.solver_tol;
        cfg.max_iters = m.max_iters;
        SolveConfig flow = cfg;
        flow.tol = cfg.newton_switch_tol * 0.5;
        IterationReport fr = gradient_flow(g, p, flow);
        if (fr.diverged) return 3;
        newton_solve(g, p, cfg);

        const double safe = std::min(hw, hh) - 3.0 * h;
        hs.push_back(h);
        poho.push_back(pohozaev_residual(g, p, eps, cx, cy, 0.5 * safe).residual);
        stress.push_back(
            stress_divergence_residual(g, p, eps, default_test_fields(cx, cy, 0.7 * safe))
                .residual);
        std::vector<double> r_grid;
        for (double r = std::max(4.0 * eps, 0.4 * safe); r <= 0.9 * safe && r_grid.size() < 9;
             r += 4.0 * h)
            r_grid.push_back(r);
        eratio.push_back(r_grid.size() >= 2
                             ? energy_ratio_identity(g, p, eps, cx, cy, r_grid).residual
                             : 0.0);
    }

    std::ofstream out(out_dir + "/convergence.csv");
    out.precision(17);
    out << "h,pohozaev,stress,energy_ratio\n";
    for (size_t i = 0; i < hs.size(); ++i)
        out << hs[i] << "," << poho[i] << "," << stress[i] << "," << eratio[i] << "\n";
    out << "# observed orders (log2 of successive ratios)\n";
    for (size_t i = 0; i + 1 < hs.size(); ++i) {
        auto order = [](double a, double b) {
            return (a > 0 && b > 0) ? std::log2(a / b) : 0.0;
        };
        out << "order," << order(poho[i], poho[i + 1]) << "," << order(stress[i], stress[i + 1])
            << "," << order(eratio[i], eratio[i + 1]) << "\n";
    }
    return 0;
}

std::string reports_to_json(const std::vector<IdentityReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(report_json(r));
    return arr.dump(2);
}

}  // namespace vecac
