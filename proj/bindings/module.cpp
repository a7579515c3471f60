#include "vecac/fields.hpp"
#include "vecac/identities.hpp"
#include "vecac/interface_graph.hpp"
#include "vecac/potential.hpp"
#include "vecac/profile1d.hpp"
#include "vecac/scenario.hpp"
#include "vecac/solver2d.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace vecac;

PYBIND11_MODULE(_vecac, m) {
    m.doc() = "elliptic vectorial Allen-Cahn laboratory";

    py::class_<Potential>(m, "Potential")
        .def_readonly("k", &Potential::k)
        .def_readonly("name", &Potential::name)
        .def_readonly("vacuum", &Potential::vacuum)
        .def("value", &Potential::value)
        .def("gradient", &Potential::gradient)
        .def("hessian", &Potential::hessian);

    py::class_<WellConstants>(m, "WellConstants")
        .def_readonly("mu0", &WellConstants::mu0)
        .def_readonly("alpha0", &WellConstants::alpha0)
        .def_readonly("lambda0", &WellConstants::lambda0)
        .def_readonly("lambda_max", &WellConstants::lambda_max)
        .def_readonly("R0", &WellConstants::R0)
        .def_readonly("beta_inf", &WellConstants::beta_inf)
        .def_readonly("alpha_inf", &WellConstants::alpha_inf)
        .def_readonly("lambda_minus", &WellConstants::lambda_minus)
        .def_readonly("lambda_plus", &WellConstants::lambda_plus);

    py::class_<HypothesesReport>(m, "HypothesesReport")
        .def_readonly("h1_ok", &HypothesesReport::h1_ok)
        .def_readonly("h2_ok", &HypothesesReport::h2_ok)
        .def_readonly("h3_ok", &HypothesesReport::h3_ok)
        .def_readonly("eigen_min", &HypothesesReport::eigen_min)
        .def_readonly("eigen_max", &HypothesesReport::eigen_max)
        .def_readonly("h3_margin", &HypothesesReport::h3_margin);

    m.def("builtin_potential", &builtin_potential);
    m.def("load_potential", &load_potential);
    m.def("validate_hypotheses", &validate_hypotheses, py::arg("p"),
          py::arg("sample_budget") = 4096);
    m.def("derive_constants", &derive_constants);
    m.def("nearest_well", [](const Potential& p, const WellConstants& wc,
                             const std::vector<double>& y) -> py::object {
        auto r = nearest_well(p, wc, y);
        if (!r) return py::none();
        return py::make_tuple(r->sigma, r->index, r->bound);
    });

    py::class_<Profile1D>(m, "Profile1D")
        .def_readonly("eps", &Profile1D::eps)
        .def_readonly("s", &Profile1D::s)
        .def_readonly("w", &Profile1D::w)
        .def_readonly("sigma_minus", &Profile1D::sigma_minus)
        .def_readonly("sigma_plus", &Profile1D::sigma_plus);
    m.def("solve_profile_firstorder", &solve_profile_firstorder);
    m.def("conservation_residual", &conservation_residual);
    m.def("discrepancy_sup", &discrepancy_sup);
    m.def("profile_energy", &profile_energy);
    m.def("transition_energy", &transition_energy);

    py::class_<BC>(m, "BC")
        .def(py::init<>())
        .def_readwrite("periodic_x", &BC::periodic_x)
        .def_readwrite("periodic_y", &BC::periodic_y);

    py::class_<Grid2D>(m, "Grid2D")
        .def_readonly("nx", &Grid2D::nx)
        .def_readonly("ny", &Grid2D::ny)
        .def_readonly("k", &Grid2D::k)
        .def_readonly("h", &Grid2D::h)
        .def_readonly("ox", &Grid2D::ox)
        .def_readonly("oy", &Grid2D::oy)
        .def_readwrite("values", &Grid2D::values)
        .def_static("make",
                    [](int nx, int ny, int k, double h, double ox, double oy) {
                        return Grid2D::make(nx, ny, k, h, ox, oy);
                    });
    m.def("save_vac1", &save_vac1);
    m.def("load_vac1", [](const std::string& path) {
        LoadedField lf = load_vac1(path);
        return py::make_tuple(lf.grid, lf.eps);
    });

    py::class_<SolveConfig>(m, "SolveConfig")
        .def(py::init<>())
        .def_readwrite("eps", &SolveConfig::eps)
        .def_readwrite("tol", &SolveConfig::tol)
        .def_readwrite("max_iters", &SolveConfig::max_iters)
        .def_readwrite("dt_safety", &SolveConfig::dt_safety)
        .def_readwrite("newton_switch_tol", &SolveConfig::newton_switch_tol);

    py::class_<IterationReport>(m, "IterationReport")
        .def_readonly("iters", &IterationReport::iters)
        .def_readonly("sup_residual", &IterationReport::sup_residual)
        .def_readonly("scaled_residual", &IterationReport::scaled_residual)
        .def_readonly("converged", &IterationReport::converged)
        .def_readonly("diverged", &IterationReport::diverged)
        .def_readonly("history", &IterationReport::history)
        .def_readonly("message", &IterationReport::message);

    m.def("sup_residual", &sup_residual);
    m.def("residual_field", &residual_field);
    m.def("discrete_energy", &discrete_energy);
    m.def("gradient_flow", &gradient_flow);
    m.def("newton_solve", &newton_solve);
    m.def("seed", [](const std::string& kind, const Grid2D& shape, const Potential& p, double eps,
                     double angle, uint64_t rng_seed) {
              SeedParams sp;
              sp.angle = angle;
              sp.rng_seed = rng_seed;
              return seed(parse_seed_kind(kind), shape, p, eps, sp);
          },
          py::arg("kind"), py::arg("shape"), py::arg("p"), py::arg("eps"), py::arg("angle") = 0.0,
          py::arg("rng_seed") = 0);

    py::class_<ScalarField>(m, "ScalarField")
        .def_readonly("nx", &ScalarField::nx)
        .def_readonly("ny", &ScalarField::ny)
        .def_readonly("h", &ScalarField::h)
        .def_readonly("ox", &ScalarField::ox)
        .def_readonly("oy", &ScalarField::oy)
        .def_readonly("v", &ScalarField::v);

    py::class_<DiagnosticSet>(m, "DiagnosticSet")
        .def_readonly("k", &DiagnosticSet::k)
        .def_readonly("eps", &DiagnosticSet::eps)
        .def_readonly("e", &DiagnosticSet::e)
        .def_readonly("zeta", &DiagnosticSet::zeta)
        .def_readonly("xi", &DiagnosticSet::xi)
        .def_readonly("mu11", &DiagnosticSet::mu11)
        .def_readonly("mu22", &DiagnosticSet::mu22)
        .def_readonly("mu12", &DiagnosticSet::mu12)
        .def_readonly("hopf_re", &DiagnosticSet::hopf_re)
        .def_readonly("hopf_im", &DiagnosticSet::hopf_im);
    m.def("diagnostics", &diagnostics);
    m.def("ball_mass", &ball_mass);

    py::class_<RadialScan>(m, "RadialScan")
        .def_readonly("r", &RadialScan::r)
        .def_readonly("mass_over_r", &RadialScan::mass_over_r);
    m.def("radial_scan", &radial_scan);

    py::class_<IdentityReport>(m, "IdentityReport")
        .def_readonly("name", &IdentityReport::name)
        .def_readonly("residual", &IdentityReport::residual)
        .def_readonly("tolerance", &IdentityReport::tolerance)
        .def_readonly("pass_", &IdentityReport::pass)
        .def_readonly("applicable", &IdentityReport::applicable)
        .def_readonly("detail", &IdentityReport::detail);
    m.def("pohozaev_residual", &pohozaev_residual, py::arg("g"), py::arg("p"), py::arg("eps"),
          py::arg("x0"), py::arg("y0"), py::arg("r"), py::arg("tol") = 3e-2,
          py::arg("conv_tol") = 1e-3);
    m.def("stress_divergence_residual",
          [](const Grid2D& g, const Potential& p, double eps, double cx, double cy, double R) {
              return stress_divergence_residual(g, p, eps, default_test_fields(cx, cy, R));
          });
    m.def("zeta_monotonicity_report", &zeta_monotonicity_report, py::arg("scan"), py::arg("eps"),
          py::arg("C") = 0.1);

    py::class_<InterfaceGraph>(m, "InterfaceGraph")
        .def_readonly("eps", &InterfaceGraph::eps)
        .def_readonly("eta", &InterfaceGraph::eta)
        .def_readonly("probe_r", &InterfaceGraph::probe_r)
        .def("n_arcs", [](const InterfaceGraph& g) { return g.arcs.size(); })
        .def("n_junctions", [](const InterfaceGraph& g) { return g.junctions.size(); })
        .def("to_json", &interface_to_json);
    m.def("density_field", &density_field);
    m.def("extract_interface", &extract_interface);
    m.def("junction_balance", &junction_balance);

    m.def("run_scenario_file", [](const std::string& path, const std::string& out, int threads) {
              Scenario sc = parse_scenario(path);
              RunOptions opts;
              opts.out_override = out;
              opts.threads = threads;
              return run_scenario(sc, opts);
          },
          py::arg("path"), py::arg("out") = std::string(), py::arg("threads") = 1);
}
