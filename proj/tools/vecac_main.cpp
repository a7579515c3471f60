#include "vecac/profile1d.hpp"
#include "vecac/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>

int main(int argc, char** argv) {
    CLI::App app{"vecac: elliptic vectorial Allen-Cahn laboratory"};
    app.require_subcommand(1);

    std::string scn_path, out_dir;
    int threads = 1;
    bool allow_under = false;

    auto* run = app.add_subcommand("run", "run a scenario file");
    run->add_option("file", scn_path, "scenario file")->required();
    run->add_option("--out", out_dir, "output directory override");
    run->add_option("--threads", threads, "worker threads for sweep members");
    run->add_flag("--allow-underresolved", allow_under, "skip the eps >= 2h check");

    int levels = 2;
    auto* conv = app.add_subcommand("convergence", "exact-identity refinement study");
    conv->add_option("file", scn_path, "scenario file")->required();
    conv->add_option("--levels", levels, "refinement levels (>= 2)");
    conv->add_option("--out", out_dir, "output directory override");

    std::string prof_pot = "scalar_gl", prof_out = "profile.csv";
    double prof_eps = 1.0, prof_span = 10.0;
    int prof_n = 4096;
    auto* prof = app.add_subcommand("profile", "solve a 1D heteroclinic profile");
    prof->add_option("--potential", prof_pot, "scalar potential name");
    prof->add_option("--eps", prof_eps, "eps");
    prof->add_option("--span", prof_span, "half-width of the sample interval");
    prof->add_option("--n", prof_n, "sample count");
    prof->add_option("--out", prof_out, "CSV output path");

    CLI11_PARSE(app, argc, argv);

    try {
        vecac::RunOptions opts;
        opts.out_override = out_dir;
        opts.threads = threads;
        opts.allow_underresolved = allow_under;
        if (run->parsed()) {
            vecac::Scenario sc = vecac::parse_scenario(scn_path);
            return vecac::run_scenario(sc, opts);
        }
        if (conv->parsed()) {
            vecac::Scenario sc = vecac::parse_scenario(scn_path);
            return vecac::convergence_study(sc, levels, opts);
        }
        if (prof->parsed()) {
            vecac::Potential p = vecac::resolve_potential(prof_pot);
            if (p.k != 1) {
                std::fprintf(stderr, "profile subcommand needs a scalar potential\n");
                return 2;
            }
            auto prof1 = vecac::solve_profile_firstorder(p, prof_eps, p.vacuum[0][0],
                                                         p.vacuum[1][0], prof_span, prof_n);
            vecac::export_profile_csv(prof1, prof_out);
            return 0;
        }
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 2;
    }
    return 2;
}
