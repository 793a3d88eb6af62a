#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlschwarz/experiment.hpp>

int main(int argc, char** argv) {
    CLI::App app{
        "Two-level nonlinear Schwarz solvers for the lid-driven cavity"};

    nlschwarz::ExperimentConfig cfg;
    std::vector<std::string> methods;
    std::vector<double> reynolds;
    int threads = 0;

    app.set_config("--config", "",
                   "Read options from a key=value file (flags override it)");
    app.add_option("--n", cfg.n, "Cells per side of the square mesh (even)");
    app.add_option("--re", cfg.reynolds, "Reynolds number");
    app.add_option("--re-list", reynolds,
                   "Comma-separated Reynolds sweep (overrides --re)")
        ->delimiter(',');
    app.add_option("--method", cfg.method,
                   "newton | nks | nl-additive | nl-hybrid");
    app.add_option("--method-list", methods,
                   "Comma-separated method sweep (overrides --method)")
        ->delimiter(',');
    app.add_option("--subdomains", cfg.subdomains,
                   "Blocks per side (must divide --n)");
    app.add_option("--overlap", cfg.overlap, "Overlap in element layers");
    app.add_option("--coarse", cfg.coarse,
                   "gdsw | rgdsw-a | rgdsw-b | none");
    app.add_option("--out", cfg.output_dir, "Output directory");
    app.add_flag("--vtk", cfg.write_vtk,
                 "Write per-iteration state and coarse-update VTK files");
    app.add_flag("--classify", cfg.write_classification,
                 "Write the dof classification of the decomposition");
    app.add_flag("!--closed-lid", cfg.leaky_lid,
                 "Keep the top corners fixed instead of moving with the lid");
    app.add_option("--threads", threads, "Worker threads for the block solves");

    app.add_option("--outer-tol", cfg.solver.outer_tol,
                   "Relative residual target of the outer loop");
    app.add_option("--inner-reduction", cfg.solver.inner_reduction,
                   "Relative reduction target of the inner loops");
    app.add_option("--gmres-tol", cfg.solver.gmres_tol,
                   "Relative GMRES tolerance");
    app.add_option("--max-outer", cfg.solver.max_outer, "Outer iteration cap");
    app.add_option("--max-inner", cfg.solver.max_inner,
                   "Inner iteration cap per correction");
    app.add_option("--max-gmres", cfg.solver.max_gmres,
                   "GMRES iteration cap");
    app.add_option("--armijo", cfg.solver.armijo,
                   "Sufficient-decrease constant of the line searches");
    app.add_option("--min-step", cfg.solver.min_step,
                   "Smallest line search step before accepting anyway");
    app.add_flag("--recycle,!--no-recycle", cfg.solver.recycle_basis,
                 "Reuse the coarse basis from the first linearization");
    app.add_flag("--restricted,!--no-restricted", cfg.solver.restricted,
                 "Recombine block updates through the partition of unity");
    app.add_flag("--projection,!--no-projection",
                 cfg.solver.pressure_projection,
                 "Zero-mean projection of block pressure updates");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (threads > 0)
        setenv("NLSCHWARZ_THREADS", std::to_string(threads).c_str(), 1);
    if (methods.empty()) methods = {cfg.method};
    if (reynolds.empty()) reynolds = {cfg.reynolds};
    return nlschwarz::run_sweep(cfg, methods, reynolds);
}
