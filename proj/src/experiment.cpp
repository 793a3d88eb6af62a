#include "nlschwarz/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "nlschwarz/schwarz.hpp"
#include "nlschwarz/vtk.hpp"

namespace fs = std::filesystem;

namespace nlschwarz {

int status_exit_code(SolveStatus status) {
    switch (status) {
        case SolveStatus::Converged: return 0;
        case SolveStatus::MaxOuterReached: return 2;
        case SolveStatus::InnerDivergence: return 3;
        case SolveStatus::NonFinite: return 4;
    }
    return 4;
}

std::optional<CoarseSpaceType> parse_coarse_space(const std::string& name) {
    if (name == "gdsw") return CoarseSpaceType::GDSW;
    if (name == "rgdsw-a") return CoarseSpaceType::RGDSW_A;
    if (name == "rgdsw-b") return CoarseSpaceType::RGDSW_B;
    return std::nullopt;
}

namespace {

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string run_dir_name(const std::string& method, double re) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", re);
    return method + "_re" + buf;
}

void write_run_csv(const fs::path& path, const SolveResult& result) {
    std::ofstream out(path);
    out << "outer_iter,abs_residual,rel_residual,inner_min,inner_max,"
           "inner_avg,coarse_iters,gmres_iters,step_length\n";
    for (const IterationLog& it : result.iterations) {
        out << it.outer_iter << ',' << format_double(it.abs_residual) << ','
            << format_double(it.rel_residual) << ',' << it.inner_min << ','
            << it.inner_max << ',' << format_double(it.inner_avg) << ','
            << it.coarse_iters << ',' << it.gmres_iters << ','
            << format_double(it.step_length) << '\n';
    }
}

void append_summary(const fs::path& path, const ExperimentConfig& cfg,
                    const std::string& method, double re,
                    const SolveResult& result) {
    const bool fresh = !fs::exists(path);
    std::ofstream out(path, std::ios::app);
    if (fresh)
        out << "method,reynolds,n,subdomains,overlap,coarse,recycle,"
               "restricted,projection,status,outer_iters,inner_min,inner_max,"
               "inner_avg,coarse_total,gmres_avg,final_rel_residual\n";
    long inner_min = 0, inner_max = 0;
    double inner_avg = 0.0;
    if (!result.inner_totals.empty()) {
        auto [lo, hi] = std::minmax_element(result.inner_totals.begin(),
                                            result.inner_totals.end());
        inner_min = *lo;
        inner_max = *hi;
        long sum = 0;
        for (int t : result.inner_totals) sum += t;
        inner_avg = static_cast<double>(sum) / result.inner_totals.size();
    }
    const bool schwarz_method = method != "newton";
    out << method << ',' << format_double(re) << ',' << cfg.n << ','
        << (schwarz_method ? cfg.subdomains : 1) << ','
        << (schwarz_method ? cfg.overlap : 0) << ',' << cfg.coarse << ','
        << (cfg.solver.recycle_basis ? 1 : 0) << ','
        << (cfg.solver.restricted ? 1 : 0) << ','
        << (cfg.solver.pressure_projection ? 1 : 0) << ','
        << status_name(result.status) << ',' << result.outer_iters << ','
        << inner_min << ',' << inner_max << ',' << format_double(inner_avg)
        << ',' << result.coarse_total << ','
        << format_double(result.gmres_avg) << ','
        << format_double(result.final_rel_residual) << '\n';
}

SolveResult run_one(const ExperimentConfig& cfg, const std::string& method,
                    double re, const fs::path& dir) {
    CavityProblem problem({cfg.n, re, cfg.leaky_lid, true});
    Vector initial = problem.initial_guess();

    IterationCallback callback;
    if (cfg.write_vtk) {
        callback = [&problem, dir](int iter, const Vector& state,
                                   const Vector& coarse) {
            char name[32];
            std::snprintf(name, sizeof name, "state_%03d.vtk", iter);
            write_cavity_vtk((dir / name).string(), problem, state);
            if (coarse.size() > 0 && coarse.norm() > 0.0) {
                std::snprintf(name, sizeof name, "coarse_%03d.vtk", iter);
                write_cavity_vtk((dir / name).string(), problem, coarse);
            }
        };
    }

    SolveResult result;
    if (method == "newton") {
        result = plain_newton(problem, cfg.solver, initial);
    } else {
        Decomposition dec(problem, {cfg.subdomains, cfg.overlap});
        InterfaceGeometry geometry(dec);
        if (cfg.write_classification)
            dec.write_classification_csv((dir / "classification.csv").string());
        if (method == "nks") {
            NewtonKrylovSchwarz solver(dec, geometry, cfg.solver);
            result = solver.solve(initial, callback);
        } else {
            SchwarzVariant variant = method == "nl-additive"
                                         ? SchwarzVariant::Additive
                                         : SchwarzVariant::Hybrid;
            NonlinearSchwarzSolver solver(dec, geometry, variant, cfg.solver);
            result = solver.solve(initial, callback);
        }
    }

    write_run_csv(dir / "run.csv", result);
    write_cavity_vtk((dir / "solution.vtk").string(), problem,
                     result.solution);
    return result;
}

}  // namespace

int run_sweep(const ExperimentConfig& base,
              const std::vector<std::string>& methods,
              const std::vector<double>& reynolds_numbers) {
    for (const std::string& m : methods) {
        if (m != "newton" && m != "nks" && m != "nl-additive" &&
            m != "nl-hybrid") {
            std::cerr << "unknown method: " << m << "\n";
            return 1;
        }
    }
    ExperimentConfig cfg = base;
    if (base.coarse == "none") {
        cfg.solver.use_coarse = false;
    } else if (auto type = parse_coarse_space(base.coarse)) {
        cfg.solver.coarse_type = *type;
    } else {
        std::cerr << "unknown coarse space: " << base.coarse << "\n";
        return 1;
    }

    int exit_code = 0;
    try {
        fs::create_directories(cfg.output_dir);
        for (const std::string& method : methods) {
            for (double re : reynolds_numbers) {
                fs::path dir =
                    fs::path(cfg.output_dir) / run_dir_name(method, re);
                fs::create_directories(dir);
                SolveResult result = run_one(cfg, method, re, dir);
                append_summary(fs::path(cfg.output_dir) / "summary.csv", cfg,
                               method, re, result);
                std::cout << "method=" << method << " re=" << re
                          << " status=" << status_name(result.status)
                          << " outer=" << result.outer_iters
                          << " rel=" << format_double(result.final_rel_residual)
                          << "\n";
                if (exit_code == 0)
                    exit_code = status_exit_code(result.status);
            }
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return exit_code;
}

}  // namespace nlschwarz
