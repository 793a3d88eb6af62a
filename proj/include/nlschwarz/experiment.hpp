#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlschwarz/nks.hpp"

namespace nlschwarz {

// One solver run: problem size, decomposition, method selection, output
// destination. Methods: newton, nks, nl-additive, nl-hybrid. Coarse
// spaces: gdsw, rgdsw-a, rgdsw-b, none.
struct ExperimentConfig {
    int n = 16;
    double reynolds = 100.0;
    bool leaky_lid = true;
    int subdomains = 2;
    int overlap = 1;
    std::string method = "nl-hybrid";
    std::string coarse = "rgdsw-a";
    SolverConfig solver;
    std::string output_dir = "out";
    bool write_vtk = false;       // per-iteration state and coarse dumps
    bool write_classification = false;
};

int status_exit_code(SolveStatus status);

// Parses a coarse space name; empty optional for an unknown one.
std::optional<CoarseSpaceType> parse_coarse_space(const std::string& name);

// Runs every method x Reynolds combination, each into its own directory
// <out>/<method>_re<re>/ with a per-iteration run.csv and a solution.vtk,
// and appends one row per run to <out>/summary.csv. Returns 0 when every
// run converged, otherwise the exit code of the first run that did not.
int run_sweep(const ExperimentConfig& base,
              const std::vector<std::string>& methods,
              const std::vector<double>& reynolds_numbers);

}  // namespace nlschwarz
