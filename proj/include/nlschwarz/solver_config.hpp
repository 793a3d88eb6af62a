#pragma once

#include "nlschwarz/interface_values.hpp"

namespace nlschwarz {

struct SolverConfig {
    double outer_tol = 1e-6;        // relative to the first residual
    double inner_reduction = 1e-3;  // relative target of the inner loops
    double gmres_tol = 1e-8;
    int max_outer = 20;
    int max_inner = 20;
    int max_gmres = 500;
    double armijo = 1e-4;    // sufficient-decrease constant
    double min_step = 0.01;  // line search floor, halving schedule

    bool use_coarse = true;
    CoarseSpaceType coarse_type = CoarseSpaceType::RGDSW_A;
    bool recycle_basis = true;
    bool restricted = true;            // partition-of-unity recombination
    bool pressure_projection = true;   // zero-mean local pressure updates
};

}  // namespace nlschwarz
