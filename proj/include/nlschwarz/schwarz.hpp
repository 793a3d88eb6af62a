#pragma once

#include <memory>

#include "nlschwarz/corrections.hpp"
#include "nlschwarz/gmres.hpp"

namespace nlschwarz {

enum class SchwarzVariant { Additive, Hybrid };

enum class SolveStatus { Converged, MaxOuterReached, InnerDivergence, NonFinite };
const char* status_name(SolveStatus status);

struct IterationLog {
    int outer_iter = 0;         // 1-based
    double abs_residual = 0.0;  // unpreconditioned residual entering the step
    double rel_residual = 0.0;
    int inner_min = 0, inner_max = 0;
    double inner_avg = 0.0;
    int coarse_iters = 0;
    int gmres_iters = 0;
    double step_length = 0.0;
};

struct SolveResult {
    SolveStatus status = SolveStatus::MaxOuterReached;
    Vector solution;
    int outer_iters = 0;
    double final_rel_residual = 0.0;
    std::vector<IterationLog> iterations;
    std::vector<int> inner_totals;  // per subdomain, summed over outer steps
    int coarse_total = 0;
    double gmres_avg = 0.0;
    int diverged_part = -2;  // -1: coarse loop, >= 0: that subdomain
};

// called after each accepted step: (outer iteration, state, coarse update)
using IterationCallback =
    std::function<void(int, const Vector&, const Vector&)>;

// Two-level nonlinear Schwarz: the preconditioned residual sums corrections
// solved on the overlapping blocks and in the coarse space, and the outer
// Newton direction comes from unpreconditioned GMRES on its exact
// derivative (chain rule through the inner solves). In the hybrid variant
// the coarse correction is computed first and the blocks work on the
// coarse-corrected state; in the additive variant both work on the same
// state. Convergence is always measured on the original residual.
class NonlinearSchwarzSolver {
public:
    NonlinearSchwarzSolver(const Decomposition& dec,
                           const InterfaceGeometry& geometry,
                           SchwarzVariant variant, const SolverConfig& cfg);

    SolveResult solve(const Vector& u0,
                      const IterationCallback& callback = {});

    // Inner solves at one state, exposing the preconditioned residual and
    // its derivative as an operator. The operator stays valid until the
    // next call on this solver. Throws when an inner loop diverges.
    struct ProbeResult {
        Vector value;
        LinearOperator derivative;
    };
    ProbeResult probe(const Vector& u);

private:
    struct Evaluation {
        Vector precond_residual;
        std::vector<Vector> corrections;
        std::vector<LocalLinearization> local_lin;
        std::vector<InnerReport> local_reports;
        InnerReport coarse_report;
        Vector coarse_global;
        CoarseLinearization coarse_lin;
        bool have_coarse = false;
        int diverged_part = -2;
        bool finite = true;
    };

    Evaluation evaluate(const Vector& u, double floor_norm);
    Vector apply_derivative(const Evaluation& ev, const Vector& v) const;
    Vector recombine(const std::vector<Vector>& corrections) const;
    void log_evaluation(SolveResult& result, const Evaluation& ev,
                        IterationLog& entry) const;

    const Decomposition* dec_;
    SchwarzVariant variant_;
    SolverConfig cfg_;
    std::vector<SubdomainSolver> locals_;
    CoarseSolver coarse_;
    CoarseBasisPolicy basis_;
    const SparseMatrix* phi_ = nullptr;
};

}  // namespace nlschwarz
