#pragma once

#include <functional>
#include <optional>

#include "nlschwarz/coarse_basis.hpp"
#include "nlschwarz/decomposition.hpp"
#include "nlschwarz/solver_config.hpp"

namespace nlschwarz {

// Backtracking line search on the residual norm: start at a full step and
// halve until ||r(step)|| <= (1 - armijo * step) * f0 or the next halving
// would drop below min_step; the last trial is accepted either way.
struct LineSearchResult {
    double step;
    Vector residual;
    double norm;
};
LineSearchResult backtracking_line_search(
    const std::function<Vector(double)>& residual_at, double f0, double armijo,
    double min_step);

struct InnerReport {
    int iterations = 0;
    bool converged = false;
    bool diverged = false;  // budget exhausted without any progress
    double initial_norm = 0.0;
    double final_norm = 0.0;
};

// Rows of the jacobian belonging to one subdomain's local space, taken at
// the local solver's final iterate. Used to build the outer derivative.
struct LocalLinearization {
    std::vector<int> closure;  // column dofs, local space first
    SparseMatrix rows;         // local rows x closure columns
    std::optional<LUFactorization> block;  // square local part, factorized
    bool pinned = false;  // first local pressure dof held fixed as fallback
};

// Assembly of residual rows and jacobian rows of one subdomain from its own
// cells. States are full-length vectors; only entries at closure dofs are
// read, only local-space rows are produced.
class SubdomainOperator {
public:
    SubdomainOperator(const Decomposition& dec, int index);

    int index() const { return index_; }
    int size() const;
    const std::vector<int>& closure() const { return closure_; }

    Vector residual(const Vector& state) const;
    SparseMatrix jacobian_rows(const Vector& state) const;  // size x closure
    LocalLinearization linearize(const Vector& state) const;

    // R_i DF(state) v with v a full-length vector.
    static Vector apply(const LocalLinearization& lin, const Vector& v);

private:
    const Decomposition* dec_;
    int index_;
    std::vector<int> tris_;
    std::vector<int> closure_;                 // local dofs, then the rest
    std::unordered_map<int, int> closure_pos_;
};

// Local nonlinear correction: Newton with backtracking on the subdomain
// residual, aiming for the configured relative reduction. Corrections whose
// starting residual is below floor_norm are skipped as converged. The
// square local matrix is refactorized each step; a singular one is retried
// with the first local pressure dof pinned.
class SubdomainSolver {
public:
    SubdomainSolver(const Decomposition& dec, int index,
                    const SolverConfig& cfg);

    const SubdomainOperator& op() const { return op_; }

    InnerReport solve(const Vector& base, double floor_norm,
                      Vector& correction, LocalLinearization* lin) const;

private:
    const Decomposition* dec_;
    SolverConfig cfg_;
    SubdomainOperator op_;
};

// Subtracts the mean over the subdomain's pressure dofs from a local-space
// vector; velocities pass through. Idempotent.
void apply_zero_mean_pressure(const Decomposition& dec, int index,
                              Vector& local);

// Accumulates one local-space vector per subdomain into a global vector,
// honoring the configured pressure projection and partition-of-unity
// restriction.
void scatter_local_updates(const Decomposition& dec, const SolverConfig& cfg,
                           const std::vector<Vector>& locals, Vector& global);

struct CoarseLinearization {
    SparseMatrix jacobian;  // full jacobian at the coarse solver's iterate
    Eigen::PartialPivLU<Eigen::MatrixXd> coarse_lu;  // of Phi^T J Phi
};

// Coarse-space correction: Newton in the span of the basis columns, with
// the projected residual Phi^T F(base - Phi c).
class CoarseSolver {
public:
    CoarseSolver(const CavityProblem& problem, const SolverConfig& cfg);

    InnerReport solve(const SparseMatrix& phi, const Vector& base,
                      double floor_norm, Vector& coefficients,
                      CoarseLinearization* lin) const;

    // DT0 applied to v: (Phi^T J Phi)^{-1} Phi^T J v at the converged point.
    static Vector apply(const CoarseLinearization& lin, const SparseMatrix& phi,
                        const Vector& v);

private:
    const CavityProblem* prob_;
    SolverConfig cfg_;
};

}  // namespace nlschwarz
