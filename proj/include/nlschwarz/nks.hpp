#pragma once

#include "nlschwarz/schwarz.hpp"

namespace nlschwarz {

// Newton with a sparse direct solve and backtracking on the residual norm.
// Reference solver for the consistency tests.
SolveResult plain_newton(const CavityProblem& problem, const SolverConfig& cfg,
                         const Vector& u0);

// Newton-Krylov-Schwarz baseline: Newton on the original residual, each
// linear system solved with right-preconditioned GMRES. The preconditioner
// is the hybrid linear two-level Schwarz operator assembled from the same
// subdomain blocks, partition of unity, pressure projections, and coarse
// basis that the nonlinear method uses.
class NewtonKrylovSchwarz {
public:
    NewtonKrylovSchwarz(const Decomposition& dec,
                        const InterfaceGeometry& geometry,
                        const SolverConfig& cfg);

    SolveResult solve(const Vector& u0,
                      const IterationCallback& callback = {});

private:
    const Decomposition* dec_;
    SolverConfig cfg_;
    std::vector<SubdomainOperator> ops_;
    CoarseBasisPolicy basis_;
};

}  // namespace nlschwarz
