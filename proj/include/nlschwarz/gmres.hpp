#pragma once

#include <functional>
#include <vector>

#include "nlschwarz/sparse.hpp"

namespace nlschwarz {

using LinearOperator = std::function<Vector(const Vector&)>;

struct GmresReport {
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
    bool breakdown = false;  // Krylov space became invariant (exact solve)
    std::vector<double> residual_history;  // relative; entry 0 is the start
};

// Full (non-restarted) GMRES with modified Gram-Schmidt and Givens rotations.
// x carries the initial guess in and the approximate solution out; residuals
// are measured relative to ||b||.
GmresReport gmres(const LinearOperator& A, const Vector& b, Vector& x,
                  double rel_tol, int max_iter);

}  // namespace nlschwarz
