#pragma once

#include "nlschwarz/interface_values.hpp"
#include "nlschwarz/sparse.hpp"

namespace nlschwarz {

// Discrete energy-minimizing extension: columns carry prescribed values on
// the interface dofs and solve K_II x_I = -K_IG x_G on the interior ones.
// Dofs in neither set come out zero. K_II is factorized once for all
// columns. Each column is given as (interface dof, value) pairs.
SparseMatrix energy_minimizing_extension(
    const SparseMatrix& K, const std::vector<int>& interior,
    const std::vector<int>& interface,
    const std::vector<std::vector<std::pair<int, double>>>& columns);

// Coarse basis for the cavity: three columns per interface patch (x
// velocity, y velocity, pressure), each extended with the full saddle-point
// jacobian, after which values coupling velocity columns into pressure rows
// and vice versa are deleted. Constrained dofs stay zero throughout.
SparseMatrix monolithic_coarse_basis(const CavityProblem& problem,
                                     const SparseMatrix& jacobian,
                                     const InterfaceGeometry& geometry,
                                     CoarseSpaceType type);

// Hands out the basis for the current linearization point; with recycling
// enabled the basis from the first call is reused forever after.
class CoarseBasisPolicy {
public:
    CoarseBasisPolicy(const CavityProblem& problem,
                      const InterfaceGeometry& geometry, CoarseSpaceType type,
                      bool recycle);

    const SparseMatrix& basis(const Vector& u);
    bool recycling() const { return recycle_; }
    CoarseSpaceType type() const { return type_; }

private:
    const CavityProblem* prob_;
    const InterfaceGeometry* geo_;
    CoarseSpaceType type_;
    bool recycle_;
    bool cached_ = false;
    SparseMatrix basis_;
};

}  // namespace nlschwarz
