#pragma once

#include <vector>

#include "nlschwarz/mesh.hpp"
#include "nlschwarz/quadrature.hpp"
#include "nlschwarz/sparse.hpp"

namespace nlschwarz {

struct CavityConfig {
    int n = 16;               // cells per direction
    double reynolds = 100.0;  // viscosity is 1/reynolds
    bool leaky_lid = true;    // top corners move with the lid
    bool convection = true;   // false gives the Stokes problem
};

// Stationary lid-driven cavity on the unit square, Taylor-Hood P2-P1.
// Dof ordering: all x velocities, all y velocities, all pressures.
// Dirichlet rows (boundary velocity, pinned pressure at the origin) carry a
// zero residual and a unit diagonal with cleared off-diagonal row/column in
// the Jacobian, so Newton corrections never touch them. The continuity
// residual is negated, which gives the Jacobian the symmetric block shape
// [[A, B^T], [B, 0]].
class CavityProblem {
public:
    explicit CavityProblem(const CavityConfig& cfg);

    const Mesh& mesh() const { return mesh_; }
    const CavityConfig& config() const { return cfg_; }
    double viscosity() const { return nu_; }

    int dof_count() const { return ndof_; }
    int velocity_dof_count() const { return 2 * nv_; }
    int vx_dof(int vnode) const { return vnode; }
    int vy_dof(int vnode) const { return nv_ + vnode; }
    int pressure_dof(int pnode) const { return 2 * nv_ + pnode; }

    bool is_constrained(int dof) const { return constrained_[dof] != 0; }
    double constraint_value(int dof) const { return values_[dof]; }

    // Constrained dofs at their boundary values, zero elsewhere.
    Vector initial_guess() const;

    Vector residual(const Vector& u) const;
    SparseMatrix jacobian(const Vector& u) const;

    // Element pieces, shared with the subdomain-restricted assembly.
    static constexpr int kElemDofs = 15;  // 6 vx, 6 vy, 3 p
    std::array<int, kElemDofs> element_dofs(int tri) const;
    void element_kernel(int tri, const Eigen::Matrix<double, kElemDofs, 1>& ul,
                        Eigen::Matrix<double, kElemDofs, 1>* r,
                        Eigen::Matrix<double, kElemDofs, kElemDofs>* J) const;

private:
    struct QpBasis {
        double w;                          // reference weight
        std::array<double, 6> N;           // P2 values
        std::array<std::array<double, 2>, 6> dN;  // P2 reference gradients
        std::array<double, 3> M;           // P1 values
    };
    struct TriGeom {
        double det;                        // twice the area, positive
        std::array<std::array<double, 2>, 2> invJT;
    };

    Mesh mesh_;
    CavityConfig cfg_;
    double nu_;
    int nv_, np_, ndof_;
    std::vector<QpBasis> qp_;
    std::vector<TriGeom> geom_;
    std::vector<char> constrained_;
    std::vector<double> values_;
};

}  // namespace nlschwarz
