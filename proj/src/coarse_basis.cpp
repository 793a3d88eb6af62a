#include "nlschwarz/coarse_basis.hpp"

#include <unordered_map>

namespace nlschwarz {

SparseMatrix energy_minimizing_extension(
    const SparseMatrix& K, const std::vector<int>& interior,
    const std::vector<int>& interface,
    const std::vector<std::vector<std::pair<int, double>>>& columns) {
    std::unordered_map<int, int> gamma_pos;
    for (size_t k = 0; k < interface.size(); ++k)
        gamma_pos[interface[k]] = static_cast<int>(k);

    SparseMatrix KII = K.extract(interior, interior);
    SparseMatrix KIG = K.extract(interior, interface);
    LUFactorization lu(KII);

    SparseMatrix phi(K.rows(), static_cast<int>(columns.size()));
    for (size_t j = 0; j < columns.size(); ++j) {
        Vector g = Vector::Zero(interface.size());
        for (auto [dof, val] : columns[j]) g(gamma_pos.at(dof)) = val;
        Vector xi = interface.empty() ? Vector() : Vector(-KIG.multiply(g));
        if (!interior.empty()) xi = lu.solve(xi);
        for (auto [dof, val] : columns[j])
            if (val != 0.0) phi.add(dof, static_cast<int>(j), val);
        for (size_t k = 0; k < interior.size(); ++k)
            if (xi(k) != 0.0)
                phi.add(interior[k], static_cast<int>(j), xi(k));
    }
    phi.finalize();
    return phi;
}

SparseMatrix monolithic_coarse_basis(const CavityProblem& problem,
                                     const SparseMatrix& jacobian,
                                     const InterfaceGeometry& geometry,
                                     CoarseSpaceType type) {
    auto patches = build_interface_patches(geometry, type);
    if (patches.empty()) {
        SparseMatrix empty(problem.dof_count(), 0);
        empty.finalize();
        return empty;
    }

    std::vector<int> interface;
    std::vector<char> on_interface(problem.dof_count(), 0);
    auto add_iface = [&](int dof) {
        if (!on_interface[dof]) {
            on_interface[dof] = 1;
            interface.push_back(dof);
        }
    };
    for (const auto& cr : geometry.crosses()) {
        add_iface(problem.vx_dof(cr.vnode));
        add_iface(problem.vy_dof(cr.vnode));
        add_iface(problem.pressure_dof(cr.pnode));
    }
    for (const auto& e : geometry.edges()) {
        for (int v : e.velocity_nodes) {
            add_iface(problem.vx_dof(v));
            add_iface(problem.vy_dof(v));
        }
        for (int q : e.pressure_nodes)
            add_iface(problem.pressure_dof(q));
    }
    std::vector<int> interior;
    for (int d = 0; d < problem.dof_count(); ++d)
        if (!on_interface[d] && !problem.is_constrained(d))
            interior.push_back(d);

    std::vector<std::vector<std::pair<int, double>>> columns;
    columns.reserve(3 * patches.size());
    for (const auto& p : patches) {
        std::vector<std::pair<int, double>> cx, cy, cp;
        for (auto [node, w] : p.velocity_values) {
            cx.push_back({problem.vx_dof(node), w});
            cy.push_back({problem.vy_dof(node), w});
        }
        for (auto [node, w] : p.pressure_values)
            cp.push_back({problem.pressure_dof(node), w});
        columns.push_back(std::move(cx));
        columns.push_back(std::move(cy));
        columns.push_back(std::move(cp));
    }

    SparseMatrix full =
        energy_minimizing_extension(jacobian, interior, interface, columns);

    // Delete the cross-field blocks: velocity columns keep velocity rows,
    // pressure columns keep pressure rows.
    const int nvel = problem.velocity_dof_count();
    SparseMatrix trimmed(full.rows(), full.cols());
    const auto& raw = full.raw();
    for (int col = 0; col < full.cols(); ++col) {
        bool pressure_col = col % 3 == 2;
        for (Eigen::SparseMatrix<double>::InnerIterator it(raw, col); it;
             ++it) {
            bool pressure_row = it.row() >= nvel;
            if (pressure_row == pressure_col)
                trimmed.add(static_cast<int>(it.row()), col, it.value());
        }
    }
    trimmed.finalize();
    return trimmed;
}

CoarseBasisPolicy::CoarseBasisPolicy(const CavityProblem& problem,
                                     const InterfaceGeometry& geometry,
                                     CoarseSpaceType type, bool recycle)
    : prob_(&problem), geo_(&geometry), type_(type), recycle_(recycle) {}

const SparseMatrix& CoarseBasisPolicy::basis(const Vector& u) {
    if (!cached_ || !recycle_) {
        basis_ = monolithic_coarse_basis(*prob_, prob_->jacobian(u), *geo_,
                                         type_);
        cached_ = true;
    }
    return basis_;
}

}  // namespace nlschwarz
