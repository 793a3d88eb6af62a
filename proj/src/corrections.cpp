#include "nlschwarz/corrections.hpp"

#include <algorithm>
#include <cmath>

namespace nlschwarz {

LineSearchResult backtracking_line_search(
    const std::function<Vector(double)>& residual_at, double f0, double armijo,
    double min_step) {
    double alpha = 1.0;
    for (;;) {
        Vector r = residual_at(alpha);
        double nrm = r.norm();
        if (nrm <= (1.0 - armijo * alpha) * f0 || 0.5 * alpha < min_step)
            return {alpha, std::move(r), nrm};
        alpha *= 0.5;
    }
}

SubdomainOperator::SubdomainOperator(const Decomposition& dec, int index)
    : dec_(&dec), index_(index) {
    const CavityProblem& prob = dec.problem();
    const Mesh& mesh = prob.mesh();
    const Subdomain& sd = dec.subdomain(index);
    for (int cell : sd.cells) {
        int cx = cell % mesh.cells_per_side();
        int cy = cell / mesh.cells_per_side();
        auto two = mesh.cell_triangles(cx, cy);
        tris_.push_back(two[0]);
        tris_.push_back(two[1]);
    }
    closure_ = sd.dofs;
    std::vector<int> extra;
    for (int t : tris_)
        for (int dof : prob.element_dofs(t))
            if (!prob.is_constrained(dof) && !sd.global_to_local.count(dof))
                extra.push_back(dof);
    std::sort(extra.begin(), extra.end());
    extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
    closure_.insert(closure_.end(), extra.begin(), extra.end());
    for (size_t k = 0; k < closure_.size(); ++k)
        closure_pos_[closure_[k]] = static_cast<int>(k);
}

int SubdomainOperator::size() const {
    return static_cast<int>(dec_->subdomain(index_).dofs.size());
}

Vector SubdomainOperator::residual(const Vector& state) const {
    const CavityProblem& prob = dec_->problem();
    const auto& g2l = dec_->subdomain(index_).global_to_local;
    Vector r = Vector::Zero(size());
    Eigen::Matrix<double, CavityProblem::kElemDofs, 1> ul, rl;
    for (int t : tris_) {
        auto dofs = prob.element_dofs(t);
        for (int k = 0; k < CavityProblem::kElemDofs; ++k)
            ul(k) = state(dofs[k]);
        prob.element_kernel(t, ul, &rl, nullptr);
        for (int k = 0; k < CavityProblem::kElemDofs; ++k) {
            auto it = g2l.find(dofs[k]);
            if (it != g2l.end()) r(it->second) += rl(k);
        }
    }
    return r;
}

SparseMatrix SubdomainOperator::jacobian_rows(const Vector& state) const {
    const CavityProblem& prob = dec_->problem();
    const auto& g2l = dec_->subdomain(index_).global_to_local;
    SparseMatrix rows(size(), static_cast<int>(closure_.size()));
    Eigen::Matrix<double, CavityProblem::kElemDofs, 1> ul;
    Eigen::Matrix<double, CavityProblem::kElemDofs, CavityProblem::kElemDofs>
        Jl;
    for (int t : tris_) {
        auto dofs = prob.element_dofs(t);
        for (int k = 0; k < CavityProblem::kElemDofs; ++k)
            ul(k) = state(dofs[k]);
        prob.element_kernel(t, ul, nullptr, &Jl);
        for (int a = 0; a < CavityProblem::kElemDofs; ++a) {
            auto row = g2l.find(dofs[a]);
            if (row == g2l.end()) continue;
            for (int c = 0; c < CavityProblem::kElemDofs; ++c) {
                auto col = closure_pos_.find(dofs[c]);
                if (col == closure_pos_.end()) continue;
                if (Jl(a, c) != 0.0)
                    rows.add(row->second, col->second, Jl(a, c));
            }
        }
    }
    rows.finalize();
    return rows;
}

LocalLinearization SubdomainOperator::linearize(const Vector& state) const {
    LocalLinearization lin;
    lin.closure = closure_;
    lin.rows = jacobian_rows(state);
    std::vector<int> all_rows(size()), local_cols(size());
    for (int k = 0; k < size(); ++k) all_rows[k] = local_cols[k] = k;
    SparseMatrix block = lin.rows.extract(all_rows, local_cols);
    try {
        lin.block.emplace(block);
    } catch (const SingularMatrixError&) {
        // Hold the first local pressure unknown fixed and try again.
        int pin = dec_->subdomain(index_).pressure_begin;
        if (pin >= size()) throw;
        SparseMatrix repaired(size(), size());
        const auto& raw = block.raw();
        for (int c = 0; c < raw.outerSize(); ++c)
            for (Eigen::SparseMatrix<double>::InnerIterator it(raw, c); it;
                 ++it)
                if (it.row() != pin)
                    repaired.add(static_cast<int>(it.row()), c, it.value());
        repaired.add(pin, pin, 1.0);
        repaired.finalize();
        lin.block.emplace(repaired);
        lin.pinned = true;
    }
    return lin;
}

Vector SubdomainOperator::apply(const LocalLinearization& lin,
                                const Vector& v) {
    Vector vc(lin.closure.size());
    for (size_t k = 0; k < lin.closure.size(); ++k) vc(k) = v(lin.closure[k]);
    return lin.rows.multiply(vc);
}

SubdomainSolver::SubdomainSolver(const Decomposition& dec, int index,
                                 const SolverConfig& cfg)
    : dec_(&dec), cfg_(cfg), op_(dec, index) {}

InnerReport SubdomainSolver::solve(const Vector& base, double floor_norm,
                                   Vector& correction,
                                   LocalLinearization* lin) const {
    const Subdomain& sd = dec_->subdomain(op_.index());
    InnerReport report;
    Vector w = base;
    Vector r = op_.residual(w);
    report.initial_norm = r.norm();
    if (report.initial_norm <= floor_norm) {
        report.converged = true;
        report.final_norm = report.initial_norm;
        correction = Vector::Zero(op_.size());
        if (lin) *lin = op_.linearize(w);
        return report;
    }

    const double target = cfg_.inner_reduction * report.initial_norm;
    double nrm = report.initial_norm;
    while (nrm > target && report.iterations < cfg_.max_inner) {
        LocalLinearization step_lin = op_.linearize(w);
        Vector d = step_lin.block->solve(r);
        auto ls = backtracking_line_search(
            [&](double alpha) {
                Vector trial = w;
                for (int k = 0; k < op_.size(); ++k)
                    trial(sd.dofs[k]) -= alpha * d(k);
                return op_.residual(trial);
            },
            nrm, cfg_.armijo, cfg_.min_step);
        for (int k = 0; k < op_.size(); ++k)
            w(sd.dofs[k]) -= ls.step * d(k);
        r = std::move(ls.residual);
        nrm = ls.norm;
        ++report.iterations;
        if (!std::isfinite(nrm)) break;
    }
    report.final_norm = nrm;
    report.converged = std::isfinite(nrm) && nrm <= target;
    report.diverged = !report.converged &&
                      !(nrm < report.initial_norm * (1.0 - 1e-12));

    correction.resize(op_.size());
    for (int k = 0; k < op_.size(); ++k)
        correction(k) = base(sd.dofs[k]) - w(sd.dofs[k]);
    if (lin) *lin = op_.linearize(w);
    return report;
}

void apply_zero_mean_pressure(const Decomposition& dec, int index,
                              Vector& local) {
    const Subdomain& sd = dec.subdomain(index);
    int np = static_cast<int>(sd.dofs.size()) - sd.pressure_begin;
    if (np <= 0) return;
    double mean = local.segment(sd.pressure_begin, np).mean();
    local.segment(sd.pressure_begin, np).array() -= mean;
}

void scatter_local_updates(const Decomposition& dec, const SolverConfig& cfg,
                           const std::vector<Vector>& locals, Vector& global) {
    for (int i = 0; i < dec.count(); ++i) {
        Vector local = locals[i];
        if (cfg.pressure_projection) apply_zero_mean_pressure(dec, i, local);
        if (cfg.restricted)
            dec.add_prolonged_restricted(i, local, global);
        else
            dec.add_prolonged(i, local, global);
    }
}

CoarseSolver::CoarseSolver(const CavityProblem& problem,
                           const SolverConfig& cfg)
    : prob_(&problem), cfg_(cfg) {}

static Eigen::MatrixXd projected_matrix(const SparseMatrix& phi,
                                        const SparseMatrix& J) {
    Eigen::SparseMatrix<double> tmp = J.raw() * phi.raw();
    return Eigen::MatrixXd(phi.raw().transpose() * tmp);
}

InnerReport CoarseSolver::solve(const SparseMatrix& phi, const Vector& base,
                                double floor_norm, Vector& coefficients,
                                CoarseLinearization* lin) const {
    InnerReport report;
    const int nc = phi.cols();
    coefficients = Vector::Zero(nc);
    Vector w = base;
    Vector g = phi.multiply_transpose(prob_->residual(w));
    report.initial_norm = g.norm();
    if (nc == 0 || report.initial_norm <= floor_norm) {
        report.converged = true;
        report.final_norm = report.initial_norm;
        if (lin) {
            lin->jacobian = prob_->jacobian(w);
            lin->coarse_lu =
                Eigen::PartialPivLU<Eigen::MatrixXd>(projected_matrix(
                    phi, lin->jacobian));
        }
        return report;
    }

    const double target = cfg_.inner_reduction * report.initial_norm;
    double nrm = report.initial_norm;
    while (nrm > target && report.iterations < cfg_.max_inner) {
        SparseMatrix J = prob_->jacobian(w);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(projected_matrix(phi, J));
        Vector d = lu.solve(g);
        if (!d.allFinite()) {
            report.diverged = true;
            report.final_norm = nrm;
            if (lin) {
                lin->jacobian = std::move(J);
                lin->coarse_lu = std::move(lu);
            }
            return report;
        }
        Vector dg = phi.multiply(d);  // global direction
        auto ls = backtracking_line_search(
            [&](double alpha) {
                return phi.multiply_transpose(
                    prob_->residual(w - alpha * dg));
            },
            nrm, cfg_.armijo, cfg_.min_step);
        coefficients += ls.step * d;
        w -= ls.step * dg;
        g = std::move(ls.residual);
        nrm = ls.norm;
        ++report.iterations;
        if (!std::isfinite(nrm)) break;
    }
    report.final_norm = nrm;
    report.converged = std::isfinite(nrm) && nrm <= target;
    report.diverged = !report.converged &&
                      !(nrm < report.initial_norm * (1.0 - 1e-12));
    if (lin) {
        lin->jacobian = prob_->jacobian(w);
        lin->coarse_lu = Eigen::PartialPivLU<Eigen::MatrixXd>(
            projected_matrix(phi, lin->jacobian));
    }
    return report;
}

Vector CoarseSolver::apply(const CoarseLinearization& lin,
                           const SparseMatrix& phi, const Vector& v) {
    Vector g = phi.multiply_transpose(lin.jacobian.multiply(v));
    return lin.coarse_lu.solve(g);
}

}  // namespace nlschwarz
