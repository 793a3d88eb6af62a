#include "nlschwarz/nks.hpp"

#include <cmath>

#include "nlschwarz/parallel.hpp"

namespace nlschwarz {

namespace {

struct NewtonLoop {
    SolveResult result;
    Vector u, residual;
    double f0 = 0.0, fnorm = 0.0;
    int steps = 0;
    double gmres_sum = 0.0;
    int gmres_count = 0;

    // false: the loop is over and result.status is final
    bool start(const CavityProblem& prob, const Vector& u0) {
        result.solution = u0;
        u = u0;
        residual = prob.residual(u0);
        if (!residual.allFinite()) {
            result.status = SolveStatus::NonFinite;
            return false;
        }
        f0 = fnorm = residual.norm();
        if (f0 == 0.0) {
            result.status = SolveStatus::Converged;
            return false;
        }
        return true;
    }

    SolveResult finish(SolveStatus status) {
        result.status = status;
        result.solution = u;
        result.outer_iters = steps;
        result.final_rel_residual = fnorm / f0;
        result.gmres_avg =
            gmres_count > 0 ? gmres_sum / gmres_count : 0.0;
        return result;
    }
};

}  // namespace

SolveResult plain_newton(const CavityProblem& problem, const SolverConfig& cfg,
                         const Vector& u0) {
    NewtonLoop loop;
    if (!loop.start(problem, u0)) return loop.result;

    while (true) {
        const double rel = loop.fnorm / loop.f0;
        if (rel <= cfg.outer_tol) return loop.finish(SolveStatus::Converged);
        if (loop.steps >= cfg.max_outer)
            return loop.finish(SolveStatus::MaxOuterReached);

        LUFactorization lu(problem.jacobian(loop.u));
        Vector direction = lu.solve(loop.residual);

        IterationLog entry;
        entry.outer_iter = loop.steps + 1;
        entry.abs_residual = loop.fnorm;
        entry.rel_residual = rel;

        auto ls = backtracking_line_search(
            [&](double alpha) {
                return problem.residual(loop.u - alpha * direction);
            },
            loop.fnorm, cfg.armijo, cfg.min_step);
        loop.u -= ls.step * direction;
        loop.residual = std::move(ls.residual);
        loop.fnorm = ls.norm;
        entry.step_length = ls.step;
        loop.result.iterations.push_back(entry);
        ++loop.steps;
        if (!std::isfinite(loop.fnorm) || !loop.residual.allFinite())
            return loop.finish(SolveStatus::NonFinite);
    }
}

NewtonKrylovSchwarz::NewtonKrylovSchwarz(const Decomposition& dec,
                                         const InterfaceGeometry& geometry,
                                         const SolverConfig& cfg)
    : dec_(&dec),
      cfg_(cfg),
      basis_(dec.problem(), geometry, cfg.coarse_type, cfg.recycle_basis) {
    ops_.reserve(dec.count());
    for (int i = 0; i < dec.count(); ++i) ops_.emplace_back(dec, i);
}

SolveResult NewtonKrylovSchwarz::solve(const Vector& u0,
                                       const IterationCallback& callback) {
    const CavityProblem& prob = dec_->problem();
    const int n = prob.dof_count();
    const int count = dec_->count();

    NewtonLoop loop;
    loop.result.inner_totals.assign(count, 0);
    if (!loop.start(prob, u0)) return loop.result;

    while (true) {
        const double rel = loop.fnorm / loop.f0;
        if (rel <= cfg_.outer_tol) return loop.finish(SolveStatus::Converged);
        if (loop.steps >= cfg_.max_outer)
            return loop.finish(SolveStatus::MaxOuterReached);

        SparseMatrix jac = prob.jacobian(loop.u);

        std::vector<LocalLinearization> lins(count);
        parallel_for(count, [&](int i) { lins[i] = ops_[i].linearize(loop.u); });

        const SparseMatrix* phi = nullptr;
        Eigen::PartialPivLU<Eigen::MatrixXd> coarse_lu;
        if (cfg_.use_coarse) {
            phi = &basis_.basis(loop.u);
            if (phi->cols() == 0) {
                phi = nullptr;
            } else {
                Eigen::MatrixXd projected =
                    phi->raw().transpose() * (jac.raw() * phi->raw());
                coarse_lu.compute(projected);
            }
        }

        // Hybrid two-level Schwarz: coarse solve, then the blocks applied
        // to the coarse-deflated residual.
        auto precondition = [&](const Vector& r) {
            Vector coarse = Vector::Zero(n);
            const Vector* rest = &r;
            Vector deflated;
            if (phi) {
                coarse = phi->multiply(coarse_lu.solve(phi->multiply_transpose(r)));
                deflated = r - jac.multiply(coarse);
                rest = &deflated;
            }
            std::vector<Vector> pieces(count);
            parallel_for(count, [&](int i) {
                pieces[i] = lins[i].block->solve(dec_->restrict_to(i, *rest));
            });
            Vector out = coarse;
            scatter_local_updates(*dec_, cfg_, pieces, out);
            return out;
        };

        IterationLog entry;
        entry.outer_iter = loop.steps + 1;
        entry.abs_residual = loop.fnorm;
        entry.rel_residual = rel;

        Vector y = Vector::Zero(n);
        GmresReport report = gmres(
            [&](const Vector& v) { return jac.multiply(precondition(v)); },
            loop.residual, y, cfg_.gmres_tol, cfg_.max_gmres);
        Vector direction = precondition(y);
        entry.gmres_iters = report.iterations;
        loop.gmres_sum += report.iterations;
        ++loop.gmres_count;

        auto ls = backtracking_line_search(
            [&](double alpha) {
                return prob.residual(loop.u - alpha * direction);
            },
            loop.fnorm, cfg_.armijo, cfg_.min_step);
        loop.u -= ls.step * direction;
        loop.residual = std::move(ls.residual);
        loop.fnorm = ls.norm;
        entry.step_length = ls.step;
        loop.result.iterations.push_back(entry);
        ++loop.steps;
        if (!std::isfinite(loop.fnorm) || !loop.residual.allFinite())
            return loop.finish(SolveStatus::NonFinite);
        if (callback) callback(loop.steps, loop.u, Vector::Zero(n));
    }
}

}  // namespace nlschwarz
