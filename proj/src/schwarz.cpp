#include "nlschwarz/schwarz.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "nlschwarz/parallel.hpp"

namespace nlschwarz {

const char* status_name(SolveStatus status) {
    switch (status) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::MaxOuterReached: return "max-outer";
        case SolveStatus::InnerDivergence: return "inner-divergence";
        case SolveStatus::NonFinite: return "non-finite";
    }
    return "unknown";
}

NonlinearSchwarzSolver::NonlinearSchwarzSolver(const Decomposition& dec,
                                               const InterfaceGeometry& geometry,
                                               SchwarzVariant variant,
                                               const SolverConfig& cfg)
    : dec_(&dec),
      variant_(variant),
      cfg_(cfg),
      coarse_(dec.problem(), cfg),
      basis_(dec.problem(), geometry, cfg.coarse_type, cfg.recycle_basis) {
    locals_.reserve(dec.count());
    for (int i = 0; i < dec.count(); ++i) locals_.emplace_back(dec, i, cfg);
}

Vector NonlinearSchwarzSolver::recombine(
    const std::vector<Vector>& corrections) const {
    Vector out = Vector::Zero(dec_->problem().dof_count());
    scatter_local_updates(*dec_, cfg_, corrections, out);
    return out;
}

NonlinearSchwarzSolver::Evaluation NonlinearSchwarzSolver::evaluate(
    const Vector& u, double floor_norm) {
    const int n = dec_->problem().dof_count();
    const int count = dec_->count();

    Evaluation ev;
    ev.coarse_global = Vector::Zero(n);
    ev.corrections.assign(count, Vector());
    ev.local_lin.resize(count);
    ev.local_reports.assign(count, InnerReport());

    if (cfg_.use_coarse) {
        phi_ = &basis_.basis(u);
        if (phi_->cols() > 0) {
            Vector coeff;
            ev.coarse_report =
                coarse_.solve(*phi_, u, floor_norm, coeff, &ev.coarse_lin);
            ev.have_coarse = true;
            if (ev.coarse_report.diverged) {
                ev.diverged_part = -1;
                return ev;
            }
            ev.coarse_global = phi_->multiply(coeff);
        }
    }

    const Vector& base = u;  // additive: blocks see the incoming state
    Vector shifted;
    if (variant_ == SchwarzVariant::Hybrid && ev.have_coarse)
        shifted = u - ev.coarse_global;
    const Vector& local_base = shifted.size() > 0 ? shifted : base;

    parallel_for(count, [&](int i) {
        ev.local_reports[i] = locals_[i].solve(local_base, floor_norm,
                                               ev.corrections[i],
                                               &ev.local_lin[i]);
    });
    for (int i = 0; i < count; ++i) {
        if (ev.local_reports[i].diverged) {
            ev.diverged_part = i;
            return ev;
        }
    }

    ev.precond_residual = recombine(ev.corrections);
    if (ev.have_coarse) ev.precond_residual += ev.coarse_global;
    ev.finite = ev.precond_residual.allFinite();
    return ev;
}

Vector NonlinearSchwarzSolver::apply_derivative(const Evaluation& ev,
                                                const Vector& v) const {
    const int count = dec_->count();

    Vector coarse_part;
    if (ev.have_coarse)
        coarse_part =
            phi_->multiply(CoarseSolver::apply(ev.coarse_lin, *phi_, v));

    const Vector* local_arg = &v;
    Vector deflated;
    if (variant_ == SchwarzVariant::Hybrid && ev.have_coarse) {
        deflated = v - coarse_part;
        local_arg = &deflated;
    }

    std::vector<Vector> pieces(count);
    parallel_for(count, [&](int i) {
        const LocalLinearization& lin = ev.local_lin[i];
        Vector rhs = SubdomainOperator::apply(lin, *local_arg);
        pieces[i] = lin.block->solve(rhs);
    });

    Vector out = recombine(pieces);
    if (ev.have_coarse) out += coarse_part;
    return out;
}

void NonlinearSchwarzSolver::log_evaluation(SolveResult& result,
                                            const Evaluation& ev,
                                            IterationLog& entry) const {
    const int count = dec_->count();
    int lo = 0, hi = 0, sum = 0;
    for (int i = 0; i < count; ++i) {
        int its = ev.local_reports[i].iterations;
        if (i == 0 || its < lo) lo = its;
        if (i == 0 || its > hi) hi = its;
        sum += its;
        result.inner_totals[i] += its;
    }
    entry.inner_min = lo;
    entry.inner_max = hi;
    entry.inner_avg = count > 0 ? static_cast<double>(sum) / count : 0.0;
    entry.coarse_iters = ev.coarse_report.iterations;
    result.coarse_total += ev.coarse_report.iterations;
}

NonlinearSchwarzSolver::ProbeResult NonlinearSchwarzSolver::probe(
    const Vector& u) {
    const double base = dec_->problem().residual(u).norm();
    auto ev = std::make_shared<Evaluation>(evaluate(u, 1e-14 * base));
    if (ev->diverged_part != -2)
        throw std::runtime_error("inner solve diverged while probing");
    ProbeResult out;
    out.value = ev->precond_residual;
    out.derivative = [this, ev](const Vector& v) {
        return apply_derivative(*ev, v);
    };
    return out;
}

SolveResult NonlinearSchwarzSolver::solve(const Vector& u0,
                                          const IterationCallback& callback) {
    const CavityProblem& prob = dec_->problem();
    SolveResult result;
    result.inner_totals.assign(dec_->count(), 0);
    result.solution = u0;

    Vector residual = prob.residual(u0);
    if (!residual.allFinite()) {
        result.status = SolveStatus::NonFinite;
        return result;
    }
    const double f0 = residual.norm();
    if (f0 == 0.0) {
        result.status = SolveStatus::Converged;
        return result;
    }
    const double floor_norm = 1e-14 * f0;

    Vector u = u0;
    double fnorm = f0;
    Evaluation ev;
    bool have_ev = false;
    int steps = 0;
    double gmres_sum = 0.0;
    int gmres_count = 0;

    auto finish = [&](SolveStatus status) {
        result.status = status;
        result.solution = u;
        result.outer_iters = steps;
        result.final_rel_residual = fnorm / f0;
        result.gmres_avg =
            gmres_count > 0 ? gmres_sum / gmres_count : 0.0;
        return result;
    };

    while (true) {
        const double rel = fnorm / f0;
        if (rel <= cfg_.outer_tol) return finish(SolveStatus::Converged);
        if (steps >= cfg_.max_outer)
            return finish(SolveStatus::MaxOuterReached);

        if (!have_ev) {
            ev = evaluate(u, floor_norm);
            have_ev = true;
        }

        IterationLog entry;
        entry.outer_iter = steps + 1;
        entry.abs_residual = fnorm;
        entry.rel_residual = rel;
        log_evaluation(result, ev, entry);

        if (ev.diverged_part != -2) {
            result.iterations.push_back(entry);
            result.diverged_part = ev.diverged_part;
            return finish(SolveStatus::InnerDivergence);
        }
        if (!ev.finite) {
            result.iterations.push_back(entry);
            return finish(SolveStatus::NonFinite);
        }

        Vector delta = Vector::Zero(u.size());
        GmresReport report = gmres(
            [&](const Vector& v) { return apply_derivative(ev, v); },
            ev.precond_residual, delta, cfg_.gmres_tol, cfg_.max_gmres);
        entry.gmres_iters = report.iterations;
        gmres_sum += report.iterations;
        ++gmres_count;

        // Backtrack on the preconditioned residual norm; every trial pays
        // for a full set of inner solves, so the accepted one is kept as
        // the next iteration's evaluation.
        const double base_norm = ev.precond_residual.norm();
        double alpha = 1.0;
        Vector candidate;
        Evaluation trial;
        while (true) {
            candidate = u - alpha * delta;
            bool usable = candidate.allFinite();
            if (usable) {
                trial = evaluate(candidate, floor_norm);
                usable = trial.diverged_part == -2 && trial.finite;
            }
            const bool floor_hit = 0.5 * alpha < cfg_.min_step;
            if (usable) {
                const double nrm = trial.precond_residual.norm();
                if (nrm <= (1.0 - cfg_.armijo * alpha) * base_norm ||
                    floor_hit)
                    break;
            } else if (floor_hit) {
                result.iterations.push_back(entry);
                if (trial.diverged_part != -2) {
                    result.diverged_part = trial.diverged_part;
                    return finish(SolveStatus::InnerDivergence);
                }
                return finish(SolveStatus::NonFinite);
            }
            alpha *= 0.5;
        }

        u = candidate;
        ev = trial;
        residual = prob.residual(u);
        fnorm = residual.norm();
        entry.step_length = alpha;
        result.iterations.push_back(entry);
        ++steps;
        if (!residual.allFinite() || !std::isfinite(fnorm))
            return finish(SolveStatus::NonFinite);
        if (callback) callback(steps, u, ev.coarse_global);
    }
}

}  // namespace nlschwarz
