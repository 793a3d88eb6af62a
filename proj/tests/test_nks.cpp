#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlschwarz/nks.hpp>

#include "test_support.hpp"

using namespace nlschwarz;

namespace {

struct Setup {
    CavityProblem problem;
    Decomposition dec;
    InterfaceGeometry geometry;

    Setup(int n, double re, int s, int overlap)
        : problem({n, re, true, true}),
          dec(problem, {s, overlap}),
          geometry(dec) {}
};

}  // namespace

TEST_CASE("plain Newton solves the cavity") {
    CavityProblem problem({8, 100.0, true, true});
    SolverConfig cfg;
    SolveResult res = plain_newton(problem, cfg, problem.initial_guess());
    REQUIRE(res.status == SolveStatus::Converged);
    CHECK(res.outer_iters <= 10);
    CHECK(res.final_rel_residual <= 1e-6);
    CHECK(problem.residual(res.solution).norm() <
          1e-6 * problem.residual(problem.initial_guess()).norm());
    for (const IterationLog& it : res.iterations)
        CHECK(it.step_length > 0.0);
}

TEST_CASE("Newton-Krylov-Schwarz matches the direct Newton solution") {
    Setup s(8, 100.0, 2, 1);

    SolverConfig tight;
    tight.outer_tol = 1e-12;
    tight.max_outer = 50;
    Vector star =
        plain_newton(s.problem, tight, s.problem.initial_guess()).solution;

    SolverConfig cfg;
    NewtonKrylovSchwarz nks(s.dec, s.geometry, cfg);
    SolveResult res = nks.solve(s.problem.initial_guess());
    REQUIRE(res.status == SolveStatus::Converged);
    CHECK(res.outer_iters <= 10);
    CHECK(res.gmres_avg > 0.0);
    CHECK(static_cast<int>(res.iterations.size()) == res.outer_iters);
    CHECK((res.solution - star).lpNorm<Eigen::Infinity>() < 1e-4);
}

TEST_CASE("two-level preconditioner beats raw GMRES on the Jacobian") {
    Setup s(8, 100.0, 2, 1);
    Vector u0 = s.problem.initial_guess();

    SolverConfig cfg;
    NewtonKrylovSchwarz nks(s.dec, s.geometry, cfg);
    SolveResult res = nks.solve(u0);
    REQUIRE(res.status == SolveStatus::Converged);
    CHECK(res.gmres_avg < 100.0);

    // The saddle-point Jacobian alone is a hard GMRES target.
    SparseMatrix jac = s.problem.jacobian(u0);
    Vector rhs = s.problem.residual(u0);
    Vector x = Vector::Zero(rhs.size());
    GmresReport raw = gmres([&](const Vector& v) { return jac.multiply(v); },
                            rhs, x, cfg.gmres_tol, cfg.max_gmres);
    CHECK(raw.iterations > 3.0 * res.gmres_avg);
}

TEST_CASE("recycled and rebuilt coarse bases agree") {
    Setup s(8, 100.0, 2, 1);
    Vector u0 = s.problem.initial_guess();

    SolverConfig cfg;
    cfg.recycle_basis = true;
    NewtonKrylovSchwarz recycled(s.dec, s.geometry, cfg);
    SolveResult a = recycled.solve(u0);

    cfg.recycle_basis = false;
    NewtonKrylovSchwarz rebuilt(s.dec, s.geometry, cfg);
    SolveResult b = rebuilt.solve(u0);

    REQUIRE(a.status == SolveStatus::Converged);
    REQUIRE(b.status == SolveStatus::Converged);
    CHECK((a.solution - b.solution).lpNorm<Eigen::Infinity>() < 1e-4);
}

TEST_CASE("single-block preconditioner makes GMRES trivial") {
    Setup s(8, 100.0, 1, 1);
    SolverConfig cfg;
    cfg.use_coarse = false;
    // Zero-mean projected directions cannot move the pressure level, and
    // with no coarse space nothing else can; keep the projection off.
    cfg.pressure_projection = false;

    NewtonKrylovSchwarz nks(s.dec, s.geometry, cfg);
    SolveResult res = nks.solve(s.problem.initial_guess());
    SolveResult newton = plain_newton(s.problem, cfg, s.problem.initial_guess());

    REQUIRE(res.status == SolveStatus::Converged);
    CHECK(res.outer_iters == newton.outer_iters);
    for (const IterationLog& it : res.iterations)
        CHECK(it.gmres_iters <= 2);  // the preconditioner is the exact inverse
}
