#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlschwarz/nks.hpp>
#include <nlschwarz/schwarz.hpp>

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

// Tightly converged reference state for the n=8, Re=100 cavity.
const Vector& reference_state() {
    static Vector state = [] {
        CavityProblem problem({8, 100.0, true, true});
        SolverConfig cfg;
        cfg.outer_tol = 1e-12;
        cfg.max_outer = 50;
        SolveResult res = plain_newton(problem, cfg, problem.initial_guess());
        REQUIRE(res.status == SolveStatus::Converged);
        return res.solution;
    }();
    return state;
}

}  // namespace

TEST_CASE("preconditioned residual vanishes at the solution") {
    Setup s(8, 100.0, 2, 1);
    const Vector& star = reference_state();

    SolverConfig cfg;
    cfg.coarse_type = CoarseSpaceType::RGDSW_B;
    NonlinearSchwarzSolver hybrid(s.dec, s.geometry, SchwarzVariant::Hybrid, cfg);
    CHECK(hybrid.probe(star).value.norm() < 1e-8);

    cfg.coarse_type = CoarseSpaceType::GDSW;
    NonlinearSchwarzSolver additive(s.dec, s.geometry, SchwarzVariant::Additive,
                                    cfg);
    CHECK(additive.probe(star).value.norm() < 1e-8);
}

TEST_CASE("additive and hybrid variants converge on the cavity") {
    Setup s(8, 100.0, 2, 1);
    const Vector& star = reference_state();
    Vector zero = s.problem.initial_guess();

    auto run = [&](SchwarzVariant variant, CoarseSpaceType type) {
        SolverConfig cfg;
        cfg.coarse_type = type;
        NonlinearSchwarzSolver solver(s.dec, s.geometry, variant, cfg);
        SolveResult res = solver.solve(zero);
        REQUIRE(res.status == SolveStatus::Converged);
        CHECK(res.outer_iters <= 12);
        CHECK(static_cast<int>(res.iterations.size()) == res.outer_iters);
        CHECK(static_cast<int>(res.inner_totals.size()) == 4);
        CHECK(res.final_rel_residual <= 1e-6);
        CHECK((res.solution - star).lpNorm<Eigen::Infinity>() < 1e-3);
        for (const IterationLog& it : res.iterations) {
            CHECK(it.step_length > 0.0);
            CHECK(it.gmres_iters > 0);
        }
        return res;
    };

    SolveResult hybrid = run(SchwarzVariant::Hybrid, CoarseSpaceType::RGDSW_A);
    CHECK(hybrid.coarse_total > 0);
    run(SchwarzVariant::Additive, CoarseSpaceType::GDSW);
}

TEST_CASE("one-level additive variant converges without a coarse space") {
    // The pressure projection deletes constant local pressure updates, so
    // without the coarse pressure components nothing moves the blocks'
    // pressure levels against each other: the preconditioned residual then
    // has zeros that are not solutions. One level therefore runs without
    // the projection; with it, the solver must stall.
    Setup s(8, 100.0, 2, 1);
    SolverConfig cfg;
    cfg.use_coarse = false;
    cfg.pressure_projection = false;
    NonlinearSchwarzSolver solver(s.dec, s.geometry, SchwarzVariant::Additive,
                                  cfg);
    SolveResult res = solver.solve(s.problem.initial_guess());
    REQUIRE(res.status == SolveStatus::Converged);
    CHECK(res.outer_iters <= 12);
    CHECK(res.coarse_total == 0);
    CHECK((res.solution - reference_state()).lpNorm<Eigen::Infinity>() < 1e-3);

    cfg.pressure_projection = true;
    NonlinearSchwarzSolver stalled(s.dec, s.geometry, SchwarzVariant::Additive,
                                   cfg);
    SolveResult stall = stalled.solve(s.problem.initial_guess());
    CHECK(stall.status == SolveStatus::MaxOuterReached);
    CHECK(stall.final_rel_residual > 1e-4);
}

TEST_CASE("recombination variants all reach the same solution") {
    Setup s(8, 100.0, 2, 1);
    const Vector& star = reference_state();
    Vector zero = s.problem.initial_guess();

    for (bool restricted : {false, true}) {
        for (bool projection : {false, true}) {
            if (!restricted && projection) continue;
            CAPTURE(restricted);
            CAPTURE(projection);
            SolverConfig cfg;
            cfg.restricted = restricted;
            cfg.pressure_projection = projection;
            NonlinearSchwarzSolver solver(s.dec, s.geometry,
                                          SchwarzVariant::Hybrid, cfg);
            SolveResult res = solver.solve(zero);
            REQUIRE(res.status == SolveStatus::Converged);
            CHECK((res.solution - star).lpNorm<Eigen::Infinity>() < 1e-3);
        }
    }
}

TEST_CASE("derivative operator matches central differences") {
    Setup s(8, 100.0, 2, 1);

    // A generic partially converged state, away from the solution.
    SolverConfig newton_cfg;
    newton_cfg.max_outer = 2;
    Vector u = plain_newton(s.problem, newton_cfg, s.problem.initial_guess())
                   .solution;

    SolverConfig cfg;
    cfg.inner_reduction = 1e-12;  // near-exact inner solves
    for (SchwarzVariant variant :
         {SchwarzVariant::Additive, SchwarzVariant::Hybrid}) {
        CAPTURE(variant == SchwarzVariant::Hybrid);
        NonlinearSchwarzSolver solver(s.dec, s.geometry, variant, cfg);
        auto probe = solver.probe(u);

        for (unsigned seed : {11u, 12u}) {
            Vector v = testsupport::random_vector(u.size(), seed);
            for (int d = 0; d < u.size(); ++d)
                if (s.problem.is_constrained(d)) v(d) = 0.0;
            v /= v.norm();

            const double eps = 1e-5;
            Vector plus = solver.probe(u + eps * v).value;
            Vector minus = solver.probe(u - eps * v).value;
            Vector fd = (plus - minus) / (2.0 * eps);
            Vector exact = probe.derivative(v);
            CHECK((exact - fd).norm() / fd.norm() < 1e-5);
        }
    }
}

TEST_CASE("single block with one inner step reduces to Newton") {
    Setup s(8, 100.0, 1, 1);

    SolverConfig cfg;
    cfg.use_coarse = false;
    cfg.max_inner = 1;
    cfg.pressure_projection = false;
    cfg.restricted = false;

    NonlinearSchwarzSolver solver(s.dec, s.geometry, SchwarzVariant::Additive,
                                  cfg);
    Vector zero = s.problem.initial_guess();
    SolveResult schwarz = solver.solve(zero);
    SolveResult newton = plain_newton(s.problem, cfg, zero);

    REQUIRE(schwarz.status == SolveStatus::Converged);
    REQUIRE(newton.status == SolveStatus::Converged);
    CHECK(schwarz.outer_iters == newton.outer_iters);
    CHECK((schwarz.solution - newton.solution).lpNorm<Eigen::Infinity>()
          < 1e-10);
    for (const IterationLog& it : schwarz.iterations) {
        CHECK(it.gmres_iters == 1);  // the derivative is the identity
        CHECK(it.step_length == 1.0);
    }
}

TEST_CASE("exhausted inner budget reports which part diverged") {
    Setup s(4, 100.0, 2, 1);
    Vector zero = s.problem.initial_guess();

    SolverConfig cfg;
    cfg.max_inner = 0;
    NonlinearSchwarzSolver hybrid(s.dec, s.geometry, SchwarzVariant::Hybrid,
                                  cfg);
    SolveResult res = hybrid.solve(zero);
    REQUIRE(res.status == SolveStatus::InnerDivergence);
    CHECK(res.diverged_part == -1);  // the coarse loop runs first
    CHECK(res.iterations.size() == 1);
    CHECK(res.outer_iters == 0);

    cfg.use_coarse = false;
    NonlinearSchwarzSolver local_only(s.dec, s.geometry,
                                      SchwarzVariant::Additive, cfg);
    SolveResult res2 = local_only.solve(zero);
    REQUIRE(res2.status == SolveStatus::InnerDivergence);
    CHECK(res2.diverged_part >= 0);
}

TEST_CASE("status names are distinct") {
    CHECK(std::string(status_name(SolveStatus::Converged)) == "converged");
    CHECK(std::string(status_name(SolveStatus::MaxOuterReached)) ==
          "max-outer");
    CHECK(std::string(status_name(SolveStatus::InnerDivergence)) ==
          "inner-divergence");
    CHECK(std::string(status_name(SolveStatus::NonFinite)) == "non-finite");
}
