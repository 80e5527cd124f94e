#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pdmeans/counterexample.hpp"
#include "pdmeans/harness.hpp"
#include "pdmeans/means_multi.hpp"
#include "pdmeans/means_two.hpp"
#include "pdmeans/metrics.hpp"
#include "pdmeans/order.hpp"
#include "pdmeans/spectral_equation.hpp"

using namespace pdmeans;

namespace {

MeanProblem pair_problem(const SPDMatrix& a, const SPDMatrix& b, double t) {
    return MeanProblem(WeightVector({1.0 - t, t}), {a, b});
}

}  // namespace

TEST_CASE("residual: zero at the common matrix") {
    const SPDMatrix a = random_spd(3, 50.0, 1);
    const MeanProblem p(WeightVector::uniform(3), {a, a, a});
    CHECK(residual(p, a).norm <= 1e-13);
}

TEST_CASE("residual: spectral mean solves the two-variable equation") {
    Rng rng(2);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const SPDMatrix a = random_spd(n, 100.0, rng);
        const SPDMatrix b = random_spd(n, 100.0, rng);
        const double t = 0.1 * (1 + trial % 9);
        const SPDMatrix nat = spectral_mean_t(a, b, t);
        CHECK(residual(pair_problem(a, b, t), nat).norm <= 1e-10);
    }
}

TEST_CASE("residual at X0 of the non-uniqueness instance") {
    const Counterexample ce;
    // the generic eigenvalue path: double rounding of the instance itself
    // limits this to ~1e-10 (the closed-form field reaches 1e-12)
    CHECK(residual(ce.problem(), ce.x0()).norm <= 1e-10);
}

TEST_CASE("psi_residual agrees with the log-form residual at zeros and elsewhere") {
    Rng rng(3);
    const SPDMatrix a = random_spd(3, 80.0, rng);
    const SPDMatrix b = random_spd(3, 80.0, rng);
    const MeanProblem p = pair_problem(a, b, 0.4);

    const SPDMatrix nat = spectral_mean_t(a, b, 0.4);
    SolverOptions opts;
    CHECK(psi_residual(p, nat, opts).norm <= 10.0 * std::max(opts.tol, 1e-13) + 1e-11);

    // identity instance
    const MeanProblem pid(WeightVector::uniform(2),
                          {SPDMatrix::identity(3), SPDMatrix::identity(3)});
    CHECK(psi_residual(pid, SPDMatrix::identity(3)).norm <= 1e-13);

    // far from any solution the residual is visible
    CHECK(psi_residual(p, SPDMatrix(SymMatrix::diagonal({50.0, 0.02, 1.0}))).norm > 1e-3);
}

TEST_CASE("solve_equation recovers the spectral mean for two variables") {
    Rng rng(4);
    SolverOptions opts;
    opts.tol = 1e-10;
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const double cond = (trial % 3 == 2) ? 1000.0 : 50.0;
        const SPDMatrix a = random_spd(n, cond, rng);
        const SPDMatrix b = random_spd(n, cond, rng);
        const double t = 0.1 * (1 + trial % 9);
        const SolveOutcome out = solve_equation(pair_problem(a, b, t), RepFunction::g_log(), opts);
        REQUIRE(out.converged);
        CHECK(thompson_distance(out.solution, spectral_mean_t(a, b, t)) <= 1e-8);
    }
}

TEST_CASE("solve_equation with g = x-1 gives the Wasserstein mean") {
    Rng rng(5);
    for (int trial = 0; trial < 6; ++trial) {
        const MeanProblem p = random_problem(2 + trial % 3, 2 + trial % 3, 100.0, rng);
        const SolveOutcome out = solve_equation(p, RepFunction::g_linear());
        REQUIRE(out.converged);
        const SolveOutcome omg = wasserstein_mean(p);
        REQUIRE(omg.converged);
        CHECK(thompson_distance(out.solution, omg.solution) <= 1e-8);
    }
}

TEST_CASE("solve_equation: constant tuple returns the common matrix from any start") {
    Rng rng(6);
    const SPDMatrix a = random_spd(3, 60.0, rng);
    const MeanProblem p(WeightVector::uniform(3), {a, a, a});
    const SPDMatrix start = random_spd(3, 30.0, rng);
    // scale the start into the data interval
    const double mid = std::sqrt(a.lambda_min() * a.lambda_max());
    EigenSystem es = start.eigensystem();
    for (double& v : es.values) v = mid * std::pow(v, 0.05);
    const SolveOutcome out =
        solve_equation(p, RepFunction::g_log(), SPDMatrix::from_eigensystem(std::move(es)), {});
    REQUIRE(out.converged);
    CHECK(thompson_distance(out.solution, a) <= 1e-9);
}

TEST_CASE("solve_equation keeps the solution inside the data interval") {
    Rng rng(7);
    const MeanProblem p = random_problem(3, 3, 400.0, rng);
    const SolveOutcome out = solve_equation(p, RepFunction::g_log());
    REQUIRE(out.converged);
    CHECK(out.solution.lambda_min() >= p.spectrum_floor() * (1.0 - 1e-7));
    CHECK(out.solution.lambda_max() <= p.spectrum_ceil() * (1.0 + 1e-7));
}

TEST_CASE("explore_solutions: constant tuple yields exactly one cluster at A") {
    const SPDMatrix a = random_spd(2, 25.0, 8);
    const MeanProblem p(WeightVector::uniform(2), {a, a});
    const SolutionSet set = explore_solutions(p, RepFunction::g_log(), 16, 99);
    CHECK(set.starts == 16);
    REQUIRE(set.clusters.size() == 1);
    CHECK(set.contains(a, 1e-6));
    CHECK(set.clusters[0].members + set.failures == 16);
}

TEST_CASE("explore_solutions: near-identity data has a unique solution") {
    Rng rng(9);
    for (int inst = 0; inst < 3; ++inst) {
        const std::size_t n = 2 + inst;
        const std::size_t m = 2 + inst;
        std::vector<SPDMatrix> as;
        for (std::size_t i = 0; i < m; ++i) {
            EigenSystem es;
            es.values.resize(n);
            for (double& v : es.values) v = std::exp(rng.uniform(std::log(0.9), std::log(1.1)));
            es.vectors = random_orthogonal(n, rng);
            as.push_back(SPDMatrix::from_eigensystem(std::move(es)));
        }
        const MeanProblem p(WeightVector::uniform(m), std::move(as));
        const SolutionSet set = explore_solutions(p, RepFunction::g_log(), 64, 7 + inst);
        CHECK(set.clusters.size() == 1);
        CHECK(set.failures == 0);
    }
}

TEST_CASE("explore_solutions finds both documented roots of the 2x2 instance") {
    const Counterexample ce;
    SolverOptions opts;
    opts.tol = 1e-10;
    opts.max_iter = 400;
    const SolutionSet set =
        explore_solutions(ce.problem(), RepFunction::g_log(), 64, 42, opts, 4);
    CHECK(set.clusters.size() >= 2);
    CHECK(set.contains(ce.x0(), 1e-4));
    for (const auto& c : set.clusters) CHECK(c.residual <= opts.tol);
}

TEST_CASE("explore_solutions is deterministic and schedule-independent") {
    Rng rng(10);
    const MeanProblem p = random_problem(3, 3, 200.0, rng);
    const SolutionSet s1 = explore_solutions(p, RepFunction::g_log(), 12, 5, {}, 1);
    const SolutionSet s4 = explore_solutions(p, RepFunction::g_log(), 12, 5, {}, 4);
    REQUIRE(s1.clusters.size() == s4.clusters.size());
    CHECK(s1.failures == s4.failures);
    for (std::size_t i = 0; i < s1.clusters.size(); ++i) {
        CHECK(s1.clusters[i].members == s4.clusters[i].members);
        CHECK((s1.clusters[i].representative.sym() - s4.clusters[i].representative.sym())
                  .frobenius_norm() == 0.0);
    }
}

TEST_CASE("solution-set properties: homogeneity, inversion, determinant") {
    Rng rng(11);
    const MeanProblem p = random_problem(3, 3, 150.0, rng);
    const SolveOutcome out = solve_equation(p, RepFunction::g_log());
    REQUIRE(out.converged);
    const SPDMatrix& x = out.solution;

    // homogeneity: the scaled problem is solved by the scaled point
    const double alpha = 1.7;
    CHECK(residual(p.scaled(alpha), SPDMatrix(SymMatrix(alpha * x.sym()))).norm <= 1e-9);

    // inversion
    CHECK(residual(p.inverted(), x.inverse()).norm <= 1e-10);

    // determinant identity
    double logdet = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) logdet += p.weight(i) * p.matrix(i).log_det();
    CHECK(x.log_det() == doctest::Approx(logdet).epsilon(1e-10));
}

TEST_CASE("compound membership: solutions lift through the second compound power") {
    Rng rng(12);
    const MeanProblem p = random_problem(3, 2, 60.0, rng);
    const SolveOutcome out = solve_equation(p, RepFunction::g_log());
    REQUIRE(out.converged);
    std::vector<SPDMatrix> ca;
    for (std::size_t i = 0; i < p.size(); ++i) ca.emplace_back(compound(p.matrix(i).sym(), 2));
    const MeanProblem cp(p.weights(), std::move(ca));
    CHECK(residual(cp, SPDMatrix(compound(out.solution.sym(), 2))).norm <= 1e-8);
}

TEST_CASE("interval bounds from the data spectrum hold for solutions") {
    Rng rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const MeanProblem p = random_problem(2 + trial % 3, 2 + trial % 3, 200.0, rng);
        const SolveOutcome out = solve_equation(p, RepFunction::g_log());
        REQUIRE(out.converged);
        const SPDMatrix& x = out.solution;
        SymMatrix lower = SymMatrix(2.0 * SymMatrix::identity(p.dim()));
        SymMatrix upper_arg = lower;
        for (std::size_t i = 0; i < p.size(); ++i) {
            lower += (-p.weight(i)) * p.matrix(i).inverse().sym();
            upper_arg += (-p.weight(i)) * p.matrix(i).sym();
        }
        CHECK(order_check(OrderRelation::loewner, lower, x.sym(), 1e-9).holds);
        if (jacobi_eigensystem(upper_arg).lambda_min() > 0.0)
            CHECK(order_check(OrderRelation::loewner, x, SPDMatrix(upper_arg).inverse(), 1e-9)
                      .holds);
    }
}

TEST_CASE("flow_derivative_check equals -1/2 I with O(h^2) error") {
    Rng rng(14);
    const MeanProblem p = random_problem(3, 3, 100.0, rng);
    const SPDMatrix x = random_spd(3, 50.0, rng);
    const SymMatrix half = SymMatrix(0.5 * SymMatrix::identity(3));

    const double e5 = (flow_derivative_check(p, x, 1e-5) + half).frobenius_norm();
    CHECK(e5 <= 1e-6);

    // Richardson: at h large enough that the h^2 term dominates noise
    const double e3 = (flow_derivative_check(p, x, 1e-3) + half).frobenius_norm();
    const double e3h = (flow_derivative_check(p, x, 5e-4) + half).frobenius_norm();
    CHECK(e3 / e3h == doctest::Approx(4.0).epsilon(0.15));

    CHECK_THROWS_AS(flow_derivative_check(p, x, 1e-7), DomainError);
    CHECK_THROWS_AS(flow_derivative_check(p, x, 1e-2), DomainError);
}

TEST_CASE("flow derivative at the counterexample solution") {
    const Counterexample ce;
    const SymMatrix half = SymMatrix(0.5 * SymMatrix::identity(2));
    const double err =
        (flow_derivative_check(ce.problem(), ce.x0(), 1e-5) + half).frobenius_norm();
    CHECK(err <= 1e-6);
}
