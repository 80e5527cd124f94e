#pragma once

#include <cstdint>

#include "pdmeans/mean_problem.hpp"
#include "pdmeans/rep_function.hpp"

namespace pdmeans {

struct EquationResidual {
    SymMatrix matrix;
    double norm = 0.0;
};

/// Residual of the mean equation at X: sum_i w_i g(A_i # X^{-1}).
/// g = log gives the spectral-mean equation; its zero set for m = 2 with
/// weights (1-t, t) is exactly { A_1 natural_t A_2 }.
EquationResidual residual(const MeanProblem& p, const SPDMatrix& x, const RepFunction& g);
EquationResidual residual(const MeanProblem& p, const SPDMatrix& x);  // g = log

/// Karcher-mean form of the same equation:
/// Lambda(w; A_1 # X^{-1}, ..., A_m # X^{-1}) - I. Shares its zero set
/// with residual(., ., log). Throws ConvergenceError if the inner Karcher
/// solve fails.
EquationResidual psi_residual(const MeanProblem& p, const SPDMatrix& x,
                              const SolverOptions& opts = {});

/// Solves sum_i w_i g(A_i # X^{-1}) = 0 by the damped fixed-point
/// iteration X <- M(X), M(X) = Lambda_g(w; (X^{1/2} A_i X^{1/2})^{1/2}).
/// Damping moves along the geodesic X #_beta M(X). Any solution lies in
/// the Loewner interval [alpha I, beta I] spanned by the data spectra;
/// iterates leaving [alpha/2 I, 2 beta I] abort with DivergenceError,
/// and a converged solution is checked against the interval post hoc.
SolveOutcome solve_equation(const MeanProblem& p, const RepFunction& g,
                            const SPDMatrix& x0, const SolverOptions& opts = {});
/// Same, started from the arithmetic mean.
SolveOutcome solve_equation(const MeanProblem& p, const RepFunction& g,
                            const SolverOptions& opts = {});

struct SolutionCluster {
    SPDMatrix representative;
    int members = 0;
    double max_spread = 0.0;  // largest Thompson distance to the representative
    double residual = 0.0;
    bool tight = true;        // spread <= 10 * tol after polishing
};

/// Distinct solutions found by multistart, clustered by Thompson
/// distance (threshold 1e-4). Representatives all satisfy the residual
/// tolerance; failed starts are counted, never thrown.
struct SolutionSet {
    std::vector<SolutionCluster> clusters;
    int starts = 0;
    int failures = 0;

    bool contains(const SPDMatrix& x, double dist = 1e-4) const;
};

/// Multistart exploration of the solution set. Starts are random
/// orthogonal conjugations of log-uniform spectra drawn from the data's
/// Loewner interval; deterministic for a fixed seed independent of the
/// thread count.
SolutionSet explore_solutions(const MeanProblem& p, const RepFunction& g, int n_starts,
                              std::uint64_t seed, const SolverOptions& opts = {},
                              int threads = 1);

/// Central finite difference, along the ray through X, of the flow field
/// of the spectral-mean equation (the congruence-normalized form of the
/// residual). Equals -(1/2) I up to O(h^2) for every problem and every
/// SPD X. h must lie in [1e-6, 1e-3].
SymMatrix flow_derivative_check(const MeanProblem& p, const SPDMatrix& x, double h);

}  // namespace pdmeans
