#pragma once

#include "pdmeans/mean_problem.hpp"
#include "pdmeans/rep_function.hpp"

namespace pdmeans {

enum class ElementaryMean { arithmetic, harmonic, log_euclidean };

/// sum w_i A_i,  (sum w_i A_i^{-1})^{-1},  or  exp(sum w_i log A_i).
SPDMatrix elementary_mean(ElementaryMean kind, const MeanProblem& p);

SPDMatrix arithmetic_mean(const MeanProblem& p);
SPDMatrix harmonic_mean(const MeanProblem& p);
SPDMatrix log_euclidean_mean(const MeanProblem& p);

/// Karcher (least-squares) mean: the solution of
/// sum_i w_i log(X^{-1/2} A_i X^{-1/2}) = 0. Damped exponential
/// fixed-point iteration from the arithmetic mean; residual is the
/// Frobenius norm of the defining equation.
SolveOutcome karcher_mean(const MeanProblem& p, const SolverOptions& opts = {});

/// Generalized mean equation sum_i w_i g(X^{-1/2} A_i X^{-1/2}) = 0 for a
/// generator g from the catalog. g = log recovers the Karcher mean,
/// g = x-1 the arithmetic mean, g = 1-1/x the harmonic mean.
SolveOutcome generalized_karcher(const MeanProblem& p, const RepFunction& g,
                                 const SolverOptions& opts = {});

/// Power mean of order t in [-1,1] \ {0}: for t > 0 the fixed point of
/// X = sum_i w_i (X #_t A_i); for t < 0 defined through inverses.
/// |t| < 1e-3 is refused (the parameter region is numerically
/// ill-conditioned; use karcher_mean, the t -> 0 limit).
SolveOutcome power_mean(const MeanProblem& p, double t, const SolverOptions& opts = {});

/// Wasserstein (Bures) barycenter via the K-iteration
/// K(X) = X^{-1/2} [sum_i w_i (X^{1/2} A_i X^{1/2})^{1/2}]^2 X^{-1/2}.
/// Stops when the Thompson distance between iterates is below tol and the
/// equation residual ||sum_i w_i A_i # X^{-1} - I||_F is below 10*tol.
/// The trace of the iterates (recorded in trace_history, starting from
/// the first K image) is nondecreasing; a decrease beyond 1e-10 throws
/// ConsistencyError.
SolveOutcome wasserstein_mean(const MeanProblem& p, const SolverOptions& opts = {});

}  // namespace pdmeans
