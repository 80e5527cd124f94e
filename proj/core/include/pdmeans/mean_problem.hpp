#pragma once

#include <vector>

#include "pdmeans/spd.hpp"

namespace pdmeans {

/// A weighted tuple (w; A_1, ..., A_m) of SPD matrices of equal
/// dimension: the input of every multivariable mean.
class MeanProblem {
  public:
    MeanProblem(WeightVector weights, std::vector<SPDMatrix> matrices);

    std::size_t size() const { return matrices_.size(); }
    std::size_t dim() const { return matrices_.front().dim(); }
    const WeightVector& weights() const { return weights_; }
    const std::vector<SPDMatrix>& matrices() const { return matrices_; }
    double weight(std::size_t i) const { return weights_[i]; }
    const SPDMatrix& matrix(std::size_t i) const { return matrices_[i]; }

    /// Smallest eigenvalue over all matrices.
    double spectrum_floor() const;
    /// Largest eigenvalue over all matrices.
    double spectrum_ceil() const;

    /// Problem with every matrix raised to the power s.
    MeanProblem power(double s) const;
    /// Problem with every matrix inverted.
    MeanProblem inverted() const;
    /// Problem with every matrix scaled by c > 0.
    MeanProblem scaled(double c) const;

  private:
    WeightVector weights_;
    std::vector<SPDMatrix> matrices_;
};

/// Iteration controls shared by all fixed-point solvers.
struct SolverOptions {
    double tol = 1e-12;   // Frobenius residual target (or Thompson step size)
    int max_iter = 500;
    // step damping: start at 1, halve on residual increase, restore x2 on
    // accepted steps, give up below min_damping
    double min_damping = 1.0 / (1 << 20);
};

/// Convergence record of one solve. `converged` implies
/// residual <= the tolerance it was run with; `residual_history` holds the
/// accepted residuals and is non-increasing by construction.
struct SolveOutcome {
    SPDMatrix solution;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> residual_history;
    /// trace of each iterate, recorded by solvers whose iteration has a
    /// monotone trace (Wasserstein K-iteration, from the first image on)
    std::vector<double> trace_history;
};

}  // namespace pdmeans
