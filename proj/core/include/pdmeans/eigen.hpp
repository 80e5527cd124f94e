#pragma once

#include <vector>

#include "pdmeans/matrix.hpp"

namespace pdmeans {

/// Eigendecomposition of a symmetric matrix: A = Q diag(values) Q^T with
/// values sorted descending and Q orthonormal (columns are eigenvectors).
struct EigenSystem {
    std::vector<double> values;
    Matrix vectors;

    double lambda_max() const { return values.front(); }
    double lambda_min() const { return values.back(); }
    double cond() const;

    /// Q diag(f(values)) Q^T, symmetrized.
    template <typename F>
    SymMatrix apply(F&& f) const {
        const std::size_t n = values.size();
        Matrix scaled = vectors;  // columns scaled by f(lambda_j)
        for (std::size_t j = 0; j < n; ++j) {
            const double fj = f(values[j]);
            for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= fj;
        }
        return SymMatrix(scaled * vectors.transposed());
    }
};

/// Cyclic Jacobi eigendecomposition. Rotations sweep the upper triangle
/// until the off-diagonal Frobenius norm drops below 1e-14 * ||A||_F.
/// Deterministic; high relative accuracy on graded symmetric matrices.
EigenSystem jacobi_eigensystem(const SymMatrix& a);

}  // namespace pdmeans
