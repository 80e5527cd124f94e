#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "pdmeans/eigen.hpp"
#include "pdmeans/errors.hpp"
#include "pdmeans/matrix.hpp"

namespace pdmeans {

/// Symmetric positive definite matrix.
///
/// Construction eigendecomposes the operand and rejects anything whose
/// smallest eigenvalue does not clear the relative floor
/// n * eps * lambda_max; there is no silent regularization. The spectrum
/// (eigenvalues descending, orthonormal eigenvectors) is carried with the
/// value, so repeated matrix functions of the same operand cost one
/// decomposition. Instances are immutable and safe to share across
/// threads.
class SPDMatrix {
  public:
    explicit SPDMatrix(SymMatrix base);
    explicit SPDMatrix(const Matrix& m) : SPDMatrix(SymMatrix(m)) {}

    static SPDMatrix identity(std::size_t n);
    /// diag(d), d_i > 0.
    static SPDMatrix diagonal(const std::vector<double>& d);
    /// Q diag(values) Q^T from an existing decomposition (values must be
    /// positive; they are re-sorted descending).
    static SPDMatrix from_eigensystem(EigenSystem es);

    std::size_t dim() const { return base_.dim(); }
    const SymMatrix& sym() const { return base_; }
    double operator()(std::size_t i, std::size_t j) const { return base_(i, j); }

    const EigenSystem& eigensystem() const { return es_; }
    /// Spectrum, sorted descending.
    const std::vector<double>& eigenvalues() const { return es_.values; }
    double lambda_max() const { return es_.values.front(); }
    double lambda_min() const { return es_.values.back(); }
    double cond() const { return es_.cond(); }
    double trace() const { return base_.trace(); }
    /// Product of eigenvalues (positive by construction).
    double det() const;
    double log_det() const;

    SPDMatrix power(double t) const;
    SPDMatrix sqrt() const { return power(0.5); }
    SPDMatrix inverse() const { return power(-1.0); }
    SymMatrix log() const;

  private:
    SPDMatrix() = default;

    SymMatrix base_;
    EigenSystem es_;
};

/// Q diag(f(lambda_i)) Q^T for an SPD operand. Throws DomainError naming
/// the offending eigenvalue if f is non-finite anywhere on the spectrum.
SymMatrix matrix_fn(const SPDMatrix& a, const std::function<double(double)>& f);

/// Same, returning an SPD value; f must be positive on the spectrum.
SPDMatrix matrix_fn_spd(const SPDMatrix& a, const std::function<double(double)>& f);

/// exp of a symmetric matrix (always SPD-constructible).
SPDMatrix sym_exp(const SymMatrix& h);

/// S A S^T for invertible S; throws SingularError when the condition
/// estimate of S reaches 1e12.
SPDMatrix congruence(const Matrix& s, const SPDMatrix& a);

/// Positive probability vector; renormalized to sum 1 on construction.
class WeightVector {
  public:
    explicit WeightVector(std::vector<double> w);
    static WeightVector uniform(std::size_t m);

    std::size_t size() const { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }
    const std::vector<double>& data() const { return w_; }

  private:
    std::vector<double> w_;
};

}  // namespace pdmeans
